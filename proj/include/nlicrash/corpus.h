//
// Copyright 2026 The nlicrash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// NLI datasets and prediction files.
//
// The canonical on-disk form is JSONL, one object per line:
//
//   {"uid":"a1","premise":"...","hypothesis":"...","label":"entailment",
//    "genre":"fiction"}
//
// The TSV adapter needs a header row and understands MNLI column names
// (sentence1/sentence2/gold_label/pairID). Prediction files are JSONL
// {"uid":..., "label":...} or two-column TSV.

#ifndef NLICRASH_CORPUS_H_
#define NLICRASH_CORPUS_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nlicrash {

// Enumerators are in lexicographic order of their names; argmax ties over
// labels resolve to the lowest value, i.e. the smallest name.
enum class NliLabel { kContradiction = 0, kEntailment = 1, kNeutral = 2 };

inline constexpr std::size_t kNumLabels = 3;
inline constexpr std::array<NliLabel, kNumLabels> kAllLabels = {
    NliLabel::kContradiction, NliLabel::kEntailment, NliLabel::kNeutral};

std::string_view LabelName(NliLabel label);

// Case-insensitive. Also accepts the single-letter codes used by ANLI
// ("c", "e", "n"). Returns nullopt for anything else, including MNLI's "-".
std::optional<NliLabel> ParseLabel(std::string_view text);

struct NliPair {
  std::string uid;
  std::string premise;
  std::string hypothesis;
  NliLabel label = NliLabel::kNeutral;
  std::optional<std::string> genre;
  std::optional<std::string> source;

  bool operator==(const NliPair&) const = default;
};

enum class Split { kTrain, kDev, kTest };

std::string_view SplitName(Split split);

struct Dataset {
  std::string name;
  Split split = Split::kDev;
  std::vector<NliPair> pairs;

  bool operator==(const Dataset&) const = default;
};

enum class FileFormat { kJsonl, kTsv };

// jsonl for ".jsonl"/".json", tsv for ".tsv"/".txt"; anything else is a
// UsageError.
FileFormat FormatFromPath(const std::filesystem::path& path);
std::optional<FileFormat> ParseFileFormat(std::string_view name);

struct LoadOptions {
  // Downgrade invalid records (unknown or missing labels, e.g. MNLI "-") to
  // warnings; the record is skipped and counted.
  bool skip_invalid = false;
};

struct LoadStats {
  std::size_t records = 0;
  std::size_t skipped = 0;
  std::size_t empty_fields = 0;  // pairs with an empty premise or hypothesis
  std::size_t synthesized_uids = 0;
  std::vector<std::string> warnings;
};

// Throws ValidationError (with "at line N") for malformed or invalid records
// and IoError when the file cannot be read. Missing uids become
// "<name>:<line>" where name is the file stem.
Dataset LoadDataset(const std::filesystem::path& path, FileFormat format,
                    const LoadOptions& options = {},
                    LoadStats* stats = nullptr);
Dataset LoadDataset(const std::filesystem::path& path);

// TSV output rejects text containing tabs or newlines (not representable).
void SaveDataset(const Dataset& dataset, const std::filesystem::path& path,
                 FileFormat format);

// Uniqueness and non-empty uid checks. Throws ValidationError.
void ValidateDataset(const Dataset& dataset);

struct PredictionSet {
  std::string model_name;
  std::map<std::string, NliLabel> entries;
  std::size_t duplicates = 0;  // last record wins
};

PredictionSet LoadPredictions(const std::filesystem::path& path,
                              FileFormat format);
PredictionSet LoadPredictions(const std::filesystem::path& path);
void SavePredictions(const PredictionSet& predictions,
                     const std::filesystem::path& path);

// Reads a whole file; IoError names the path on failure.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace nlicrash

#endif  // NLICRASH_CORPUS_H_
