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

// The crash-test suite: corrupt a dataset many ways, measure how much
// accuracy survives, and turn that into a verdict.
//
// The artefact susceptibility index of a row is
//
//   ASI = (accuracy - chance) / (baseline - chance)
//
// so 1 means the corruption cost nothing and 0 means it reduced the model to
// chance. ASI and the verdict thresholds are an operational heuristic; the
// report says so.

#ifndef NLICRASH_DIAGNOSTICS_H_
#define NLICRASH_DIAGNOSTICS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlicrash/corpus.h"
#include "nlicrash/metrics.h"
#include "nlicrash/probes.h"
#include "nlicrash/transforms.h"

namespace nlicrash {

inline constexpr int kReportSchemaVersion = 1;

enum class SuiteMode { kPredictionFiles, kProbe };

std::string_view SuiteModeName(SuiteMode mode);
std::optional<SuiteMode> ParseSuiteMode(std::string_view name);

struct NamedTransform {
  std::string name;
  TransformSpec spec;
  // Shuffle transforms without their own seed take SuiteConfig::seed.
  bool seed_from_config = false;
};

// The thresholds a verdict depends on. Stored in every report so the verdict
// can be recomputed from the report alone.
struct VerdictConfig {
  double chance_pct = 33.33;
  double asi_threshold = 0.5;
  // ASI is left undefined when baseline - chance is below this many points;
  // a baseline that close to chance carries no signal to normalize by.
  double min_signal_pct = 5.0;
  double swap_same_label_min_pct = 80.0;
  double swap_changed_label_min_pct = 80.0;

  bool operator==(const VerdictConfig&) const = default;
};

struct ProbeSettings {
  Featurizer featurizer = Featurizer::kHypBow;
  int epochs = 5;
  std::optional<std::uint64_t> seed;  // falls back to SuiteConfig::seed
  double train_fraction = 0.8;
};

struct SuiteConfig {
  std::string name;
  SuiteMode mode = SuiteMode::kPredictionFiles;
  std::vector<NamedTransform> transforms;
  std::optional<double> baseline_accuracy_pct;
  VerdictConfig verdict;
  ProbeSettings probe;
  std::optional<std::uint64_t> seed;
  // Transform name (and "original") -> prediction file, relative paths
  // resolved against the config file's directory.
  std::map<std::string, std::filesystem::path> prediction_files;
  std::optional<std::filesystem::path> dataset_path;

  // Throws UsageError: duplicate or empty names, bad thresholds, baseline not
  // above chance, missing seeds where randomness is used.
  void Validate() const;
};

// Eight single-class drops, five keep combinations, shuffle n=1..3, swap and
// hypothesis-only. Shuffles take the config seed.
std::vector<NamedTransform> DefaultTransforms();

SuiteConfig DefaultSuiteConfig();

// Throws UsageError on malformed JSON or unknown keys.
SuiteConfig ParseSuiteConfig(std::string_view json,
                             const std::filesystem::path& base_dir = {});
SuiteConfig LoadSuiteConfig(const std::filesystem::path& path);

// Drops containing NOUN or VERB, and every keep combination.
bool IsContentWordTransform(const TransformSpec& spec);

double Asi(double accuracy_pct, double baseline_pct, double chance_pct);

// nullopt without a baseline or when baseline - chance < min_signal_pct.
std::optional<double> AsiFor(double accuracy_pct,
                             std::optional<double> baseline_pct,
                             const VerdictConfig& config);

struct ReportRow {
  std::string name;
  TransformSpec spec;
  double accuracy_pct = 0.0;
  std::optional<double> delta_points;
  std::size_t tokens_removed = 0;
  double overlap_pct = 0.0;
  std::optional<double> asi;
  std::size_t n_evaluated = 0;
  std::size_t n_missing_predictions = 0;

  bool content_word() const { return IsContentWordTransform(spec); }
  bool operator==(const ReportRow&) const = default;
};

enum class Verdict { kArtefactProne, kRobust, kInconclusive };

// "artefact-prone", "robust", "inconclusive".
std::string_view VerdictName(Verdict verdict);
std::optional<Verdict> ParseVerdict(std::string_view name);

struct VerdictResult {
  Verdict verdict = Verdict::kInconclusive;
  std::vector<std::string> triggers;  // "noun (ASI 0.723)"
  std::string reason;

  bool operator==(const VerdictResult&) const = default;
};

// Artefact-prone iff some content-word row has ASI > threshold. Robust iff
// every content-word row has an ASI <= threshold and swap consistency holds:
// contradiction and neutral unchanged, entailment changed, each at or above
// its minimum rate. Inconclusive otherwise.
VerdictResult DecideVerdict(const std::vector<ReportRow>& rows,
                            const std::optional<SwapConsistency>& swap,
                            const VerdictConfig& config);

struct DiagnosticReport {
  int schema_version = kReportSchemaVersion;
  std::string suite_name;
  std::string dataset;
  std::size_t pairs = 0;
  SuiteMode mode = SuiteMode::kPredictionFiles;
  std::optional<double> baseline_accuracy_pct;
  std::optional<double> original_overlap_pct;
  VerdictConfig config;
  std::vector<ReportRow> rows;
  std::optional<SwapConsistency> swap_consistency;
  VerdictResult verdict;

  bool operator==(const DiagnosticReport&) const = default;
};

struct SuiteInputs {
  // Needed when any transform drops or keeps word classes.
  const TagSource* tags = nullptr;
  // prediction_files mode: transform name (and "original") -> predictions.
  std::map<std::string, PredictionSet> predictions;
  int jobs = 1;
};

// Loads every prediction file named by the config.
std::map<std::string, PredictionSet> LoadSuitePredictions(
    const SuiteConfig& config);

// Rows come out in configured transform order. In probe mode the dataset is
// split once (seeded) into train and held-out indices shared by every row;
// each row trains on the corrupted train part and scores the corrupted
// held-out part. The swap row scores the original-data probe on swapped
// held-out pairs.
DiagnosticReport RunSuite(const Dataset& dataset, const SuiteConfig& config,
                          const SuiteInputs& inputs);

enum class ReportFormat { kJson, kMarkdown, kCsv };

std::optional<ReportFormat> ParseReportFormat(std::string_view name);
std::string EmitReport(const DiagnosticReport& report, ReportFormat format);

// Inverse of EmitReport(kJson). Throws ValidationError on schema mismatch.
DiagnosticReport ParseReportJson(std::string_view json);

}  // namespace nlicrash

#endif  // NLICRASH_DIAGNOSTICS_H_
