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

#include "nlicrash/corpus.h"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "nlicrash/error.h"

namespace nlicrash {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string AtLine(std::size_t line) {
  return " at line " + std::to_string(line);
}

// Splits on '\n', dropping one trailing '\r' per line. A final newline does
// not produce an extra empty line.
std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = line.find('\t', start);
    if (end == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

Split SplitFromName(std::string_view name) {
  const std::string lower = Lower(name);
  if (lower.find("train") != std::string::npos) return Split::kTrain;
  if (lower.find("test") != std::string::npos) return Split::kTest;
  return Split::kDev;
}

// A raw record before validation. Field lookup is alias-aware.
struct RawRecord {
  std::optional<std::string> uid;
  std::optional<std::string> premise;
  std::optional<std::string> hypothesis;
  std::optional<std::string> label;
  std::optional<std::string> genre;
  std::optional<std::string> source;
};

const std::initializer_list<std::string_view> kUidKeys = {"uid", "pairID",
                                                          "id"};
const std::initializer_list<std::string_view> kPremiseKeys = {
    "premise", "sentence1", "context"};
const std::initializer_list<std::string_view> kHypothesisKeys = {
    "hypothesis", "sentence2"};
const std::initializer_list<std::string_view> kLabelKeys = {"label",
                                                            "gold_label"};

std::optional<std::string> JsonField(
    const Json& obj, std::initializer_list<std::string_view> keys,
    std::string_view what, std::size_t line) {
  for (std::string_view key : keys) {
    auto it = obj.find(std::string(key));
    if (it == obj.end() || it->is_null()) continue;
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    throw ValidationError("field '" + std::string(key) + "' (" +
                          std::string(what) + ") must be a string" +
                          AtLine(line));
  }
  return std::nullopt;
}

RawRecord FromJsonLine(std::string_view line, std::size_t line_no) {
  Json obj;
  try {
    obj = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON" + AtLine(line_no) + ": " +
                          e.what());
  }
  if (!obj.is_object()) {
    throw ValidationError("expected a JSON object" + AtLine(line_no));
  }
  RawRecord r;
  r.uid = JsonField(obj, kUidKeys, "uid", line_no);
  r.premise = JsonField(obj, kPremiseKeys, "premise", line_no);
  r.hypothesis = JsonField(obj, kHypothesisKeys, "hypothesis", line_no);
  r.label = JsonField(obj, kLabelKeys, "label", line_no);
  r.genre = JsonField(obj, {"genre"}, "genre", line_no);
  r.source = JsonField(obj, {"source"}, "source", line_no);
  return r;
}

struct TsvColumns {
  std::optional<std::size_t> uid, premise, hypothesis, label, genre, source;
  std::size_t width = 0;
};

std::optional<std::size_t> FindColumn(
    const std::vector<std::string_view>& header,
    std::initializer_list<std::string_view> keys) {
  for (std::string_view key : keys) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == key) return i;
    }
  }
  return std::nullopt;
}

TsvColumns ParseTsvHeader(std::string_view line) {
  const auto header = SplitTabs(line);
  TsvColumns cols;
  cols.width = header.size();
  cols.uid = FindColumn(header, kUidKeys);
  cols.premise = FindColumn(header, kPremiseKeys);
  cols.hypothesis = FindColumn(header, kHypothesisKeys);
  cols.label = FindColumn(header, kLabelKeys);
  cols.genre = FindColumn(header, {"genre"});
  cols.source = FindColumn(header, {"source"});
  if (!cols.premise || !cols.hypothesis || !cols.label) {
    throw ValidationError(
        "TSV header must name premise (or sentence1), hypothesis (or "
        "sentence2) and label (or gold_label) columns" +
        AtLine(1));
  }
  return cols;
}

RawRecord FromTsvLine(std::string_view line, const TsvColumns& cols,
                      std::size_t line_no) {
  const auto cells = SplitTabs(line);
  if (cells.size() < cols.width) {
    throw ValidationError("expected " + std::to_string(cols.width) +
                          " tab-separated columns, found " +
                          std::to_string(cells.size()) + AtLine(line_no));
  }
  auto cell = [&](const std::optional<std::size_t>& idx)
      -> std::optional<std::string> {
    if (!idx) return std::nullopt;
    return std::string(cells[*idx]);
  };
  RawRecord r;
  r.uid = cell(cols.uid);
  if (r.uid && r.uid->empty()) r.uid.reset();
  r.premise = cell(cols.premise);
  r.hypothesis = cell(cols.hypothesis);
  r.label = cell(cols.label);
  r.genre = cell(cols.genre);
  if (r.genre && r.genre->empty()) r.genre.reset();
  r.source = cell(cols.source);
  if (r.source && r.source->empty()) r.source.reset();
  return r;
}

class DatasetBuilder {
 public:
  DatasetBuilder(std::string name, const LoadOptions& options,
                 LoadStats* stats)
      : options_(options), stats_(stats) {
    dataset_.name = std::move(name);
    dataset_.split = SplitFromName(dataset_.name);
  }

  void Add(RawRecord r, std::size_t line_no) {
    ++stats_->records;
    std::optional<std::string> problem;
    if (!r.premise) {
      problem = "missing premise field";
    } else if (!r.hypothesis) {
      problem = "missing hypothesis field";
    } else if (!r.label) {
      problem = "missing label field";
    }
    std::optional<NliLabel> label;
    if (!problem) {
      label = ParseLabel(*r.label);
      if (!label) problem = "unknown label '" + *r.label + "'";
    }
    if (problem) {
      const std::string message = *problem + AtLine(line_no);
      if (!options_.skip_invalid) throw ValidationError(message);
      ++stats_->skipped;
      stats_->warnings.push_back(message);
      return;
    }
    NliPair pair;
    if (r.uid) {
      pair.uid = std::move(*r.uid);
    } else {
      pair.uid = dataset_.name + ":" + std::to_string(line_no);
      ++stats_->synthesized_uids;
    }
    if (!seen_.insert(pair.uid).second) {
      throw ValidationError("duplicate uid '" + pair.uid + "'" +
                            AtLine(line_no));
    }
    pair.premise = std::move(*r.premise);
    pair.hypothesis = std::move(*r.hypothesis);
    pair.label = *label;
    pair.genre = std::move(r.genre);
    pair.source = std::move(r.source);
    if (pair.premise.empty() || pair.hypothesis.empty()) {
      ++stats_->empty_fields;
    }
    dataset_.pairs.push_back(std::move(pair));
  }

  Dataset Finish() { return std::move(dataset_); }

 private:
  const LoadOptions& options_;
  LoadStats* stats_;
  Dataset dataset_;
  std::unordered_set<std::string> seen_;
};

bool HasTabOrNewline(std::string_view s) {
  return s.find_first_of("\t\n\r") != std::string_view::npos;
}

}  // namespace

std::string_view LabelName(NliLabel label) {
  switch (label) {
    case NliLabel::kContradiction:
      return "contradiction";
    case NliLabel::kEntailment:
      return "entailment";
    case NliLabel::kNeutral:
      return "neutral";
  }
  return "neutral";
}

std::optional<NliLabel> ParseLabel(std::string_view text) {
  const std::string lower = Lower(text);
  if (lower == "contradiction" || lower == "c") {
    return NliLabel::kContradiction;
  }
  if (lower == "entailment" || lower == "e") return NliLabel::kEntailment;
  if (lower == "neutral" || lower == "n") return NliLabel::kNeutral;
  return std::nullopt;
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
  }
  return "dev";
}

std::optional<FileFormat> ParseFileFormat(std::string_view name) {
  const std::string lower = Lower(name);
  if (lower == "jsonl") return FileFormat::kJsonl;
  if (lower == "tsv") return FileFormat::kTsv;
  return std::nullopt;
}

FileFormat FormatFromPath(const std::filesystem::path& path) {
  const std::string ext = Lower(path.extension().string());
  if (ext == ".jsonl" || ext == ".json") return FileFormat::kJsonl;
  if (ext == ".tsv" || ext == ".txt") return FileFormat::kTsv;
  throw UsageError("cannot infer format from '" + path.string() +
                   "'; use a .jsonl or .tsv extension");
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
  return std::move(buf).str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

Dataset LoadDataset(const std::filesystem::path& path, FileFormat format,
                    const LoadOptions& options, LoadStats* stats) {
  LoadStats local;
  if (stats == nullptr) stats = &local;
  const std::string text = ReadFile(path);
  const auto lines = SplitLines(text);
  DatasetBuilder builder(path.stem().string(), options, stats);

  if (format == FileFormat::kJsonl) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (lines[i].find_first_not_of(" \t") == std::string_view::npos) {
        throw ValidationError("empty line" + AtLine(i + 1));
      }
      builder.Add(FromJsonLine(lines[i], i + 1), i + 1);
    }
  } else {
    if (lines.empty()) {
      throw ValidationError("TSV file '" + path.string() +
                            "' has no header row");
    }
    const TsvColumns cols = ParseTsvHeader(lines[0]);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      builder.Add(FromTsvLine(lines[i], cols, i + 1), i + 1);
    }
  }
  return builder.Finish();
}

Dataset LoadDataset(const std::filesystem::path& path) {
  return LoadDataset(path, FormatFromPath(path));
}

void ValidateDataset(const Dataset& dataset) {
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < dataset.pairs.size(); ++i) {
    const std::string& uid = dataset.pairs[i].uid;
    if (uid.empty()) {
      throw ValidationError("empty uid at pair index " + std::to_string(i));
    }
    if (!seen.insert(uid).second) {
      throw ValidationError("duplicate uid '" + uid + "' at pair index " +
                            std::to_string(i));
    }
  }
}

void SaveDataset(const Dataset& dataset, const std::filesystem::path& path,
                 FileFormat format) {
  std::string out;
  if (format == FileFormat::kJsonl) {
    for (const NliPair& p : dataset.pairs) {
      OrderedJson obj;
      obj["uid"] = p.uid;
      obj["premise"] = p.premise;
      obj["hypothesis"] = p.hypothesis;
      obj["label"] = LabelName(p.label);
      if (p.genre) obj["genre"] = *p.genre;
      if (p.source) obj["source"] = *p.source;
      try {
        out += obj.dump();
      } catch (const nlohmann::json::type_error& e) {
        throw ValidationError("cannot serialize pair '" + p.uid +
                              "' for '" + path.string() + "': " + e.what());
      }
      out += '\n';
    }
  } else {
    out += "uid\tpremise\thypothesis\tlabel\tgenre\tsource\n";
    for (const NliPair& p : dataset.pairs) {
      for (std::string_view field :
           {std::string_view(p.uid), std::string_view(p.premise),
            std::string_view(p.hypothesis),
            std::string_view(p.genre.value_or("")),
            std::string_view(p.source.value_or(""))}) {
        if (HasTabOrNewline(field)) {
          throw ValidationError("pair '" + p.uid +
                                "' contains a tab or newline and cannot be "
                                "written as TSV to '" +
                                path.string() + "'");
        }
      }
      out += p.uid + '\t' + p.premise + '\t' + p.hypothesis + '\t' +
             std::string(LabelName(p.label)) + '\t' + p.genre.value_or("") +
             '\t' + p.source.value_or("") + '\n';
    }
  }
  WriteFile(path, out);
}

PredictionSet LoadPredictions(const std::filesystem::path& path,
                              FileFormat format) {
  PredictionSet set;
  set.model_name = path.stem().string();
  const std::string text = ReadFile(path);
  const auto lines = SplitLines(text);

  auto add = [&](std::string uid, std::string_view label_text,
                 std::size_t line_no) {
    const auto label = ParseLabel(label_text);
    if (!label) {
      throw ValidationError("unknown label '" + std::string(label_text) +
                            "'" + AtLine(line_no));
    }
    if (uid.empty()) throw ValidationError("empty uid" + AtLine(line_no));
    auto [it, inserted] = set.entries.insert_or_assign(std::move(uid), *label);
    if (!inserted) ++set.duplicates;
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    const std::size_t line_no = i + 1;
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      throw ValidationError("empty line" + AtLine(line_no));
    }
    if (format == FileFormat::kJsonl) {
      const RawRecord r = FromJsonLine(line, line_no);
      if (!r.uid) throw ValidationError("missing uid" + AtLine(line_no));
      if (!r.label) throw ValidationError("missing label" + AtLine(line_no));
      add(*r.uid, *r.label, line_no);
    } else {
      const auto cells = SplitTabs(line);
      if (cells.size() != 2) {
        throw ValidationError("expected two tab-separated columns" +
                              AtLine(line_no));
      }
      if (i == 0 && cells[0] == "uid") continue;  // header
      add(std::string(cells[0]), cells[1], line_no);
    }
  }
  return set;
}

PredictionSet LoadPredictions(const std::filesystem::path& path) {
  return LoadPredictions(path, FormatFromPath(path));
}

void SavePredictions(const PredictionSet& predictions,
                     const std::filesystem::path& path) {
  std::string out;
  if (FormatFromPath(path) == FileFormat::kTsv) {
    out += "uid\tlabel\n";
    for (const auto& [uid, label] : predictions.entries) {
      out += uid + '\t' + std::string(LabelName(label)) + '\n';
    }
  } else {
    for (const auto& [uid, label] : predictions.entries) {
      OrderedJson obj;
      obj["uid"] = uid;
      obj["label"] = LabelName(label);
      out += obj.dump() + '\n';
    }
  }
  WriteFile(path, out);
}

}  // namespace nlicrash
