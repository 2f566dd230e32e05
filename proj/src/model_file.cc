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

#include "nlicrash/model_file.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>
#include <tuple>

#include "nlicrash/corpus.h"
#include "nlicrash/error.h"

namespace nlicrash {
namespace {

constexpr std::string_view kMagic = "nlicrash-model";

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

void CheckCell(std::string_view cell, std::string_view what) {
  if (cell.empty() || cell.find_first_of("\t\n\r") != std::string_view::npos) {
    throw ValidationError(std::string(what) + " '" + std::string(cell) +
                          "' is empty or contains a tab or newline");
  }
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Returns the next line and its starting offset; throws at end of input.
  std::string_view Next() {
    if (pos_ >= text_.size()) {
      throw ParseError("unexpected end of model file (truncated?)",
                       text_.size());
    }
    line_start_ = pos_;
    const std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) {
      // A complete file always ends in a newline.
      throw ParseError("unterminated final line (truncated?)", text_.size());
    }
    pos_ = end + 1;
    return text_.substr(line_start_, end - line_start_);
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(what, line_start_);
  }

  bool AtEnd() const { return pos_ >= text_.size(); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
};

}  // namespace

std::optional<std::string> ModelFile::Meta(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string SerializeModel(const ModelFile& model) {
  const AveragedPerceptron& p = model.perceptron;
  if (model.classes.size() != p.num_classes()) {
    throw std::logic_error("class list does not match perceptron size");
  }
  CheckCell(model.kind, "model kind");
  std::string out;
  out += std::string(kMagic) + '\t' + std::to_string(kModelFormatVersion) +
         '\n';
  out += "kind\t" + model.kind + '\n';
  out += "classes";
  for (const auto& c : model.classes) {
    CheckCell(c, "class name");
    out += '\t' + c;
  }
  out += '\n';
  for (const auto& [k, v] : model.metadata) {
    CheckCell(k, "metadata key");
    CheckCell(v, "metadata value");
    out += "meta\t" + k + '\t' + v + '\n';
  }

  std::vector<std::tuple<std::string_view, std::size_t, double>> rows;
  for (const auto& [feature, w] : p.weights()) {
    CheckCell(feature, "feature");
    for (std::size_t c = 0; c < w.size(); ++c) {
      if (w[c] != 0.0) rows.emplace_back(feature, c, w[c]);
    }
  }
  std::sort(rows.begin(), rows.end());
  out += "weights\t" + std::to_string(rows.size()) + '\n';
  for (const auto& [feature, c, value] : rows) {
    out += std::string(feature) + '\t' + model.classes[c] + '\t' +
           FormatDouble(value) + '\n';
  }
  out += "end\n";
  return out;
}

ModelFile ParseModel(std::string_view text) {
  LineReader reader(text);
  ModelFile model;

  {
    const auto cells = SplitTabs(reader.Next());
    if (cells.size() != 2 || cells[0] != kMagic) {
      reader.Fail("not an nlicrash model file");
    }
    int version = 0;
    auto [ptr, ec] = std::from_chars(
        cells[1].data(), cells[1].data() + cells[1].size(), version);
    if (ec != std::errc() || ptr != cells[1].data() + cells[1].size()) {
      reader.Fail("malformed model version '" + std::string(cells[1]) + "'");
    }
    if (version != kModelFormatVersion) {
      reader.Fail("unsupported model version " + std::to_string(version) +
                  " (expected " + std::to_string(kModelFormatVersion) + ")");
    }
  }
  {
    const auto cells = SplitTabs(reader.Next());
    if (cells.size() != 2 || cells[0] != "kind") reader.Fail("expected kind");
    model.kind = cells[1];
  }
  {
    const auto cells = SplitTabs(reader.Next());
    if (cells.size() < 2 || cells[0] != "classes") {
      reader.Fail("expected class list");
    }
    model.classes.assign(cells.begin() + 1, cells.end());
  }
  model.perceptron = AveragedPerceptron(model.classes.size());

  std::string_view line = reader.Next();
  while (line.starts_with("meta\t")) {
    const auto cells = SplitTabs(line);
    if (cells.size() != 3) reader.Fail("malformed metadata line");
    model.metadata.emplace_back(cells[1], cells[2]);
    line = reader.Next();
  }

  std::size_t count = 0;
  {
    const auto cells = SplitTabs(line);
    if (cells.size() != 2 || cells[0] != "weights") {
      reader.Fail("expected weights header");
    }
    auto [ptr, ec] = std::from_chars(
        cells[1].data(), cells[1].data() + cells[1].size(), count);
    if (ec != std::errc() || ptr != cells[1].data() + cells[1].size()) {
      reader.Fail("malformed weight count");
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto cells = SplitTabs(reader.Next());
    if (cells.size() != 3 || cells[0].empty()) {
      reader.Fail("malformed weight row");
    }
    const auto cls =
        std::find(model.classes.begin(), model.classes.end(), cells[1]);
    if (cls == model.classes.end()) {
      reader.Fail("unknown class '" + std::string(cells[1]) + "'");
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(
        cells[2].data(), cells[2].data() + cells[2].size(), value);
    if (ec != std::errc() || ptr != cells[2].data() + cells[2].size() ||
        !std::isfinite(value)) {
      reader.Fail("malformed weight '" + std::string(cells[2]) + "'");
    }
    model.perceptron.SetWeight(
        std::string(cells[0]),
        static_cast<std::size_t>(cls - model.classes.begin()), value);
  }
  if (reader.Next() != "end") reader.Fail("expected end marker");
  if (!reader.AtEnd()) reader.Fail("trailing data after end marker");
  // An empty model still counts as frozen.
  if (!model.perceptron.finalized()) model.perceptron.Finalize();
  return model;
}

void SaveModelFile(const ModelFile& model, const std::filesystem::path& path) {
  WriteFile(path, SerializeModel(model));
}

ModelFile LoadModelFile(const std::filesystem::path& path) {
  return ParseModel(ReadFile(path));
}

}  // namespace nlicrash
