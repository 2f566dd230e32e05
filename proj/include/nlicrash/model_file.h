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

// Versioned text container for perceptron models (taggers and probes).
//
//   nlicrash-model<TAB>1
//   kind<TAB>tagger
//   classes<TAB>ADJ<TAB>ADP<TAB>...
//   meta<TAB>epochs<TAB>5
//   ...
//   weights<TAB><count>
//   <feature><TAB><class><TAB><weight>
//   ...
//   end
//
// Weight rows are sorted by (feature, class index) and weights are written in
// shortest round-trip form, so equal models serialize to identical bytes.

#ifndef NLICRASH_MODEL_FILE_H_
#define NLICRASH_MODEL_FILE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlicrash/perceptron.h"

namespace nlicrash {

inline constexpr int kModelFormatVersion = 1;

struct ModelFile {
  std::string kind;
  std::vector<std::string> classes;
  std::vector<std::pair<std::string, std::string>> metadata;
  AveragedPerceptron perceptron{1};

  std::optional<std::string> Meta(std::string_view key) const;
};

std::string SerializeModel(const ModelFile& model);

// Throws ParseError (with byte offset) on malformed or truncated input and
// on a version other than kModelFormatVersion ("unsupported model version").
ModelFile ParseModel(std::string_view text);

void SaveModelFile(const ModelFile& model, const std::filesystem::path& path);
ModelFile LoadModelFile(const std::filesystem::path& path);

}  // namespace nlicrash

#endif  // NLICRASH_MODEL_FILE_H_
