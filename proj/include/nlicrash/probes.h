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

// Shallow linear probes over NLI pairs. A probe that beats chance on
// corrupted or hypothesis-only data is evidence that labels leak through
// surface cues.

#ifndef NLICRASH_PROBES_H_
#define NLICRASH_PROBES_H_

#include <array>
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
#include "nlicrash/perceptron.h"

namespace nlicrash {

enum class Featurizer { kHypBow, kPairOverlap, kHypBowPairOverlap };

// "hyp_bow", "pair_overlap", "hyp_bow+pair_overlap".
std::string_view FeaturizerName(Featurizer featurizer);
std::optional<Featurizer> ParseFeaturizer(std::string_view name);

// Sparse features; zero values are never stored.
using FeatureVector = std::map<std::string, double>;

// hyp_bow: "uni:<w>" and "bi:<w1>_<w2>" counts over case-folded hypothesis
// tokens. pair_overlap: "overlap:<0..10>" (floor of 10 * LexicalOverlap),
// "lendiff:<bucket>" (signed, log-spaced, hypothesis minus premise token
// count) and "shared:<0..4|5+>" (shared type count).
FeatureVector Featurize(const NliPair& pair, Featurizer featurizer);

// Bucket helpers, exposed for tests.
int OverlapBucket(const NliPair& pair);
std::string LengthDiffBucket(long diff);

struct ProbeMetadata {
  Featurizer featurizer = Featurizer::kHypBow;
  int epochs = 0;
  std::uint64_t seed = 0;
  std::string training_set;
};

class ProbeModel {
 public:
  ProbeModel(AveragedPerceptron perceptron, ProbeMetadata metadata);

  NliLabel Predict(const NliPair& pair) const;

  const ProbeMetadata& metadata() const { return metadata_; }
  const AveragedPerceptron& perceptron() const { return perceptron_; }

 private:
  AveragedPerceptron perceptron_;
  ProbeMetadata metadata_;
};

// Pair order is reshuffled every epoch from `seed`. Throws ValidationError on
// an empty dataset or one with fewer than two distinct labels, UsageError on
// epochs < 1.
ProbeModel TrainProbe(const Dataset& dataset, Featurizer featurizer, int epochs,
                      std::uint64_t seed);

struct ProbeEvaluation {
  EvalResult result;
  // confusion[gold][predicted], indexed by NliLabel.
  std::array<std::array<std::size_t, kNumLabels>, kNumLabels> confusion{};
  PredictionSet predictions;
};

// Throws ValidationError on an empty dataset.
ProbeEvaluation EvalProbe(const ProbeModel& model, const Dataset& dataset,
                          int jobs = 1);

std::string SerializeProbe(const ProbeModel& model);
ProbeModel ParseProbe(std::string_view text);
void SaveProbe(const ProbeModel& model, const std::filesystem::path& path);
ProbeModel LoadProbe(const std::filesystem::path& path);

}  // namespace nlicrash

#endif  // NLICRASH_PROBES_H_
