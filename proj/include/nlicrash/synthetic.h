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

// Seeded generators for templated NLI fixtures.
//
// Every hypothesis carries one adverb cue: "not" (contradiction), "also"
// (entailment) or "perhaps" (neutral). With probability `cue_consistency` the
// cue matches the pair's label, otherwise it is one of the other two cues.
// Nothing else in the text depends on the label.

#ifndef NLICRASH_SYNTHETIC_H_
#define NLICRASH_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "nlicrash/corpus.h"

namespace nlicrash {

struct SyntheticOptions {
  std::size_t pairs = 1000;
  std::uint64_t seed = 0;
  double cue_consistency = 0.95;
  std::string name = "synthetic";
};

std::string_view CueFor(NliLabel label);

// Labels are balanced round-robin before shuffling, so class counts differ by
// at most one.
Dataset MakePlantedBiasDataset(const SyntheticOptions& options);

// Same pairs, labels permuted uniformly across pairs (seeded). Class counts
// are preserved; any text/label association is destroyed.
Dataset ShuffleLabels(const Dataset& dataset, std::uint64_t seed);

}  // namespace nlicrash

#endif  // NLICRASH_SYNTHETIC_H_
