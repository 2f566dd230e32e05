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

#include "nlicrash/synthetic.h"

#include <array>
#include <span>
#include <vector>

#include "nlicrash/error.h"
#include "nlicrash/random.h"

namespace nlicrash {
namespace {

constexpr std::array<std::string_view, 6> kDeterminers = {
    "The", "A", "This", "That", "Every", "One"};
constexpr std::array<std::string_view, 12> kAdjectives = {
    "old", "young", "tall", "quiet", "happy", "small",
    "red", "busy", "tired", "clever", "brave", "green"};
constexpr std::array<std::string_view, 16> kNouns = {
    "man",    "woman",  "dog",   "child", "farmer", "teacher",
    "doctor", "singer", "horse", "cat",   "pilot",  "student",
    "boat",   "house",  "river", "garden"};
constexpr std::array<std::string_view, 12> kVerbs = {
    "watched", "painted", "visited", "found",  "carried", "cleaned",
    "opened",  "passed",  "followed", "helped", "noticed", "crossed"};
constexpr std::array<std::string_view, 8> kPrepositions = {
    "near", "behind", "in", "under", "beside", "across", "past", "above"};

template <std::size_t N>
std::string_view Pick(const std::array<std::string_view, N>& items,
                      SeededRng& rng) {
  return items[static_cast<std::size_t>(rng.Below(N))];
}

std::string Lower(std::string_view det) {
  std::string s(det);
  if (!s.empty() && s[0] >= 'A' && s[0] <= 'Z') s[0] = static_cast<char>(s[0] - 'A' + 'a');
  return s;
}

}  // namespace

std::string_view CueFor(NliLabel label) {
  switch (label) {
    case NliLabel::kContradiction:
      return "not";
    case NliLabel::kEntailment:
      return "also";
    case NliLabel::kNeutral:
      return "perhaps";
  }
  return "";
}

Dataset MakePlantedBiasDataset(const SyntheticOptions& options) {
  if (options.cue_consistency < 0.0 || options.cue_consistency > 1.0) {
    throw UsageError("cue consistency must be in [0, 1]");
  }
  SeededRng rng(options.seed);
  std::vector<NliLabel> labels(options.pairs);
  for (std::size_t i = 0; i < options.pairs; ++i) {
    labels[i] = kAllLabels[i % kNumLabels];
  }
  rng.Shuffle(std::span<NliLabel>(labels));

  Dataset d;
  d.name = options.name;
  d.split = Split::kTrain;
  d.pairs.reserve(options.pairs);
  for (std::size_t i = 0; i < options.pairs; ++i) {
    const NliLabel label = labels[i];
    NliLabel cue_label = label;
    if (rng.Uniform() >= options.cue_consistency) {
      // One of the two other labels, uniformly.
      const auto offset = 1 + rng.Below(2);
      cue_label = kAllLabels[(static_cast<std::size_t>(label) + offset) %
                             kNumLabels];
    }
    // Draws are sequenced one per statement so the stream order is fixed.
    const std::string_view p_det = Pick(kDeterminers, rng);
    const std::string_view p_adj = Pick(kAdjectives, rng);
    const std::string_view subject = Pick(kNouns, rng);
    const std::string_view p_verb = Pick(kVerbs, rng);
    const std::string_view p_det2 = Pick(kDeterminers, rng);
    const std::string_view object = Pick(kNouns, rng);
    const std::string_view prep = Pick(kPrepositions, rng);
    const std::string_view place = Pick(kNouns, rng);
    // The hypothesis reuses premise nouns at random, independently of label.
    const std::string_view h_det = Pick(kDeterminers, rng);
    const std::string_view h_subject = rng.Below(2) ? subject : Pick(kNouns, rng);
    const std::string_view h_verb = Pick(kVerbs, rng);
    const std::string_view h_adj = Pick(kAdjectives, rng);
    const std::string_view h_object = rng.Below(2) ? object : Pick(kNouns, rng);

    std::string premise;
    for (std::string_view w : {p_det, p_adj, subject, p_verb}) {
      premise.append(w).push_back(' ');
    }
    premise += Lower(p_det2);
    for (std::string_view w : {object, prep, std::string_view("the"), place}) {
      premise.push_back(' ');
      premise.append(w);
    }
    premise.push_back('.');
    std::string hypothesis;
    for (std::string_view w : {h_det, h_subject, CueFor(cue_label), h_verb,
                               std::string_view("the"), h_adj}) {
      hypothesis.append(w).push_back(' ');
    }
    hypothesis.append(h_object).push_back('.');
    NliPair pair;
    pair.uid = options.name + "-" + std::to_string(i + 1);
    pair.premise = std::move(premise);
    pair.hypothesis = std::move(hypothesis);
    pair.label = label;
    d.pairs.push_back(std::move(pair));
  }
  return d;
}

Dataset ShuffleLabels(const Dataset& dataset, std::uint64_t seed) {
  std::vector<NliLabel> labels;
  labels.reserve(dataset.pairs.size());
  for (const NliPair& p : dataset.pairs) labels.push_back(p.label);
  SeededRng rng(seed);
  rng.Shuffle(std::span<NliLabel>(labels));
  Dataset out = dataset;
  for (std::size_t i = 0; i < out.pairs.size(); ++i) out.pairs[i].label = labels[i];
  return out;
}

}  // namespace nlicrash
