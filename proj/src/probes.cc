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

#include "nlicrash/probes.h"

#include <charconv>
#include <numeric>
#include <set>
#include <span>

#include "nlicrash/error.h"
#include "nlicrash/model_file.h"
#include "nlicrash/parallel.h"
#include "nlicrash/random.h"
#include "nlicrash/tokenizer.h"

namespace nlicrash {
namespace {

constexpr std::string_view kProbeKind = "probe";

std::vector<Feature> ModelFeatures(const NliPair& pair, Featurizer featurizer) {
  const FeatureVector fv = Featurize(pair, featurizer);
  std::vector<Feature> out;
  out.reserve(fv.size() + 1);
  out.push_back({"bias", 1.0});
  for (const auto& [name, value] : fv) out.push_back({name, value});
  return out;
}

template <typename T>
T MetaNumber(const ModelFile& file, std::string_view key) {
  const auto value = file.Meta(key);
  if (!value) return T{};
  T out{};
  auto [ptr, ec] =
      std::from_chars(value->data(), value->data() + value->size(), out);
  if (ec != std::errc() || ptr != value->data() + value->size()) {
    throw ParseError("malformed metadata '" + std::string(key) + "'", 0);
  }
  return out;
}

}  // namespace

std::string_view FeaturizerName(Featurizer featurizer) {
  switch (featurizer) {
    case Featurizer::kHypBow:
      return "hyp_bow";
    case Featurizer::kPairOverlap:
      return "pair_overlap";
    case Featurizer::kHypBowPairOverlap:
      return "hyp_bow+pair_overlap";
  }
  return "unknown";
}

std::optional<Featurizer> ParseFeaturizer(std::string_view name) {
  for (Featurizer f : {Featurizer::kHypBow, Featurizer::kPairOverlap,
                       Featurizer::kHypBowPairOverlap}) {
    if (FeaturizerName(f) == name) return f;
  }
  return std::nullopt;
}

int OverlapBucket(const NliPair& pair) {
  // Integer arithmetic so that e.g. 3/10 lands in bucket 3, not 2.
  std::set<std::string> hyp, prem;
  for (const Token& t : Tokenize(pair.hypothesis)) {
    if (!t.is_punct) hyp.insert(FoldCase(t.form));
  }
  if (hyp.empty()) return 0;
  for (const Token& t : Tokenize(pair.premise)) {
    if (!t.is_punct) prem.insert(FoldCase(t.form));
  }
  std::size_t shared = 0;
  for (const std::string& t : hyp) shared += prem.count(t);
  return static_cast<int>(10 * shared / hyp.size());
}

std::string LengthDiffBucket(long diff) {
  if (diff == 0) return "0";
  const unsigned long mag = diff < 0 ? static_cast<unsigned long>(-diff)
                                     : static_cast<unsigned long>(diff);
  unsigned long lower = 1;
  for (unsigned long b : {1ul, 2ul, 3ul, 5ul, 9ul, 17ul}) {
    if (mag >= b) lower = b;
  }
  return (diff < 0 ? "-" : "+") + std::to_string(lower);
}

FeatureVector Featurize(const NliPair& pair, Featurizer featurizer) {
  FeatureVector fv;
  const bool bow = featurizer != Featurizer::kPairOverlap;
  const bool overlap = featurizer != Featurizer::kHypBow;
  if (bow) {
    std::vector<std::string> words;
    for (const Token& t : Tokenize(pair.hypothesis)) {
      words.push_back(FoldCase(t.form));
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
      fv["uni:" + words[i]] += 1.0;
      if (i + 1 < words.size()) fv["bi:" + words[i] + "_" + words[i + 1]] += 1.0;
    }
  }
  if (overlap) {
    const std::vector<Token> prem = Tokenize(pair.premise);
    const std::vector<Token> hyp = Tokenize(pair.hypothesis);
    std::set<std::string> prem_types, hyp_types;
    for (const Token& t : prem) {
      if (!t.is_punct) prem_types.insert(FoldCase(t.form));
    }
    for (const Token& t : hyp) {
      if (!t.is_punct) hyp_types.insert(FoldCase(t.form));
    }
    std::size_t shared = 0;
    for (const std::string& t : hyp_types) shared += prem_types.count(t);
    const std::size_t bucket =
        hyp_types.empty() ? 0 : 10 * shared / hyp_types.size();
    fv["overlap:" + std::to_string(bucket)] = 1.0;
    fv["lendiff:" + LengthDiffBucket(static_cast<long>(hyp.size()) -
                                     static_cast<long>(prem.size()))] = 1.0;
    fv["shared:" + (shared >= 5 ? std::string("5+") : std::to_string(shared))] =
        1.0;
  }
  return fv;
}

ProbeModel::ProbeModel(AveragedPerceptron perceptron, ProbeMetadata metadata)
    : perceptron_(std::move(perceptron)), metadata_(std::move(metadata)) {
  if (perceptron_.num_classes() != kNumLabels) {
    throw ValidationError("probe model must have exactly three label classes");
  }
}

NliLabel ProbeModel::Predict(const NliPair& pair) const {
  return static_cast<NliLabel>(
      perceptron_.Predict(ModelFeatures(pair, metadata_.featurizer)));
}

ProbeModel TrainProbe(const Dataset& dataset, Featurizer featurizer, int epochs,
                      std::uint64_t seed) {
  if (epochs < 1) throw UsageError("epochs must be a positive integer");
  if (dataset.pairs.empty()) {
    throw ValidationError("cannot train a probe on empty dataset '" +
                          dataset.name + "'");
  }
  std::set<NliLabel> labels;
  for (const NliPair& p : dataset.pairs) labels.insert(p.label);
  if (labels.size() < 2) {
    throw ValidationError("dataset '" + dataset.name +
                          "' has a single label; a probe would be degenerate");
  }

  // Features are fixed per pair, so compute them once.
  std::vector<std::vector<Feature>> features(dataset.pairs.size());
  for (std::size_t i = 0; i < dataset.pairs.size(); ++i) {
    features[i] = ModelFeatures(dataset.pairs[i], featurizer);
  }
  AveragedPerceptron perceptron(kNumLabels);
  std::vector<std::size_t> order(dataset.pairs.size());
  std::iota(order.begin(), order.end(), 0);
  SeededRng rng(seed);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.Shuffle(std::span<std::size_t>(order));
    for (std::size_t idx : order) {
      const std::size_t guess = perceptron.Predict(features[idx]);
      perceptron.Observe(static_cast<std::size_t>(dataset.pairs[idx].label),
                         guess, features[idx]);
    }
  }
  perceptron.Finalize();
  return ProbeModel(std::move(perceptron),
                    ProbeMetadata{featurizer, epochs, seed, dataset.name});
}

ProbeEvaluation EvalProbe(const ProbeModel& model, const Dataset& dataset,
                          int jobs) {
  if (dataset.pairs.empty()) {
    throw ValidationError("cannot evaluate on empty dataset '" + dataset.name +
                          "'");
  }
  std::vector<NliLabel> predicted(dataset.pairs.size());
  ParallelFor(dataset.pairs.size(), jobs, [&](std::size_t i) {
    predicted[i] = model.Predict(dataset.pairs[i]);
  });
  ProbeEvaluation eval;
  eval.predictions.model_name = "probe:" + std::string(FeaturizerName(
                                               model.metadata().featurizer));
  for (std::size_t i = 0; i < dataset.pairs.size(); ++i) {
    const NliPair& p = dataset.pairs[i];
    ++eval.confusion[static_cast<std::size_t>(p.label)]
                    [static_cast<std::size_t>(predicted[i])];
    eval.predictions.entries[p.uid] = predicted[i];
  }
  eval.result = Accuracy(eval.predictions, dataset);
  return eval;
}

std::string SerializeProbe(const ProbeModel& model) {
  ModelFile file;
  file.kind = std::string(kProbeKind);
  for (NliLabel l : kAllLabels) file.classes.emplace_back(LabelName(l));
  const ProbeMetadata& meta = model.metadata();
  file.metadata.emplace_back("featurizer",
                             std::string(FeaturizerName(meta.featurizer)));
  file.metadata.emplace_back("epochs", std::to_string(meta.epochs));
  file.metadata.emplace_back("seed", std::to_string(meta.seed));
  if (!meta.training_set.empty()) {
    file.metadata.emplace_back("training_set", meta.training_set);
  }
  file.perceptron = model.perceptron();
  return SerializeModel(file);
}

ProbeModel ParseProbe(std::string_view text) {
  ModelFile file = ParseModel(text);
  if (file.kind != kProbeKind) {
    throw ValidationError("model file holds a '" + file.kind +
                          "' model, not a probe");
  }
  if (file.classes.size() != kNumLabels) {
    throw ValidationError("probe model has an unexpected label inventory");
  }
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (file.classes[i] != LabelName(kAllLabels[i])) {
      throw ValidationError("probe model has an unexpected label inventory");
    }
  }
  ProbeMetadata meta;
  const std::string featurizer = file.Meta("featurizer").value_or("");
  const auto parsed = ParseFeaturizer(featurizer);
  if (!parsed) {
    throw ValidationError("probe model has unknown featurizer '" + featurizer +
                          "'");
  }
  meta.featurizer = *parsed;
  meta.epochs = MetaNumber<int>(file, "epochs");
  meta.seed = MetaNumber<std::uint64_t>(file, "seed");
  meta.training_set = file.Meta("training_set").value_or("");
  return ProbeModel(std::move(file.perceptron), std::move(meta));
}

void SaveProbe(const ProbeModel& model, const std::filesystem::path& path) {
  WriteFile(path, SerializeProbe(model));
}

ProbeModel LoadProbe(const std::filesystem::path& path) {
  return ParseProbe(ReadFile(path));
}

}  // namespace nlicrash
