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

#include "nlicrash/perceptron.h"

#include <stdexcept>

namespace nlicrash {

AveragedPerceptron::AveragedPerceptron(std::size_t num_classes)
    : num_classes_(num_classes) {
  if (num_classes == 0) {
    throw std::invalid_argument("perceptron needs at least one class");
  }
}

std::vector<double> AveragedPerceptron::Scores(
    std::span<const Feature> features) const {
  std::vector<double> scores(num_classes_, 0.0);
  for (const Feature& f : features) {
    if (f.value == 0.0) continue;
    auto it = weights_.find(f.name);
    if (it == weights_.end()) continue;
    const std::vector<double>& w = it->second;
    for (std::size_t c = 0; c < num_classes_; ++c) scores[c] += f.value * w[c];
  }
  return scores;
}

std::size_t AveragedPerceptron::Predict(
    std::span<const Feature> features) const {
  const std::vector<double> scores = Scores(features);
  std::size_t best = 0;
  for (std::size_t c = 1; c < num_classes_; ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return best;
}

void AveragedPerceptron::Observe(std::size_t truth, std::size_t guess,
                                 std::span<const Feature> features) {
  if (finalized_) {
    throw std::logic_error("perceptron weights are frozen after averaging");
  }
  ++instances_;
  if (truth == guess) return;
  for (const Feature& f : features) {
    if (f.value == 0.0) continue;
    auto [wit, inserted] =
        weights_.try_emplace(f.name, std::vector<double>(num_classes_, 0.0));
    auto [ait, ainserted] = accumulators_.try_emplace(
        f.name, Accumulator{std::vector<double>(num_classes_, 0.0),
                            std::vector<std::int64_t>(num_classes_, 0)});
    std::vector<double>& w = wit->second;
    Accumulator& acc = ait->second;
    for (std::size_t c : {truth, guess}) {
      acc.totals[c] += static_cast<double>(instances_ - acc.stamps[c]) * w[c];
      acc.stamps[c] = instances_;
    }
    w[truth] += f.value;
    w[guess] -= f.value;
  }
}

void AveragedPerceptron::Finalize() {
  if (finalized_) return;
  finalized_ = true;
  if (instances_ == 0) {
    weights_.clear();
    accumulators_.clear();
    return;
  }
  const double n = static_cast<double>(instances_);
  for (auto it = weights_.begin(); it != weights_.end();) {
    std::vector<double>& w = it->second;
    Accumulator& acc = accumulators_.at(it->first);
    bool all_zero = true;
    for (std::size_t c = 0; c < num_classes_; ++c) {
      const double total =
          acc.totals[c] + static_cast<double>(instances_ - acc.stamps[c]) * w[c];
      w[c] = total / n;
      if (w[c] != 0.0) all_zero = false;
    }
    it = all_zero ? weights_.erase(it) : std::next(it);
  }
  accumulators_.clear();
}

void AveragedPerceptron::SetWeight(const std::string& feature, std::size_t cls,
                                   double value) {
  if (cls >= num_classes_) throw std::out_of_range("class index out of range");
  finalized_ = true;
  auto [it, inserted] =
      weights_.try_emplace(feature, std::vector<double>(num_classes_, 0.0));
  it->second[cls] = value;
}

}  // namespace nlicrash
