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

// Sparse multiclass averaged perceptron shared by the tagger and the probes.
//
// Every call to Observe() counts as one training instance. When the guess is
// wrong, each active feature's weight moves +value toward the truth and
// -value away from the guess. Averages are maintained lazily: a weight's
// running total is only brought up to date when the weight changes, using
// the number of instances it stayed constant. Finalize() replaces the raw
// weights by total / instances and freezes the model.

#ifndef NLICRASH_PERCEPTRON_H_
#define NLICRASH_PERCEPTRON_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace nlicrash {

struct Feature {
  std::string name;
  double value = 1.0;
};

class AveragedPerceptron {
 public:
  using WeightTable = std::unordered_map<std::string, std::vector<double>>;

  explicit AveragedPerceptron(std::size_t num_classes);

  std::size_t num_classes() const { return num_classes_; }
  bool finalized() const { return finalized_; }
  std::int64_t instances() const { return instances_; }

  // Dot products per class. Features absent from the table contribute 0.
  std::vector<double> Scores(std::span<const Feature> features) const;

  // Highest-scoring class; ties go to the lowest class index.
  std::size_t Predict(std::span<const Feature> features) const;

  // One training step. Throws std::logic_error once finalized.
  void Observe(std::size_t truth, std::size_t guess,
               std::span<const Feature> features);

  // Averages the weights, drops all-zero rows and freezes the model.
  void Finalize();

  const WeightTable& weights() const { return weights_; }

  // For deserialization and hand-built models. Marks the model finalized.
  void SetWeight(const std::string& feature, std::size_t cls, double value);

 private:
  struct Accumulator {
    std::vector<double> totals;
    std::vector<std::int64_t> stamps;
  };

  std::size_t num_classes_;
  bool finalized_ = false;
  std::int64_t instances_ = 0;
  WeightTable weights_;
  std::unordered_map<std::string, Accumulator> accumulators_;
};

}  // namespace nlicrash

#endif  // NLICRASH_PERCEPTRON_H_
