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

#include <gtest/gtest.h>

#include <map>
#include <string>
#include <vector>

#include "nlicrash/error.h"
#include "nlicrash/model_file.h"

namespace nlicrash {
namespace {

// Eager-averaging reference: every instance adds the weights in effect when it
// was scored to the running sums.
class EagerPerceptron {
 public:
  explicit EagerPerceptron(std::size_t classes) : classes_(classes) {}

  std::size_t Predict(const std::vector<Feature>& features) const {
    std::vector<double> scores(classes_, 0.0);
    for (const Feature& f : features) {
      const auto it = w_.find(f.name);
      if (it == w_.end()) continue;
      for (std::size_t c = 0; c < classes_; ++c) scores[c] += f.value * it->second[c];
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < classes_; ++c) {
      if (scores[c] > scores[best]) best = c;
    }
    return best;
  }

  void Observe(std::size_t truth, std::size_t guess,
               const std::vector<Feature>& features) {
    ++n_;
    for (const auto& [name, row] : w_) {
      auto& sum = Row(sums_, name);
      for (std::size_t c = 0; c < classes_; ++c) sum[c] += row[c];
    }
    if (truth != guess) {
      for (const Feature& f : features) {
        auto& row = Row(w_, f.name);
        row[truth] += f.value;
        row[guess] -= f.value;
      }
    }
  }

  double Averaged(const std::string& name, std::size_t c) const {
    const auto it = sums_.find(name);
    return it == sums_.end() ? 0.0 : it->second[c] / static_cast<double>(n_);
  }

 private:
  std::vector<double>& Row(std::map<std::string, std::vector<double>>& m,
                           const std::string& name) {
    auto [it, inserted] = m.try_emplace(name, classes_, 0.0);
    return it->second;
  }

  std::size_t classes_;
  long n_ = 0;
  std::map<std::string, std::vector<double>> w_, sums_;
};

TEST(AveragedPerceptronTest, LazyAveragingMatchesEagerReference) {
  const std::vector<std::pair<std::size_t, std::vector<Feature>>> data = {
      {0, {{"bias", 1}, {"a", 1}}},
      {1, {{"bias", 1}, {"b", 1}}},
      {2, {{"bias", 1}, {"c", 2}}},
      {1, {{"bias", 1}, {"a", 1}, {"b", 1}}},
      {0, {{"bias", 1}, {"a", 1}, {"c", 1}}},
  };
  AveragedPerceptron lazy(3);
  EagerPerceptron eager(3);
  for (int epoch = 0; epoch < 4; ++epoch) {
    for (const auto& [truth, features] : data) {
      const std::size_t guess = lazy.Predict(features);
      ASSERT_EQ(guess, eager.Predict(features));
      lazy.Observe(truth, guess, features);
      eager.Observe(truth, guess, features);
    }
  }
  lazy.Finalize();
  for (const std::string name : {"bias", "a", "b", "c"}) {
    for (std::size_t c = 0; c < 3; ++c) {
      const auto it = lazy.weights().find(name);
      const double got = it == lazy.weights().end() ? 0.0 : it->second[c];
      EXPECT_NEAR(got, eager.Averaged(name, c), 1e-12) << name << " " << c;
    }
  }
}

TEST(AveragedPerceptronTest, TiesGoToLowestClass) {
  AveragedPerceptron p(3);
  EXPECT_EQ(p.Predict(std::vector<Feature>{{"x", 1}}), 0u);
  p.SetWeight("x", 1, 2.0);
  p.SetWeight("x", 2, 2.0);
  EXPECT_EQ(p.Predict(std::vector<Feature>{{"x", 1}}), 1u);
}

TEST(AveragedPerceptronTest, FrozenAfterFinalize) {
  AveragedPerceptron p(2);
  const std::vector<Feature> f = {{"x", 1}};
  p.Observe(1, 0, f);
  p.Finalize();
  EXPECT_THROW(p.Observe(1, 0, f), std::logic_error);
}

TEST(AveragedPerceptronTest, SeparableToyProblemIsLearned) {
  AveragedPerceptron p(2);
  const std::vector<std::pair<std::size_t, std::vector<Feature>>> data = {
      {0, {{"bias", 1}, {"left", 1}}}, {1, {{"bias", 1}, {"right", 1}}}};
  for (int epoch = 0; epoch < 5; ++epoch) {
    for (const auto& [truth, f] : data) p.Observe(truth, p.Predict(f), f);
  }
  p.Finalize();
  for (const auto& [truth, f] : data) EXPECT_EQ(p.Predict(f), truth);
}

ModelFile SampleModel() {
  ModelFile m;
  m.kind = "probe";
  m.classes = {"a", "b"};
  m.metadata = {{"seed", "3"}};
  m.perceptron = AveragedPerceptron(2);
  m.perceptron.SetWeight("w=x", 0, 0.1);
  m.perceptron.SetWeight("w=x", 1, -1.0 / 3.0);
  m.perceptron.SetWeight("bias", 1, 1e-300);
  return m;
}

TEST(ModelFileTest, RoundTripIsBitIdentical) {
  const std::string text = SerializeModel(SampleModel());
  const ModelFile parsed = ParseModel(text);
  EXPECT_EQ(parsed.kind, "probe");
  EXPECT_EQ(parsed.classes, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(parsed.Meta("seed"), "3");
  EXPECT_EQ(parsed.perceptron.weights().at("w=x")[1], -1.0 / 3.0);
  EXPECT_EQ(SerializeModel(parsed), text);
}

TEST(ModelFileTest, WrongVersionIsRejected) {
  std::string text = SerializeModel(SampleModel());
  text.replace(text.find("\t1\n"), 3, "\t2\n");
  try {
    ParseModel(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported model version"),
              std::string::npos);
  }
}

TEST(ModelFileTest, TruncationReportsByteOffset) {
  const std::string text = SerializeModel(SampleModel());
  for (std::size_t cut : {text.size() - 1, text.size() - 5, text.size() / 2,
                          std::size_t{3}}) {
    try {
      ParseModel(std::string_view(text).substr(0, cut));
      FAIL() << "expected ParseError at cut " << cut;
    } catch (const ParseError& e) {
      EXPECT_LE(e.byte_offset(), cut);
      EXPECT_NE(std::string(e.what()).find("byte offset"), std::string::npos);
    }
  }
}

TEST(ModelFileTest, NonFiniteWeightRejected) {
  std::string text = SerializeModel(SampleModel());
  text.replace(text.find("0.1\n"), 4, "nan\n");
  EXPECT_THROW(ParseModel(text), ParseError);
}

}  // namespace
}  // namespace nlicrash
