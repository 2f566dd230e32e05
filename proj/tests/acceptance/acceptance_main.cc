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

// Acceptance suite. Prints one PASS/FAIL (or SKIP) line per criterion and
// exits non-zero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "nlicrash/corpus.h"
#include "nlicrash/diagnostics.h"
#include "nlicrash/metrics.h"
#include "nlicrash/probes.h"
#include "nlicrash/random.h"
#include "nlicrash/synthetic.h"
#include "nlicrash/tagger.h"
#include "nlicrash/tokenizer.h"
#include "nlicrash/transforms.h"

namespace nlicrash {
namespace {

namespace fs = std::filesystem;

constexpr double kPinnedTaggerAccuracy = 94.708;  // percent

struct Outcome {
  enum Status { kPass, kFail, kSkip } status = kPass;
  std::string detail;
};

Outcome Pass(std::string detail) { return {Outcome::kPass, std::move(detail)}; }
Outcome Fail(std::string detail) { return {Outcome::kFail, std::move(detail)}; }
Outcome Skip(std::string detail) { return {Outcome::kSkip, std::move(detail)}; }

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

std::string Fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult RunCli(const std::string& args) {
  const std::string cmd = "env -u NLI_CRASHTEST_MODEL " +
                          std::string(NLICRASH_CLI_PATH) + " " + args + " 2>&1";
  CliResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.output.append(buf.data(), n);
  }
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Workspace {
 public:
  Workspace()
      : dir_(fs::temp_directory_path() /
             ("nlicrash_acceptance_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string operator()(std::string_view name) const {
    return (dir_ / name).string();
  }

 private:
  fs::path dir_;
};

fs::path Fixture(std::string_view rel) {
  return fs::path(NLICRASH_SOURCE_DIR) / "fixtures" / rel;
}

// Real sentences from the tagger fixture, paired off as premise/hypothesis
// with cycling labels.
Dataset SentencePairs(std::size_t pairs) {
  const auto sentences = LoadPretagged(Fixture("ud-sample/train.txt"));
  Dataset d;
  d.name = "ud-pairs";
  for (std::size_t i = 0; i < pairs && 2 * i + 1 < sentences.size(); ++i) {
    NliPair p;
    p.uid = "ud-" + std::to_string(i);
    p.premise = Detokenize(sentences[2 * i].Tokens());
    p.hypothesis = Detokenize(sentences[2 * i + 1].Tokens());
    p.label = static_cast<NliLabel>(i % kNumLabels);
    d.pairs.push_back(std::move(p));
  }
  return d;
}

std::vector<Token> Interleave(const TaggedSentence& s, PosSet tags,
                              const std::vector<Token>& dropped,
                              const std::vector<Token>& kept) {
  std::vector<Token> out;
  std::size_t di = 0, ki = 0;
  for (const TaggedToken& t : s.tokens) {
    if (tags.Contains(t.tag)) {
      if (ki < kept.size()) out.push_back(kept[ki++]);
    } else {
      if (di < dropped.size()) out.push_back(dropped[di++]);
    }
  }
  if (di != dropped.size() || ki != kept.size()) out.clear();
  return out;
}

// 1. drop ⊎ keep reconstructs every sentence for all 13 presets.
Outcome PartitionProperty(const TaggerModel& model) {
  const auto start = std::chrono::steady_clock::now();
  const Dataset d = SentencePairs(1000);
  if (d.pairs.size() != 1000) return Fail("fixture has too few sentences");
  const PretaggedTagSource tags = PretaggedTagSource::FromModel(model, d, 4);
  std::size_t checks = 0, failures = 0;
  for (const Preset& preset : WordClassPresets()) {
    const PosSet p = preset.spec.tags;
    for (const NliPair& pair : d.pairs) {
      for (Field field : {Field::kPremise, Field::kHypothesis}) {
        const TaggedSentence s = tags.Tagged(pair, field);
        const auto dropped = DropPos(s, p);
        const auto kept = KeepPos(s, p);
        ++checks;
        if (Interleave(s, p, dropped, kept) != s.Tokens()) ++failures;
      }
    }
  }
  const double secs = Seconds(start);
  const std::string detail = std::to_string(checks) + " sentence checks, " +
                             std::to_string(failures) + " failures, " +
                             Fmt("%.2f s", secs);
  return failures == 0 && secs < 10.0 ? Pass(detail) : Fail(detail);
}

// 2. corrupt_dataset's report equals an independent recount.
Outcome RemovalAccounting(const TaggerModel& model) {
  std::vector<std::pair<std::string, Dataset>> fixtures;
  fixtures.emplace_back("ud-pairs", SentencePairs(1000));
  SyntheticOptions opts;
  opts.pairs = 1000;
  opts.seed = 3;
  fixtures.emplace_back("planted", MakePlantedBiasDataset(opts));

  std::vector<std::pair<std::string, TransformSpec>> specs;
  for (const Preset& p : WordClassPresets()) specs.emplace_back(p.name, p.spec);
  specs.emplace_back("noun-pron",
                     TransformSpec::Drop({UniversalPos::kNoun, UniversalPos::kPron}));
  TransformSpec hyp_side = TransformSpec::Drop({UniversalPos::kDet});
  hyp_side.apply_to = ApplyTo::kHypothesisOnly;
  specs.emplace_back("det-hyp-only", hyp_side);
  specs.emplace_back("hypothesis-only", TransformSpec::HypothesisOnly());
  specs.emplace_back("identity", TransformSpec::Identity());

  std::size_t runs = 0;
  for (const auto& [fixture_name, d] : fixtures) {
    const PretaggedTagSource tags = PretaggedTagSource::FromModel(model, d, 4);
    for (const auto& [name, spec] : specs) {
      const CorruptionResult r = CorruptDataset(d, spec, &tags, 4);
      const TransformReport recount = RemovalStats(d, r.dataset);
      ++runs;
      if (!(recount == r.report)) {
        return Fail(fixture_name + "/" + name + ": report " + r.report.ToJson() +
                    " vs recount " + recount.ToJson());
      }
      if (r.report.premise_tokens_removed + r.report.hypothesis_tokens_removed !=
          r.report.total_tokens_removed) {
        return Fail(fixture_name + "/" + name + ": totals do not add up");
      }
    }
  }
  return Pass(std::to_string(runs) + " runs, reports equal recounts exactly");
}

// 3. Token removal totals on a local MNLI training file.
Outcome MnliRemovalTotals(const TaggerModel& model) {
  const char* path = std::getenv("NLICRASH_MNLI_TRAIN");
  if (path == nullptr || *path == '\0') {
    return Skip("set NLICRASH_MNLI_TRAIN to an MNLI train file to run");
  }
  const auto start = std::chrono::steady_clock::now();
  const Dataset d = LoadDataset(path, FormatFromPath(path), {true}, nullptr);
  const int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const PretaggedTagSource tags = PretaggedTagSource::FromModel(model, d, jobs);
  using P = UniversalPos;
  const std::vector<std::tuple<std::string, PosSet, double>> expected = {
      {"num", {P::kNum}, 163876},          {"conj", {P::kConj}, 396676},
      {"adv", {P::kAdv}, 730145},          {"pron", {P::kPron}, 845261},
      {"adj", {P::kAdj}, 979747},          {"det", {P::kDet}, 1370204},
      {"verb", {P::kVerb}, 2361051},       {"noun", {P::kNoun}, 3319594},
      {"noun-pron", {P::kNoun, P::kPron}, 4164855},
  };
  std::ostringstream detail;
  bool ok = true;
  for (const auto& [name, tagset, total] : expected) {
    const auto r = CorruptDataset(d, TransformSpec::Drop(tagset), &tags, jobs);
    const double rel =
        (static_cast<double>(r.report.total_tokens_removed) - total) / total;
    detail << name << " " << r.report.total_tokens_removed << " ("
           << Fmt("%+.1f%%", 100 * rel) << ") ";
    ok = ok && std::abs(rel) <= 0.05;
  }
  const double secs = Seconds(start);
  detail << Fmt("%.0f s", secs);
  return ok && secs < 300 ? Pass(detail.str()) : Fail(detail.str());
}

// 4. Deltas recomputed from published accuracies.
Outcome DeltaArithmetic() {
  struct Cell {
    const char* row;
    double accuracy;
    double delta;
    double baseline;
  };
  // MNLI rows: Corrupt-Train, Corrupt-Test, both; baseline 83.74.
  const std::vector<std::tuple<const char*, double, double, double, double,
                               double, double>>
      mnli = {
          {"mnli-num", 82.37, -1.37, 81.71, -2.03, 81.87, -1.87},
          {"mnli-conj", 83.09, -0.65, 82.75, -0.99, 83.10, -0.64},
          {"mnli-adv", 80.21, -3.53, 72.41, -11.33, 75.69, -8.05},
          {"mnli-pron", 83.27, -0.47, 81.98, -1.75, 82.65, -1.09},
          {"mnli-adj", 81.67, -2.07, 74.61, -9.13, 76.44, -7.30},
          {"mnli-det", 83.15, -0.59, 79.29, -4.44, 81.32, -2.42},
          {"mnli-verb", 81.40, -2.34, 73.96, -9.78, 76.30, -7.44},
          {"mnli-noun", 80.72, -3.02, 69.80, -13.94, 73.38, -10.35},
          {"mnli-noun-pron", 79.74, -4.00, 68.41, -15.33, 72.14, -11.60},
          {"noun+pron+verb", 72.55, -11.19, 54.59, -29.15, 62.18, -21.56},
          {"noun+adv+verb", 67.58, -16.16, 62.58, -21.16, 67.58, -16.16},
          {"noun+verb", 71.14, -12.60, 52.90, -30.84, 61.31, -22.43},
          {"noun+verb+adj", 75.54, -8.20, 61.90, -21.84, 68.20, -15.54},
          {"noun+verb+adv+adj", 79.81, -3.93, 71.81, -11.93, 76.29, -7.45},
      };
  // ANLI rows: R1, R2, R3 against 73.8, 48.9, 44.4.
  const std::vector<std::tuple<const char*, double, double, double, double,
                               double, double>>
      anli = {
          {"anli-conj", 70.2, -3.6, 49.0, 0.1, 46.5, 2.1},
          {"anli-pron", 69.6, -4.2, 49.7, 0.8, 45.0, 0.6},
          {"anli-det", 69.5, -4.3, 49.4, 0.5, 45.0, 0.6},
          {"anli-adv", 67.1, -6.7, 49.6, 0.7, 43.8, -0.6},
          {"anli-adj", 60.2, -13.6, 45.1, -3.8, 45.0, 0.6},
          {"anli-num", 58.7, -15.1, 43.8, -5.1, 45.1, 0.7},
          {"anli-verb", 54.6, -19.2, 44.7, -4.2, 39.3, -5.1},
          {"anli-noun", 43.7, -30.1, 36.0, -12.9, 32.4, -12.0},
      };
  std::vector<Cell> cells;
  for (const auto& [row, a1, d1, a2, d2, a3, d3] : mnli) {
    cells.push_back({row, a1, d1, 83.74});
    cells.push_back({row, a2, d2, 83.74});
    cells.push_back({row, a3, d3, 83.74});
  }
  for (const auto& [row, a1, d1, a2, d2, a3, d3] : anli) {
    cells.push_back({row, a1, d1, 73.8});
    cells.push_back({row, a2, d2, 48.9});
    cells.push_back({row, a3, d3, 44.4});
  }

  // Each accuracy becomes a prediction file over 10,000 pairs with
  // round(accuracy * 100) correct labels.
  constexpr std::size_t kPairs = 10000;
  Dataset gold;
  gold.name = "delta-gold";
  for (std::size_t i = 0; i < kPairs; ++i) {
    NliPair p;
    p.uid = "g" + std::to_string(i);
    p.premise = "P";
    p.hypothesis = "H";
    p.label = static_cast<NliLabel>(i % kNumLabels);
    gold.pairs.push_back(std::move(p));
  }
  double worst = 0.0;
  std::string worst_row;
  std::size_t failures = 0;
  for (const Cell& c : cells) {
    const auto correct = static_cast<std::size_t>(std::llround(c.accuracy * 100));
    PredictionSet pred;
    for (std::size_t i = 0; i < kPairs; ++i) {
      const NliLabel g = gold.pairs[i].label;
      pred.entries[gold.pairs[i].uid] =
          i < correct ? g : static_cast<NliLabel>((static_cast<int>(g) + 1) % 3);
    }
    const EvalResult r = Accuracy(pred, gold, c.baseline);
    const double err = std::abs(*r.delta_points - c.delta);
    if (err > worst) {
      worst = err;
      worst_row = c.row;
    }
    // The printed deltas carry two decimals; allow for float noise on top of
    // the ±0.01 tolerance.
    if (err > 0.01 + 1e-9) {
      ++failures;
      std::cerr << "  delta mismatch " << c.row << ": computed "
                << FormatFixed2(*r.delta_points) << ", printed "
                << FormatFixed2(c.delta) << "\n";
    }
  }
  const std::string detail = std::to_string(cells.size()) + " cells, " +
                             std::to_string(failures) + " beyond ±0.01 (max " +
                             Fmt("%.4f", worst) + " at " + worst_row + ")";
  return failures == 0 ? Pass(detail) : Fail(detail);
}

// 5. ASI anchors and default verdicts through the prediction-file suite.
Outcome AsiSeparation() {
  auto run = [](const std::string& name, double baseline, double accuracy,
                std::size_t pairs) {
    Dataset d;
    d.name = name;
    std::vector<PretaggedEntry> entries;
    for (std::size_t i = 0; i < pairs; ++i) {
      NliPair p;
      p.uid = name + "-" + std::to_string(i);
      p.premise = "Dogs chase cats.";
      p.hypothesis = "Cats run.";
      p.label = static_cast<NliLabel>(i % kNumLabels);
      d.pairs.push_back(p);
      using P = UniversalPos;
      entries.push_back({p.uid, "premise",
                         MakeTaggedSentence({{"Dogs", P::kNoun},
                                             {"chase", P::kVerb},
                                             {"cats", P::kNoun},
                                             {".", P::kPunct}})});
      entries.push_back({p.uid, "hypothesis",
                         MakeTaggedSentence({{"Cats", P::kNoun},
                                             {"run", P::kVerb},
                                             {".", P::kPunct}})});
    }
    const PretaggedTagSource tags(entries, d);
    SuiteConfig config;
    config.name = name;
    config.baseline_accuracy_pct = baseline;
    config.transforms = {{name + "-noun", *FindPreset("noun"), false}};
    const auto correct = static_cast<std::size_t>(
        std::llround(accuracy / 100.0 * static_cast<double>(pairs)));
    PredictionSet pred;
    for (std::size_t i = 0; i < pairs; ++i) {
      const NliLabel g = d.pairs[i].label;
      pred.entries[d.pairs[i].uid] =
          i < correct ? g : static_cast<NliLabel>((static_cast<int>(g) + 1) % 3);
    }
    SuiteInputs inputs;
    inputs.tags = &tags;
    inputs.predictions[name + "-noun"] = pred;
    return RunSuite(d, config, inputs);
  };
  const DiagnosticReport mnli = run("mnli", 83.74, 69.80, 10000);
  const DiagnosticReport anli = run("anli-r1", 73.8, 43.7, 1000);
  const double mnli_asi = mnli.rows.at(0).asi.value_or(-1);
  const double anli_asi = anli.rows.at(0).asi.value_or(-1);
  const bool ok = std::abs(mnli_asi - 0.723) <= 0.005 &&
                  std::abs(anli_asi - 0.256) <= 0.005 &&
                  mnli.verdict.verdict == Verdict::kArtefactProne &&
                  anli.verdict.verdict != Verdict::kArtefactProne;
  const std::string detail =
      Fmt("MNLI noun ASI %.4f, ANLI-R1 noun ASI %.4f", mnli_asi, anli_asi) +
      "; verdicts " + std::string(VerdictName(mnli.verdict.verdict)) + " / " +
      std::string(VerdictName(anli.verdict.verdict));
  return ok ? Pass(detail) : Fail(detail);
}

// 6. Tagger quality against the pinned constant.
Outcome TaggerQuality(const TaggerModel& model, double train_seconds) {
  const double acc =
      100.0 * EvaluateTagger(model, LoadPretagged(Fixture("ud-sample/heldout.txt")));
  const std::string detail =
      Fmt("held-out %.3f%% (pinned %.3f%%), training %.2f s", acc,
          kPinnedTaggerAccuracy, train_seconds);
  return std::abs(acc - kPinnedTaggerAccuracy) <= 0.2 && train_seconds < 60.0
             ? Pass(detail)
             : Fail(detail);
}

// 7. Shuffle properties.
Outcome ShuffleProperties() {
  SeededRng meta(2718);
  std::size_t multiset_fail = 0, identity_fail = 0, repeat_fail = 0;
  constexpr int kTrials = 10000;
  for (int trial = 0; trial < kTrials; ++trial) {
    const auto len = meta.Below(21);
    std::vector<std::string> forms;
    for (std::uint64_t i = 0; i < len; ++i) {
      forms.push_back("t" + std::to_string(meta.Below(8)));
    }
    const auto tokens = MakeTokens(forms);
    const int n = static_cast<int>(1 + meta.Below(6));
    const std::uint64_t seed = meta.Next();
    SeededRng a(seed), b(seed);
    const auto out = ShuffleNgrams(tokens, n, a);
    auto sorted_in = forms;
    auto sorted_out = Forms(out);
    std::sort(sorted_in.begin(), sorted_in.end());
    std::sort(sorted_out.begin(), sorted_out.end());
    if (sorted_in != sorted_out) ++multiset_fail;
    if (static_cast<std::size_t>(n) >= tokens.size() && out != tokens) {
      ++identity_fail;
    }
    if (ShuffleNgrams(tokens, n, b) != out) ++repeat_fail;
  }

  // 8 tokens in 4 chunks of 2: 24 equally likely orders.
  const auto tokens = MakeTokens({"a", "b", "c", "d", "e", "f", "g", "h"});
  std::map<std::vector<std::string>, int> freq;
  constexpr int kSeeds = 1000;
  for (int seed = 0; seed < kSeeds; ++seed) {
    SeededRng rng(static_cast<std::uint64_t>(seed));
    ++freq[Forms(ShuffleNgrams(tokens, 2, rng))];
  }
  const double p = 1.0 / 24.0;
  const double mean = kSeeds * p;
  const double sigma = std::sqrt(kSeeds * p * (1 - p));
  double worst_z = 0.0;
  for (const auto& [order, count] : freq) {
    worst_z = std::max(worst_z, std::abs(count - mean) / sigma);
  }
  // Orders never drawn count as zero.
  if (freq.size() < 24) worst_z = std::max(worst_z, mean / sigma);
  const bool ok = multiset_fail == 0 && identity_fail == 0 && repeat_fail == 0 &&
                  worst_z <= 3.0;
  const std::string detail =
      std::to_string(kTrials) + " trials: multiset " +
      std::to_string(multiset_fail) + ", identity " + std::to_string(identity_fail) +
      ", repeat " + std::to_string(repeat_fail) + " failures; " +
      std::to_string(freq.size()) + "/24 orders seen, max |z| " +
      Fmt("%.2f", worst_z);
  return ok ? Pass(detail) : Fail(detail);
}

// 8. Planted-cue detection, label-shuffled control and the suite gate.
Outcome ProbeBiasDetection(const Workspace& ws) {
  const auto start = std::chrono::steady_clock::now();
  SyntheticOptions opts;
  opts.pairs = 2000;
  opts.seed = 11;
  opts.cue_consistency = 0.95;
  opts.name = "biased";
  const Dataset biased = MakePlantedBiasDataset(opts);
  Dataset control = ShuffleLabels(biased, 5);
  control.name = "control";

  auto held_out = [](const Dataset& d) {
    const std::size_t cut = d.pairs.size() * 8 / 10;
    Dataset train = d, test = d;
    train.pairs.assign(d.pairs.begin(), d.pairs.begin() + cut);
    test.pairs.assign(d.pairs.begin() + cut, d.pairs.end());
    return EvalProbe(TrainProbe(train, Featurizer::kHypBow, 5, 7), test)
        .result.accuracy_pct;
  };
  const double biased_acc = held_out(biased);
  const double control_acc = held_out(control);

  SaveDataset(biased, ws("biased.jsonl"), FileFormat::kJsonl);
  SaveDataset(control, ws("control.jsonl"), FileFormat::kJsonl);
  const std::string common =
      " --mode probe --seed 7 --gate --model " + ws("tagger.apt") + " --json ";
  const CliResult gate_biased =
      RunCli("suite --in " + ws("biased.jsonl") + common + ws("b.json"));
  const CliResult gate_control =
      RunCli("suite --in " + ws("control.jsonl") + common + ws("c.json"));
  const double secs = Seconds(start);

  const bool ok = biased_acc >= 90.0 && std::abs(control_acc - 33.3) <= 5.0 &&
                  gate_biased.exit_code == 3 && gate_control.exit_code == 0 &&
                  secs < 60.0;
  std::string detail =
      Fmt("held-out biased %.2f%%, control %.2f%%", biased_acc, control_acc) +
      "; suite --gate exits " + std::to_string(gate_biased.exit_code) + " / " +
      std::to_string(gate_control.exit_code) + Fmt("; %.1f s", secs);
  if (!ok) detail += "\n" + gate_biased.output + gate_control.output;
  return ok ? Pass(detail) : Fail(detail);
}

// 9. Overlap against a brute-force oracle.
Outcome OverlapOracle() {
  static const std::vector<std::string> kVocab = {
      "the", "The", "a", "dog", "Dog", "runs", "ran", "cat", "is", "not",
      "n't", "blue", "sky", ".", ",", "!", "42"};
  SeededRng rng(31337);
  std::size_t mismatches = 0;
  constexpr int kPairs = 500;
  for (int i = 0; i < kPairs; ++i) {
    std::vector<std::string> side[2];
    for (auto& words : side) {
      const auto len = rng.Below(11);
      for (std::uint64_t k = 0; k < len; ++k) {
        words.push_back(kVocab[rng.Below(kVocab.size())]);
      }
    }
    NliPair pair;
    pair.uid = "o" + std::to_string(i);
    for (const auto& w : side[0]) pair.premise += w + " ";
    for (const auto& w : side[1]) pair.hypothesis += w + " ";

    // Case-folded word types, punctuation excluded, by plain nested loops.
    auto types = [](const std::vector<std::string>& words) {
      std::vector<std::string> out;
      for (const std::string& w : words) {
        if (IsPunctuation(w)) continue;
        const std::string f = FoldCase(w);
        bool seen = false;
        for (const std::string& t : out) seen = seen || t == f;
        if (!seen) out.push_back(f);
      }
      return out;
    };
    const auto prem = types(side[0]);
    const auto hyp = types(side[1]);
    double oracle = 0.0;
    if (!hyp.empty()) {
      int shared = 0;
      for (const auto& h : hyp) {
        for (const auto& p : prem) {
          if (h == p) {
            ++shared;
            break;
          }
        }
      }
      oracle = static_cast<double>(shared) / static_cast<double>(hyp.size());
    }
    if (LexicalOverlap(pair) != oracle) ++mismatches;
  }
  const std::string detail = std::to_string(kPairs) + " pairs, " +
                             std::to_string(mismatches) + " mismatches";
  return mismatches == 0 ? Pass(detail) : Fail(detail);
}

// 10. --jobs 1 and --jobs 8 give byte-identical files.
Outcome ParallelDeterminism(const Workspace& ws) {
  const CliResult synth =
      RunCli("synth --out " + ws("big.jsonl") + " --pairs 10000 --seed 21");
  if (synth.exit_code != 0) return Fail("synth failed: " + synth.output);
  const std::string model = " --model " + ws("tagger.apt");
  const std::vector<std::pair<std::string, std::string>> corrupt_runs = {
      {"noun", "--preset noun" + model},
      {"keep", "--transform keep --tags NOUN,VERB" + model},
      {"shuffle", "--transform shuffle --n 2 --seed 42"},
  };
  std::vector<std::pair<std::string, std::string>> compared;
  for (const auto& [name, flags] : corrupt_runs) {
    for (int jobs : {1, 8}) {
      const std::string tag = name + "-j" + std::to_string(jobs);
      const CliResult r = RunCli("corrupt --in " + ws("big.jsonl") + " --out " +
                                 ws(tag + ".jsonl") + " --report " +
                                 ws(tag + ".report.json") + " --jobs " +
                                 std::to_string(jobs) + " " + flags);
      if (r.exit_code != 0) return Fail("corrupt " + tag + ": " + r.output);
    }
    compared.emplace_back(name + "-j1.jsonl", name + "-j8.jsonl");
    compared.emplace_back(name + "-j1.report.json", name + "-j8.report.json");
  }
  for (int jobs : {1, 8}) {
    const std::string j = std::to_string(jobs);
    const CliResult r = RunCli(
        "suite --in " + ws("big.jsonl") + " --mode probe --seed 7" + model +
        " --jobs " + j + " --json " + ws("suite-j" + j + ".json") +
        " --markdown " + ws("suite-j" + j + ".md") + " --csv " +
        ws("suite-j" + j + ".csv"));
    if (r.exit_code != 0) return Fail("suite --jobs " + j + ": " + r.output);
  }
  for (const char* ext : {".json", ".md", ".csv"}) {
    compared.emplace_back(std::string("suite-j1") + ext,
                          std::string("suite-j8") + ext);
  }
  for (const auto& [a, b] : compared) {
    if (ReadFile(ws(a)) != ReadFile(ws(b))) return Fail(a + " differs from " + b);
  }
  return Pass(std::to_string(compared.size()) +
              " output pairs byte-identical on 10,000 pairs");
}

int Main() {
  Workspace ws;
  const auto start = std::chrono::steady_clock::now();
  const TaggerModel model =
      TrainTagger(LoadPretagged(Fixture("ud-sample/train.txt")), 5, 1, "ud-sample");
  const double train_seconds = Seconds(start);
  SaveTagger(model, ws("tagger.apt"));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 partition property", [&] { return PartitionProperty(model); }},
      {"2 removal accounting", [&] { return RemovalAccounting(model); }},
      {"3 token removal totals on MNLI", [&] { return MnliRemovalTotals(model); }},
      {"4 delta arithmetic", [] { return DeltaArithmetic(); }},
      {"5 ASI separation", [] { return AsiSeparation(); }},
      {"6 tagger quality", [&] { return TaggerQuality(model, train_seconds); }},
      {"7 shuffle properties", [] { return ShuffleProperties(); }},
      {"8 probe bias detection", [&] { return ProbeBiasDetection(ws); }},
      {"9 overlap oracle", [] { return OverlapOracle(); }},
      {"10 determinism under --jobs", [&] { return ParallelDeterminism(ws); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = Fail(std::string("exception: ") + e.what());
    }
    const char* status = o.status == Outcome::kPass   ? "PASS"
                         : o.status == Outcome::kSkip ? "SKIP"
                                                      : "FAIL";
    if (o.status == Outcome::kFail) ++failed;
    std::cout << status << "  criterion " << name << ": " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria met" : std::to_string(failed) +
                                                       " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace nlicrash

int main() { return nlicrash::Main(); }
