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

#include "nlicrash/metrics.h"

#include <cmath>
#include <cstdio>
#include <set>

#include "nlicrash/error.h"
#include "nlicrash/parallel.h"
#include "nlicrash/tokenizer.h"

namespace nlicrash {
namespace {

std::set<std::string> ContentTypes(std::string_view text) {
  std::set<std::string> types;
  for (const Token& t : Tokenize(text)) {
    if (!t.is_punct) types.insert(FoldCase(t.form));
  }
  return types;
}

bool UidMatches(std::string_view original, std::string_view corrupted) {
  if (corrupted == original) return true;
  return corrupted.size() > original.size() + kVariantSeparator.size() &&
         corrupted.starts_with(original) &&
         corrupted.substr(original.size()).starts_with(kVariantSeparator);
}

const NliLabel* Lookup(const PredictionSet& predictions, const std::string& uid) {
  const auto it = predictions.entries.find(uid);
  return it == predictions.entries.end() ? nullptr : &it->second;
}

}  // namespace

TransformReport RemovalStats(const Dataset& original, const Dataset& corrupted) {
  if (original.pairs.size() != corrupted.pairs.size()) {
    throw ValidationError("removal stats need equally sized datasets (" +
                          std::to_string(original.pairs.size()) + " vs " +
                          std::to_string(corrupted.pairs.size()) + " pairs)");
  }
  TransformReport r;
  r.pairs_processed = original.pairs.size();
  for (std::size_t i = 0; i < original.pairs.size(); ++i) {
    const NliPair& a = original.pairs[i];
    const NliPair& b = corrupted.pairs[i];
    if (!UidMatches(a.uid, b.uid)) {
      throw ValidationError("uid mismatch at position " + std::to_string(i + 1) +
                            ": '" + a.uid + "' vs '" + b.uid + "'");
    }
    bool left_empty = false;
    auto count = [&](std::string_view before_text, std::string_view after_text,
                     std::string_view field) {
      const std::size_t before = Tokenize(before_text).size();
      const std::size_t after = Tokenize(after_text).size();
      if (after > before) {
        throw ValidationError("pair '" + a.uid + "' " + std::string(field) +
                              " gained tokens (" + std::to_string(before) +
                              " -> " + std::to_string(after) +
                              "); not a removal transform");
      }
      if (before > 0 && after == 0) left_empty = true;
      return before - after;
    };
    r.premise_tokens_removed += count(a.premise, b.premise, "premise");
    r.hypothesis_tokens_removed += count(a.hypothesis, b.hypothesis, "hypothesis");
    if (left_empty) ++r.pairs_left_empty;
  }
  r.total_tokens_removed = r.premise_tokens_removed + r.hypothesis_tokens_removed;
  return r;
}

double LexicalOverlap(const NliPair& pair) {
  const std::set<std::string> hyp = ContentTypes(pair.hypothesis);
  if (hyp.empty()) return 0.0;
  const std::set<std::string> prem = ContentTypes(pair.premise);
  std::size_t shared = 0;
  for (const std::string& t : hyp) shared += prem.count(t);
  return static_cast<double>(shared) / static_cast<double>(hyp.size());
}

OverlapStat DatasetOverlap(const Dataset& dataset, int jobs) {
  if (dataset.pairs.empty()) {
    throw ValidationError("dataset '" + dataset.name + "' has no pairs");
  }
  OverlapStat stat;
  stat.per_pair.resize(dataset.pairs.size());
  ParallelFor(dataset.pairs.size(), jobs, [&](std::size_t i) {
    stat.per_pair[i] = LexicalOverlap(dataset.pairs[i]);
  });
  double sum = 0.0;
  for (double r : stat.per_pair) sum += r;
  stat.dataset_mean_pct = 100.0 * sum / static_cast<double>(stat.per_pair.size());
  return stat;
}

EvalResult Accuracy(const PredictionSet& predictions, const Dataset& gold,
                    std::optional<double> baseline_pct) {
  std::set<std::string_view> gold_uids;
  for (const NliPair& p : gold.pairs) gold_uids.insert(p.uid);
  for (const auto& [uid, label] : predictions.entries) {
    if (!gold_uids.count(uid)) {
      throw ValidationError("prediction for uid '" + uid +
                            "' has no gold pair in '" + gold.name + "'");
    }
  }
  EvalResult result;
  std::size_t correct = 0;
  for (const NliPair& p : gold.pairs) {
    const NliLabel* predicted = Lookup(predictions, p.uid);
    if (predicted == nullptr) {
      ++result.n_missing_predictions;
      continue;
    }
    ++result.n_evaluated;
    if (*predicted == p.label) ++correct;
  }
  if (result.n_evaluated == 0) {
    throw ValidationError("predictions cover none of the " +
                          std::to_string(gold.pairs.size()) + " gold pairs in '" +
                          gold.name + "'");
  }
  result.accuracy_pct = 100.0 * static_cast<double>(correct) /
                        static_cast<double>(result.n_evaluated);
  if (baseline_pct) result.delta_points = result.accuracy_pct - *baseline_pct;
  return result;
}

SwapConsistency ComputeSwapConsistency(const PredictionSet& pred_original,
                                       const PredictionSet& pred_swapped,
                                       const Dataset& gold) {
  std::size_t met[kNumLabels] = {};
  std::size_t total[kNumLabels] = {};
  for (const NliPair& p : gold.pairs) {
    const NliLabel* before = Lookup(pred_original, p.uid);
    const NliLabel* after = Lookup(pred_swapped, p.uid);
    if (before == nullptr || after == nullptr) {
      throw ValidationError("swap consistency: uid '" + p.uid + "' missing from " +
                            (before == nullptr ? "original" : "swapped") +
                            " predictions");
    }
    const auto k = static_cast<std::size_t>(p.label);
    ++total[k];
    if (MeetsExpectation(ExpectationFor(p.label), *before, *after)) ++met[k];
  }
  auto rate = [&](NliLabel l) -> std::optional<double> {
    const auto k = static_cast<std::size_t>(l);
    if (total[k] == 0) return std::nullopt;
    return 100.0 * static_cast<double>(met[k]) / static_cast<double>(total[k]);
  };
  SwapConsistency s;
  s.contradiction_pct = rate(NliLabel::kContradiction);
  s.neutral_pct = rate(NliLabel::kNeutral);
  s.entailment_pct = rate(NliLabel::kEntailment);
  s.contradiction_pairs = total[static_cast<std::size_t>(NliLabel::kContradiction)];
  s.neutral_pairs = total[static_cast<std::size_t>(NliLabel::kNeutral)];
  s.entailment_pairs = total[static_cast<std::size_t>(NliLabel::kEntailment)];
  return s;
}

std::vector<RemovedSeriesRow> AccuracyVsRemoved(const std::vector<NamedRun>& runs) {
  std::vector<RemovedSeriesRow> rows;
  rows.reserve(runs.size());
  for (const NamedRun& run : runs) {
    rows.push_back({run.name, run.report.total_tokens_removed,
                    run.result.accuracy_pct, run.result.delta_points});
  }
  return rows;
}

std::string FormatRemovedCsv(const std::vector<RemovedSeriesRow>& rows) {
  std::string out = "transform,tokens_removed,accuracy_pct,delta_points\n";
  for (const RemovedSeriesRow& r : rows) {
    out += r.name + ',' + std::to_string(r.tokens_removed) + ',' +
           FormatFixed2(r.accuracy_pct) + ',' +
           (r.delta_points ? FormatFixed2(*r.delta_points) : std::string()) + '\n';
  }
  return out;
}

std::string FormatFixed2(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

}  // namespace nlicrash
