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

// Corpus statistics and evaluation arithmetic.

#ifndef NLICRASH_METRICS_H_
#define NLICRASH_METRICS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlicrash/corpus.h"
#include "nlicrash/transforms.h"

namespace nlicrash {

// Recounts removed tokens by tokenizing both versions of every field.
// Corrupted uids may carry an AllDrop suffix ("a1@noun"). Throws
// ValidationError on size or uid mismatch, and when a corrupted field has
// more tokens than the original (the datasets are not a removal pair, as
// after a swap).
TransformReport RemovalStats(const Dataset& original, const Dataset& corrupted);

// |case-folded hypothesis types shared with the premise| / |hypothesis
// types|, punctuation excluded; 0 when the hypothesis has no types.
double LexicalOverlap(const NliPair& pair);

struct OverlapStat {
  std::vector<double> per_pair;
  double dataset_mean_pct = 0.0;
};

// Throws ValidationError("no pairs") on an empty dataset.
OverlapStat DatasetOverlap(const Dataset& dataset, int jobs = 1);

struct EvalResult {
  double accuracy_pct = 0.0;
  std::optional<double> delta_points;
  std::size_t n_evaluated = 0;
  std::size_t n_missing_predictions = 0;

  bool incomplete() const { return n_missing_predictions > 0; }
};

// Accuracy over the gold uids that have a prediction. Throws ValidationError
// when a prediction names a uid absent from `gold`, or when no gold uid is
// covered.
EvalResult Accuracy(const PredictionSet& predictions, const Dataset& gold,
                    std::optional<double> baseline_pct = std::nullopt);

// Percentages of pairs meeting the swap expectation, per gold class; absent
// for classes with no pairs.
struct SwapConsistency {
  std::optional<double> contradiction_pct;
  std::optional<double> neutral_pct;
  std::optional<double> entailment_pct;
  std::size_t contradiction_pairs = 0;
  std::size_t neutral_pairs = 0;
  std::size_t entailment_pairs = 0;

  bool operator==(const SwapConsistency&) const = default;
};

// Both prediction sets must cover every gold uid (ValidationError otherwise).
SwapConsistency ComputeSwapConsistency(const PredictionSet& pred_original,
                                       const PredictionSet& pred_swapped,
                                       const Dataset& gold);

struct RemovedSeriesRow {
  std::string name;
  std::size_t tokens_removed = 0;
  double accuracy_pct = 0.0;
  std::optional<double> delta_points;
};

struct NamedRun {
  std::string name;
  EvalResult result;
  TransformReport report;
};

std::vector<RemovedSeriesRow> AccuracyVsRemoved(const std::vector<NamedRun>& runs);

// "transform,tokens_removed,accuracy_pct,delta_points" then one row per entry.
std::string FormatRemovedCsv(const std::vector<RemovedSeriesRow>& rows);

// Two decimals, without a negative sign on values that round to zero.
std::string FormatFixed2(double value);

}  // namespace nlicrash

#endif  // NLICRASH_METRICS_H_
