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

// Corruption transforms over NLI pairs and datasets.
//
// Labels and uids never change; only text does. Corrupted sentences are
// re-materialized with Detokenize, and sentences emptied by a transform are
// kept as empty strings.

#ifndef NLICRASH_TRANSFORMS_H_
#define NLICRASH_TRANSFORMS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlicrash/corpus.h"
#include "nlicrash/random.h"
#include "nlicrash/tagger.h"
#include "nlicrash/tokenizer.h"

namespace nlicrash {

enum class TransformKind {
  kDropPos,
  kKeepPos,
  kShuffleNgrams,
  kSwapPair,
  kHypothesisOnly,
  kIdentity,
};

enum class ApplyTo { kBoth, kPremiseOnly, kHypothesisOnly };

enum class Field { kPremise, kHypothesis };

std::string_view TransformKindName(TransformKind kind);
std::optional<TransformKind> ParseTransformKind(std::string_view name);
std::string_view ApplyToName(ApplyTo apply_to);
std::optional<ApplyTo> ParseApplyTo(std::string_view name);
std::string_view FieldName(Field field);

struct TransformSpec {
  TransformKind kind = TransformKind::kIdentity;
  PosSet tags;             // DropPos / KeepPos
  int n = 1;               // ShuffleNgrams
  std::uint64_t seed = 0;  // ShuffleNgrams
  ApplyTo apply_to = ApplyTo::kBoth;

  static TransformSpec Drop(PosSet tags);
  static TransformSpec Keep(PosSet tags);
  static TransformSpec Shuffle(int n, std::uint64_t seed);
  static TransformSpec Swap();
  static TransformSpec HypothesisOnly();
  static TransformSpec Identity();

  // Throws UsageError: empty tagset for drop/keep, n < 1 for shuffle.
  void Validate() const;
  bool NeedsTags() const;
  bool Touches(Field field) const;

  // {"kind":"drop","tags":["NOUN"],"seed":13,"apply_to":"both"}
  std::string ToJson() const;
  static TransformSpec FromJson(std::string_view json);

  bool operator==(const TransformSpec&) const = default;
};

struct TransformReport {
  std::size_t pairs_processed = 0;
  std::size_t premise_tokens_removed = 0;
  std::size_t hypothesis_tokens_removed = 0;
  std::size_t total_tokens_removed = 0;
  std::size_t pairs_left_empty = 0;

  std::string ToJson() const;
  bool operator==(const TransformReport&) const = default;
};

// Word-class presets: the eight single-class drops and the five keep
// combinations. PUNCT and X appear in none of them.
struct Preset {
  std::string_view name;
  TransformSpec spec;
};

const std::vector<Preset>& WordClassPresets();
std::optional<TransformSpec> FindPreset(std::string_view name);

// A token survives iff its tag is not in `tags`. Order is preserved.
std::vector<Token> DropPos(const TaggedSentence& sentence, PosSet tags);
// A token survives iff its tag is in `tags`. Order is preserved.
std::vector<Token> KeepPos(const TaggedSentence& sentence, PosSet tags);

// Cuts the sequence into consecutive chunks of n tokens (the last may be
// shorter) and permutes the chunks uniformly. Fewer than two chunks returns
// the input unchanged.
std::vector<Token> ShuffleNgrams(const std::vector<Token>& tokens, int n,
                                 SeededRng& rng);

// What a consistent model should do after premise and hypothesis trade
// places: keep contradiction and neutral, change entailment.
enum class SwapExpectation { kSameLabel, kDifferentLabel };

SwapExpectation ExpectationFor(NliLabel gold);
bool MeetsExpectation(SwapExpectation expectation, NliLabel before,
                      NliLabel after);

struct SwappedPair {
  NliPair pair;
  SwapExpectation expectation;
};

SwappedPair SwapPair(const NliPair& pair);
NliPair HypothesisOnly(const NliPair& pair);

// Supplies tagged tokens for one field of a pair.
class TagSource {
 public:
  virtual ~TagSource() = default;
  virtual TaggedSentence Tagged(const NliPair& pair, Field field) const = 0;
};

// Tokenizes and tags on demand.
class ModelTagSource : public TagSource {
 public:
  explicit ModelTagSource(const TaggerModel& model) : model_(model) {}
  TaggedSentence Tagged(const NliPair& pair, Field field) const override;

 private:
  const TaggerModel& model_;
};

// Pre-computed tags keyed by (uid, field).
class PretaggedTagSource : public TagSource {
 public:
  // Keyed entries ("# uid" / "# field" comments) are matched by key;
  // unkeyed entries are taken in order, premise then hypothesis per pair.
  // Throws ValidationError when the entries do not cover the dataset.
  PretaggedTagSource(const std::vector<PretaggedEntry>& entries,
                     const Dataset& dataset);

  // Tags every field of `dataset` once with `model`.
  static PretaggedTagSource FromModel(const TaggerModel& model,
                                      const Dataset& dataset, int jobs = 1);

  TaggedSentence Tagged(const NliPair& pair, Field field) const override;

  // Entries in dataset order, keyed, for writing vertical files.
  std::vector<PretaggedEntry> Entries(const Dataset& dataset) const;

 private:
  PretaggedTagSource() = default;
  std::map<std::pair<std::string, Field>, TaggedSentence> sentences_;
};

struct CorruptionResult {
  Dataset dataset;
  TransformReport report;
};

// Applies `spec` to every pair. `tags` may be null unless spec.NeedsTags().
// Pairs are processed on `jobs` threads; the output does not depend on it.
// For ShuffleNgrams each field's generator is seeded with
// DeriveFieldSeed(spec.seed, uid, field name).
CorruptionResult CorruptDataset(const Dataset& dataset,
                                const TransformSpec& spec,
                                const TagSource* tags, int jobs = 1);

// Separator between an original uid and the variant name in AllDrop output.
inline constexpr std::string_view kVariantSeparator = "@";

// Concatenates `original` and `variants` in order, suffixing every uid with
// "@<dataset name>". Variants must carry the original's uids in the same
// order. Throws ValidationError on uid collisions after suffixing.
Dataset BuildAllDrop(const Dataset& original,
                     const std::vector<Dataset>& variants);

}  // namespace nlicrash

#endif  // NLICRASH_TRANSFORMS_H_
