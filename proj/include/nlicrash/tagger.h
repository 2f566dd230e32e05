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

// Averaged-perceptron part-of-speech tagger over the 12 universal tags.
//
// Decoding is greedy left to right; previous predictions feed the tag-history
// features. Tokens made only of punctuation are tagged PUNCT and tokens made
// only of ASCII digits are tagged NUM before the model is consulted, both at
// training and at tagging time (no weight updates happen on them).

#ifndef NLICRASH_TAGGER_H_
#define NLICRASH_TAGGER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlicrash/perceptron.h"
#include "nlicrash/tokenizer.h"

namespace nlicrash {

// Alphabetical, so the lowest enumerator wins score ties.
enum class UniversalPos {
  kAdj,
  kAdp,
  kAdv,
  kConj,
  kDet,
  kNoun,
  kNum,
  kPron,
  kPrt,
  kPunct,
  kVerb,
  kX,
};

inline constexpr std::size_t kNumPosTags = 12;
inline constexpr std::array<UniversalPos, kNumPosTags> kAllPosTags = {
    UniversalPos::kAdj,  UniversalPos::kAdp,  UniversalPos::kAdv,
    UniversalPos::kConj, UniversalPos::kDet,  UniversalPos::kNoun,
    UniversalPos::kNum,  UniversalPos::kPron, UniversalPos::kPrt,
    UniversalPos::kPunct, UniversalPos::kVerb, UniversalPos::kX};

std::string_view PosName(UniversalPos tag);
// Case-insensitive over the 12 names.
std::optional<UniversalPos> ParsePos(std::string_view name);
// Penn Treebank tag -> universal tag (same table as fixtures/penn-universal.map).
std::optional<UniversalPos> PennToUniversal(std::string_view penn_tag);

// A set of universal tags.
class PosSet {
 public:
  PosSet() = default;
  PosSet(std::initializer_list<UniversalPos> tags) {
    for (UniversalPos t : tags) Insert(t);
  }
  static PosSet All();

  void Insert(UniversalPos t) { bits_ |= Bit(t); }
  bool Contains(UniversalPos t) const { return (bits_ & Bit(t)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  PosSet Union(PosSet other) const { return FromBits(bits_ | other.bits_); }
  std::vector<UniversalPos> Tags() const;
  // "NOUN,VERB" in enum order.
  std::string ToString() const;

  bool operator==(const PosSet&) const = default;

 private:
  static std::uint16_t Bit(UniversalPos t) {
    return static_cast<std::uint16_t>(1u << static_cast<unsigned>(t));
  }
  static PosSet FromBits(std::uint16_t bits) {
    PosSet s;
    s.bits_ = bits;
    return s;
  }
  std::uint16_t bits_ = 0;
};

struct TaggedToken {
  Token token;
  UniversalPos tag = UniversalPos::kX;

  bool operator==(const TaggedToken&) const = default;
};

struct TaggedSentence {
  std::vector<TaggedToken> tokens;

  std::vector<Token> Tokens() const;
  bool operator==(const TaggedSentence&) const = default;
};

// Builds a tagged sentence from (form, tag) pairs.
TaggedSentence MakeTaggedSentence(
    const std::vector<std::pair<std::string, UniversalPos>>& items);

// Lexical override applied before model scoring, if any.
std::optional<UniversalPos> LexicalOverride(std::string_view form);

struct TaggerMetadata {
  std::string corpus_id;
  int epochs = 0;
  std::uint64_t seed = 0;
};

class TaggerModel {
 public:
  TaggerModel(AveragedPerceptron perceptron, TaggerMetadata metadata);

  TaggedSentence Tag(const std::vector<Token>& tokens) const;

  const TaggerMetadata& metadata() const { return metadata_; }
  const AveragedPerceptron& perceptron() const { return perceptron_; }

 private:
  AveragedPerceptron perceptron_;
  TaggerMetadata metadata_;
};

// Feature strings for position `i`, given the two previously assigned tags.
// Exposed for tests.
std::vector<Feature> TaggerFeatures(const std::vector<Token>& tokens,
                                    const std::vector<std::string>& context,
                                    std::size_t i, std::string_view prev,
                                    std::string_view prev2);

// `context` for TaggerFeatures: normalized words padded with two start and
// two end markers.
std::vector<std::string> TaggerContext(const std::vector<Token>& tokens);

// Throws ValidationError on an empty corpus or epochs < 1. Sentence order is
// reshuffled every epoch from `seed`; the result is a pure function of
// (corpus, epochs, seed).
TaggerModel TrainTagger(const std::vector<TaggedSentence>& corpus, int epochs,
                        std::uint64_t seed, std::string corpus_id = {});

// Token accuracy in [0, 1]. Throws ValidationError if the corpus has no
// tokens.
double EvaluateTagger(const TaggerModel& model,
                      const std::vector<TaggedSentence>& corpus);

void SaveTagger(const TaggerModel& model, const std::filesystem::path& path);
TaggerModel LoadTagger(const std::filesystem::path& path);
std::string SerializeTagger(const TaggerModel& model);
TaggerModel ParseTagger(std::string_view text);

// Two-column vertical format: "<form> <TAG>" per line, blank line between
// sentences. Lines starting with "# " are comments; "# uid = X" and
// "# field = premise|hypothesis" attach a key to the following sentence, and a
// keyed sentence may have no tokens.
struct PretaggedOptions {
  // Accept Penn Treebank tags and map them through PennToUniversal.
  bool map_penn = false;
};

struct PretaggedEntry {
  std::optional<std::string> uid;
  std::optional<std::string> field;
  TaggedSentence sentence;
};

std::vector<PretaggedEntry> ParsePretagged(std::string_view text,
                                           const PretaggedOptions& options = {});
std::vector<TaggedSentence> LoadPretagged(const std::filesystem::path& path,
                                          const PretaggedOptions& options = {});
std::vector<PretaggedEntry> LoadPretaggedEntries(
    const std::filesystem::path& path, const PretaggedOptions& options = {});
std::string FormatPretagged(const std::vector<PretaggedEntry>& entries);

}  // namespace nlicrash

#endif  // NLICRASH_TAGGER_H_
