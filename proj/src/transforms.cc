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

#include "nlicrash/transforms.h"

#include <algorithm>
#include <set>
#include <span>

#include "json.hpp"
#include "nlicrash/error.h"
#include "nlicrash/parallel.h"

namespace nlicrash {
namespace {

using json = nlohmann::json;

constexpr std::array<std::pair<TransformKind, std::string_view>, 6> kKindNames =
    {{{TransformKind::kDropPos, "drop"},
      {TransformKind::kKeepPos, "keep"},
      {TransformKind::kShuffleNgrams, "shuffle"},
      {TransformKind::kSwapPair, "swap"},
      {TransformKind::kHypothesisOnly, "hypothesis_only"},
      {TransformKind::kIdentity, "identity"}}};

constexpr std::array<std::pair<ApplyTo, std::string_view>, 3> kApplyToNames =
    {{{ApplyTo::kBoth, "both"},
      {ApplyTo::kPremiseOnly, "premise_only"},
      {ApplyTo::kHypothesisOnly, "hypothesis_only"}}};

const std::string& FieldText(const NliPair& pair, Field field) {
  return field == Field::kPremise ? pair.premise : pair.hypothesis;
}

std::string& FieldText(NliPair& pair, Field field) {
  return field == Field::kPremise ? pair.premise : pair.hypothesis;
}

std::vector<Token> Filter(const TaggedSentence& sentence, PosSet tags,
                          bool keep_members) {
  std::vector<Token> out;
  out.reserve(sentence.tokens.size());
  for (const TaggedToken& t : sentence.tokens) {
    if (tags.Contains(t.tag) == keep_members) out.push_back(t.token);
  }
  return out;
}

// Per-pair accounting, summed in input order afterwards.
struct PairCounts {
  std::size_t premise_removed = 0;
  std::size_t hypothesis_removed = 0;
  bool left_empty = false;
};

}  // namespace

std::string_view TransformKindName(TransformKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<TransformKind> ParseTransformKind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  if (name == "drop_pos") return TransformKind::kDropPos;
  if (name == "keep_pos") return TransformKind::kKeepPos;
  if (name == "shuffle_ngrams") return TransformKind::kShuffleNgrams;
  if (name == "swap_pair") return TransformKind::kSwapPair;
  return std::nullopt;
}

std::string_view ApplyToName(ApplyTo apply_to) {
  for (const auto& [a, name] : kApplyToNames) {
    if (a == apply_to) return name;
  }
  return "unknown";
}

std::optional<ApplyTo> ParseApplyTo(std::string_view name) {
  for (const auto& [a, n] : kApplyToNames) {
    if (n == name) return a;
  }
  return std::nullopt;
}

std::string_view FieldName(Field field) {
  return field == Field::kPremise ? "premise" : "hypothesis";
}

TransformSpec TransformSpec::Drop(PosSet tags) {
  TransformSpec s;
  s.kind = TransformKind::kDropPos;
  s.tags = tags;
  return s;
}

TransformSpec TransformSpec::Keep(PosSet tags) {
  TransformSpec s;
  s.kind = TransformKind::kKeepPos;
  s.tags = tags;
  return s;
}

TransformSpec TransformSpec::Shuffle(int n, std::uint64_t seed) {
  TransformSpec s;
  s.kind = TransformKind::kShuffleNgrams;
  s.n = n;
  s.seed = seed;
  return s;
}

TransformSpec TransformSpec::Swap() {
  TransformSpec s;
  s.kind = TransformKind::kSwapPair;
  return s;
}

TransformSpec TransformSpec::HypothesisOnly() {
  TransformSpec s;
  s.kind = TransformKind::kHypothesisOnly;
  return s;
}

TransformSpec TransformSpec::Identity() { return TransformSpec{}; }

void TransformSpec::Validate() const {
  if (NeedsTags() && tags.empty()) {
    throw UsageError(std::string(TransformKindName(kind)) +
                     " transform needs a non-empty tag set");
  }
  if (kind == TransformKind::kShuffleNgrams && n < 1) {
    throw UsageError("shuffle n must be >= 1, got " + std::to_string(n));
  }
}

bool TransformSpec::NeedsTags() const {
  return kind == TransformKind::kDropPos || kind == TransformKind::kKeepPos;
}

bool TransformSpec::Touches(Field field) const {
  switch (apply_to) {
    case ApplyTo::kBoth:
      return true;
    case ApplyTo::kPremiseOnly:
      return field == Field::kPremise;
    case ApplyTo::kHypothesisOnly:
      return field == Field::kHypothesis;
  }
  return true;
}

std::string TransformSpec::ToJson() const {
  nlohmann::ordered_json j;
  j["kind"] = std::string(TransformKindName(kind));
  if (NeedsTags()) {
    auto tag_list = nlohmann::ordered_json::array();
    for (UniversalPos t : tags.Tags()) tag_list.push_back(std::string(PosName(t)));
    j["tags"] = tag_list;
  }
  if (kind == TransformKind::kShuffleNgrams) j["n"] = n;
  j["seed"] = seed;
  j["apply_to"] = std::string(ApplyToName(apply_to));
  return j.dump();
}

TransformSpec TransformSpec::FromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed transform spec: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("transform spec must be a JSON object");
  TransformSpec spec;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const auto parsed = ParseTransformKind(kind);
    if (!parsed) throw UsageError("unknown transform kind '" + kind + "'");
    spec.kind = *parsed;
    if (j.contains("tags")) {
      for (const auto& t : j.at("tags")) {
        const std::string name = t.get<std::string>();
        const auto tag = ParsePos(name);
        if (!tag) throw UsageError("unknown tag '" + name + "'");
        spec.tags.Insert(*tag);
      }
    }
    if (j.contains("n")) spec.n = j.at("n").get<int>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("apply_to")) {
      const std::string a = j.at("apply_to").get<std::string>();
      const auto parsed_apply = ParseApplyTo(a);
      if (!parsed_apply) throw UsageError("unknown apply_to '" + a + "'");
      spec.apply_to = *parsed_apply;
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed transform spec: ") + e.what());
  }
  spec.Validate();
  return spec;
}

std::string TransformReport::ToJson() const {
  json j;
  j["pairs_processed"] = pairs_processed;
  j["premise_tokens_removed"] = premise_tokens_removed;
  j["hypothesis_tokens_removed"] = hypothesis_tokens_removed;
  j["total_tokens_removed"] = total_tokens_removed;
  j["pairs_left_empty"] = pairs_left_empty;
  return j.dump(2);
}

const std::vector<Preset>& WordClassPresets() {
  using P = UniversalPos;
  static const std::vector<Preset> kPresets = {
      {"num", TransformSpec::Drop({P::kNum})},
      {"conj", TransformSpec::Drop({P::kConj})},
      {"adv", TransformSpec::Drop({P::kAdv})},
      {"pron", TransformSpec::Drop({P::kPron})},
      {"adj", TransformSpec::Drop({P::kAdj})},
      {"det", TransformSpec::Drop({P::kDet})},
      {"verb", TransformSpec::Drop({P::kVerb})},
      {"noun", TransformSpec::Drop({P::kNoun})},
      {"noun+pron+verb", TransformSpec::Keep({P::kNoun, P::kPron, P::kVerb})},
      {"noun+adv+verb", TransformSpec::Keep({P::kNoun, P::kAdv, P::kVerb})},
      {"noun+verb", TransformSpec::Keep({P::kNoun, P::kVerb})},
      {"noun+verb+adj", TransformSpec::Keep({P::kNoun, P::kVerb, P::kAdj})},
      {"noun+verb+adv+adj",
       TransformSpec::Keep({P::kNoun, P::kVerb, P::kAdv, P::kAdj})},
  };
  return kPresets;
}

std::optional<TransformSpec> FindPreset(std::string_view name) {
  for (const Preset& p : WordClassPresets()) {
    if (p.name == name) return p.spec;
  }
  return std::nullopt;
}

std::vector<Token> DropPos(const TaggedSentence& sentence, PosSet tags) {
  return Filter(sentence, tags, /*keep_members=*/false);
}

std::vector<Token> KeepPos(const TaggedSentence& sentence, PosSet tags) {
  return Filter(sentence, tags, /*keep_members=*/true);
}

std::vector<Token> ShuffleNgrams(const std::vector<Token>& tokens, int n,
                                 SeededRng& rng) {
  if (n < 1) throw UsageError("shuffle n must be >= 1");
  const std::size_t size = static_cast<std::size_t>(n);
  const std::size_t chunks = (tokens.size() + size - 1) / size;
  if (chunks <= 1) return tokens;
  std::vector<std::size_t> order(chunks);
  for (std::size_t i = 0; i < chunks; ++i) order[i] = i;
  rng.Shuffle(std::span<std::size_t>(order));
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (std::size_t c : order) {
    const std::size_t begin = c * size;
    const std::size_t end = std::min(tokens.size(), begin + size);
    out.insert(out.end(), tokens.begin() + begin, tokens.begin() + end);
  }
  return out;
}

SwapExpectation ExpectationFor(NliLabel gold) {
  return gold == NliLabel::kEntailment ? SwapExpectation::kDifferentLabel
                                       : SwapExpectation::kSameLabel;
}

bool MeetsExpectation(SwapExpectation expectation, NliLabel before,
                      NliLabel after) {
  return expectation == SwapExpectation::kSameLabel ? before == after
                                                    : before != after;
}

SwappedPair SwapPair(const NliPair& pair) {
  NliPair swapped = pair;
  std::swap(swapped.premise, swapped.hypothesis);
  return {std::move(swapped), ExpectationFor(pair.label)};
}

NliPair HypothesisOnly(const NliPair& pair) {
  NliPair out = pair;
  out.premise.clear();
  return out;
}

TaggedSentence ModelTagSource::Tagged(const NliPair& pair, Field field) const {
  return model_.Tag(Tokenize(FieldText(pair, field)));
}

PretaggedTagSource::PretaggedTagSource(
    const std::vector<PretaggedEntry>& entries, const Dataset& dataset) {
  const bool keyed = std::any_of(entries.begin(), entries.end(),
                                 [](const PretaggedEntry& e) {
                                   return e.uid.has_value();
                                 });
  if (!keyed) {
    if (entries.size() != 2 * dataset.pairs.size()) {
      throw ValidationError(
          "pretagged input has " + std::to_string(entries.size()) +
          " sentences; expected " + std::to_string(2 * dataset.pairs.size()) +
          " (premise and hypothesis for each pair)");
    }
    for (std::size_t i = 0; i < dataset.pairs.size(); ++i) {
      const std::string& uid = dataset.pairs[i].uid;
      sentences_[{uid, Field::kPremise}] = entries[2 * i].sentence;
      sentences_[{uid, Field::kHypothesis}] = entries[2 * i + 1].sentence;
    }
    return;
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const PretaggedEntry& e = entries[i];
    if (!e.uid || !e.field) {
      throw ValidationError("pretagged sentence " + std::to_string(i + 1) +
                            " lacks a '# uid' or '# field' key");
    }
    Field field;
    if (*e.field == "premise") {
      field = Field::kPremise;
    } else if (*e.field == "hypothesis") {
      field = Field::kHypothesis;
    } else {
      throw ValidationError("pretagged sentence " + std::to_string(i + 1) +
                            " has unknown field '" + *e.field + "'");
    }
    if (!sentences_.emplace(std::make_pair(*e.uid, field), e.sentence).second) {
      throw ValidationError("duplicate pretagged sentence for uid '" + *e.uid +
                            "' field " + *e.field);
    }
  }
}

PretaggedTagSource PretaggedTagSource::FromModel(const TaggerModel& model,
                                                 const Dataset& dataset,
                                                 int jobs) {
  const std::size_t n = dataset.pairs.size();
  std::vector<TaggedSentence> premises(n), hypotheses(n);
  ParallelFor(n, jobs, [&](std::size_t i) {
    premises[i] = model.Tag(Tokenize(dataset.pairs[i].premise));
    hypotheses[i] = model.Tag(Tokenize(dataset.pairs[i].hypothesis));
  });
  PretaggedTagSource source;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& uid = dataset.pairs[i].uid;
    source.sentences_[{uid, Field::kPremise}] = std::move(premises[i]);
    source.sentences_[{uid, Field::kHypothesis}] = std::move(hypotheses[i]);
  }
  return source;
}

TaggedSentence PretaggedTagSource::Tagged(const NliPair& pair,
                                          Field field) const {
  const auto it = sentences_.find({pair.uid, field});
  if (it == sentences_.end()) {
    throw ValidationError("no pretagged " + std::string(FieldName(field)) +
                          " for uid '" + pair.uid + "'");
  }
  return it->second;
}

std::vector<PretaggedEntry> PretaggedTagSource::Entries(
    const Dataset& dataset) const {
  std::vector<PretaggedEntry> out;
  out.reserve(2 * dataset.pairs.size());
  for (const NliPair& pair : dataset.pairs) {
    for (Field field : {Field::kPremise, Field::kHypothesis}) {
      out.push_back({pair.uid, std::string(FieldName(field)),
                     Tagged(pair, field)});
    }
  }
  return out;
}

CorruptionResult CorruptDataset(const Dataset& dataset,
                                const TransformSpec& spec,
                                const TagSource* tags, int jobs) {
  spec.Validate();
  if (spec.NeedsTags() && tags == nullptr) {
    throw UsageError(std::string(TransformKindName(spec.kind)) +
                     " transform needs a tagger model or pretagged input");
  }
  const std::size_t n = dataset.pairs.size();
  CorruptionResult result;
  result.dataset.name = dataset.name;
  result.dataset.split = dataset.split;
  result.dataset.pairs.resize(n);
  std::vector<PairCounts> counts(n);

  ParallelFor(n, jobs, [&](std::size_t i) {
    const NliPair& in = dataset.pairs[i];
    NliPair& out = result.dataset.pairs[i];
    PairCounts& c = counts[i];
    out = in;
    auto record = [&](Field field, std::size_t before, std::size_t after) {
      const std::size_t removed = before - after;
      (field == Field::kPremise ? c.premise_removed : c.hypothesis_removed) =
          removed;
      if (before > 0 && after == 0) c.left_empty = true;
    };
    try {
      switch (spec.kind) {
        case TransformKind::kIdentity:
          break;
        case TransformKind::kSwapPair:
          out = SwapPair(in).pair;
          break;
        case TransformKind::kHypothesisOnly: {
          const std::size_t before = Tokenize(in.premise).size();
          out = HypothesisOnly(in);
          record(Field::kPremise, before, 0);
          break;
        }
        case TransformKind::kDropPos:
        case TransformKind::kKeepPos:
          for (Field field : {Field::kPremise, Field::kHypothesis}) {
            if (!spec.Touches(field)) continue;
            const TaggedSentence tagged = tags->Tagged(in, field);
            const std::vector<Token> kept =
                spec.kind == TransformKind::kDropPos
                    ? DropPos(tagged, spec.tags)
                    : KeepPos(tagged, spec.tags);
            FieldText(out, field) = Detokenize(kept);
            record(field, tagged.tokens.size(), kept.size());
          }
          break;
        case TransformKind::kShuffleNgrams:
          for (Field field : {Field::kPremise, Field::kHypothesis}) {
            if (!spec.Touches(field)) continue;
            SeededRng rng(DeriveFieldSeed(spec.seed, in.uid, FieldName(field)));
            FieldText(out, field) = Detokenize(
                ShuffleNgrams(Tokenize(FieldText(in, field)), spec.n, rng));
          }
          break;
      }
    } catch (const ValidationError& e) {
      throw ValidationError("pair '" + in.uid + "': " + e.what());
    }
  });

  TransformReport& r = result.report;
  r.pairs_processed = n;
  for (const PairCounts& c : counts) {
    r.premise_tokens_removed += c.premise_removed;
    r.hypothesis_tokens_removed += c.hypothesis_removed;
    if (c.left_empty) ++r.pairs_left_empty;
  }
  r.total_tokens_removed = r.premise_tokens_removed + r.hypothesis_tokens_removed;
  return result;
}

Dataset BuildAllDrop(const Dataset& original,
                     const std::vector<Dataset>& variants) {
  Dataset out;
  out.name = original.name + "-alldrop";
  out.split = original.split;
  std::set<std::string> seen;
  auto append = [&](const Dataset& part) {
    if (part.name.empty()) {
      throw ValidationError("AllDrop component has no name to suffix uids with");
    }
    for (const NliPair& pair : part.pairs) {
      NliPair p = pair;
      p.uid += std::string(kVariantSeparator) + part.name;
      if (!seen.insert(p.uid).second) {
        throw ValidationError("uid collision after suffixing: '" + p.uid + "'");
      }
      out.pairs.push_back(std::move(p));
    }
  };
  append(original);
  for (const Dataset& v : variants) {
    if (v.pairs.size() != original.pairs.size()) {
      throw ValidationError("variant '" + v.name + "' has " +
                            std::to_string(v.pairs.size()) + " pairs; original has " +
                            std::to_string(original.pairs.size()));
    }
    for (std::size_t i = 0; i < v.pairs.size(); ++i) {
      if (v.pairs[i].uid != original.pairs[i].uid) {
        throw ValidationError("variant '" + v.name + "' uid '" + v.pairs[i].uid +
                              "' at position " + std::to_string(i + 1) +
                              " does not match original uid '" +
                              original.pairs[i].uid + "'");
      }
    }
    append(v);
  }
  return out;
}

}  // namespace nlicrash
