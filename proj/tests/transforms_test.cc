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

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "nlicrash/error.h"
#include "nlicrash/metrics.h"
#include "nlicrash/random.h"
#include "nlicrash/synthetic.h"
#include "test_util.h"

namespace nlicrash {
namespace {

using ::nlicrash::testing::MakeDataset;
using ::nlicrash::testing::Pair;
using P = UniversalPos;
using Strings = std::vector<std::string>;

TaggedSentence TallMan() {
  return MakeTaggedSentence({{"The", P::kDet},
                             {"man", P::kNoun},
                             {"was", P::kVerb},
                             {"6", P::kNum},
                             {"foot", P::kNoun},
                             {"tall", P::kNoun},
                             {".", P::kPunct}});
}

TEST(DropPosTest, RemovesNouns) {
  EXPECT_EQ(Forms(DropPos(TallMan(), {P::kNoun})),
            (Strings{"The", "was", "6", "."}));
  const auto dogs = MakeTaggedSentence({{"dogs", P::kNoun},
                                        {"chase", P::kVerb},
                                        {"cats", P::kNoun},
                                        {"quickly", P::kAdv}});
  EXPECT_EQ(Forms(DropPos(dogs, {P::kNoun})), (Strings{"chase", "quickly"}));
}

TEST(DropPosTest, VacuousRemovalIsIdentity) {
  EXPECT_EQ(DropPos(TallMan(), {P::kAdv, P::kPron}), TallMan().Tokens());
}

TEST(KeepPosTest, Examples) {
  EXPECT_EQ(Forms(KeepPos(TallMan(), {P::kNoun, P::kVerb})),
            (Strings{"man", "was", "foot", "tall"}));
  EXPECT_EQ(KeepPos(TallMan(), PosSet::All()), TallMan().Tokens());
  EXPECT_EQ(Forms(KeepPos(MakeTaggedSentence({{"hi", P::kX}, {".", P::kPunct}}),
                          {P::kPunct})),
            Strings{"."});
}

TaggedSentence RandomSentence(SeededRng& rng) {
  TaggedSentence s;
  const auto len = rng.Below(15);
  for (std::uint64_t i = 0; i < len; ++i) {
    const P tag = kAllPosTags[rng.Below(kNumPosTags)];
    s.tokens.push_back(
        {MakeToken("w" + std::to_string(i)), tag});
  }
  return s;
}

PosSet RandomTagset(SeededRng& rng) {
  PosSet s;
  for (P t : kAllPosTags) {
    if (rng.Below(3) == 0) s.Insert(t);
  }
  return s;
}

TEST(DropKeepPropertyTest, PartitionAndComplementCounts) {
  SeededRng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const TaggedSentence s = RandomSentence(rng);
    const PosSet tags = RandomTagset(rng);
    const auto dropped = DropPos(s, tags);
    const auto kept = KeepPos(s, tags);
    EXPECT_EQ(dropped.size() + kept.size(), s.tokens.size());
    // Forms are unique per sentence, so merging by original position must
    // reproduce the sentence.
    std::size_t di = 0, ki = 0;
    for (const TaggedToken& t : s.tokens) {
      if (di < dropped.size() && dropped[di] == t.token) {
        ++di;
      } else {
        ASSERT_LT(ki, kept.size());
        EXPECT_EQ(kept[ki], t.token);
        ++ki;
      }
    }
    EXPECT_EQ(di, dropped.size());
    EXPECT_EQ(ki, kept.size());
  }
}

TEST(DropKeepPropertyTest, LargerTagsetRemovesAtLeastAsMuch) {
  SeededRng rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    const TaggedSentence s = RandomSentence(rng);
    const PosSet p = RandomTagset(rng);
    const PosSet q = RandomTagset(rng);
    EXPECT_LE(DropPos(s, p.Union(q)).size(), DropPos(s, p).size());
  }
}

TEST(ShuffleNgramsTest, SmallCases) {
  SeededRng rng(1);
  EXPECT_EQ(Forms(ShuffleNgrams(MakeTokens({"a"}), 3, rng)), Strings{"a"});
  EXPECT_EQ(Forms(ShuffleNgrams(MakeTokens({"a", "b", "c", "d"}), 4, rng)),
            (Strings{"a", "b", "c", "d"}));
  EXPECT_TRUE(ShuffleNgrams({}, 2, rng).empty());
}

TEST(ShuffleNgramsTest, PinnedSeedOutput) {
  SeededRng rng(42);
  EXPECT_EQ(Forms(ShuffleNgrams(MakeTokens({"a", "b", "c", "d"}), 2, rng)),
            (Strings{"c", "d", "a", "b"}));
}

TEST(ShuffleNgramsTest, ChunksStayContiguous) {
  SeededRng rng(3);
  const auto out =
      Forms(ShuffleNgrams(MakeTokens({"1", "2", "3", "4", "5", "6", "7"}), 3, rng));
  ASSERT_EQ(out.size(), 7u);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == "1") EXPECT_EQ(out[i + 1], "2");
    if (out[i] == "4") EXPECT_EQ(out[i + 2], "6");
  }
}

TEST(SwapPairTest, ExpectationsFollowLabelDirection) {
  const NliPair c = Pair("c", "P", "H", NliLabel::kContradiction);
  const SwappedPair sc = SwapPair(c);
  EXPECT_EQ(sc.pair.premise, "H");
  EXPECT_EQ(sc.pair.hypothesis, "P");
  EXPECT_EQ(sc.expectation, SwapExpectation::kSameLabel);
  EXPECT_EQ(SwapPair(Pair("n", "P", "H", NliLabel::kNeutral)).expectation,
            SwapExpectation::kSameLabel);
  EXPECT_EQ(SwapPair(Pair("e", "P", "H", NliLabel::kEntailment)).expectation,
            SwapExpectation::kDifferentLabel);
  EXPECT_EQ(SwapPair(sc.pair).pair, c);
  EXPECT_TRUE(MeetsExpectation(SwapExpectation::kDifferentLabel,
                               NliLabel::kEntailment, NliLabel::kNeutral));
  EXPECT_FALSE(MeetsExpectation(SwapExpectation::kDifferentLabel,
                                NliLabel::kEntailment, NliLabel::kEntailment));
}

TEST(HypothesisOnlyTest, EmptiesPremiseIdempotently) {
  const NliPair p = Pair("x", "P", "H", NliLabel::kNeutral);
  const NliPair once = HypothesisOnly(p);
  EXPECT_EQ(once.premise, "");
  EXPECT_EQ(once.hypothesis, "H");
  EXPECT_EQ(once.label, NliLabel::kNeutral);
  EXPECT_EQ(HypothesisOnly(once), once);
}

TEST(TransformSpecTest, ValidationAndJson) {
  EXPECT_THROW(TransformSpec::Drop({}).Validate(), UsageError);
  EXPECT_THROW(TransformSpec::Shuffle(0, 1).Validate(), UsageError);
  TransformSpec s = TransformSpec::Drop({P::kNoun});
  s.seed = 13;
  EXPECT_EQ(s.ToJson(),
            R"({"kind":"drop","tags":["NOUN"],"seed":13,"apply_to":"both"})");
  for (const TransformSpec& spec :
       {s, TransformSpec::Keep({P::kNoun, P::kVerb}),
        TransformSpec::Shuffle(3, 99), TransformSpec::Swap(),
        TransformSpec::HypothesisOnly(), TransformSpec::Identity()}) {
    EXPECT_EQ(TransformSpec::FromJson(spec.ToJson()), spec) << spec.ToJson();
  }
  EXPECT_THROW(TransformSpec::FromJson(R"({"kind":"melt"})"), UsageError);
}

TEST(PresetTest, ThirteenPresetsNeverTouchPunctOrX) {
  const auto& presets = WordClassPresets();
  ASSERT_EQ(presets.size(), 13u);
  for (const Preset& p : presets) {
    EXPECT_FALSE(p.spec.tags.Contains(P::kPunct)) << p.name;
    EXPECT_FALSE(p.spec.tags.Contains(P::kX)) << p.name;
  }
  EXPECT_EQ(FindPreset("noun"), TransformSpec::Drop({P::kNoun}));
  EXPECT_EQ(FindPreset("noun+verb"), TransformSpec::Keep({P::kNoun, P::kVerb}));
  EXPECT_FALSE(FindPreset("adp").has_value());
}

// Three pairs tagged by hand, keyed by uid and field.
Dataset HandDataset() {
  return MakeDataset(
      "hand", {Pair("h1", "The man was 6 foot tall.", "A man.",
                    NliLabel::kEntailment),
               Pair("h2", "Dogs chase cats.", "Cats run.", NliLabel::kNeutral),
               Pair("h3", "It rains.", "Sun.", NliLabel::kContradiction)});
}

std::vector<PretaggedEntry> HandTags() {
  auto entry = [](std::string uid, std::string field,
                  std::vector<std::pair<std::string, P>> items) {
    return PretaggedEntry{std::move(uid), std::move(field),
                          MakeTaggedSentence(items)};
  };
  return {
      entry("h1", "premise",
            {{"The", P::kDet}, {"man", P::kNoun}, {"was", P::kVerb},
             {"6", P::kNum}, {"foot", P::kNoun}, {"tall", P::kAdj},
             {".", P::kPunct}}),
      entry("h1", "hypothesis",
            {{"A", P::kDet}, {"man", P::kNoun}, {".", P::kPunct}}),
      entry("h2", "premise",
            {{"Dogs", P::kNoun}, {"chase", P::kVerb}, {"cats", P::kNoun},
             {".", P::kPunct}}),
      entry("h2", "hypothesis",
            {{"Cats", P::kNoun}, {"run", P::kVerb}, {".", P::kPunct}}),
      entry("h3", "premise",
            {{"It", P::kPron}, {"rains", P::kVerb}, {".", P::kPunct}}),
      entry("h3", "hypothesis", {{"Sun", P::kNoun}, {".", P::kPunct}}),
  };
}

TEST(CorruptDatasetTest, HandCountedNounDrop) {
  const Dataset d = HandDataset();
  const PretaggedTagSource tags(HandTags(), d);
  const auto [out, report] =
      CorruptDataset(d, TransformSpec::Drop({P::kNoun}), &tags);
  // Premises lose man, foot / Dogs, cats / nothing; hypotheses lose man /
  // Cats / Sun.
  EXPECT_EQ(report.pairs_processed, 3u);
  EXPECT_EQ(report.premise_tokens_removed, 4u);
  EXPECT_EQ(report.hypothesis_tokens_removed, 3u);
  EXPECT_EQ(report.total_tokens_removed, 7u);
  EXPECT_EQ(report.pairs_left_empty, 0u);
  EXPECT_EQ(out.pairs[0].premise, "The was 6 tall .");
  EXPECT_EQ(out.pairs[2].hypothesis, ".");
  EXPECT_EQ(RemovalStats(d, out), report);
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    EXPECT_EQ(out.pairs[i].uid, d.pairs[i].uid);
    EXPECT_EQ(out.pairs[i].label, d.pairs[i].label);
  }
}

TEST(CorruptDatasetTest, KeepCountsEmptiedPairs) {
  const Dataset d = HandDataset();
  const PretaggedTagSource tags(HandTags(), d);
  TransformSpec spec = TransformSpec::Keep({P::kNum});
  spec.apply_to = ApplyTo::kHypothesisOnly;
  const auto [out, report] = CorruptDataset(d, spec, &tags);
  EXPECT_EQ(report.premise_tokens_removed, 0u);
  EXPECT_EQ(report.hypothesis_tokens_removed, 8u);
  EXPECT_EQ(report.pairs_left_empty, 3u);
  EXPECT_EQ(out.pairs[1].premise, d.pairs[1].premise);
  EXPECT_EQ(out.pairs[1].hypothesis, "");
}

TEST(CorruptDatasetTest, IdentityIsNoOp) {
  const Dataset d = HandDataset();
  const auto [out, report] = CorruptDataset(d, TransformSpec::Identity(), nullptr);
  EXPECT_EQ(out, d);
  EXPECT_EQ(report.total_tokens_removed, 0u);
  EXPECT_EQ(report.pairs_left_empty, 0u);
}

TEST(CorruptDatasetTest, DropWithoutTagsIsUsageError) {
  EXPECT_THROW(
      CorruptDataset(HandDataset(), TransformSpec::Drop({P::kNoun}), nullptr),
      UsageError);
}

TEST(CorruptDatasetTest, MissingPretaggedSentenceNamesUid) {
  const Dataset d = HandDataset();
  auto entries = HandTags();
  entries.pop_back();
  try {
    PretaggedTagSource tags(entries, d);
    CorruptDataset(d, TransformSpec::Drop({P::kNoun}), &tags);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("h3"), std::string::npos) << e.what();
  }
}

TEST(CorruptDatasetTest, HypothesisOnlyCountsPremiseTokens) {
  const auto [out, report] =
      CorruptDataset(HandDataset(), TransformSpec::HypothesisOnly(), nullptr);
  EXPECT_EQ(report.premise_tokens_removed, 7u + 4u + 3u);
  EXPECT_EQ(report.pairs_left_empty, 3u);
  for (const NliPair& p : out.pairs) EXPECT_EQ(p.premise, "");
}

TEST(CorruptDatasetTest, ShuffleIsReproducibleAndJobsInvariant) {
  SyntheticOptions opts;
  opts.pairs = 400;
  opts.seed = 5;
  const Dataset d = MakePlantedBiasDataset(opts);
  const TransformSpec spec = TransformSpec::Shuffle(2, 77);
  const auto one = CorruptDataset(d, spec, nullptr, 1);
  const auto many = CorruptDataset(d, spec, nullptr, 8);
  EXPECT_EQ(one.dataset, many.dataset);
  EXPECT_NE(one.dataset, d);
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    auto a = Forms(Tokenize(d.pairs[i].premise));
    auto b = Forms(Tokenize(one.dataset.pairs[i].premise));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
  }
}

TEST(BuildAllDropTest, NineComponentsOfTenPairs) {
  std::vector<NliPair> pairs;
  for (int i = 0; i < 10; ++i) {
    pairs.push_back(Pair("p" + std::to_string(i), "A dog runs.", "A cat.",
                         NliLabel::kNeutral));
  }
  const Dataset original = MakeDataset("mnli", pairs);
  std::vector<Dataset> variants;
  for (const char* name :
       {"num", "conj", "adv", "pron", "adj", "det", "verb", "noun"}) {
    Dataset v = original;
    v.name = name;
    variants.push_back(v);
  }
  const Dataset all = BuildAllDrop(original, variants);
  ASSERT_EQ(all.pairs.size(), 90u);
  EXPECT_EQ(all.pairs.front().uid, "p0@mnli");
  EXPECT_EQ(all.pairs[10].uid, "p0@num");
  EXPECT_EQ(all.pairs.back().uid, "p9@noun");

  const Dataset alone = BuildAllDrop(original, {});
  ASSERT_EQ(alone.pairs.size(), 10u);
  EXPECT_EQ(alone.pairs[3].uid, "p3@mnli");
}

TEST(BuildAllDropTest, SameVariantNameTwiceCollides) {
  const Dataset original =
      MakeDataset("orig", {Pair("x", "P", "H", NliLabel::kNeutral)});
  Dataset noun = original;
  noun.name = "noun";
  EXPECT_THROW(BuildAllDrop(original, {noun, noun}), ValidationError);
}

TEST(BuildAllDropTest, MisalignedVariantRejected) {
  const Dataset original =
      MakeDataset("orig", {Pair("x", "P", "H", NliLabel::kNeutral)});
  Dataset other = MakeDataset("noun", {Pair("y", "P", "H", NliLabel::kNeutral)});
  EXPECT_THROW(BuildAllDrop(original, {other}), ValidationError);
}

}  // namespace
}  // namespace nlicrash
