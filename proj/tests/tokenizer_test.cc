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

#include "nlicrash/tokenizer.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "nlicrash/corpus.h"
#include "nlicrash/error.h"
#include "nlicrash/random.h"
#include "test_util.h"

namespace nlicrash {
namespace {

using Strings = std::vector<std::string>;

Strings Tok(std::string_view text) { return Forms(Tokenize(text)); }

TEST(TokenizeTest, SplitsTerminalPunctuation) {
  EXPECT_EQ(Tok("The man was 6 foot tall."),
            (Strings{"The", "man", "was", "6", "foot", "tall", "."}));
}

TEST(TokenizeTest, EmptyInput) {
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_TRUE(Tokenize("   \t\n").empty());
}

TEST(TokenizeTest, Contractions) {
  EXPECT_EQ(Tok("don't stop"), (Strings{"do", "n't", "stop"}));
  EXPECT_EQ(Tok("I can't"), (Strings{"I", "ca", "n't"}));
  EXPECT_EQ(Tok("We won't."), (Strings{"We", "wo", "n't", "."}));
  EXPECT_EQ(Tok("John's"), (Strings{"John", "'s"}));
  EXPECT_EQ(Tok("they're"), (Strings{"they", "'re"}));
  EXPECT_EQ(Tok("cannot"), (Strings{"can", "not"}));
}

TEST(TokenizeTest, LeadingAndTrailingPunctuation) {
  EXPECT_EQ(Tok("(hello), \"world\"!"),
            (Strings{"(", "hello", ")", ",", "\"", "world", "\"", "!"}));
  EXPECT_EQ(Tok("..."), (Strings{".", ".", "."}));
}

TEST(TokenizeTest, StemPunctuationIsDetached) {
  EXPECT_EQ(Tok("a!'s"), (Strings{"a", "!", "'s"}));
  EXPECT_EQ(Tok("n't"), (Strings{"n't"}));
  EXPECT_EQ(Tok("Hello ( world ) 's don't"),
            (Strings{"Hello", "(", "world", ")", "'s", "do", "n't"}));
}

TEST(TokenizeTest, PunctFlag) {
  const auto tokens = Tokenize("Hi, 42!");
  ASSERT_EQ(tokens.size(), 4u);
  EXPECT_FALSE(tokens[0].is_punct);
  EXPECT_TRUE(tokens[1].is_punct);
  EXPECT_FALSE(tokens[2].is_punct);
  EXPECT_TRUE(tokens[3].is_punct);
}

TEST(DetokenizeTest, SpaceJoinsEveryToken) {
  EXPECT_EQ(Detokenize(MakeTokens({"The", "was", "6", "."})), "The was 6 .");
  EXPECT_EQ(Detokenize({}), "");
  EXPECT_EQ(Detokenize(Tokenize("a b c")), "a b c");
}

TEST(ContractionRulesTest, FixtureMatchesEmbeddedTable) {
  const ContractionRules fixture = ContractionRules::Parse(
      ReadFile(testing::SourceDir() / "fixtures" / "contractions.txt"));
  const ContractionRules& embedded = ContractionRules::Default();
  EXPECT_EQ(fixture.version(), embedded.version());
  ASSERT_EQ(fixture.rules().size(), embedded.rules().size());
  for (std::size_t i = 0; i < fixture.rules().size(); ++i) {
    EXPECT_EQ(fixture.rules()[i].pattern, embedded.rules()[i].pattern);
    EXPECT_EQ(fixture.rules()[i].parts, embedded.rules()[i].parts);
    EXPECT_EQ(fixture.rules()[i].is_suffix, embedded.rules()[i].is_suffix);
  }
}

TEST(ContractionRulesTest, RejectsPartsThatDoNotConcatenate) {
  EXPECT_THROW(ContractionRules::Parse("# version 1\ncan't\tcan not\n"),
               ValidationError);
}

// Random strings over a small alphabet that is dense in the characters the
// tokenizer treats specially.
std::string RandomText(SeededRng& rng) {
  static const std::vector<std::string> kPieces = {
      "a", "b", "The", "n't", "'s", "don't", "can't", " ", " ", "  ",
      ".", ",", "(", ")", "\"", "'", "!", "?", "-", "6", "42", "é", "’s", "…"};
  std::string s;
  const auto len = rng.Below(12);
  for (std::uint64_t i = 0; i < len; ++i) s += kPieces[rng.Below(kPieces.size())];
  return s;
}

TEST(TokenizePropertyTest, IdempotentThroughDetokenize) {
  SeededRng rng(2024);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::string text = RandomText(rng);
    const auto once = Tokenize(text);
    EXPECT_EQ(Tokenize(Detokenize(once)), once) << "input: [" << text << "]";
  }
}

TEST(TokenizePropertyTest, PreservesNonWhitespaceCharacters) {
  SeededRng rng(7);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::string text = RandomText(rng);
    std::string in, out;
    for (char c : text) {
      if (c != ' ' && c != '\t' && c != '\n') in += c;
    }
    for (const Token& t : Tokenize(text)) {
      EXPECT_FALSE(t.form.empty());
      EXPECT_EQ(t.form.find(' '), std::string::npos);
      out += t.form;
    }
    std::sort(in.begin(), in.end());
    std::sort(out.begin(), out.end());
    EXPECT_EQ(in, out) << "input: [" << text << "]";
  }
}

}  // namespace
}  // namespace nlicrash
