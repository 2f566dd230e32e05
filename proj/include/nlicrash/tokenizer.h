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

// Rule-based treebank-style tokenizer.
//
// Text is split on whitespace; every chunk then loses its leading and trailing
// punctuation (one token per punctuation character), and what remains is
// split by a contraction table ("don't" -> "do n't"). Detokenize joins tokens
// with single spaces, punctuation included ("The was 6 ."). Attaching
// punctuation would glue tokens back into chunks that split differently, so
// the plain join is what keeps the pair stable:
//
//   Tokenize(Detokenize(Tokenize(t))) == Tokenize(t)
//
// and tokenization never adds or drops a non-whitespace character.

#ifndef NLICRASH_TOKENIZER_H_
#define NLICRASH_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace nlicrash {

struct Token {
  std::string form;  // non-empty, no whitespace
  bool is_punct = false;

  bool operator==(const Token&) const = default;
};

// Builds a Token, computing is_punct from the form.
Token MakeToken(std::string form);
std::vector<Token> MakeTokens(const std::vector<std::string>& forms);
std::vector<std::string> Forms(const std::vector<Token>& tokens);

// Splits UTF-8 text into one view per code point. Invalid bytes come back as
// single-byte views.
std::vector<std::string_view> CodePoints(std::string_view text);

bool IsPunctuationCodePoint(std::string_view code_point);
bool IsSpaceCodePoint(std::string_view code_point);

// True iff `text` is non-empty and every code point is punctuation.
bool IsPunctuation(std::string_view text);
// True iff `text` is non-empty and consists of ASCII digits only.
bool IsDigits(std::string_view text);

// ASCII case folding; other bytes pass through.
std::string FoldCase(std::string_view text);

class ContractionRules {
 public:
  struct Rule {
    std::string pattern;             // without the leading '*' for suffixes
    std::vector<std::string> parts;  // suffix rules: the part after the stem
    bool is_suffix = false;
  };

  // Parses the plain-text table format of fixtures/contractions.txt. Throws
  // ValidationError on malformed lines or parts that do not concatenate back
  // to the pattern.
  static ContractionRules Parse(std::string_view text);

  // The table compiled into the library (same content as the fixture).
  static const ContractionRules& Default();

  // Splits a punctuation-free-edged word. Returns {word} when nothing applies.
  std::vector<std::string> Split(std::string_view word) const;

  // True if `chunk` is exactly a clitic produced by a suffix rule ("'s",
  // "n't", ...), compared case-insensitively.
  bool IsClitic(std::string_view chunk) const;

  int version() const { return version_; }
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  int version_ = 0;
  std::vector<Rule> rules_;
};

std::vector<Token> Tokenize(
    std::string_view text,
    const ContractionRules& rules = ContractionRules::Default());

std::string Detokenize(const std::vector<Token>& tokens);

}  // namespace nlicrash

#endif  // NLICRASH_TOKENIZER_H_
