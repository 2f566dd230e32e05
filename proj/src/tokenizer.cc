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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>

#include "nlicrash/error.h"

namespace nlicrash {
namespace {

// Keep in sync with fixtures/contractions.txt; a unit test compares them.
constexpr std::string_view kDefaultRules = R"(# Treebank-style contraction rules.
# version 1
can't -> ca n't
won't -> wo n't
cannot -> can not
gonna -> gon na
gotta -> got ta
wanna -> wan na
gimme -> gim me
lemme -> lem me
can’t -> ca n’t
won’t -> wo n’t
*n't -> * n't
*'s -> * 's
*'re -> * 're
*'ve -> * 've
*'ll -> * 'll
*'d -> * 'd
*'m -> * 'm
*n’t -> * n’t
*’s -> * ’s
*’re -> * ’re
*’ve -> * ’ve
*’ll -> * ’ll
*’d -> * ’d
*’m -> * ’m
)";

std::size_t SequenceLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return 2;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return 4;
  return 1;
}

// Returns the scalar value, or 0xFFFFFFFF for a malformed sequence.
std::uint32_t Decode(std::string_view cp) {
  const auto b = [&](std::size_t i) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(cp[i]));
  };
  switch (cp.size()) {
    case 1:
      return b(0) < 0x80 ? b(0) : 0xFFFFFFFFu;
    case 2:
      return ((b(0) & 0x1F) << 6) | (b(1) & 0x3F);
    case 3:
      return ((b(0) & 0x0F) << 12) | ((b(1) & 0x3F) << 6) | (b(2) & 0x3F);
    case 4:
      return ((b(0) & 0x07) << 18) | ((b(1) & 0x3F) << 12) |
             ((b(2) & 0x3F) << 6) | (b(3) & 0x3F);
    default:
      return 0xFFFFFFFFu;
  }
}

std::vector<std::string_view> SplitWords(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  std::size_t start = std::string_view::npos;
  for (std::string_view cp : CodePoints(text)) {
    if (IsSpaceCodePoint(cp)) {
      if (start != std::string_view::npos) {
        words.push_back(text.substr(start, pos - start));
        start = std::string_view::npos;
      }
    } else if (start == std::string_view::npos) {
      start = pos;
    }
    pos += cp.size();
  }
  if (start != std::string_view::npos) words.push_back(text.substr(start));
  return words;
}

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Token MakeToken(std::string form) {
  const bool punct = IsPunctuation(form);
  return Token{std::move(form), punct};
}

std::vector<Token> MakeTokens(const std::vector<std::string>& forms) {
  std::vector<Token> tokens;
  tokens.reserve(forms.size());
  for (const auto& f : forms) tokens.push_back(MakeToken(f));
  return tokens;
}

std::vector<std::string> Forms(const std::vector<Token>& tokens) {
  std::vector<std::string> forms;
  forms.reserve(tokens.size());
  for (const auto& t : tokens) forms.push_back(t.form);
  return forms;
}

std::vector<std::string_view> CodePoints(std::string_view text) {
  std::vector<std::string_view> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = SequenceLength(static_cast<unsigned char>(text[i]));
    if (i + len > text.size()) len = 1;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.push_back(text.substr(i, len));
    i += len;
  }
  return out;
}

bool IsPunctuationCodePoint(std::string_view code_point) {
  const std::uint32_t c = Decode(code_point);
  if (c < 0x80) return std::ispunct(static_cast<int>(c)) != 0;
  switch (c) {
    case 0x00A1:  // ¡
    case 0x00A7:  // §
    case 0x00AB:  // «
    case 0x00B6:  // ¶
    case 0x00B7:  // ·
    case 0x00BB:  // »
    case 0x00BF:  // ¿
      return true;
    default:
      break;
  }
  return (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) ||
         (c >= 0x3001 && c <= 0x3003) || (c >= 0x3008 && c <= 0x3011);
}

bool IsSpaceCodePoint(std::string_view code_point) {
  const std::uint32_t c = Decode(code_point);
  switch (c) {
    case ' ':
    case '\t':
    case '\n':
    case '\r':
    case '\v':
    case '\f':
    case 0x0085:
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

bool IsPunctuation(std::string_view text) {
  if (text.empty()) return false;
  for (std::string_view cp : CodePoints(text)) {
    if (!IsPunctuationCodePoint(cp)) return false;
  }
  return true;
}

bool IsDigits(std::string_view text) {
  return !text.empty() &&
         std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return c >= '0' && c <= '9'; });
}

std::string FoldCase(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

ContractionRules ContractionRules::Parse(std::string_view text) {
  ContractionRules table;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kVersion = "# version ";
      if (line.starts_with(kVersion)) {
        const std::string_view num = Trim(line.substr(kVersion.size()));
        std::from_chars(num.data(), num.data() + num.size(), table.version_);
      }
      continue;
    }
    const std::size_t arrow = line.find("->");
    if (arrow == std::string_view::npos) {
      throw ValidationError("contraction rule without '->' at line " +
                            std::to_string(line_no));
    }
    Rule rule;
    std::string_view pattern = Trim(line.substr(0, arrow));
    std::vector<std::string_view> parts = SplitWords(line.substr(arrow + 2));
    if (pattern.empty() || parts.empty()) {
      throw ValidationError("empty contraction rule at line " +
                            std::to_string(line_no));
    }
    if (pattern.front() == '*') {
      if (parts.front() != "*" || parts.size() < 2) {
        throw ValidationError(
            "suffix rule must split as '* <suffix>' at line " +
            std::to_string(line_no));
      }
      rule.is_suffix = true;
      pattern.remove_prefix(1);
      parts.erase(parts.begin());
    }
    std::string joined;
    for (std::string_view p : parts) {
      joined += p;
      rule.parts.emplace_back(p);
    }
    if (joined != pattern) {
      throw ValidationError("contraction parts do not rebuild '" +
                            std::string(pattern) + "' at line " +
                            std::to_string(line_no));
    }
    rule.pattern = FoldCase(pattern);
    table.rules_.push_back(std::move(rule));
  }
  // Longest suffix first so "n't" wins over "'t"-like shorter patterns.
  std::stable_sort(table.rules_.begin(), table.rules_.end(),
                   [](const Rule& a, const Rule& b) {
                     if (a.is_suffix != b.is_suffix) return !a.is_suffix;
                     return a.pattern.size() > b.pattern.size();
                   });
  return table;
}

const ContractionRules& ContractionRules::Default() {
  static const ContractionRules kRules = Parse(kDefaultRules);
  return kRules;
}

std::vector<std::string> ContractionRules::Split(std::string_view word) const {
  const std::string lower = FoldCase(word);
  for (const Rule& rule : rules_) {
    if (rule.is_suffix) {
      if (word.size() <= rule.pattern.size() ||
          !std::string_view(lower).ends_with(rule.pattern)) {
        continue;
      }
      const std::size_t stem_len = word.size() - rule.pattern.size();
      std::vector<std::string> out = Split(word.substr(0, stem_len));
      std::size_t pos = stem_len;
      for (const std::string& part : rule.parts) {
        out.emplace_back(word.substr(pos, part.size()));
        pos += part.size();
      }
      return out;
    }
    if (lower == rule.pattern) {
      std::vector<std::string> out;
      std::size_t pos = 0;
      for (const std::string& part : rule.parts) {
        out.emplace_back(word.substr(pos, part.size()));
        pos += part.size();
      }
      return out;
    }
  }
  return {std::string(word)};
}

bool ContractionRules::IsClitic(std::string_view chunk) const {
  const std::string lower = FoldCase(chunk);
  return std::any_of(rules_.begin(), rules_.end(), [&](const Rule& r) {
    return r.is_suffix && r.pattern == lower;
  });
}

namespace {

bool HasEdgePunctuation(std::string_view word) {
  const std::vector<std::string_view> cps = CodePoints(word);
  return !cps.empty() && (IsPunctuationCodePoint(cps.front()) ||
                          IsPunctuationCodePoint(cps.back()));
}

void TokenizeChunk(std::string_view chunk, const ContractionRules& rules,
                   std::vector<Token>& tokens) {
  const std::vector<std::string_view> cps = CodePoints(chunk);
  std::size_t end = cps.size();
  while (end > 0 && IsPunctuationCodePoint(cps[end - 1])) --end;
  if (end == 0) {
    for (std::string_view cp : cps) tokens.push_back({std::string(cp), true});
    return;
  }
  std::size_t core_bytes = 0;
  for (std::size_t i = 0; i < end; ++i) core_bytes += cps[i].size();
  std::size_t begin = 0;
  if (!rules.IsClitic(chunk.substr(0, core_bytes))) {
    while (IsPunctuationCodePoint(cps[begin])) ++begin;
  }
  std::size_t lead_bytes = 0;
  for (std::size_t i = 0; i < begin; ++i) {
    tokens.push_back({std::string(cps[i]), true});
    lead_bytes += cps[i].size();
  }
  // A stem left by a suffix split can still carry edge punctuation
  // ("a!" from "a!'s"); it is tokenized again so every emitted form is a
  // fixed point of Tokenize.
  for (std::string& part :
       rules.Split(chunk.substr(lead_bytes, core_bytes - lead_bytes))) {
    if (!rules.IsClitic(part) && HasEdgePunctuation(part)) {
      TokenizeChunk(part, rules, tokens);
    } else {
      tokens.push_back(MakeToken(std::move(part)));
    }
  }
  for (std::size_t i = end; i < cps.size(); ++i) {
    tokens.push_back({std::string(cps[i]), true});
  }
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text,
                            const ContractionRules& rules) {
  std::vector<Token> tokens;
  for (std::string_view chunk : SplitWords(text)) {
    TokenizeChunk(chunk, rules, tokens);
  }
  return tokens;
}

std::string Detokenize(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i].form;
  }
  return out;
}

}  // namespace nlicrash
