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

#include "nlicrash/tagger.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <utility>

#include "nlicrash/corpus.h"
#include "nlicrash/error.h"
#include "nlicrash/model_file.h"
#include "nlicrash/random.h"

namespace nlicrash {
namespace {

constexpr std::array<std::string_view, kNumPosTags> kPosNames = {
    "ADJ", "ADP", "ADV",  "CONJ",  "DET",  "NOUN",
    "NUM", "PRON", "PRT", "PUNCT", "VERB", "X"};

struct PennEntry {
  std::string_view penn;
  UniversalPos universal;
};

constexpr PennEntry kPennTable[] = {
    {"!", UniversalPos::kPunct},    {"#", UniversalPos::kPunct},
    {"$", UniversalPos::kPunct},    {"''", UniversalPos::kPunct},
    {"\"", UniversalPos::kPunct},   {"(", UniversalPos::kPunct},
    {")", UniversalPos::kPunct},    {",", UniversalPos::kPunct},
    {"-LRB-", UniversalPos::kPunct}, {"-RRB-", UniversalPos::kPunct},
    {".", UniversalPos::kPunct},    {":", UniversalPos::kPunct},
    {"?", UniversalPos::kPunct},    {"``", UniversalPos::kPunct},
    {"CC", UniversalPos::kConj},    {"CD", UniversalPos::kNum},
    {"DT", UniversalPos::kDet},     {"EX", UniversalPos::kDet},
    {"FW", UniversalPos::kX},       {"IN", UniversalPos::kAdp},
    {"JJ", UniversalPos::kAdj},     {"JJR", UniversalPos::kAdj},
    {"JJS", UniversalPos::kAdj},    {"LS", UniversalPos::kX},
    {"MD", UniversalPos::kVerb},    {"NN", UniversalPos::kNoun},
    {"NNP", UniversalPos::kNoun},   {"NNPS", UniversalPos::kNoun},
    {"NNS", UniversalPos::kNoun},   {"PDT", UniversalPos::kDet},
    {"POS", UniversalPos::kPrt},    {"PRP", UniversalPos::kPron},
    {"PRP$", UniversalPos::kPron},  {"RB", UniversalPos::kAdv},
    {"RBR", UniversalPos::kAdv},    {"RBS", UniversalPos::kAdv},
    {"RP", UniversalPos::kPrt},     {"SYM", UniversalPos::kX},
    {"TO", UniversalPos::kPrt},     {"UH", UniversalPos::kX},
    {"VB", UniversalPos::kVerb},    {"VBD", UniversalPos::kVerb},
    {"VBG", UniversalPos::kVerb},   {"VBN", UniversalPos::kVerb},
    {"VBP", UniversalPos::kVerb},   {"VBZ", UniversalPos::kVerb},
    {"WDT", UniversalPos::kDet},    {"WP", UniversalPos::kPron},
    {"WP$", UniversalPos::kPron},   {"WRB", UniversalPos::kAdv},
};

constexpr std::string_view kStart = "-START-";
constexpr std::string_view kStart2 = "-START2-";
constexpr std::string_view kEnd = "-END-";
constexpr std::string_view kEnd2 = "-END2-";

std::string Normalize(std::string_view word) {
  if (std::any_of(word.begin(), word.end(),
                  [](char c) { return c >= '0' && c <= '9'; })) {
    return "!D";
  }
  return FoldCase(word);
}

std::string Suffix(std::string_view word, std::size_t n) {
  const auto cps = CodePoints(word);
  if (cps.size() <= n) return std::string(word);
  std::size_t bytes = 0;
  for (std::size_t i = cps.size() - n; i < cps.size(); ++i) {
    bytes += cps[i].size();
  }
  return std::string(word.substr(word.size() - bytes));
}

// Character-class shape with runs collapsed: "McDonald's" -> "XxXx'x".
std::string Shape(std::string_view word) {
  std::string shape;
  for (std::string_view cp : CodePoints(word)) {
    char cls;
    if (cp.size() > 1) {
      cls = IsPunctuationCodePoint(cp) ? '%' : 'u';
    } else {
      const char c = cp[0];
      if (c >= 'A' && c <= 'Z') {
        cls = 'X';
      } else if (c >= 'a' && c <= 'z') {
        cls = 'x';
      } else if (c >= '0' && c <= '9') {
        cls = 'd';
      } else {
        cls = c;
      }
    }
    if (shape.empty() || shape.back() != cls) shape.push_back(cls);
  }
  return shape;
}

std::string FirstCodePoint(std::string_view word) {
  const auto cps = CodePoints(word);
  return cps.empty() ? std::string() : std::string(cps.front());
}

std::size_t TagIndex(UniversalPos t) { return static_cast<std::size_t>(t); }

ModelFile ToModelFile(const TaggerModel& model) {
  ModelFile file;
  file.kind = "tagger";
  for (std::string_view n : kPosNames) file.classes.emplace_back(n);
  const TaggerMetadata& meta = model.metadata();
  if (!meta.corpus_id.empty()) file.metadata.emplace_back("corpus", meta.corpus_id);
  file.metadata.emplace_back("epochs", std::to_string(meta.epochs));
  file.metadata.emplace_back("seed", std::to_string(meta.seed));
  file.perceptron = model.perceptron();
  return file;
}

template <typename T>
T MetaNumber(const ModelFile& file, std::string_view key) {
  const auto value = file.Meta(key);
  if (!value) return T{};
  T out{};
  auto [ptr, ec] =
      std::from_chars(value->data(), value->data() + value->size(), out);
  if (ec != std::errc() || ptr != value->data() + value->size()) {
    throw ParseError("malformed metadata '" + std::string(key) + "'", 0);
  }
  return out;
}

TaggerModel FromModelFile(ModelFile file) {
  if (file.kind != "tagger") {
    throw ValidationError("model file holds a '" + file.kind +
                          "' model, not a tagger");
  }
  if (file.classes.size() != kNumPosTags ||
      !std::equal(file.classes.begin(), file.classes.end(),
                  kPosNames.begin())) {
    throw ValidationError("tagger model has an unexpected tag inventory");
  }
  TaggerMetadata meta;
  meta.corpus_id = file.Meta("corpus").value_or("");
  meta.epochs = MetaNumber<int>(file, "epochs");
  meta.seed = MetaNumber<std::uint64_t>(file, "seed");
  return TaggerModel(std::move(file.perceptron), std::move(meta));
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string_view PosName(UniversalPos tag) { return kPosNames[TagIndex(tag)]; }

std::optional<UniversalPos> ParsePos(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (std::size_t i = 0; i < kNumPosTags; ++i) {
    if (kPosNames[i] == upper) return static_cast<UniversalPos>(i);
  }
  return std::nullopt;
}

std::optional<UniversalPos> PennToUniversal(std::string_view penn_tag) {
  for (const PennEntry& e : kPennTable) {
    if (e.penn == penn_tag) return e.universal;
  }
  return std::nullopt;
}

PosSet PosSet::All() {
  PosSet s;
  for (UniversalPos t : kAllPosTags) s.Insert(t);
  return s;
}

std::size_t PosSet::size() const {
  return static_cast<std::size_t>(std::popcount(bits_));
}

std::vector<UniversalPos> PosSet::Tags() const {
  std::vector<UniversalPos> out;
  for (UniversalPos t : kAllPosTags) {
    if (Contains(t)) out.push_back(t);
  }
  return out;
}

std::string PosSet::ToString() const {
  std::string out;
  for (UniversalPos t : Tags()) {
    if (!out.empty()) out += ',';
    out += PosName(t);
  }
  return out;
}

std::vector<Token> TaggedSentence::Tokens() const {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.token);
  return out;
}

TaggedSentence MakeTaggedSentence(
    const std::vector<std::pair<std::string, UniversalPos>>& items) {
  TaggedSentence s;
  for (const auto& [form, tag] : items) {
    s.tokens.push_back({MakeToken(form), tag});
  }
  return s;
}

std::optional<UniversalPos> LexicalOverride(std::string_view form) {
  if (IsPunctuation(form)) return UniversalPos::kPunct;
  if (IsDigits(form)) return UniversalPos::kNum;
  return std::nullopt;
}

std::vector<std::string> TaggerContext(const std::vector<Token>& tokens) {
  std::vector<std::string> ctx;
  ctx.reserve(tokens.size() + 4);
  ctx.emplace_back(kStart);
  ctx.emplace_back(kStart2);
  for (const Token& t : tokens) ctx.push_back(Normalize(t.form));
  ctx.emplace_back(kEnd);
  ctx.emplace_back(kEnd2);
  return ctx;
}

std::vector<Feature> TaggerFeatures(const std::vector<Token>& tokens,
                                    const std::vector<std::string>& context,
                                    std::size_t i, std::string_view prev,
                                    std::string_view prev2) {
  const std::string& word = context[i + 2];
  const std::string& before = context[i + 1];
  const std::string& after = context[i + 3];
  std::vector<Feature> f;
  f.reserve(13);
  auto add = [&](std::string name) { f.push_back({std::move(name), 1.0}); };
  add("bias");
  add("w=" + word);
  add("s1=" + Suffix(word, 1));
  add("s2=" + Suffix(word, 2));
  add("s3=" + Suffix(word, 3));
  add("p1=" + FirstCodePoint(tokens[i].form));
  add("t-1=" + std::string(prev));
  add("t-2,t-1=" + std::string(prev2) + "," + std::string(prev));
  add("w-1=" + before);
  add("w+1=" + after);
  add("s-1=" + Suffix(before, 3));
  add("s+1=" + Suffix(after, 3));
  add("shape=" + Shape(tokens[i].form));
  return f;
}

TaggerModel::TaggerModel(AveragedPerceptron perceptron, TaggerMetadata metadata)
    : perceptron_(std::move(perceptron)), metadata_(std::move(metadata)) {
  if (perceptron_.num_classes() != kNumPosTags) {
    throw std::invalid_argument("tagger perceptron must have 12 classes");
  }
  perceptron_.Finalize();
}

TaggedSentence TaggerModel::Tag(const std::vector<Token>& tokens) const {
  TaggedSentence out;
  out.tokens.reserve(tokens.size());
  const std::vector<std::string> ctx = TaggerContext(tokens);
  std::string_view prev = kStart;
  std::string_view prev2 = kStart2;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    UniversalPos tag;
    if (auto forced = LexicalOverride(tokens[i].form)) {
      tag = *forced;
    } else {
      tag = static_cast<UniversalPos>(
          perceptron_.Predict(TaggerFeatures(tokens, ctx, i, prev, prev2)));
    }
    out.tokens.push_back({tokens[i], tag});
    prev2 = prev;
    prev = PosName(tag);
  }
  return out;
}

TaggerModel TrainTagger(const std::vector<TaggedSentence>& corpus, int epochs,
                        std::uint64_t seed, std::string corpus_id) {
  if (corpus.empty()) {
    throw ValidationError("cannot train a tagger on an empty corpus");
  }
  if (epochs < 1) throw ValidationError("epochs must be a positive integer");

  AveragedPerceptron perceptron(kNumPosTags);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  SeededRng rng(seed);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.Shuffle(std::span<std::size_t>(order));
    for (std::size_t idx : order) {
      const TaggedSentence& gold = corpus[idx];
      const std::vector<Token> tokens = gold.Tokens();
      const std::vector<std::string> ctx = TaggerContext(tokens);
      std::string_view prev = kStart;
      std::string_view prev2 = kStart2;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        UniversalPos tag;
        if (auto forced = LexicalOverride(tokens[i].form)) {
          tag = *forced;
        } else {
          const auto features = TaggerFeatures(tokens, ctx, i, prev, prev2);
          const std::size_t guess = perceptron.Predict(features);
          perceptron.Observe(TagIndex(gold.tokens[i].tag), guess, features);
          tag = static_cast<UniversalPos>(guess);
        }
        prev2 = prev;
        prev = PosName(tag);
      }
    }
  }
  perceptron.Finalize();
  return TaggerModel(std::move(perceptron),
                     TaggerMetadata{std::move(corpus_id), epochs, seed});
}

double EvaluateTagger(const TaggerModel& model,
                      const std::vector<TaggedSentence>& corpus) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const TaggedSentence& gold : corpus) {
    const TaggedSentence predicted = model.Tag(gold.Tokens());
    for (std::size_t i = 0; i < gold.tokens.size(); ++i) {
      ++total;
      if (predicted.tokens[i].tag == gold.tokens[i].tag) ++correct;
    }
  }
  if (total == 0) {
    throw ValidationError("cannot evaluate a tagger on a corpus with no tokens");
  }
  return static_cast<double>(correct) / static_cast<double>(total);
}

std::string SerializeTagger(const TaggerModel& model) {
  return SerializeModel(ToModelFile(model));
}

TaggerModel ParseTagger(std::string_view text) {
  return FromModelFile(ParseModel(text));
}

void SaveTagger(const TaggerModel& model, const std::filesystem::path& path) {
  WriteFile(path, SerializeTagger(model));
}

TaggerModel LoadTagger(const std::filesystem::path& path) {
  return ParseTagger(ReadFile(path));
}

std::vector<PretaggedEntry> ParsePretagged(std::string_view text,
                                           const PretaggedOptions& options) {
  std::vector<PretaggedEntry> entries;
  PretaggedEntry current;
  bool open = false;
  auto flush = [&] {
    if (open) entries.push_back(std::move(current));
    current = PretaggedEntry{};
    open = false;
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.starts_with("# ")) {
      const std::string_view body = line.substr(2);
      const std::size_t eq = body.find(" = ");
      if (eq != std::string_view::npos) {
        const std::string_view key = body.substr(0, eq);
        const std::string value(body.substr(eq + 3));
        if (key == "uid") {
          current.uid = value;
          open = true;
        } else if (key == "field") {
          current.field = value;
          open = true;
        }
      }
      continue;
    }
    const auto cells = SplitWhitespace(line);
    if (cells.empty()) {
      flush();
      continue;
    }
    const std::string sentence_ref =
        " at line " + std::to_string(line_no) + " (sentence " +
        std::to_string(entries.size()) + ")";
    if (cells.size() != 2) {
      throw ValidationError("expected '<form> <TAG>'" + sentence_ref);
    }
    std::optional<UniversalPos> tag = ParsePos(cells[1]);
    if (!tag && options.map_penn) tag = PennToUniversal(cells[1]);
    if (!tag) {
      std::string message =
          "unknown tag '" + std::string(cells[1]) + "'" + sentence_ref;
      if (auto mapped = PennToUniversal(cells[1])) {
        message += "; this looks like a Penn Treebank tag (" +
                   std::string(cells[1]) + " -> " +
                   std::string(PosName(*mapped)) +
                   "), see the universal mapping table "
                   "(fixtures/penn-universal.map) or enable Penn mapping";
      } else {
        message += "; expected one of ADJ ADP ADV CONJ DET NOUN NUM PRON PRT "
                   "PUNCT VERB X";
      }
      throw ValidationError(message);
    }
    current.sentence.tokens.push_back({MakeToken(std::string(cells[0])), *tag});
    open = true;
  }
  flush();
  return entries;
}

std::vector<PretaggedEntry> LoadPretaggedEntries(
    const std::filesystem::path& path, const PretaggedOptions& options) {
  return ParsePretagged(ReadFile(path), options);
}

std::vector<TaggedSentence> LoadPretagged(const std::filesystem::path& path,
                                          const PretaggedOptions& options) {
  std::vector<TaggedSentence> out;
  for (auto& e : LoadPretaggedEntries(path, options)) {
    out.push_back(std::move(e.sentence));
  }
  return out;
}

std::string FormatPretagged(const std::vector<PretaggedEntry>& entries) {
  std::string out;
  for (const PretaggedEntry& e : entries) {
    if (e.uid) out += "# uid = " + *e.uid + '\n';
    if (e.field) out += "# field = " + *e.field + '\n';
    for (const TaggedToken& t : e.sentence.tokens) {
      out += t.token.form;
      out += '\t';
      out += PosName(t.tag);
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

}  // namespace nlicrash
