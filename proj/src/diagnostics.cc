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

#include "nlicrash/diagnostics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <span>

#include "json.hpp"
#include "nlicrash/error.h"
#include "nlicrash/random.h"

namespace nlicrash {
namespace {

using json = nlohmann::json;

constexpr std::string_view kAsiNote =
    "ASI = (accuracy - chance) / (baseline - chance). ASI and the verdict "
    "thresholds are an operational heuristic, not a calibrated test.";

std::string Fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string s = buf;
  if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

void CheckKeys(const json& j, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw UsageError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

json OptionalJson(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> OptionalDouble(const json& j, std::string_view key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

Dataset Subset(const Dataset& d, const std::vector<std::size_t>& indices,
               std::string_view suffix) {
  Dataset out;
  out.name = d.name + std::string(suffix);
  out.split = d.split;
  out.pairs.reserve(indices.size());
  for (std::size_t i : indices) out.pairs.push_back(d.pairs[i]);
  return out;
}

NamedTransform ParseNamedTransform(const json& j) {
  if (!j.is_object()) throw UsageError("each transform must be a JSON object");
  CheckKeys(j, "transform", {"name", "preset", "kind", "tags", "n", "seed",
                             "apply_to"});
  if (!j.contains("name")) throw UsageError("transform entry lacks a name");
  NamedTransform t;
  t.name = j.at("name").get<std::string>();
  if (j.contains("preset")) {
    if (j.contains("kind") || j.contains("tags")) {
      throw UsageError("transform '" + t.name +
                       "' sets both a preset and an explicit kind or tags");
    }
    const std::string preset = j.at("preset").get<std::string>();
    const auto spec = FindPreset(preset);
    if (!spec) {
      throw UsageError("transform '" + t.name + "' names unknown preset '" +
                       preset + "'");
    }
    t.spec = *spec;
    if (j.contains("apply_to")) {
      const std::string a = j.at("apply_to").get<std::string>();
      const auto apply = ParseApplyTo(a);
      if (!apply) throw UsageError("unknown apply_to '" + a + "'");
      t.spec.apply_to = *apply;
    }
    return t;
  }
  json spec = j;
  spec.erase("name");
  t.spec = TransformSpec::FromJson(spec.dump());
  t.seed_from_config =
      t.spec.kind == TransformKind::kShuffleNgrams && !j.contains("seed");
  return t;
}

json SpecJson(const TransformSpec& spec) { return json::parse(spec.ToJson()); }

json RowJson(const ReportRow& r) {
  json j;
  j["name"] = r.name;
  j["transform"] = SpecJson(r.spec);
  j["accuracy_pct"] = r.accuracy_pct;
  j["delta_points"] = OptionalJson(r.delta_points);
  j["tokens_removed"] = r.tokens_removed;
  j["overlap_pct"] = r.overlap_pct;
  j["asi"] = OptionalJson(r.asi);
  j["content_word"] = r.content_word();
  j["n_evaluated"] = r.n_evaluated;
  j["n_missing_predictions"] = r.n_missing_predictions;
  return j;
}

ReportRow RowFromJson(const json& j) {
  ReportRow r;
  r.name = j.at("name").get<std::string>();
  r.spec = TransformSpec::FromJson(j.at("transform").dump());
  r.accuracy_pct = j.at("accuracy_pct").get<double>();
  r.delta_points = OptionalDouble(j, "delta_points");
  r.tokens_removed = j.at("tokens_removed").get<std::size_t>();
  r.overlap_pct = j.at("overlap_pct").get<double>();
  r.asi = OptionalDouble(j, "asi");
  r.n_evaluated = j.at("n_evaluated").get<std::size_t>();
  r.n_missing_predictions = j.at("n_missing_predictions").get<std::size_t>();
  return r;
}

json SwapJson(const SwapConsistency& s) {
  json j;
  j["contradiction_unchanged_pct"] = OptionalJson(s.contradiction_pct);
  j["neutral_unchanged_pct"] = OptionalJson(s.neutral_pct);
  j["entailment_changed_pct"] = OptionalJson(s.entailment_pct);
  j["contradiction_pairs"] = s.contradiction_pairs;
  j["neutral_pairs"] = s.neutral_pairs;
  j["entailment_pairs"] = s.entailment_pairs;
  return j;
}

SwapConsistency SwapFromJson(const json& j) {
  SwapConsistency s;
  s.contradiction_pct = OptionalDouble(j, "contradiction_unchanged_pct");
  s.neutral_pct = OptionalDouble(j, "neutral_unchanged_pct");
  s.entailment_pct = OptionalDouble(j, "entailment_changed_pct");
  s.contradiction_pairs = j.at("contradiction_pairs").get<std::size_t>();
  s.neutral_pairs = j.at("neutral_pairs").get<std::size_t>();
  s.entailment_pairs = j.at("entailment_pairs").get<std::size_t>();
  return s;
}

std::string OptionalFixed(const std::optional<double>& v, int decimals) {
  return v ? Fixed(*v, decimals) : std::string("n/a");
}

std::string EmitMarkdown(const DiagnosticReport& r) {
  std::string out = "# Crash-test report: " + r.dataset + "\n\n";
  out += "Mode: " + std::string(SuiteModeName(r.mode)) + ". Pairs: " +
         std::to_string(r.pairs) + ". Baseline accuracy: " +
         (r.baseline_accuracy_pct ? Fixed(*r.baseline_accuracy_pct, 2) + "%"
                                  : std::string("n/a")) +
         ". Chance: " + Fixed(r.config.chance_pct, 2) +
         "%. ASI threshold: " + Fixed(r.config.asi_threshold, 2) + ".\n\n";
  out += "| transform | accuracy | delta | tokens removed | overlap % | ASI |\n";
  out += "|---|---:|---:|---:|---:|---:|\n";
  for (const ReportRow& row : r.rows) {
    out += "| " + row.name + " | " + Fixed(row.accuracy_pct, 2) + " | " +
           OptionalFixed(row.delta_points, 2) + " | " +
           std::to_string(row.tokens_removed) + " | " +
           Fixed(row.overlap_pct, 2) + " | " + OptionalFixed(row.asi, 3) +
           " |\n";
  }
  out += "\n";
  if (r.swap_consistency) {
    const SwapConsistency& s = *r.swap_consistency;
    out += "Swap consistency: contradiction unchanged " +
           OptionalFixed(s.contradiction_pct, 2) + "%, neutral unchanged " +
           OptionalFixed(s.neutral_pct, 2) + "%, entailment changed " +
           OptionalFixed(s.entailment_pct, 2) + "%.\n\n";
  } else {
    out += "Swap consistency: not measured.\n\n";
  }
  out += "**Verdict: " + std::string(VerdictName(r.verdict.verdict)) + "**";
  if (!r.verdict.triggers.empty()) {
    out += " (";
    for (std::size_t i = 0; i < r.verdict.triggers.size(); ++i) {
      if (i) out += "; ";
      out += r.verdict.triggers[i];
    }
    out += ")";
  }
  out += ". " + r.verdict.reason + "\n\n";
  out += std::string(kAsiNote) + "\n";
  return out;
}

std::string EmitCsv(const DiagnosticReport& r) {
  std::vector<RemovedSeriesRow> series;
  for (const ReportRow& row : r.rows) {
    series.push_back({row.name, row.tokens_removed, row.accuracy_pct,
                      row.delta_points});
  }
  std::string out = FormatRemovedCsv(series);
  out += "\ndataset,overlap_pct,accuracy_pct\n";
  if (r.original_overlap_pct && r.baseline_accuracy_pct) {
    out += "original," + Fixed(*r.original_overlap_pct, 2) + "," +
           Fixed(*r.baseline_accuracy_pct, 2) + "\n";
  }
  for (const ReportRow& row : r.rows) {
    out += row.name + "," + Fixed(row.overlap_pct, 2) + "," +
           Fixed(row.accuracy_pct, 2) + "\n";
  }
  return out;
}

}  // namespace

std::string_view SuiteModeName(SuiteMode mode) {
  return mode == SuiteMode::kProbe ? "probe" : "prediction_files";
}

std::optional<SuiteMode> ParseSuiteMode(std::string_view name) {
  if (name == "probe") return SuiteMode::kProbe;
  if (name == "prediction_files") return SuiteMode::kPredictionFiles;
  return std::nullopt;
}

void SuiteConfig::Validate() const {
  if (transforms.empty()) throw UsageError("suite has no transforms");
  std::set<std::string> names;
  bool needs_seed = mode == SuiteMode::kProbe && !probe.seed;
  for (const NamedTransform& t : transforms) {
    if (t.name.empty()) throw UsageError("transform with empty name");
    if (t.name == "original") {
      throw UsageError("'original' is reserved for the unmodified dataset");
    }
    if (!names.insert(t.name).second) {
      throw UsageError("duplicate transform name '" + t.name + "'");
    }
    t.spec.Validate();
    if (t.seed_from_config) needs_seed = true;
  }
  if (needs_seed && !seed) {
    throw UsageError(
        "this suite uses randomness (shuffles or probe training); set \"seed\" "
        "in the config or pass --seed");
  }
  if (!(verdict.asi_threshold > 0.0 && verdict.asi_threshold < 1.0)) {
    throw UsageError("asi_threshold must lie in (0, 1)");
  }
  if (!(verdict.chance_pct >= 0.0 && verdict.chance_pct < 100.0)) {
    throw UsageError("chance_pct must lie in [0, 100)");
  }
  if (verdict.min_signal_pct < 0.0) {
    throw UsageError("min_signal_pct must be non-negative");
  }
  for (double v : {verdict.swap_same_label_min_pct,
                   verdict.swap_changed_label_min_pct}) {
    if (!(v >= 0.0 && v <= 100.0)) {
      throw UsageError("swap tolerances must lie in [0, 100]");
    }
  }
  if (baseline_accuracy_pct &&
      !(*baseline_accuracy_pct > verdict.chance_pct &&
        *baseline_accuracy_pct <= 100.0)) {
    throw UsageError("baseline accuracy " + Fixed(*baseline_accuracy_pct, 2) +
                     " must exceed chance " + Fixed(verdict.chance_pct, 2) +
                     " and be at most 100");
  }
  if (!(probe.train_fraction > 0.0 && probe.train_fraction < 1.0)) {
    throw UsageError("probe train_fraction must lie in (0, 1)");
  }
  if (probe.epochs < 1) throw UsageError("probe epochs must be >= 1");
}

std::vector<NamedTransform> DefaultTransforms() {
  std::vector<NamedTransform> out;
  for (const Preset& p : WordClassPresets()) {
    out.push_back({std::string(p.name), p.spec, false});
  }
  for (int n = 1; n <= 3; ++n) {
    out.push_back({"shuffle-n" + std::to_string(n), TransformSpec::Shuffle(n, 0),
                   true});
  }
  out.push_back({"swap", TransformSpec::Swap(), false});
  out.push_back({"hypothesis-only", TransformSpec::HypothesisOnly(), false});
  return out;
}

SuiteConfig DefaultSuiteConfig() {
  SuiteConfig c;
  c.transforms = DefaultTransforms();
  return c;
}

SuiteConfig ParseSuiteConfig(std::string_view text,
                             const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed suite config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("suite config must be a JSON object");
  SuiteConfig c = DefaultSuiteConfig();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };
  try {
    CheckKeys(j, "suite config",
              {"name", "mode", "dataset", "seed", "transforms",
               "baseline_accuracy_pct", "chance_pct", "asi_threshold",
               "min_signal_pct", "swap_tolerance", "predictions", "probe"});
    if (j.contains("name")) c.name = j.at("name").get<std::string>();
    if (j.contains("mode")) {
      const std::string m = j.at("mode").get<std::string>();
      const auto mode = ParseSuiteMode(m);
      if (!mode) {
        throw UsageError("unknown mode '" + m +
                         "' (expected prediction_files or probe)");
      }
      c.mode = *mode;
    }
    if (j.contains("dataset")) {
      c.dataset_path = resolve(j.at("dataset").get<std::string>());
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("transforms")) {
      c.transforms.clear();
      for (const json& t : j.at("transforms")) {
        c.transforms.push_back(ParseNamedTransform(t));
      }
    }
    c.baseline_accuracy_pct = OptionalDouble(j, "baseline_accuracy_pct");
    if (j.contains("chance_pct")) {
      c.verdict.chance_pct = j.at("chance_pct").get<double>();
    }
    if (j.contains("asi_threshold")) {
      c.verdict.asi_threshold = j.at("asi_threshold").get<double>();
    }
    if (j.contains("min_signal_pct")) {
      c.verdict.min_signal_pct = j.at("min_signal_pct").get<double>();
    }
    if (j.contains("swap_tolerance")) {
      const json& s = j.at("swap_tolerance");
      CheckKeys(s, "swap_tolerance",
                {"same_label_min_pct", "changed_label_min_pct"});
      if (s.contains("same_label_min_pct")) {
        c.verdict.swap_same_label_min_pct =
            s.at("same_label_min_pct").get<double>();
      }
      if (s.contains("changed_label_min_pct")) {
        c.verdict.swap_changed_label_min_pct =
            s.at("changed_label_min_pct").get<double>();
      }
    }
    if (j.contains("predictions")) {
      for (const auto& [name, path] : j.at("predictions").items()) {
        c.prediction_files[name] = resolve(path.get<std::string>());
      }
    }
    if (j.contains("probe")) {
      const json& p = j.at("probe");
      CheckKeys(p, "probe settings",
                {"featurizer", "epochs", "seed", "train_fraction"});
      if (p.contains("featurizer")) {
        const std::string f = p.at("featurizer").get<std::string>();
        const auto featurizer = ParseFeaturizer(f);
        if (!featurizer) throw UsageError("unknown featurizer '" + f + "'");
        c.probe.featurizer = *featurizer;
      }
      if (p.contains("epochs")) c.probe.epochs = p.at("epochs").get<int>();
      if (p.contains("seed")) c.probe.seed = p.at("seed").get<std::uint64_t>();
      if (p.contains("train_fraction")) {
        c.probe.train_fraction = p.at("train_fraction").get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed suite config: ") + e.what());
  }
  return c;
}

SuiteConfig LoadSuiteConfig(const std::filesystem::path& path) {
  return ParseSuiteConfig(ReadFile(path), path.parent_path());
}

bool IsContentWordTransform(const TransformSpec& spec) {
  if (spec.kind == TransformKind::kKeepPos) return true;
  return spec.kind == TransformKind::kDropPos &&
         (spec.tags.Contains(UniversalPos::kNoun) ||
          spec.tags.Contains(UniversalPos::kVerb));
}

double Asi(double accuracy_pct, double baseline_pct, double chance_pct) {
  return (accuracy_pct - chance_pct) / (baseline_pct - chance_pct);
}

std::optional<double> AsiFor(double accuracy_pct,
                             std::optional<double> baseline_pct,
                             const VerdictConfig& config) {
  if (!baseline_pct) return std::nullopt;
  if (*baseline_pct - config.chance_pct < config.min_signal_pct ||
      *baseline_pct <= config.chance_pct) {
    return std::nullopt;
  }
  return Asi(accuracy_pct, *baseline_pct, config.chance_pct);
}

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kArtefactProne:
      return "artefact-prone";
    case Verdict::kRobust:
      return "robust";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::optional<Verdict> ParseVerdict(std::string_view name) {
  for (Verdict v :
       {Verdict::kArtefactProne, Verdict::kRobust, Verdict::kInconclusive}) {
    if (VerdictName(v) == name) return v;
  }
  return std::nullopt;
}

VerdictResult DecideVerdict(const std::vector<ReportRow>& rows,
                            const std::optional<SwapConsistency>& swap,
                            const VerdictConfig& config) {
  VerdictResult result;
  std::vector<const ReportRow*> content;
  for (const ReportRow& r : rows) {
    if (r.content_word()) content.push_back(&r);
  }
  for (const ReportRow* r : content) {
    if (r->asi && *r->asi > config.asi_threshold) {
      result.triggers.push_back(r->name + " (ASI " + Fixed(*r->asi, 3) + ")");
    }
  }
  if (!result.triggers.empty()) {
    result.verdict = Verdict::kArtefactProne;
    result.reason = "content-word corruption left ASI above " +
                    Fixed(config.asi_threshold, 2) + ".";
    return result;
  }
  result.verdict = Verdict::kInconclusive;
  if (content.empty()) {
    result.reason = "no content-word transform was run.";
    return result;
  }
  for (const ReportRow* r : content) {
    if (!r->asi) {
      result.reason = "ASI undefined for '" + r->name +
                      "' (no baseline, or baseline within " +
                      Fixed(config.min_signal_pct, 2) + " points of chance).";
      return result;
    }
  }
  if (!swap) {
    result.reason =
        "content-word ASI is within threshold but swap consistency was not "
        "measured.";
    return result;
  }
  const bool any = swap->contradiction_pct || swap->neutral_pct ||
                   swap->entailment_pct;
  auto meets = [](const std::optional<double>& rate, double min) {
    return !rate || *rate >= min;
  };
  const bool holds =
      any && meets(swap->contradiction_pct, config.swap_same_label_min_pct) &&
      meets(swap->neutral_pct, config.swap_same_label_min_pct) &&
      meets(swap->entailment_pct, config.swap_changed_label_min_pct);
  if (!holds) {
    result.reason =
        "content-word ASI is within threshold but swap consistency is below "
        "tolerance.";
    return result;
  }
  result.verdict = Verdict::kRobust;
  result.reason =
      "content-word ASI is within threshold and swap consistency holds.";
  return result;
}

std::map<std::string, PredictionSet> LoadSuitePredictions(
    const SuiteConfig& config) {
  std::map<std::string, PredictionSet> out;
  for (const auto& [name, path] : config.prediction_files) {
    out[name] = LoadPredictions(path);
  }
  return out;
}

DiagnosticReport RunSuite(const Dataset& dataset, const SuiteConfig& config,
                          const SuiteInputs& inputs) {
  config.Validate();
  ValidateDataset(dataset);
  if (dataset.pairs.empty()) {
    throw ValidationError("dataset '" + dataset.name + "' has no pairs");
  }
  for (const NamedTransform& t : config.transforms) {
    if (t.spec.NeedsTags() && inputs.tags == nullptr) {
      throw UsageError("transform '" + t.name +
                       "' needs a tagger model or pretagged input");
    }
  }

  DiagnosticReport report;
  report.suite_name = config.name;
  report.dataset = dataset.name;
  report.pairs = dataset.pairs.size();
  report.mode = config.mode;
  report.config = config.verdict;
  report.original_overlap_pct = DatasetOverlap(dataset, inputs.jobs).dataset_mean_pct;

  auto resolved = [&](const NamedTransform& t) {
    TransformSpec spec = t.spec;
    if (t.seed_from_config) spec.seed = *config.seed;
    return spec;
  };

  if (config.mode == SuiteMode::kPredictionFiles) {
    auto find = [&](const std::string& name) -> const PredictionSet& {
      const auto it = inputs.predictions.find(name);
      if (it == inputs.predictions.end()) {
        throw UsageError("missing prediction file for " +
                         (name == "original" ? std::string("the original set")
                                             : "transform '" + name + "'"));
      }
      return it->second;
    };
    const bool has_swap = std::any_of(
        config.transforms.begin(), config.transforms.end(),
        [](const NamedTransform& t) {
          return t.spec.kind == TransformKind::kSwapPair;
        });
    const PredictionSet* original = nullptr;
    if (!config.baseline_accuracy_pct || has_swap ||
        inputs.predictions.count("original")) {
      original = &find("original");
    }
    report.baseline_accuracy_pct = config.baseline_accuracy_pct;
    if (!report.baseline_accuracy_pct) {
      report.baseline_accuracy_pct = Accuracy(*original, dataset).accuracy_pct;
    }
    for (const NamedTransform& t : config.transforms) {
      const PredictionSet& preds = find(t.name);
      const CorruptionResult corrupted =
          CorruptDataset(dataset, resolved(t), inputs.tags, inputs.jobs);
      const EvalResult eval =
          Accuracy(preds, corrupted.dataset, report.baseline_accuracy_pct);
      ReportRow row;
      row.name = t.name;
      row.spec = t.spec;
      if (t.seed_from_config) row.spec.seed = *config.seed;
      row.accuracy_pct = eval.accuracy_pct;
      row.delta_points = eval.delta_points;
      row.tokens_removed = corrupted.report.total_tokens_removed;
      row.overlap_pct =
          DatasetOverlap(corrupted.dataset, inputs.jobs).dataset_mean_pct;
      row.asi = AsiFor(eval.accuracy_pct, report.baseline_accuracy_pct,
                       config.verdict);
      row.n_evaluated = eval.n_evaluated;
      row.n_missing_predictions = eval.n_missing_predictions;
      report.rows.push_back(std::move(row));
      if (t.spec.kind == TransformKind::kSwapPair) {
        report.swap_consistency =
            ComputeSwapConsistency(*original, preds, dataset);
      }
    }
  } else {
    const std::uint64_t seed = config.probe.seed ? *config.probe.seed : *config.seed;
    const std::size_t n = dataset.pairs.size();
    const auto train_count = static_cast<std::size_t>(
        std::floor(config.probe.train_fraction * static_cast<double>(n)));
    if (train_count == 0 || train_count >= n) {
      throw ValidationError("dataset of " + std::to_string(n) +
                            " pairs is too small for a train/held-out split");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    SeededRng rng(DeriveFieldSeed(seed, dataset.name, "probe-split"));
    rng.Shuffle(std::span<std::size_t>(order));
    std::vector<std::size_t> train_idx(order.begin(), order.begin() + train_count);
    std::vector<std::size_t> held_idx(order.begin() + train_count, order.end());
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(held_idx.begin(), held_idx.end());

    const Dataset held_original = Subset(dataset, held_idx, "-heldout");
    const ProbeModel base_model =
        TrainProbe(Subset(dataset, train_idx, "-train"), config.probe.featurizer,
                   config.probe.epochs, seed);
    const ProbeEvaluation base_eval =
        EvalProbe(base_model, held_original, inputs.jobs);
    report.baseline_accuracy_pct = config.baseline_accuracy_pct
                                       ? *config.baseline_accuracy_pct
                                       : base_eval.result.accuracy_pct;

    for (const NamedTransform& t : config.transforms) {
      const TransformSpec spec = resolved(t);
      const CorruptionResult corrupted =
          CorruptDataset(dataset, spec, inputs.tags, inputs.jobs);
      const Dataset held = Subset(corrupted.dataset, held_idx, "-heldout");
      ProbeEvaluation eval;
      if (spec.kind == TransformKind::kSwapPair) {
        eval = EvalProbe(base_model, held, inputs.jobs);
        report.swap_consistency = ComputeSwapConsistency(
            base_eval.predictions, eval.predictions, held_original);
      } else {
        const ProbeModel model =
            TrainProbe(Subset(corrupted.dataset, train_idx, "-train"),
                       config.probe.featurizer, config.probe.epochs, seed);
        eval = EvalProbe(model, held, inputs.jobs);
      }
      ReportRow row;
      row.name = t.name;
      row.spec = spec;
      row.accuracy_pct = eval.result.accuracy_pct;
      row.delta_points = eval.result.accuracy_pct - *report.baseline_accuracy_pct;
      row.tokens_removed = corrupted.report.total_tokens_removed;
      row.overlap_pct =
          DatasetOverlap(corrupted.dataset, inputs.jobs).dataset_mean_pct;
      row.asi = AsiFor(row.accuracy_pct, report.baseline_accuracy_pct,
                       config.verdict);
      row.n_evaluated = eval.result.n_evaluated;
      row.n_missing_predictions = eval.result.n_missing_predictions;
      report.rows.push_back(std::move(row));
    }
  }
  report.verdict =
      DecideVerdict(report.rows, report.swap_consistency, report.config);
  return report;
}

std::optional<ReportFormat> ParseReportFormat(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  return std::nullopt;
}

std::string EmitReport(const DiagnosticReport& report, ReportFormat format) {
  if (format == ReportFormat::kMarkdown) return EmitMarkdown(report);
  if (format == ReportFormat::kCsv) return EmitCsv(report);
  json j;
  j["schema_version"] = report.schema_version;
  j["suite"] = report.suite_name;
  j["dataset"] = report.dataset;
  j["pairs"] = report.pairs;
  j["mode"] = std::string(SuiteModeName(report.mode));
  j["baseline_accuracy_pct"] = OptionalJson(report.baseline_accuracy_pct);
  j["original_overlap_pct"] = OptionalJson(report.original_overlap_pct);
  j["config"] = {
      {"chance_pct", report.config.chance_pct},
      {"asi_threshold", report.config.asi_threshold},
      {"min_signal_pct", report.config.min_signal_pct},
      {"swap_same_label_min_pct", report.config.swap_same_label_min_pct},
      {"swap_changed_label_min_pct", report.config.swap_changed_label_min_pct},
  };
  json rows = json::array();
  for (const ReportRow& r : report.rows) rows.push_back(RowJson(r));
  j["rows"] = rows;
  j["swap_consistency"] = report.swap_consistency
                              ? SwapJson(*report.swap_consistency)
                              : json(nullptr);
  j["verdict"] = {{"value", std::string(VerdictName(report.verdict.verdict))},
                  {"triggers", report.verdict.triggers},
                  {"reason", report.verdict.reason}};
  j["note"] = std::string(kAsiNote);
  return j.dump(2) + "\n";
}

DiagnosticReport ParseReportJson(std::string_view text) {
  DiagnosticReport r;
  try {
    const json j = json::parse(text);
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) {
      throw ValidationError("unsupported report schema version " +
                            std::to_string(r.schema_version));
    }
    r.suite_name = j.at("suite").get<std::string>();
    r.dataset = j.at("dataset").get<std::string>();
    r.pairs = j.at("pairs").get<std::size_t>();
    const auto mode = ParseSuiteMode(j.at("mode").get<std::string>());
    if (!mode) throw ValidationError("report has an unknown mode");
    r.mode = *mode;
    r.baseline_accuracy_pct = OptionalDouble(j, "baseline_accuracy_pct");
    r.original_overlap_pct = OptionalDouble(j, "original_overlap_pct");
    const json& c = j.at("config");
    r.config.chance_pct = c.at("chance_pct").get<double>();
    r.config.asi_threshold = c.at("asi_threshold").get<double>();
    r.config.min_signal_pct = c.at("min_signal_pct").get<double>();
    r.config.swap_same_label_min_pct = c.at("swap_same_label_min_pct").get<double>();
    r.config.swap_changed_label_min_pct =
        c.at("swap_changed_label_min_pct").get<double>();
    for (const json& row : j.at("rows")) r.rows.push_back(RowFromJson(row));
    if (!j.at("swap_consistency").is_null()) {
      r.swap_consistency = SwapFromJson(j.at("swap_consistency"));
    }
    const json& v = j.at("verdict");
    const auto verdict = ParseVerdict(v.at("value").get<std::string>());
    if (!verdict) throw ValidationError("report has an unknown verdict");
    r.verdict.verdict = *verdict;
    r.verdict.triggers = v.at("triggers").get<std::vector<std::string>>();
    r.verdict.reason = v.at("reason").get<std::string>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  } catch (const UsageError& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
  return r;
}

}  // namespace nlicrash
