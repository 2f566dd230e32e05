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

// nlicrash: crash-test diagnostics for NLI datasets.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data validation
// error, 3 verdict artefact-prone (suite --gate only), 4 internal error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlicrash/corpus.h"
#include "nlicrash/diagnostics.h"
#include "nlicrash/error.h"
#include "nlicrash/metrics.h"
#include "nlicrash/probes.h"
#include "nlicrash/synthetic.h"
#include "nlicrash/tagger.h"
#include "nlicrash/transforms.h"

namespace nlicrash {
namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitArtefactProne = 3;
constexpr int kExitInternal = 4;

constexpr const char* kModelEnv = "NLI_CRASHTEST_MODEL";

std::string ValidTagList() {
  std::string out;
  for (UniversalPos t : kAllPosTags) {
    if (!out.empty()) out += ", ";
    out += PosName(t);
  }
  return out;
}

PosSet ParseTagList(const std::string& csv) {
  PosSet tags;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t end = csv.find(',', start);
    if (end == std::string::npos) end = csv.size();
    const std::string name = csv.substr(start, end - start);
    if (!name.empty()) {
      const auto tag = ParsePos(name);
      if (!tag) {
        throw UsageError("unknown tag '" + name + "'; valid tags: " +
                         ValidTagList());
      }
      tags.Insert(*tag);
    }
    start = end + 1;
  }
  return tags;
}

// A corpus argument may name a file or a directory holding train.txt and
// heldout.txt.
fs::path CorpusFile(const fs::path& path, const char* file_in_dir) {
  if (fs::is_directory(path)) return path / file_in_dir;
  return path;
}

Dataset LoadInput(const fs::path& path, bool skip_invalid) {
  LoadStats stats;
  Dataset d = LoadDataset(path, FormatFromPath(path), {skip_invalid}, &stats);
  for (const std::string& w : stats.warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  if (stats.empty_fields > 0) {
    std::cerr << "warning: " << stats.empty_fields
              << " pair(s) with an empty premise or hypothesis in '"
              << path.string() << "'\n";
  }
  return d;
}

std::optional<TaggerModel> MaybeLoadTagger(const std::string& model_path) {
  if (!model_path.empty()) return LoadTagger(model_path);
  if (const char* env = std::getenv(kModelEnv); env != nullptr && *env) {
    return LoadTagger(env);
  }
  return std::nullopt;
}

// Holds whichever tag source a command ends up using.
struct TagSourceHolder {
  std::optional<TaggerModel> model;
  std::unique_ptr<TagSource> source;
};

TagSourceHolder MakeTagSource(const Dataset& dataset,
                              const std::string& model_path,
                              const std::string& pretagged_path, bool needed,
                              int jobs) {
  TagSourceHolder h;
  if (!pretagged_path.empty()) {
    h.source = std::make_unique<PretaggedTagSource>(
        LoadPretaggedEntries(pretagged_path), dataset);
    return h;
  }
  if (!needed) return h;
  h.model = MaybeLoadTagger(model_path);
  if (!h.model) {
    throw UsageError(
        "word-class transforms need --model, --pretagged, or the " +
        std::string(kModelEnv) + " environment variable");
  }
  // Tag once up front so every transform reuses the same tags.
  h.source = std::make_unique<PretaggedTagSource>(
      PretaggedTagSource::FromModel(*h.model, dataset, jobs));
  return h;
}

void WriteOrPrint(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    WriteFile(path, text);
  }
}

// --- tag -----------------------------------------------------------------

struct TagTrainArgs {
  std::string corpus, out, corpus_id;
  int epochs = 5;
  std::uint64_t seed = 0;
  bool penn = false;
};

int RunTagTrain(const TagTrainArgs& a) {
  const fs::path file = CorpusFile(a.corpus, "train.txt");
  const auto corpus = LoadPretagged(file, {a.penn});
  const auto start = std::chrono::steady_clock::now();
  const TaggerModel model = TrainTagger(
      corpus, a.epochs, a.seed, a.corpus_id.empty() ? file.filename().string()
                                                    : a.corpus_id);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  SaveTagger(model, a.out);
  std::size_t tokens = 0;
  for (const auto& s : corpus) tokens += s.tokens.size();
  std::printf("trained on %zu sentences (%zu tokens), %d epochs, seed %llu, "
              "%.2f s -> %s\n",
              corpus.size(), tokens, a.epochs,
              static_cast<unsigned long long>(a.seed), secs, a.out.c_str());
  return kExitOk;
}

struct TagApplyArgs {
  std::string model, in, out;
  bool skip_invalid = false;
  int jobs = 1;
};

int RunTagApply(const TagApplyArgs& a) {
  const TaggerModel model = LoadTagger(a.model);
  const Dataset d = LoadInput(a.in, a.skip_invalid);
  const PretaggedTagSource tags = PretaggedTagSource::FromModel(model, d, a.jobs);
  WriteOrPrint(a.out, FormatPretagged(tags.Entries(d)));
  return kExitOk;
}

struct TagEvalArgs {
  std::string model, corpus;
  bool penn = false;
};

int RunTagEval(const TagEvalArgs& a) {
  const TaggerModel model = LoadTagger(a.model);
  const auto corpus = LoadPretagged(CorpusFile(a.corpus, "heldout.txt"), {a.penn});
  std::size_t tokens = 0;
  for (const auto& s : corpus) tokens += s.tokens.size();
  const double acc = EvaluateTagger(model, corpus);
  std::printf("token accuracy %.4f (%.2f%%) over %zu tokens in %zu sentences\n",
              acc, 100.0 * acc, tokens, corpus.size());
  return kExitOk;
}

// --- corrupt -------------------------------------------------------------

struct CorruptArgs {
  std::string in, out, transform, preset, tags, apply_to = "both", pretagged,
      model, report, name;
  int n = 1;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool list_presets = false;
  bool skip_invalid = false;
};

int RunCorrupt(const CorruptArgs& a) {
  if (a.list_presets) {
    for (const Preset& p : WordClassPresets()) {
      std::printf("%-20s %-5s %s\n", std::string(p.name).c_str(),
                  std::string(TransformKindName(p.spec.kind)).c_str(),
                  p.spec.tags.ToString().c_str());
    }
    return kExitOk;
  }
  if (a.in.empty() || a.out.empty()) {
    throw UsageError("corrupt needs --in and --out");
  }
  TransformSpec spec;
  if (!a.preset.empty()) {
    if (!a.transform.empty() || !a.tags.empty()) {
      throw UsageError("--preset cannot be combined with --transform or --tags");
    }
    const auto p = FindPreset(a.preset);
    if (!p) {
      std::string names;
      for (const Preset& pr : WordClassPresets()) {
        names += (names.empty() ? "" : ", ") + std::string(pr.name);
      }
      throw UsageError("unknown preset '" + a.preset + "'; valid presets: " +
                       names);
    }
    spec = *p;
  } else {
    if (a.transform.empty()) throw UsageError("--transform or --preset is required");
    const auto kind = ParseTransformKind(a.transform);
    if (!kind) {
      throw UsageError("unknown transform '" + a.transform +
                       "'; valid: drop, keep, shuffle, swap, hypothesis_only, "
                       "identity");
    }
    spec.kind = *kind;
    if (spec.NeedsTags()) {
      if (a.tags.empty()) {
        throw UsageError("--tags is required for " + a.transform +
                         "; valid tags: " + ValidTagList());
      }
      spec.tags = ParseTagList(a.tags);
    } else if (!a.tags.empty()) {
      throw UsageError("--tags only applies to drop and keep");
    }
    if (spec.kind == TransformKind::kShuffleNgrams) {
      if (!a.seed) throw UsageError("shuffle needs an explicit --seed");
      spec.n = a.n;
      spec.seed = *a.seed;
    }
  }
  const auto apply = ParseApplyTo(a.apply_to);
  if (!apply) {
    throw UsageError("unknown --apply-to '" + a.apply_to +
                     "'; valid: both, premise_only, hypothesis_only");
  }
  spec.apply_to = *apply;
  spec.Validate();

  const Dataset d = LoadInput(a.in, a.skip_invalid);
  const TagSourceHolder tags =
      MakeTagSource(d, a.model, a.pretagged, spec.NeedsTags(), a.jobs);
  CorruptionResult result = CorruptDataset(d, spec, tags.source.get(), a.jobs);
  if (!a.name.empty()) result.dataset.name = a.name;
  SaveDataset(result.dataset, a.out, FormatFromPath(a.out));
  if (!a.report.empty()) {
    WriteFile(a.report, result.report.ToJson() + "\n");
  }
  std::cerr << "corrupted " << result.report.pairs_processed << " pairs with "
            << spec.ToJson() << ": removed "
            << result.report.total_tokens_removed << " tokens, "
            << result.report.pairs_left_empty << " pairs left with an empty "
            << "field\n";
  return kExitOk;
}

// --- stats / overlap / eval ----------------------------------------------

struct StatsArgs {
  std::string original, corrupted;
};

int RunStats(const StatsArgs& a) {
  const TransformReport r =
      RemovalStats(LoadInput(a.original, false), LoadInput(a.corrupted, false));
  std::cout << r.ToJson() << "\n";
  return kExitOk;
}

struct OverlapArgs {
  std::vector<std::string> in;
  std::string csv;
  int jobs = 1;
};

int RunOverlap(const OverlapArgs& a) {
  std::string out = "dataset,overlap_pct,pairs\n";
  for (const std::string& path : a.in) {
    const Dataset d = LoadInput(path, false);
    const OverlapStat s = DatasetOverlap(d, a.jobs);
    out += d.name + "," + FormatFixed2(s.dataset_mean_pct) + "," +
           std::to_string(d.pairs.size()) + "\n";
  }
  WriteOrPrint(a.csv, out);
  return kExitOk;
}

struct EvalArgs {
  std::string pred, gold, swap_pred;
  std::optional<double> baseline;
};

int RunEval(const EvalArgs& a) {
  const Dataset gold = LoadInput(a.gold, false);
  const PredictionSet pred = LoadPredictions(a.pred);
  if (pred.duplicates > 0) {
    std::cerr << "warning: " << pred.duplicates
              << " duplicate prediction uid(s); last record kept\n";
  }
  const EvalResult r = Accuracy(pred, gold, a.baseline);
  std::printf("accuracy %s%% over %zu pairs", FormatFixed2(r.accuracy_pct).c_str(),
              r.n_evaluated);
  if (r.delta_points) {
    std::printf(", delta %s points vs baseline %s%%",
                FormatFixed2(*r.delta_points).c_str(),
                FormatFixed2(*a.baseline).c_str());
  }
  std::printf("\n");
  if (r.incomplete()) {
    std::printf("INCOMPLETE: %zu gold pair(s) have no prediction\n",
                r.n_missing_predictions);
  }
  if (!a.swap_pred.empty()) {
    const SwapConsistency s =
        ComputeSwapConsistency(pred, LoadPredictions(a.swap_pred), gold);
    auto show = [](const std::optional<double>& v) {
      return v ? FormatFixed2(*v) + "%" : std::string("n/a");
    };
    std::printf("swap consistency: contradiction unchanged %s, neutral "
                "unchanged %s, entailment changed %s\n",
                show(s.contradiction_pct).c_str(), show(s.neutral_pct).c_str(),
                show(s.entailment_pct).c_str());
  }
  return kExitOk;
}

// --- probe ---------------------------------------------------------------

struct ProbeTrainArgs {
  std::string in, out, featurizer = "hyp_bow";
  int epochs = 5;
  std::uint64_t seed = 0;
};

Featurizer FeaturizerOrThrow(const std::string& name) {
  const auto f = ParseFeaturizer(name);
  if (!f) {
    throw UsageError("unknown featurizer '" + name +
                     "'; valid: hyp_bow, pair_overlap, hyp_bow+pair_overlap");
  }
  return *f;
}

int RunProbeTrain(const ProbeTrainArgs& a) {
  const Dataset d = LoadInput(a.in, false);
  const ProbeModel m = TrainProbe(d, FeaturizerOrThrow(a.featurizer), a.epochs, a.seed);
  SaveProbe(m, a.out);
  std::printf("trained %s probe on %zu pairs, %d epochs, seed %llu -> %s\n",
              a.featurizer.c_str(), d.pairs.size(), a.epochs,
              static_cast<unsigned long long>(a.seed), a.out.c_str());
  return kExitOk;
}

struct ProbeEvalArgs {
  std::string model, in, pred_out;
  int jobs = 1;
};

int RunProbeEval(const ProbeEvalArgs& a) {
  const ProbeModel m = LoadProbe(a.model);
  const Dataset d = LoadInput(a.in, false);
  const ProbeEvaluation e = EvalProbe(m, d, a.jobs);
  std::printf("accuracy %s%% over %zu pairs\n",
              FormatFixed2(e.result.accuracy_pct).c_str(), e.result.n_evaluated);
  std::printf("confusion (rows gold, columns predicted):\n%-15s", "");
  for (NliLabel p : kAllLabels) std::printf("%15s", std::string(LabelName(p)).c_str());
  std::printf("\n");
  for (NliLabel g : kAllLabels) {
    std::printf("%-15s", std::string(LabelName(g)).c_str());
    for (NliLabel p : kAllLabels) {
      std::printf("%15zu", e.confusion[static_cast<std::size_t>(g)]
                                      [static_cast<std::size_t>(p)]);
    }
    std::printf("\n");
  }
  if (!a.pred_out.empty()) SavePredictions(e.predictions, a.pred_out);
  return kExitOk;
}

// --- suite ---------------------------------------------------------------

struct SuiteArgs {
  std::string config, in, mode, model, pretagged, json_out, markdown_out,
      csv_out;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool gate = false;
  bool skip_invalid = false;
};

int RunSuiteCommand(const SuiteArgs& a) {
  SuiteConfig config = a.config.empty() ? DefaultSuiteConfig()
                                        : LoadSuiteConfig(a.config);
  if (!a.mode.empty()) {
    const auto mode = ParseSuiteMode(a.mode);
    if (!mode) {
      throw UsageError("unknown --mode '" + a.mode +
                       "'; valid: prediction_files, probe");
    }
    config.mode = *mode;
  }
  if (a.seed) config.seed = a.seed;
  if (!a.in.empty()) config.dataset_path = a.in;
  if (!config.dataset_path) {
    throw UsageError("no dataset: pass --in or set \"dataset\" in the config");
  }
  config.Validate();

  const Dataset d = LoadInput(*config.dataset_path, a.skip_invalid);
  const bool needs_tags =
      std::any_of(config.transforms.begin(), config.transforms.end(),
                  [](const NamedTransform& t) { return t.spec.NeedsTags(); });
  const TagSourceHolder tags =
      MakeTagSource(d, a.model, a.pretagged, needs_tags, a.jobs);
  SuiteInputs inputs;
  inputs.tags = tags.source.get();
  inputs.jobs = a.jobs;
  if (config.mode == SuiteMode::kPredictionFiles) {
    inputs.predictions = LoadSuitePredictions(config);
  }
  const DiagnosticReport report = RunSuite(d, config, inputs);
  if (!a.json_out.empty()) WriteFile(a.json_out, EmitReport(report, ReportFormat::kJson));
  if (!a.csv_out.empty()) WriteFile(a.csv_out, EmitReport(report, ReportFormat::kCsv));
  const std::string md = EmitReport(report, ReportFormat::kMarkdown);
  if (!a.markdown_out.empty()) {
    WriteFile(a.markdown_out, md);
  } else {
    std::cout << md;
  }
  if (a.gate && report.verdict.verdict == Verdict::kArtefactProne) {
    return kExitArtefactProne;
  }
  return kExitOk;
}

// --- synth ---------------------------------------------------------------

struct SynthArgs {
  std::string out, name;
  std::size_t pairs = 1000;
  std::uint64_t seed = 0;
  double consistency = 0.95;
  std::optional<std::uint64_t> shuffle_labels;
};

int RunSynth(const SynthArgs& a) {
  SyntheticOptions o;
  o.pairs = a.pairs;
  o.seed = a.seed;
  o.cue_consistency = a.consistency;
  o.name = a.name.empty() ? fs::path(a.out).stem().string() : a.name;
  Dataset d = MakePlantedBiasDataset(o);
  if (a.shuffle_labels) d = ShuffleLabels(d, *a.shuffle_labels);
  SaveDataset(d, a.out, FormatFromPath(a.out));
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"nlicrash: crash-test diagnostics for NLI datasets.\n"
               "Exit codes: 0 ok, 1 usage/config, 2 data validation, "
               "3 artefact-prone (suite --gate), 4 internal error."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "nlicrash 1.0.0");

  // tag
  auto* tag = app.add_subcommand("tag", "Train, apply or evaluate the POS tagger");
  tag->require_subcommand(1);
  TagTrainArgs tag_train;
  auto* tag_train_cmd = tag->add_subcommand("train", "Train a tagger model");
  tag_train_cmd->add_option("--corpus", tag_train.corpus,
                            "Vertical tagged corpus file, or a directory with train.txt")
      ->required();
  tag_train_cmd->add_option("--epochs", tag_train.epochs, "Training epochs")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  tag_train_cmd->add_option("--seed", tag_train.seed, "Shuffle seed")->required();
  tag_train_cmd->add_option("--out", tag_train.out, "Model file to write")->required();
  tag_train_cmd->add_option("--corpus-id", tag_train.corpus_id,
                            "Corpus id recorded in the model");
  tag_train_cmd->add_flag("--penn", tag_train.penn,
                          "Map Penn Treebank tags to universal tags");

  TagApplyArgs tag_apply;
  auto* tag_apply_cmd = tag->add_subcommand(
      "apply", "Tag a dataset and write a keyed vertical file");
  tag_apply_cmd->add_option("--model", tag_apply.model, "Tagger model")
      ->envname(kModelEnv)
      ->required();
  tag_apply_cmd->add_option("--in", tag_apply.in, "Dataset (.jsonl or .tsv)")->required();
  tag_apply_cmd->add_option("--out", tag_apply.out, "Output file ('-' for stdout)")
      ->required();
  tag_apply_cmd->add_option("--jobs", tag_apply.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  tag_apply_cmd->add_flag("--skip-invalid", tag_apply.skip_invalid,
                          "Skip invalid records with a warning");

  TagEvalArgs tag_eval;
  auto* tag_eval_cmd = tag->add_subcommand("eval", "Token accuracy on a tagged corpus");
  tag_eval_cmd->add_option("--model", tag_eval.model, "Tagger model")
      ->envname(kModelEnv)
      ->required();
  tag_eval_cmd->add_option("--corpus", tag_eval.corpus,
                           "Vertical tagged corpus file, or a directory with heldout.txt")
      ->required();
  tag_eval_cmd->add_flag("--penn", tag_eval.penn,
                         "Map Penn Treebank tags to universal tags");

  // corrupt
  CorruptArgs corrupt;
  auto* corrupt_cmd = app.add_subcommand("corrupt", "Apply one corruption transform");
  corrupt_cmd->add_option("--in", corrupt.in, "Input dataset");
  corrupt_cmd->add_option("--out", corrupt.out, "Output dataset (.jsonl or .tsv)");
  corrupt_cmd->add_option("--transform", corrupt.transform,
                          "drop, keep, shuffle, swap, hypothesis_only or identity");
  corrupt_cmd->add_option("--preset", corrupt.preset,
                          "Named word-class preset (see --list-presets)");
  corrupt_cmd->add_option("--tags", corrupt.tags,
                          "Comma-separated universal tags for drop/keep");
  corrupt_cmd->add_option("--n", corrupt.n, "Shuffle chunk size")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  corrupt_cmd->add_option("--seed", corrupt.seed, "Shuffle seed (required for shuffle)");
  corrupt_cmd->add_option("--apply-to", corrupt.apply_to,
                          "both, premise_only or hypothesis_only")
      ->capture_default_str();
  corrupt_cmd->add_option("--pretagged", corrupt.pretagged,
                          "Vertical tagged file to use instead of the tagger");
  corrupt_cmd->add_option("--model", corrupt.model,
                          "Tagger model (default: $NLI_CRASHTEST_MODEL)");
  corrupt_cmd->add_option("--report", corrupt.report, "Write the transform report JSON here");
  corrupt_cmd->add_option("--name", corrupt.name, "Name of the output dataset");
  corrupt_cmd->add_option("--jobs", corrupt.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  corrupt_cmd->add_flag("--list-presets", corrupt.list_presets,
                        "Print the preset table and exit");
  corrupt_cmd->add_flag("--skip-invalid", corrupt.skip_invalid,
                        "Skip invalid records with a warning");

  // stats
  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Token removal counts between two datasets");
  stats_cmd->add_option("--original", stats.original, "Original dataset")->required();
  stats_cmd->add_option("--corrupted", stats.corrupted, "Corrupted dataset")->required();

  // overlap
  OverlapArgs overlap;
  auto* overlap_cmd = app.add_subcommand("overlap", "Mean lexical overlap per dataset");
  overlap_cmd->add_option("--in", overlap.in, "Dataset(s)")->required();
  overlap_cmd->add_option("--csv", overlap.csv, "Write CSV here (default stdout)");
  overlap_cmd->add_option("--jobs", overlap.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  // eval
  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Accuracy and delta of a prediction file");
  eval_cmd->add_option("--pred", eval.pred, "Predictions (.jsonl or .tsv)")->required();
  eval_cmd->add_option("--gold", eval.gold, "Gold dataset")->required();
  eval_cmd->add_option("--baseline", eval.baseline, "Baseline accuracy in percent");
  eval_cmd->add_option("--swap-pred", eval.swap_pred,
                       "Predictions on the swapped dataset, for swap consistency");

  // probe
  auto* probe = app.add_subcommand("probe", "Train or evaluate a linear probe");
  probe->require_subcommand(1);
  ProbeTrainArgs probe_train;
  auto* probe_train_cmd = probe->add_subcommand("train", "Train a probe");
  probe_train_cmd->add_option("--in", probe_train.in, "Training dataset")->required();
  probe_train_cmd->add_option("--out", probe_train.out, "Probe model file")->required();
  probe_train_cmd->add_option("--featurizer", probe_train.featurizer,
                              "hyp_bow, pair_overlap or hyp_bow+pair_overlap")
      ->capture_default_str();
  probe_train_cmd->add_option("--epochs", probe_train.epochs, "Training epochs")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  probe_train_cmd->add_option("--seed", probe_train.seed, "Shuffle seed")->required();
  ProbeEvalArgs probe_eval;
  auto* probe_eval_cmd = probe->add_subcommand("eval", "Evaluate a probe");
  probe_eval_cmd->add_option("--model", probe_eval.model, "Probe model file")->required();
  probe_eval_cmd->add_option("--in", probe_eval.in, "Evaluation dataset")->required();
  probe_eval_cmd->add_option("--pred-out", probe_eval.pred_out,
                             "Write predictions (JSONL) here");
  probe_eval_cmd->add_option("--jobs", probe_eval.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  // suite
  SuiteArgs suite;
  auto* suite_cmd = app.add_subcommand("suite", "Run the full crash-test suite");
  suite_cmd->add_option("--config", suite.config, "Suite config JSON");
  suite_cmd->add_option("--in", suite.in, "Dataset (overrides the config)");
  suite_cmd->add_option("--mode", suite.mode, "prediction_files or probe");
  suite_cmd->add_option("--seed", suite.seed, "Seed for shuffles and probes");
  suite_cmd->add_option("--model", suite.model,
                        "Tagger model (default: $NLI_CRASHTEST_MODEL)");
  suite_cmd->add_option("--pretagged", suite.pretagged,
                        "Vertical tagged file to use instead of the tagger");
  suite_cmd->add_option("--json", suite.json_out, "Write the JSON report here");
  suite_cmd->add_option("--markdown", suite.markdown_out,
                        "Write the markdown report here (default stdout)");
  suite_cmd->add_option("--csv", suite.csv_out, "Write the CSV series here");
  suite_cmd->add_option("--jobs", suite.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  suite_cmd->add_flag("--gate", suite.gate, "Exit 3 when the verdict is artefact-prone");
  suite_cmd->add_flag("--skip-invalid", suite.skip_invalid,
                      "Skip invalid records with a warning");

  // synth
  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand(
      "synth", "Generate a seeded planted-cue dataset (and its label-shuffled control)");
  synth_cmd->add_option("--out", synth.out, "Output dataset")->required();
  synth_cmd->add_option("--pairs", synth.pairs, "Number of pairs")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Generator seed")->required();
  synth_cmd->add_option("--consistency", synth.consistency,
                        "Probability that the cue matches the label")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--shuffle-labels", synth.shuffle_labels,
                        "Permute labels with this seed (control set)");
  synth_cmd->add_option("--name", synth.name, "Dataset name (default: file stem)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*tag_train_cmd) return RunTagTrain(tag_train);
    if (*tag_apply_cmd) return RunTagApply(tag_apply);
    if (*tag_eval_cmd) return RunTagEval(tag_eval);
    if (*corrupt_cmd) return RunCorrupt(corrupt);
    if (*stats_cmd) return RunStats(stats);
    if (*overlap_cmd) return RunOverlap(overlap);
    if (*eval_cmd) return RunEval(eval);
    if (*probe_train_cmd) return RunProbeTrain(probe_train);
    if (*probe_eval_cmd) return RunProbeEval(probe_eval);
    if (*suite_cmd) return RunSuiteCommand(suite);
    if (*synth_cmd) return RunSynth(synth);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace nlicrash

int main(int argc, char** argv) { return nlicrash::Main(argc, argv); }
