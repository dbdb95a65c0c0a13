/*
 * Copyright 2026 The vandalstack Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.h"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "vandalstack/corpus.h"
#include "vandalstack/error.h"
#include "vandalstack/evaluation.h"
#include "vandalstack/featurize.h"
#include "vandalstack/learners/model.h"
#include "vandalstack/number_format.h"
#include "vandalstack/run_config.h"
#include "vandalstack/sampling.h"
#include "vandalstack/serve.h"
#include "vandalstack/stacking.h"
#include "vandalstack/synthetic.h"
#include "vandalstack/version.h"

namespace vandalstack::cli {
namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  return out;
}

void close_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

MalformedPolicy parse_policy(const std::string& text) {
  if (text == "skip") return MalformedPolicy::kSkip;
  if (text == "abort") return MalformedPolicy::kAbort;
  throw Error(ErrorCode::kUsage, "--malformed expects skip or abort");
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos) throw Error(ErrorCode::kUsage, "expected key=value, got '" + text + "'");
  return {std::string(trim(std::string_view(text).substr(0, eq))),
          std::string(trim(std::string_view(text).substr(eq + 1)))};
}

std::vector<SparseVector> encode_all(const std::vector<LabeledExample>& examples,
                                     const FeatureSchema& schema) {
  std::vector<SparseVector> rows;
  rows.reserve(examples.size());
  for (const auto& e : examples) rows.push_back(encode(extract_features(e.revision), schema));
  return rows;
}

FeatureSchema schema_of(const std::vector<LabeledExample>& examples) {
  std::vector<RawFeatures> raw;
  raw.reserve(examples.size());
  for (const auto& e : examples) raw.push_back(extract_features(e.revision));
  return build_schema(raw);
}

std::vector<std::uint8_t> labels_of(const std::vector<LabeledExample>& examples) {
  std::vector<std::uint8_t> labels;
  labels.reserve(examples.size());
  for (const auto& e : examples) labels.push_back(e.label ? 1 : 0);
  return labels;
}

std::vector<LabeledExample> load_labeled(const std::string& corpus_path,
                                         const std::string& truth_path, MalformedPolicy policy,
                                         std::ostream& err) {
  const CorpusLoadResult corpus = load_corpus_file(corpus_path, policy);
  if (corpus.malformed_count > 0) {
    err << "skipped " << corpus.malformed_count << " malformed lines in " << corpus_path << '\n';
  }
  JoinResult joined = join_labels(corpus.revisions, load_labels_file(truth_path));
  if (joined.unlabeled_count > 0) {
    err << "ignored " << joined.unlabeled_count << " revisions without truth\n";
  }
  return std::move(joined.examples);
}

// --- ingest ---------------------------------------------------------------

struct IngestOptions {
  std::string corpus, truth, output, labels_out, malformed = "skip";
};

int run_ingest(const IngestOptions& o, std::ostream& out, std::ostream& err) {
  const CorpusLoadResult corpus = load_corpus_file(o.corpus, parse_policy(o.malformed));
  out << "revisions=" << corpus.revisions.size() << '\n';
  out << "malformed=" << corpus.malformed_count << '\n';
  if (!o.output.empty()) {
    auto f = open_output(o.output);
    write_corpus(f, corpus.revisions);
    close_output(f, o.output);
  }
  if (!o.truth.empty()) {
    const JoinResult joined = join_labels(corpus.revisions, load_labels_file(o.truth));
    std::size_t positives = 0;
    for (const auto& e : joined.examples) positives += e.label ? 1 : 0;
    out << "labeled=" << joined.examples.size() << '\n';
    out << "positives=" << positives << '\n';
    out << "unlabeled=" << joined.unlabeled_count << '\n';
    if (!o.labels_out.empty()) {
      auto f = open_output(o.labels_out);
      write_labels(f, joined.examples);
      close_output(f, o.labels_out);
    }
  } else if (!o.labels_out.empty()) {
    err << "--labels-out needs --truth\n";
    return 2;
  }
  return 0;
}

// --- sample ---------------------------------------------------------------

struct SampleOptions {
  std::string corpus, truth, output, labels_out, malformed = "skip";
  std::string fraction = "1/50", window = "all", dedup_order = "after";
  std::uint64_t seed = 0;
  bool no_dedup = false;
};

SamplingConfig sampling_from(const SampleOptions& o) {
  RunConfig cfg;
  cfg.set("sampling.fraction", o.fraction);
  cfg.set("sampling.window", o.window);
  cfg.set("sampling.dedup_order", o.dedup_order);
  cfg.sampling.seed = o.seed;
  cfg.sampling.dedup = !o.no_dedup;
  return cfg.sampling;
}

int run_sample(const SampleOptions& o, std::ostream& out, std::ostream& err) {
  const auto examples = load_labeled(o.corpus, o.truth, parse_policy(o.malformed), err);
  const auto kept = prepare_training_set(examples, sampling_from(o));
  std::size_t positives = 0;
  std::vector<Revision> revisions;
  for (const auto& e : kept) {
    positives += e.label ? 1 : 0;
    revisions.push_back(e.revision);
  }
  auto f = open_output(o.output);
  write_corpus(f, revisions);
  close_output(f, o.output);
  if (!o.labels_out.empty()) {
    auto l = open_output(o.labels_out);
    write_labels(l, kept);
    close_output(l, o.labels_out);
  }
  out << "input=" << examples.size() << '\n';
  out << "kept=" << kept.size() << '\n';
  out << "positives=" << positives << '\n';
  out << "negatives=" << kept.size() - positives << '\n';
  return 0;
}

// --- train ----------------------------------------------------------------

struct TrainOptions {
  std::string corpus, truth, model = "gradient_boosting", preset = "default";
  std::string output, schema_out, malformed = "skip";
  std::vector<std::string> hyperparameters;
  std::uint64_t seed = 0;
};

int run_train(const TrainOptions& o, std::ostream& out, std::ostream& err) {
  ModelSpec spec = ModelSpec::make(parse_family(o.model), parse_preset(o.preset), o.seed);
  for (const auto& assignment : o.hyperparameters) {
    const auto [key, value] = split_assignment(assignment);
    spec.hyperparameters.set(key, value);
  }
  spec.validate();
  const auto examples = load_labeled(o.corpus, o.truth, parse_policy(o.malformed), err);
  const FeatureSchema schema = schema_of(examples);
  const Dataset data(schema.total_dim(), encode_all(examples, schema), labels_of(examples));
  const ModelPtr model = train(spec, data);

  auto f = open_output(o.output);
  save_model(*model, f);
  close_output(f, o.output);
  if (!o.schema_out.empty()) {
    auto s = open_output(o.schema_out);
    schema.save(s);
    close_output(s, o.schema_out);
  }
  out << "examples=" << data.size() << '\n';
  out << "features=" << data.dim() << '\n';
  out << "model=" << spec.to_string() << '\n';
  return 0;
}

// --- train-stack ----------------------------------------------------------

struct StackOptions {
  std::string config;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
};

int run_train_stack(const StackOptions& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : RunConfig::load_file(o.config);
  if (o.seed) cfg.master_seed = *o.seed;
  for (const auto& assignment : o.overrides) {
    const auto [key, value] = split_assignment(assignment);
    cfg.set(key, value);
  }
  cfg.finalize();
  if (cfg.paths.corpus.empty() || cfg.paths.truth.empty() || cfg.paths.pipeline.empty()) {
    throw Error(ErrorCode::kUsage, "train-stack needs paths.corpus, paths.truth and paths.pipeline");
  }

  const auto examples = load_labeled(cfg.paths.corpus, cfg.paths.truth, cfg.malformed, err);
  const auto training = prepare_training_set(examples, cfg.sampling);
  const FeatureSchema schema = schema_of(training);
  const Dataset encoded(schema.total_dim(), encode_all(training, schema), labels_of(training));

  const ModelPtr selector =
      train(ModelSpec::make(ModelFamily::kGradientBoosting, Preset::kDefault, cfg.selection_seed),
            encoded);
  std::vector<std::size_t> selected =
      select_features(feature_importances(*selector), cfg.selection_threshold);
  if (selected.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "feature selection kept no columns");
  }

  std::vector<SparseVector> projected;
  projected.reserve(encoded.size());
  for (const auto& row : encoded.rows()) projected.push_back(project(row, selected));
  const Dataset data(selected.size(), std::move(projected), labels_of(training));

  StackedPipeline pipeline{schema, selected, fit_stack(data, cfg.stack)};
  save_pipeline_file(pipeline, cfg.paths.pipeline);
  if (!cfg.paths.schema.empty()) {
    auto s = open_output(cfg.paths.schema);
    schema.save(s);
    close_output(s, cfg.paths.schema);
  }
  out << "examples=" << examples.size() << '\n';
  out << "training=" << training.size() << '\n';
  out << "features=" << schema.total_dim() << '\n';
  out << "selected=" << selected.size() << '\n';
  out << "pipeline=" << cfg.paths.pipeline << '\n';
  return 0;
}

// --- predict --------------------------------------------------------------

struct PredictOptions {
  std::string pipeline, input, output, malformed = "skip";
};

int run_predict(const PredictOptions& o, std::ostream& out, std::ostream& err) {
  const StackedPipeline pipeline = load_pipeline_file(o.pipeline);
  const CorpusLoadResult corpus = load_corpus_file(o.input, parse_policy(o.malformed));
  if (corpus.malformed_count > 0) {
    err << "skipped " << corpus.malformed_count << " malformed lines in " << o.input << '\n';
  }
  auto f = open_output(o.output);
  for (const auto& r : corpus.revisions) {
    f << r.rev_id << '\t' << format_score(score_revision(pipeline, r)) << '\n';
  }
  close_output(f, o.output);
  out << "scored=" << corpus.revisions.size() << '\n';
  return 0;
}

// --- evaluate / analyze ---------------------------------------------------

struct EvaluateOptions {
  std::string scores, truth, report, histogram, mds, corpus, schema, pipeline;
  std::string malformed = "skip";
  std::size_t mds_cap = kDefaultMdsCap;
};

std::vector<std::pair<RevisionId, double>> read_scores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<std::pair<RevisionId, double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::size_t tab = line.find('\t');
    try {
      if (tab == std::string::npos) throw Error(ErrorCode::kFormat, "missing TAB");
      rows.emplace_back(parse_uint64(std::string_view(line).substr(0, tab)),
                        parse_double(std::string_view(line).substr(tab + 1)));
    } catch (const Error&) {
      throw Error(ErrorCode::kFormat, path + ":" + std::to_string(line_no) + ": expected rev_id TAB score");
    }
  }
  return rows;
}

int run_evaluate(const EvaluateOptions& o, bool analyze, std::ostream& out, std::ostream& err) {
  const auto scores = read_scores(o.scores);
  const LabelMap truth = load_labels_file(o.truth);
  std::vector<ScoredExample> scored;
  std::size_t unlabeled = 0;
  for (const auto& [id, score] : scores) {
    const auto t = truth.find(id);
    if (t == truth.end()) {
      ++unlabeled;
      continue;
    }
    scored.push_back({id, score, t->second});
  }
  if (unlabeled > 0) err << "ignored " << unlabeled << " scores without truth\n";

  const bool have_schema = !o.schema.empty() || !o.pipeline.empty();
  const bool want_vectors = analyze || !o.mds.empty();
  if (want_vectors && (o.corpus.empty() || !have_schema)) {
    throw Error(ErrorCode::kUsage, std::string(analyze ? "analyze" : "--mds") +
                                       " needs --corpus and --schema or --pipeline");
  }
  std::vector<SparseVector> vectors;
  if (!o.corpus.empty() && have_schema) {
    FeatureSchema schema;
    if (!o.schema.empty()) {
      std::ifstream s(o.schema);
      if (!s) throw Error(ErrorCode::kIo, "cannot open " + o.schema);
      schema = FeatureSchema::load(s);
    } else {
      schema = load_pipeline_file(o.pipeline).schema;
    }
    const CorpusLoadResult corpus = load_corpus_file(o.corpus, parse_policy(o.malformed));
    std::unordered_map<RevisionId, const Revision*> by_id;
    for (const auto& r : corpus.revisions) by_id.emplace(r.rev_id, &r);
    vectors.reserve(scored.size());
    for (const auto& s : scored) {
      const auto it = by_id.find(s.rev_id);
      if (it == by_id.end()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "rev_id " + std::to_string(s.rev_id) + " is scored but not in the corpus");
      }
      vectors.push_back(encode(extract_features(*it->second), schema));
    }
  }

  const EvalReport report = evaluate(scored, vectors);
  if (o.report.empty()) {
    write_report(out, report);
  } else {
    auto f = open_output(o.report);
    write_report(f, report);
    close_output(f, o.report);
    if (report.auc) out << "auc=" << format_score(*report.auc) << '\n';
  }
  if (!o.histogram.empty()) {
    auto f = open_output(o.histogram);
    write_histogram(f, report);
    close_output(f, o.histogram);
  }
  if (!o.mds.empty()) {
    const ErrorSets sets = error_sets(scored, vectors);
    std::vector<std::size_t> errors;
    std::vector<RevisionId> ids;
    for (auto i : sets.false_positives) errors.push_back(i);
    for (auto i : sets.false_negatives) errors.push_back(i);
    for (auto i : errors) ids.push_back(scored[i].rev_id);
    const auto keep = mds_subsample(ids, o.mds_cap);
    std::vector<SparseVector> rows;
    for (auto k : keep) rows.push_back(vectors[errors[k]]);
    const auto points = classical_mds(rows);
    auto f = open_output(o.mds);
    for (std::size_t p = 0; p < keep.size(); ++p) {
      const ScoredExample& s = scored[errors[keep[p]]];
      f << s.rev_id << '\t' << format_double(points[p].x) << '\t' << format_double(points[p].y)
        << '\t' << (s.label ? "FN" : "FP") << '\n';
    }
    close_output(f, o.mds);
  }
  return 0;
}

// --- serve / client -------------------------------------------------------

struct ServeOptions {
  std::string corpus, truth, listen = "127.0.0.1:0", scores, report, malformed = "skip";
  std::size_t window = 16;
  int timeout_ms = 30000;
};

int run_serve(const ServeOptions& o, std::ostream& out, std::ostream& err) {
  const CorpusLoadResult corpus = load_corpus_file(o.corpus, parse_policy(o.malformed));
  const LabelMap truth = o.truth.empty() ? LabelMap{} : load_labels_file(o.truth);
  const Endpoint endpoint = Endpoint::parse(o.listen);
  ScoringServer server(endpoint);
  err << "listening on " << Endpoint{endpoint.host, server.port()}.to_string() << std::endl;
  const ServerResult result = server.run_session(corpus.revisions, truth, {o.window, o.timeout_ms});
  if (!o.scores.empty()) {
    auto f = open_output(o.scores);
    write_score_lines(f, result.score_lines);
    close_output(f, o.scores);
  }
  if (!o.report.empty()) {
    auto f = open_output(o.report);
    write_report(f, result.report);
    close_output(f, o.report);
  } else {
    write_report(out, result.report);
  }
  out << "max_in_flight=" << result.max_in_flight << '\n';
  return 0;
}

struct ClientOptions {
  std::string pipeline, connect;
};

int run_client_command(const ClientOptions& o, std::ostream& out, std::ostream& err) {
  const StackedPipeline pipeline = load_pipeline_file(o.pipeline);
  ClientStats stats;
  const int status = run_client(pipeline, Endpoint::parse(o.connect), &stats);
  out << "received=" << stats.received << '\n';
  out << "answered=" << stats.answered << '\n';
  if (status != 0) err << "error: " << stats.error << '\n';
  return status;
}

// --- synth ----------------------------------------------------------------

struct SynthOptions {
  std::string corpus, truth;
  std::size_t rows = 20000;
  double positive_rate = 0.02;
  std::uint64_t seed = 0;
};

int run_synth(const SynthOptions& o, std::ostream& out) {
  const SyntheticCorpus synthetic = make_synthetic_corpus(o.rows, o.positive_rate, o.seed);
  auto c = open_output(o.corpus);
  write_corpus(c, synthetic.revisions);
  close_output(c, o.corpus);
  auto t = open_output(o.truth);
  std::size_t positives = 0;
  for (const auto& r : synthetic.revisions) {
    const bool label = synthetic.labels.at(r.rev_id);
    positives += label ? 1 : 0;
    t << r.rev_id << '\t' << (label ? 1 : 0) << '\n';
  }
  close_output(t, o.truth);
  out << "revisions=" << synthetic.revisions.size() << '\n';
  out << "positives=" << positives << '\n';
  return 0;
}

std::string version_text() {
  return "vandalstack " + std::string(kVersion) + " (" + std::string(kSchemaHeader) + ", " +
         std::string(kModelHeader) + ", " + std::string(kPipelineHeader) + ")";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vandalism detection for knowledge-base revisions", "vandalstack"};
  app.set_version_flag("--version", version_text());
  app.require_subcommand(1);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a corpus and report counts");
  ingest_cmd->add_option("--corpus", ingest.corpus, "Corpus file")->required();
  ingest_cmd->add_option("--truth", ingest.truth, "Truth file");
  ingest_cmd->add_option("--output", ingest.output, "Write the canonical corpus here");
  ingest_cmd->add_option("--labels-out", ingest.labels_out, "Write joined labels here");
  ingest_cmd->add_option("--malformed", ingest.malformed, "skip or abort");

  SampleOptions sample;
  auto* sample_cmd = app.add_subcommand("sample", "Under-sample negatives and deduplicate");
  sample_cmd->add_option("--corpus", sample.corpus)->required();
  sample_cmd->add_option("--truth", sample.truth)->required();
  sample_cmd->add_option("--output", sample.output, "Sampled corpus")->required();
  sample_cmd->add_option("--labels-out", sample.labels_out, "Sampled truth");
  sample_cmd->add_option("--fraction", sample.fraction, "Negative fraction, e.g. 1/50");
  sample_cmd->add_option("--window", sample.window, "Most recent negatives eligible, or all");
  sample_cmd->add_option("--seed", sample.seed);
  sample_cmd->add_flag("--no-dedup", sample.no_dedup);
  sample_cmd->add_option("--dedup-order", sample.dedup_order, "after or before");
  sample_cmd->add_option("--malformed", sample.malformed);

  TrainOptions train_opts;
  auto* train_cmd = app.add_subcommand("train", "Train a single model");
  train_cmd->add_option("--corpus", train_opts.corpus)->required();
  train_cmd->add_option("--truth", train_opts.truth)->required();
  train_cmd->add_option("--model", train_opts.model, "Model family");
  train_cmd->add_option("--preset", train_opts.preset, "default or optimized");
  train_cmd->add_option("--seed", train_opts.seed);
  train_cmd->add_option("--set", train_opts.hyperparameters, "Hyperparameter key=value");
  train_cmd->add_option("--output", train_opts.output, "Model file")->required();
  train_cmd->add_option("--schema-out", train_opts.schema_out, "Schema file");
  train_cmd->add_option("--malformed", train_opts.malformed);

  StackOptions stack;
  auto* stack_cmd = app.add_subcommand("train-stack", "Train the stacked pipeline");
  stack_cmd->add_option("--config", stack.config, "Run configuration file");
  stack_cmd->add_option("--set", stack.overrides, "Override a config key: key=value");
  stack_cmd->add_option("--seed", stack.seed, "Master seed");

  PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "Score a corpus with a pipeline");
  predict_cmd->add_option("--pipeline", predict.pipeline)->required();
  predict_cmd->add_option("--input", predict.input)->required();
  predict_cmd->add_option("--output", predict.output)->required();
  predict_cmd->add_option("--malformed", predict.malformed);

  EvaluateOptions evaluate_opts;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "AUC and score-difference report");
  EvaluateOptions analyze_opts;
  auto* analyze_cmd = app.add_subcommand("analyze", "Error analysis with MDS coordinates");
  for (auto [cmd, opts] : {std::pair{evaluate_cmd, &evaluate_opts},
                           std::pair{analyze_cmd, &analyze_opts}}) {
    cmd->add_option("--scores", opts->scores)->required();
    cmd->add_option("--truth", opts->truth)->required();
    cmd->add_option("--report", opts->report);
    cmd->add_option("--histogram", opts->histogram);
    cmd->add_option("--mds", opts->mds);
    cmd->add_option("--mds-cap", opts->mds_cap);
    cmd->add_option("--corpus", opts->corpus);
    cmd->add_option("--schema", opts->schema);
    cmd->add_option("--pipeline", opts->pipeline);
    cmd->add_option("--malformed", opts->malformed);
  }

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Stream a corpus to one scoring client");
  serve_cmd->add_option("--corpus", serve.corpus)->required();
  serve_cmd->add_option("--truth", serve.truth);
  serve_cmd->add_option("--listen", serve.listen, "host:port");
  serve_cmd->add_option("--window", serve.window);
  serve_cmd->add_option("--timeout-ms", serve.timeout_ms);
  serve_cmd->add_option("--scores", serve.scores);
  serve_cmd->add_option("--report", serve.report);
  serve_cmd->add_option("--malformed", serve.malformed);

  ClientOptions client;
  auto* client_cmd = app.add_subcommand("client", "Answer a scoring server");
  client_cmd->add_option("--pipeline", client.pipeline)->required();
  client_cmd->add_option("--connect", client.connect, "host:port")->required();

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic corpus and truth file");
  synth_cmd->add_option("--corpus", synth.corpus)->required();
  synth_cmd->add_option("--truth", synth.truth)->required();
  synth_cmd->add_option("--rows", synth.rows);
  synth_cmd->add_option("--positive-rate", synth.positive_rate);
  synth_cmd->add_option("--seed", synth.seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << version_text() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (ingest_cmd->parsed()) return run_ingest(ingest, out, err);
    if (sample_cmd->parsed()) return run_sample(sample, out, err);
    if (train_cmd->parsed()) return run_train(train_opts, out, err);
    if (stack_cmd->parsed()) return run_train_stack(stack, out, err);
    if (predict_cmd->parsed()) return run_predict(predict, out, err);
    if (evaluate_cmd->parsed()) return run_evaluate(evaluate_opts, false, out, err);
    if (analyze_cmd->parsed()) return run_evaluate(analyze_opts, true, out, err);
    if (serve_cmd->parsed()) return run_serve(serve, out, err);
    if (client_cmd->parsed()) return run_client_command(client, out, err);
    if (synth_cmd->parsed()) return run_synth(synth, out);
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::kUsage ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace vandalstack::cli
