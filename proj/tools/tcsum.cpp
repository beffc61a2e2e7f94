// tcsum: train and run the category-transfer extractive summarizer.
//
// Subcommands: synth, train-classifier, train-summarizer, summarize, rouge,
// crossval, style-analysis. Every subcommand accepts --config FILE (flat
// key=value) with individual flags overriding file values.
//
// Exit codes: 0 success, 1 usage error, 2 data/model error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcsum/corpus.hpp"
#include "tcsum/embeddings.hpp"
#include "tcsum/harness.hpp"
#include "tcsum/model_io.hpp"
#include "tcsum/rouge.hpp"
#include "tcsum/selection.hpp"
#include "tcsum/summarizer.hpp"
#include "tcsum/synth.hpp"

namespace {

using namespace tcsum;

struct CommonOpts {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> overrides;
};

// --config is parsed first, then explicit flags override it.
void add_config_flags(CLI::App* cmd, CommonOpts& opts, ExperimentConfig& cfg) {
  cmd->add_option("--config", opts.config_file,
                  "key=value config file (see README)");
  auto track = [&opts](const std::string& key) {
    return [key, &opts](const std::string& value) {
      opts.overrides.emplace_back(key, value);
    };
  };
  for (const char* key :
       {"classification_corpus", "cluster_corpus", "embeddings", "model_out",
        "omega", "learning_rate", "batch", "classifier_epochs",
        "summarizer_epochs", "pairs_per_cluster", "hi_pct", "lo_pct",
        "redundancy_threshold", "stem", "mode", "seed", "folds"}) {
    std::string flag = "--" + std::string(key);
    for (char& c : flag)
      if (c == '_') c = '-';
    cmd->add_option_function<std::string>(flag, track(key));
  }
  cmd->add_option_function<std::string>("--word-dim", track("k"));
  cmd->add_option_function<std::string>("--feature-dim", track("m"));
  cmd->add_option_function<std::string>("--window", track("h"));
  cmd->callback([&opts, &cfg] {
    if (!opts.config_file.empty()) load_config_file(cfg, opts.config_file);
    for (const auto& [key, value] : opts.overrides)
      apply_config_line(cfg, key, value);
  });
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::runtime_error(message);
}

std::vector<std::string> read_token_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  std::vector<std::string> tokens;
  for (const auto& sent : tokenize(text))
    tokens.insert(tokens.end(), sent.tokens.begin(), sent.tokens.end());
  return tokens;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot open " + path);
  out << content;
}

int run(int argc, char** argv) {
  CLI::App app{"TCSum extractive multi-document summarization toolkit"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  CommonOpts opts;

  // ---- synth ----
  auto* synth_cmd =
      app.add_subcommand("synth", "generate a deterministic synthetic corpus");
  SynthConfig synth_cfg;
  std::uint64_t synth_seed = 1;
  std::string out_classification = "classification.jsonl";
  std::string out_clusters = "clusters.jsonl";
  std::string out_embeddings = "embeddings.txt";
  synth_cmd->add_option("--seed", synth_seed);
  synth_cmd->add_option("--categories", synth_cfg.categories);
  synth_cmd->add_option("--docs-per-cat", synth_cfg.docs_per_cat);
  synth_cmd->add_option("--clusters-per-cat", synth_cfg.clusters_per_cat);
  synth_cmd->add_option("--docs-per-cluster", synth_cfg.docs_per_cluster);
  synth_cmd->add_option("--sents-per-doc", synth_cfg.sents_per_doc);
  synth_cmd->add_option("--vocab-per-cat", synth_cfg.vocab_per_cat);
  synth_cmd->add_option("--style-signal", synth_cfg.style_signal);
  synth_cmd->add_option("--embedding-dim", synth_cfg.embedding_dim);
  synth_cmd->add_option("--budget-words", synth_cfg.budget_words);
  synth_cmd->add_option("--out-classification", out_classification);
  synth_cmd->add_option("--out-clusters", out_clusters);
  synth_cmd->add_option("--out-embeddings", out_embeddings);

  // ---- train-classifier ----
  auto* train_clf_cmd = app.add_subcommand(
      "train-classifier", "train encoder + category classifier");
  add_config_flags(train_clf_cmd, opts, cfg);

  // ---- train-summarizer ----
  auto* train_sum_cmd = app.add_subcommand(
      "train-summarizer", "train transformation matrices on cluster data");
  CommonOpts sum_opts;
  std::string model_in;
  add_config_flags(train_sum_cmd, sum_opts, cfg);
  train_sum_cmd->add_option("--model-in", model_in,
                            "pretrained classifier model (JSON)");

  // ---- summarize ----
  auto* summarize_cmd =
      app.add_subcommand("summarize", "summarize clusters with a trained model");
  std::string sum_model, sum_clusters, sum_embeddings, sum_cluster_id;
  std::string sum_mode_flag, force_category, sum_out;
  double sum_redundancy = 0.5;
  summarize_cmd->add_option("--model", sum_model)->required();
  summarize_cmd->add_option("--clusters", sum_clusters)->required();
  summarize_cmd->add_option("--embeddings", sum_embeddings)->required();
  summarize_cmd->add_option("--cluster-id", sum_cluster_id,
                            "summarize only this cluster");
  summarize_cmd->add_option("--mode", sum_mode_flag,
                            "tcsum|singlet|notc|emsim (default: model's mode)");
  summarize_cmd->add_option("--force-category", force_category,
                            "rank with a one-hot category instead of the "
                            "predicted distribution (tcsum only)");
  summarize_cmd->add_option("--redundancy-threshold", sum_redundancy);
  summarize_cmd->add_option("--output", sum_out, "output JSON path (default stdout)");

  // ---- rouge ----
  auto* rouge_cmd =
      app.add_subcommand("rouge", "score a candidate file against references");
  std::string rouge_candidate;
  std::vector<std::string> rouge_references;
  bool rouge_no_stem = false;
  rouge_cmd->add_option("--candidate", rouge_candidate)->required();
  rouge_cmd->add_option("--references", rouge_references)
      ->required()
      ->expected(-1);
  rouge_cmd->add_flag("--no-stem", rouge_no_stem);

  // ---- crossval ----
  auto* crossval_cmd = app.add_subcommand(
      "crossval", "k-fold cross-validation of the summarizer");
  CommonOpts cv_opts;
  std::string report_out;
  add_config_flags(crossval_cmd, cv_opts, cfg);
  crossval_cmd->add_option("--report-out", report_out,
                           "write the JSON report here");

  // ---- style-analysis ----
  auto* style_cmd = app.add_subcommand(
      "style-analysis", "pairwise similarity of the transformation matrices");
  std::string style_model, style_out;
  style_cmd->add_option("--model", style_model)->required();
  style_cmd->add_option("--output", style_out, "output JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (synth_cmd->parsed()) {
    SynthCorpus corpus = synth_corpus(synth_seed, synth_cfg);
    write_classification_corpus(corpus.classification, out_classification);
    write_cluster_corpus(corpus.clusters, out_clusters);
    save_embeddings(corpus.embeddings, out_embeddings);
    std::cout << "wrote " << corpus.classification.size() << " documents, "
              << corpus.clusters.size() << " clusters\n";
    return 0;
  }

  if (train_clf_cmd->parsed()) {
    require(!cfg.classification_corpus.empty(),
            "classification_corpus not set");
    require(!cfg.embeddings.empty(), "embeddings not set");
    require(!cfg.model_out.empty(), "model_out not set");
    auto docs = read_classification_corpus(cfg.classification_corpus);
    auto table = load_embeddings(cfg.embeddings, &std::cerr);
    TcsumModel model = pretrain(docs, table, cfg, &std::cerr);
    save_model(model, cfg.model_out);
    write_text(cfg.model_out + ".manifest.json",
               run_manifest(cfg).dump(2) + "\n");
    std::cout << "model written to " << cfg.model_out << "\n";
    return 0;
  }

  if (train_sum_cmd->parsed()) {
    require(!cfg.cluster_corpus.empty(), "cluster_corpus not set");
    require(!cfg.embeddings.empty(), "embeddings not set");
    require(!cfg.model_out.empty(), "model_out not set");
    auto clusters = read_cluster_corpus(cfg.cluster_corpus);
    auto table = load_embeddings(cfg.embeddings, &std::cerr);
    TcsumModel pretrained;
    if (!model_in.empty()) {
      pretrained = load_model(model_in);
    } else {
      require(cfg.mode == SummarizerMode::NoTC,
              "--model-in is required except in notc mode");
      pretrained.word_dim = table.dim();
      pretrained.feature_dim = cfg.m;
      pretrained.window = cfg.h;
    }
    SummarizerTrainConfig tc;
    tc.pairs_per_cluster = cfg.pairs_per_cluster;
    tc.epochs = cfg.summarizer_epochs;
    tc.omega = cfg.omega;
    tc.learning_rate = cfg.learning_rate;
    tc.batch = cfg.batch;
    tc.seed = cfg.seed;
    tc.mode = cfg.mode;
    tc.thresholds = {cfg.hi_pct, cfg.lo_pct};
    tc.label_config = {2, cfg.stem, false};
    TcsumModel model = train_summarizer(clusters, pretrained, table, tc,
                                        &std::cerr);
    save_model(model, cfg.model_out);
    write_text(cfg.model_out + ".manifest.json",
               run_manifest(cfg).dump(2) + "\n");
    std::cout << "model written to " << cfg.model_out << "\n";
    return 0;
  }

  if (summarize_cmd->parsed()) {
    TcsumModel model = load_model(sum_model);
    if (!sum_mode_flag.empty())
      model.summarizer.mode = mode_from_string(sum_mode_flag);
    auto clusters = read_cluster_corpus(sum_clusters);
    auto table = load_embeddings(sum_embeddings, &std::cerr);
    std::optional<std::string> forced;
    if (!force_category.empty()) forced = force_category;
    nlohmann::json output = nlohmann::json::array();
    for (const auto& cluster : clusters) {
      if (!sum_cluster_id.empty() && cluster.id != sum_cluster_id) continue;
      std::vector<double> scores = rank_sentences(cluster, model, table, forced);
      SummaryResult summary =
          greedy_select(flatten_cluster(cluster), scores, cluster.budget,
                        sum_redundancy);
      output.push_back({{"id", cluster.id},
                        {"summary", summary.text},
                        {"used", summary.used},
                        {"budget", cluster.budget.value},
                        {"selected", summary.selected},
                        {"scores", scores}});
    }
    require(!output.empty(), "no matching cluster in " + sum_clusters);
    if (sum_out.empty())
      std::cout << output.dump(2) << "\n";
    else
      write_text(sum_out, output.dump(2) + "\n");
    return 0;
  }

  if (rouge_cmd->parsed()) {
    auto cand = read_token_file(rouge_candidate);
    std::vector<std::vector<std::string>> refs;
    for (const auto& path : rouge_references)
      refs.push_back(read_token_file(path));
    nlohmann::json j{
        {"rouge_1", rouge_n(cand, refs, {1, !rouge_no_stem, false})},
        {"rouge_2", rouge_n(cand, refs, {2, !rouge_no_stem, false})}};
    std::cout << j.dump() << "\n";
    return 0;
  }

  if (crossval_cmd->parsed()) {
    require(!cfg.cluster_corpus.empty(), "cluster_corpus not set");
    require(!cfg.embeddings.empty(), "embeddings not set");
    auto clusters = read_cluster_corpus(cfg.cluster_corpus);
    auto table = load_embeddings(cfg.embeddings, &std::cerr);
    std::vector<LabeledDoc> docs;
    if (cfg.mode != SummarizerMode::NoTC) {
      require(!cfg.classification_corpus.empty(),
              "classification_corpus not set");
      docs = read_classification_corpus(cfg.classification_corpus);
    }
    TcsumModel pretrained = pretrain(docs, table, cfg, &std::cerr);
    EvalReport report = run_crossval(clusters, pretrained, table, cfg,
                                     &std::cerr);
    std::cout << report_to_text(report);
    if (!report_out.empty())
      write_text(report_out, report_to_json(report, cfg).dump(2) + "\n");
    return 0;
  }

  if (style_cmd->parsed()) {
    TcsumModel model = load_model(style_model);
    require(model.summarizer.sub_matrices.size() >= 2,
            "style-analysis needs a tcsum model with >= 2 sub-matrices");
    Tensor2 sim = style_similarity(model.summarizer.sub_matrices, &std::cerr);
    std::vector<std::string> names = model.categories;
    if (names.size() != sim.rows) {
      names.clear();
      for (std::size_t i = 0; i < sim.rows; ++i)
        names.push_back("matrix" + std::to_string(i));
    }
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < sim.rows; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t j = 0; j < sim.cols; ++j) row.push_back(sim.at(i, j));
      rows.push_back(std::move(row));
    }
    nlohmann::json j{{"categories", names}, {"similarity", rows}};
    std::cerr << style_similarity_text(sim, names);
    if (style_out.empty())
      std::cout << j.dump(2) << "\n";
    else
      write_text(style_out, j.dump(2) + "\n");
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError&) {
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
