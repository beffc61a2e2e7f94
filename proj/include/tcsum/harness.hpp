#pragma once

#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcsum/corpus.hpp"
#include "tcsum/model_io.hpp"
#include "tcsum/rouge.hpp"
#include "tcsum/selection.hpp"
#include "tcsum/summarizer.hpp"
#include "tcsum/synth.hpp"

namespace tcsum {

// Defaults mirror the reference configuration (k = m = 50, h = 2,
// omega = 0.1, lr = 0.1, batch = 128).
struct ExperimentConfig {
  std::string classification_corpus;
  std::string cluster_corpus;
  std::string embeddings;
  std::string model_out;

  std::size_t k = 50;
  std::size_t m = 50;
  std::size_t h = 2;
  double omega = 0.1;
  double learning_rate = 0.1;
  std::size_t batch = 128;
  std::size_t classifier_epochs = 20;
  std::size_t summarizer_epochs = 10;
  std::size_t pairs_per_cluster = 64;
  double hi_pct = 0.30;
  double lo_pct = 0.30;
  double redundancy_threshold = 0.5;
  bool stem = true;
  SummarizerMode mode = SummarizerMode::TCSum;
  std::uint64_t seed = 1;
  std::size_t folds = 3;
};

// Flat key=value config file; '#' starts a comment line.
inline void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                              const std::string& value) {
  auto to_size = [&](const std::string& v) -> std::size_t {
    return static_cast<std::size_t>(std::stoull(v));
  };
  if (key == "classification_corpus") cfg.classification_corpus = value;
  else if (key == "cluster_corpus") cfg.cluster_corpus = value;
  else if (key == "embeddings") cfg.embeddings = value;
  else if (key == "model_out") cfg.model_out = value;
  else if (key == "k") cfg.k = to_size(value);
  else if (key == "m") cfg.m = to_size(value);
  else if (key == "h") cfg.h = to_size(value);
  else if (key == "omega") cfg.omega = std::stod(value);
  else if (key == "learning_rate") cfg.learning_rate = std::stod(value);
  else if (key == "batch") cfg.batch = to_size(value);
  else if (key == "classifier_epochs") cfg.classifier_epochs = to_size(value);
  else if (key == "summarizer_epochs") cfg.summarizer_epochs = to_size(value);
  else if (key == "pairs_per_cluster") cfg.pairs_per_cluster = to_size(value);
  else if (key == "hi_pct") cfg.hi_pct = std::stod(value);
  else if (key == "lo_pct") cfg.lo_pct = std::stod(value);
  else if (key == "redundancy_threshold")
    cfg.redundancy_threshold = std::stod(value);
  else if (key == "stem") cfg.stem = (value == "true" || value == "1");
  else if (key == "mode") cfg.mode = mode_from_string(value);
  else if (key == "seed") cfg.seed = std::stoull(value);
  else if (key == "folds") cfg.folds = to_size(value);
  else
    throw std::invalid_argument("config: unknown key '" + key + "'");
}

inline void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: " + path + ":" +
                               std::to_string(line_no) +
                               ": expected key=value");
    apply_config_line(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

inline std::string config_to_string(const ExperimentConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "classification_corpus=" << c.classification_corpus << '\n'
      << "cluster_corpus=" << c.cluster_corpus << '\n'
      << "embeddings=" << c.embeddings << '\n'
      << "model_out=" << c.model_out << '\n'
      << "k=" << c.k << '\n' << "m=" << c.m << '\n' << "h=" << c.h << '\n'
      << "omega=" << c.omega << '\n'
      << "learning_rate=" << c.learning_rate << '\n'
      << "batch=" << c.batch << '\n'
      << "classifier_epochs=" << c.classifier_epochs << '\n'
      << "summarizer_epochs=" << c.summarizer_epochs << '\n'
      << "pairs_per_cluster=" << c.pairs_per_cluster << '\n'
      << "hi_pct=" << c.hi_pct << '\n' << "lo_pct=" << c.lo_pct << '\n'
      << "redundancy_threshold=" << c.redundancy_threshold << '\n'
      << "stem=" << (c.stem ? "true" : "false") << '\n'
      << "mode=" << to_string(c.mode) << '\n'
      << "seed=" << c.seed << '\n' << "folds=" << c.folds << '\n';
  return out.str();
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

inline std::uint64_t file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checksum: cannot open " + path);
  std::uint64_t h = 1469598103934665603ull;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  return h;
}

// Everything needed to reproduce a run exactly.
inline nlohmann::json run_manifest(const ExperimentConfig& cfg) {
  nlohmann::json manifest;
  manifest["config_hash"] = hex64(detail::fnv1a64(config_to_string(cfg)));
  manifest["seed"] = cfg.seed;
  nlohmann::json checksums = nlohmann::json::object();
  for (const std::string& path :
       {cfg.classification_corpus, cfg.cluster_corpus, cfg.embeddings})
    if (!path.empty()) checksums[path] = hex64(file_checksum(path));
  manifest["corpus_checksums"] = std::move(checksums);
  return manifest;
}

// Classification stage: trains encoder + classifier for the modes that use
// them. NoTC skips classification data entirely and starts from scratch
// inside train_summarizer.
inline TcsumModel pretrain(const std::vector<LabeledDoc>& docs,
                           const EmbeddingTable& table,
                           const ExperimentConfig& cfg,
                           std::ostream* log_out = nullptr) {
  TcsumModel model;
  model.word_dim = table.dim();
  model.feature_dim = cfg.m;
  model.window = cfg.h;
  model.summarizer.mode = cfg.mode;
  if (cfg.mode == SummarizerMode::NoTC) {
    Rng rng(cfg.seed);
    model.encoder = EncoderParams::init(cfg.m, cfg.h, table.dim(), rng);
    return model;
  }
  ClassifierTrainConfig tc;
  tc.epochs = cfg.classifier_epochs;
  tc.batch = cfg.batch;
  tc.learning_rate = cfg.learning_rate;
  tc.seed = cfg.seed;
  tc.m = cfg.m;
  tc.h = cfg.h;
  ClassifierTrainResult trained = train_classifier(docs, table, tc, log_out);
  model.categories = trained.classifier.categories;
  model.encoder = trained.encoder;
  model.classifier = trained.classifier;
  return model;
}

struct ClusterScore {
  std::string id;
  double rouge_1 = 0.0;
  double rouge_2 = 0.0;
};

struct FoldReport {
  std::vector<ClusterScore> clusters;
  double mean_rouge_1 = 0.0;
  double mean_rouge_2 = 0.0;
};

struct EvalReport {
  SummarizerMode mode = SummarizerMode::TCSum;
  std::vector<FoldReport> folds;
  double mean_rouge_1 = 0.0;
  double mean_rouge_2 = 0.0;
};

inline ClusterScore evaluate_cluster(
    const ClusterRecord& cluster, const TcsumModel& model,
    const EmbeddingTable& table, double redundancy_threshold, bool stem,
    const std::optional<std::string>& force_category = std::nullopt) {
  std::vector<double> scores =
      rank_sentences(cluster, model, table, force_category);
  SummaryResult summary = greedy_select(flatten_cluster(cluster), scores,
                                        cluster.budget,
                                        redundancy_threshold);
  std::vector<std::string> cand_tokens;
  for (const auto& sent : tokenize(summary.text))
    cand_tokens.insert(cand_tokens.end(), sent.tokens.begin(),
                       sent.tokens.end());
  std::vector<std::vector<std::string>> refs;
  for (const auto& ref_text : cluster.references) {
    std::vector<std::string> tokens;
    for (const auto& sent : tokenize(ref_text))
      tokens.insert(tokens.end(), sent.tokens.begin(), sent.tokens.end());
    refs.push_back(std::move(tokens));
  }
  ClusterScore score;
  score.id = cluster.id;
  score.rouge_1 = rouge_n(cand_tokens, refs, {1, stem, false});
  score.rouge_2 = rouge_n(cand_tokens, refs, {2, stem, false});
  return score;
}

// Round-robin fold assignment over a seed-shuffled cluster order.
inline std::vector<std::size_t> assign_folds(std::size_t count,
                                             std::size_t folds,
                                             std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("assign_folds: need >= 2 folds");
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<std::size_t> fold_of(count);
  for (std::size_t i = 0; i < count; ++i) fold_of[order[i]] = i % folds;
  return fold_of;
}

// Train on all folds but one, evaluate on the held-out fold, aggregate.
// `pretrained` carries encoder/classifier from the classification stage.
inline EvalReport run_crossval(const std::vector<ClusterRecord>& clusters,
                               const TcsumModel& pretrained,
                               const EmbeddingTable& table,
                               const ExperimentConfig& cfg,
                               std::ostream* log_out = nullptr) {
  const std::vector<std::size_t> fold_of =
      assign_folds(clusters.size(), cfg.folds, cfg.seed);
  for (std::size_t f = 0; f < cfg.folds; ++f) {
    bool any = false;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      if (fold_of[i] == f && !clusters[i].references.empty()) any = true;
    if (!any)
      throw std::runtime_error("run_crossval: fold " + std::to_string(f) +
                               " has no labeled clusters");
  }

  SummarizerTrainConfig train_cfg;
  train_cfg.pairs_per_cluster = cfg.pairs_per_cluster;
  train_cfg.epochs = cfg.summarizer_epochs;
  train_cfg.omega = cfg.omega;
  train_cfg.learning_rate = cfg.learning_rate;
  train_cfg.batch = cfg.batch;
  train_cfg.seed = cfg.seed;
  train_cfg.mode = cfg.mode;
  train_cfg.thresholds = {cfg.hi_pct, cfg.lo_pct};
  train_cfg.label_config = {2, cfg.stem, false};

  EvalReport report;
  report.mode = cfg.mode;
  double total_1 = 0.0, total_2 = 0.0;
  std::size_t total_clusters = 0;
  for (std::size_t f = 0; f < cfg.folds; ++f) {
    std::vector<ClusterRecord> train_set;
    std::vector<const ClusterRecord*> test_set;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      if (fold_of[i] == f)
        test_set.push_back(&clusters[i]);
      else
        train_set.push_back(clusters[i]);
    }
    TcsumModel model =
        train_summarizer(train_set, pretrained, table, train_cfg, log_out);
    if (!cfg.model_out.empty())
      save_model(model, cfg.model_out + ".fold" + std::to_string(f) + ".json");
    FoldReport fold;
    for (const ClusterRecord* cluster : test_set) {
      fold.clusters.push_back(evaluate_cluster(
          *cluster, model, table, cfg.redundancy_threshold, cfg.stem));
      fold.mean_rouge_1 += fold.clusters.back().rouge_1;
      fold.mean_rouge_2 += fold.clusters.back().rouge_2;
    }
    fold.mean_rouge_1 /= static_cast<double>(fold.clusters.size());
    fold.mean_rouge_2 /= static_cast<double>(fold.clusters.size());
    total_1 += fold.mean_rouge_1 * fold.clusters.size();
    total_2 += fold.mean_rouge_2 * fold.clusters.size();
    total_clusters += fold.clusters.size();
    report.folds.push_back(std::move(fold));
  }
  report.mean_rouge_1 = total_1 / static_cast<double>(total_clusters);
  report.mean_rouge_2 = total_2 / static_cast<double>(total_clusters);
  return report;
}

inline nlohmann::json report_to_json(const EvalReport& report,
                                     const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["mode"] = to_string(report.mode);
  j["manifest"] = run_manifest(cfg);
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& fold : report.folds) {
    nlohmann::json fj;
    nlohmann::json cl = nlohmann::json::array();
    for (const auto& c : fold.clusters)
      cl.push_back({{"id", c.id},
                    {"rouge_1", c.rouge_1},
                    {"rouge_2", c.rouge_2}});
    fj["clusters"] = std::move(cl);
    fj["mean_rouge_1"] = fold.mean_rouge_1;
    fj["mean_rouge_2"] = fold.mean_rouge_2;
    folds.push_back(std::move(fj));
  }
  j["folds"] = std::move(folds);
  j["mean_rouge_1"] = report.mean_rouge_1;
  j["mean_rouge_2"] = report.mean_rouge_2;
  return j;
}

inline std::string report_to_text(const EvalReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "mode: " << to_string(report.mode) << "\n";
  out << std::setw(8) << "fold" << std::setw(12) << "ROUGE-1"
      << std::setw(12) << "ROUGE-2" << std::setw(12) << "clusters" << "\n";
  for (std::size_t f = 0; f < report.folds.size(); ++f)
    out << std::setw(8) << f << std::setw(12) << report.folds[f].mean_rouge_1
        << std::setw(12) << report.folds[f].mean_rouge_2 << std::setw(12)
        << report.folds[f].clusters.size() << "\n";
  out << std::setw(8) << "mean" << std::setw(12) << report.mean_rouge_1
      << std::setw(12) << report.mean_rouge_2 << "\n";
  return out.str();
}

inline std::string style_similarity_text(
    const Tensor2& sim, const std::vector<std::string>& categories) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  std::size_t width = 10;
  for (const auto& c : categories) width = std::max(width, c.size() + 2);
  out << std::setw(static_cast<int>(width)) << "";
  for (const auto& c : categories)
    out << std::setw(static_cast<int>(width)) << c;
  out << "\n";
  for (std::size_t i = 0; i < sim.rows; ++i) {
    out << std::setw(static_cast<int>(width)) << categories[i];
    for (std::size_t j = 0; j < sim.cols; ++j)
      out << std::setw(static_cast<int>(width)) << sim.at(i, j);
    out << "\n";
  }
  return out.str();
}

}  // namespace tcsum
