#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcsum/adagrad.hpp"
#include "tcsum/classifier.hpp"
#include "tcsum/encoder.hpp"
#include "tcsum/rouge.hpp"
#include "tcsum/tensor.hpp"

namespace tcsum {

enum class SummarizerMode { TCSum, SingleT, NoTC, EmSim };

inline std::string to_string(SummarizerMode mode) {
  switch (mode) {
    case SummarizerMode::TCSum: return "tcsum";
    case SummarizerMode::SingleT: return "singlet";
    case SummarizerMode::NoTC: return "notc";
    case SummarizerMode::EmSim: return "emsim";
  }
  throw std::logic_error("unknown mode");
}

inline SummarizerMode mode_from_string(const std::string& s) {
  if (s == "tcsum") return SummarizerMode::TCSum;
  if (s == "singlet") return SummarizerMode::SingleT;
  if (s == "notc") return SummarizerMode::NoTC;
  if (s == "emsim") return SummarizerMode::EmSim;
  throw std::invalid_argument("unknown summarizer mode '" + s + "'");
}

struct SummarizerParams {
  SummarizerMode mode = SummarizerMode::TCSum;
  std::vector<Tensor2> sub_matrices;  // |C| for TCSum, 1 for SingleT/NoTC, 0 for EmSim

  // Identity plus small uniform noise, so the untrained summary embedding
  // starts near tanh(v_D).
  static SummarizerParams init(SummarizerMode mode, std::size_t num_categories,
                               std::size_t m, Rng& rng) {
    SummarizerParams p;
    p.mode = mode;
    std::size_t count = 0;
    if (mode == SummarizerMode::TCSum) count = num_categories;
    else if (mode != SummarizerMode::EmSim) count = 1;
    for (std::size_t i = 0; i < count; ++i) {
      Tensor2 t = init_uniform(m, m, 0.01, rng);
      for (std::size_t d = 0; d < m; ++d) t.at(d, d) += 1.0;
      p.sub_matrices.push_back(std::move(t));
    }
    return p;
  }
};

struct TrainPair {
  std::string cluster_id;
  std::size_t s_plus = 0;
  std::size_t s_minus = 0;
  double label_plus = 0.0;
  double label_minus = 0.0;
};

// W_gamma = sum_i v_C^i * W_gamma^i
inline Tensor2 compose_transform(const std::vector<double>& v_c,
                                 const std::vector<Tensor2>& sub_matrices) {
  if (v_c.size() != sub_matrices.size())
    throw std::invalid_argument(
        "compose_transform: distribution/sub-matrix count mismatch");
  if (sub_matrices.empty())
    throw std::invalid_argument("compose_transform: no sub-matrices");
  Tensor2 out(sub_matrices.front().rows, sub_matrices.front().cols);
  for (std::size_t i = 0; i < sub_matrices.size(); ++i) {
    const Tensor2& sub = sub_matrices[i];
    if (!sub.same_shape(out))
      throw std::invalid_argument("compose_transform: shape mismatch");
    for (std::size_t j = 0; j < out.size(); ++j)
      out.data[j] += v_c[i] * sub.data[j];
  }
  return out;
}

// v_S = tanh(W_gamma * v_D)
inline std::vector<double> summary_embedding(const std::vector<double>& v_d,
                                             const Tensor2& w_gamma) {
  std::vector<double> v_s = matvec(w_gamma, v_d);
  for (double& v : v_s) v = std::tanh(v);
  return v_s;
}

// Cosine similarity; a zero vector on either side scores 0.
inline double saliency(const std::vector<double>& v_sentence,
                       const std::vector<double>& v_summary,
                       std::ostream* warnings = nullptr) {
  const double na = norm(v_sentence);
  const double nb = norm(v_summary);
  if (na == 0.0 || nb == 0.0) {
    if (warnings) *warnings << "warning: zero vector in saliency, score 0\n";
    return 0.0;
  }
  return dot(v_sentence, v_summary) / (na * nb);
}

inline double pairwise_loss(double r_plus, double r_minus, double omega) {
  if (omega <= 0.0)
    throw std::invalid_argument("pairwise_loss: omega must be > 0");
  return std::max(0.0, omega - r_plus + r_minus);
}

// d cos(a, b) / d b, with cos = c, accumulated scaled by `weight`.
inline void cosine_backward_wrt_b(const std::vector<double>& a,
                                  const std::vector<double>& b, double weight,
                                  std::vector<double>& d_b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return;  // saliency is the constant 0 here
  const double c = dot(a, b) / (na * nb);
  for (std::size_t i = 0; i < b.size(); ++i)
    d_b[i] += weight * (a[i] / (na * nb) - c * b[i] / (nb * nb));
}

struct SaliencyThresholds {
  double hi_pct = 0.30;
  double lo_pct = 0.30;
};

// s+ uniform from the top hi_pct fraction by label, s- from the bottom
// lo_pct fraction; resampled until label_plus > label_minus.
inline TrainPair sample_pair(const SaliencyLabels& labels,
                             const SaliencyThresholds& thresholds, Rng& rng) {
  const std::size_t n = labels.scores.size();
  if (n < 2)
    throw std::runtime_error("sample_pair: cluster '" + labels.cluster_id +
                             "' has fewer than 2 sentences");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return labels.scores[a] > labels.scores[b];
                   });
  if (labels.scores[order.front()] == labels.scores[order.back()])
    throw std::runtime_error("sample_pair: cluster '" + labels.cluster_id +
                             "' has no distinct labels");
  const std::size_t hi = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(thresholds.hi_pct * n)));
  const std::size_t lo = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(thresholds.lo_pct * n)));
  for (;;) {
    const std::size_t plus = order[rng.index(hi)];
    const std::size_t minus = order[n - 1 - rng.index(lo)];
    if (labels.scores[plus] > labels.scores[minus])
      return {labels.cluster_id, plus, minus, labels.scores[plus],
              labels.scores[minus]};
  }
}

struct TcsumModel {
  std::size_t word_dim = 50;     // k
  std::size_t feature_dim = 50;  // m
  std::size_t window = 2;        // h
  std::vector<std::string> categories;
  EncoderParams encoder;
  ClassifierParams classifier;  // w_beta may be empty (notc/emsim)
  SummarizerParams summarizer;
};

// Saliency scores for every sentence of the flattened cluster.
// force_category replaces the predicted distribution with a one-hot vector.
inline std::vector<double> rank_sentences(
    const ClusterRecord& cluster, const TcsumModel& model,
    const EmbeddingTable& table,
    const std::optional<std::string>& force_category = std::nullopt) {
  std::vector<SentenceTokens> sentences;
  for (const SentenceTokens* s : flatten_cluster(cluster))
    sentences.push_back(*s);
  if (sentences.empty())
    throw std::runtime_error("rank_sentences: cluster '" + cluster.id +
                             "' is empty");
  DocEncoding doc = encode_document(sentences, table, model.encoder);

  std::vector<double> target;  // vector the sentence cosines are taken against
  switch (model.summarizer.mode) {
    case SummarizerMode::EmSim:
      target = doc.v_d;
      break;
    case SummarizerMode::SingleT:
    case SummarizerMode::NoTC:
      target = summary_embedding(doc.v_d,
                                 model.summarizer.sub_matrices.front());
      break;
    case SummarizerMode::TCSum: {
      std::vector<double> v_c;
      if (force_category) {
        v_c.assign(model.categories.size(), 0.0);
        std::size_t idx = model.classifier.category_index(*force_category);
        v_c[idx] = 1.0;
      } else {
        v_c = classify(doc.v_d, model.classifier).probs;
      }
      Tensor2 w_gamma =
          compose_transform(v_c, model.summarizer.sub_matrices);
      target = summary_embedding(doc.v_d, w_gamma);
      break;
    }
  }
  std::vector<double> scores;
  scores.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) scores.push_back(saliency(s.v_s, target));
  return scores;
}

// Style analysis: cosine similarity between flattened sub-matrices,
// diagonal forced to zero.
inline Tensor2 style_similarity(const std::vector<Tensor2>& sub_matrices,
                                std::ostream* warnings = nullptr) {
  if (sub_matrices.size() < 2)
    throw std::invalid_argument("style_similarity: need >= 2 sub-matrices");
  const std::size_t c = sub_matrices.size();
  std::vector<double> norms(c);
  for (std::size_t i = 0; i < c; ++i) {
    double acc = 0.0;
    for (double v : sub_matrices[i].data) acc += v * v;
    norms[i] = std::sqrt(acc);
    if (norms[i] == 0.0 && warnings)
      *warnings << "warning: zero sub-matrix " << i
                << " in style_similarity\n";
  }
  Tensor2 sim(c, c);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = i + 1; j < c; ++j) {
      double value = 0.0;
      if (norms[i] > 0.0 && norms[j] > 0.0) {
        double acc = 0.0;
        for (std::size_t t = 0; t < sub_matrices[i].size(); ++t)
          acc += sub_matrices[i].data[t] * sub_matrices[j].data[t];
        value = acc / (norms[i] * norms[j]);
      }
      sim.at(i, j) = value;
      sim.at(j, i) = value;
    }
  }
  return sim;
}

struct SummarizerTrainConfig {
  std::size_t pairs_per_cluster = 64;
  std::size_t epochs = 10;
  double omega = 0.1;
  double learning_rate = 0.1;
  std::size_t batch = 128;
  std::uint64_t seed = 1;
  SummarizerMode mode = SummarizerMode::TCSum;
  SaliencyThresholds thresholds;
  RougeConfig label_config{2, true, false};
};

// Per-cluster state cached for training.
struct ClusterTrainState {
  const ClusterRecord* cluster = nullptr;
  SaliencyLabels labels;
  // Refreshed when the encoder changes (NoTC); computed once otherwise.
  DocEncoding doc;
  std::vector<double> v_c;  // empty unless TCSum
};

// Gradient of one pair's hinge loss. Returns the loss. Accumulates into the
// sub-matrix gradients, and (NoTC only) into grad_w_alpha.
inline double pair_backward(const ClusterTrainState& state,
                            const TrainPair& pair, const TcsumModel& model,
                            double omega, double weight,
                            std::vector<Tensor2>& grad_sub,
                            Tensor2* grad_w_alpha) {
  const std::vector<double>& v_d = state.doc.v_d;
  Tensor2 w_gamma =
      model.summarizer.mode == SummarizerMode::TCSum
          ? compose_transform(state.v_c, model.summarizer.sub_matrices)
          : model.summarizer.sub_matrices.front();
  std::vector<double> v_s = summary_embedding(v_d, w_gamma);
  const std::vector<double>& a_plus = state.doc.sentences[pair.s_plus].v_s;
  const std::vector<double>& a_minus = state.doc.sentences[pair.s_minus].v_s;
  const double r_plus = saliency(a_plus, v_s);
  const double r_minus = saliency(a_minus, v_s);
  const double loss = pairwise_loss(r_plus, r_minus, omega);
  if (loss <= 0.0) return 0.0;

  // d loss = -d r_plus + d r_minus
  std::vector<double> d_vs(v_s.size(), 0.0);
  cosine_backward_wrt_b(a_plus, v_s, -weight, d_vs);
  cosine_backward_wrt_b(a_minus, v_s, weight, d_vs);

  // through tanh
  std::vector<double> d_pre(v_s.size());
  for (std::size_t i = 0; i < v_s.size(); ++i)
    d_pre[i] = d_vs[i] * (1.0 - v_s[i] * v_s[i]);

  // dW_gamma = d_pre (x) v_d; sub-matrix i scaled by v_c[i]
  if (model.summarizer.mode == SummarizerMode::TCSum) {
    for (std::size_t i = 0; i < grad_sub.size(); ++i)
      if (state.v_c[i] != 0.0)
        add_outer(grad_sub[i], d_pre, v_d, state.v_c[i]);
  } else {
    add_outer(grad_sub.front(), d_pre, v_d);
  }

  if (grad_w_alpha) {
    // NoTC: encoder trains too. Gradient reaches sentence embeddings both
    // through v_D (mean pool into W_gamma) and directly through the two
    // cosines' sentence sides.
    std::vector<double> d_vd = matvec_transposed(w_gamma, d_pre);
    document_backward(state.doc, d_vd, *grad_w_alpha);
    std::vector<double> d_plus(a_plus.size(), 0.0);
    cosine_backward_wrt_b(v_s, a_plus, -weight, d_plus);
    sentence_backward(state.doc.sentences[pair.s_plus], d_plus,
                      *grad_w_alpha);
    std::vector<double> d_minus(a_minus.size(), 0.0);
    cosine_backward_wrt_b(v_s, a_minus, weight, d_minus);
    sentence_backward(state.doc.sentences[pair.s_minus], d_minus,
                      *grad_w_alpha);
  }
  return loss;
}

// Trains the transformation sub-matrices (and, for NoTC, the encoder) by
// pairwise ranking with AdaGrad. Encoder and classifier stay frozen in
// tcsum/singlet modes; v_C is treated as a constant input.
inline TcsumModel train_summarizer(const std::vector<ClusterRecord>& clusters,
                                   const TcsumModel& pretrained,
                                   const EmbeddingTable& table,
                                   const SummarizerTrainConfig& config,
                                   std::ostream* log_out = nullptr) {
  if (config.mode == SummarizerMode::EmSim) {
    TcsumModel model = pretrained;
    model.summarizer = SummarizerParams{};
    model.summarizer.mode = SummarizerMode::EmSim;
    return model;
  }
  TcsumModel model = pretrained;
  Rng rng(config.seed);
  model.summarizer.mode = config.mode;
  if (config.mode == SummarizerMode::NoTC) {
    // No classification pre-training exists to freeze; fresh encoder.
    model.encoder = EncoderParams::init(model.feature_dim, model.window,
                                        table.dim(), rng);
    model.classifier = ClassifierParams{};
  }
  model.summarizer = SummarizerParams::init(
      config.mode, model.categories.size(), model.feature_dim, rng);

  std::vector<ClusterTrainState> states;
  for (const auto& cluster : clusters) {
    if (cluster.references.empty()) {
      if (log_out)
        *log_out << "warning: cluster '" << cluster.id
                 << "' has no references, skipped\n";
      continue;
    }
    ClusterTrainState state;
    state.cluster = &cluster;
    state.labels = label_saliency(cluster, config.label_config);
    const auto [lo, hi] = std::minmax_element(state.labels.scores.begin(),
                                              state.labels.scores.end());
    if (state.labels.scores.size() < 2 || *lo == *hi) {
      if (log_out)
        *log_out << "warning: cluster '" << cluster.id
                 << "' has no distinctly labeled sentence pair, skipped\n";
      continue;
    }
    states.push_back(std::move(state));
  }
  if (states.empty())
    throw std::runtime_error("train_summarizer: no trainable clusters");

  const bool train_encoder = config.mode == SummarizerMode::NoTC;
  auto refresh_doc = [&](ClusterTrainState& state) {
    std::vector<SentenceTokens> sentences;
    for (const SentenceTokens* s : flatten_cluster(*state.cluster))
      sentences.push_back(*s);
    state.doc = encode_document(sentences, table, model.encoder);
    if (config.mode == SummarizerMode::TCSum)
      state.v_c = classify(state.doc.v_d, model.classifier).probs;
  };
  for (auto& state : states) refresh_doc(state);

  std::vector<Tensor2*> params;
  for (auto& sub : model.summarizer.sub_matrices) params.push_back(&sub);
  if (train_encoder) params.push_back(&model.encoder.w_alpha);
  AdaGradState opt(params, config.learning_rate);

  std::vector<std::size_t> cluster_order(states.size());
  std::iota(cluster_order.begin(), cluster_order.end(), 0);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(cluster_order);
    // Pair pool for the epoch: pairs_per_cluster draws per cluster.
    std::vector<std::pair<std::size_t, TrainPair>> pool;
    for (std::size_t ci : cluster_order)
      for (std::size_t p = 0; p < config.pairs_per_cluster; ++p)
        pool.emplace_back(ci,
                          sample_pair(states[ci].labels, config.thresholds,
                                      rng));
    rng.shuffle(pool);

    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < pool.size(); start += config.batch) {
      const std::size_t end = std::min(start + config.batch, pool.size());
      const double weight = 1.0 / static_cast<double>(end - start);
      if (train_encoder) {
        // Encoder moved last step; re-encode the clusters this batch touches.
        std::set<std::size_t> touched;
        for (std::size_t i = start; i < end; ++i)
          touched.insert(pool[i].first);
        for (std::size_t ci : touched) refresh_doc(states[ci]);
      }
      std::vector<Tensor2> grads;
      for (const Tensor2* p : params)
        grads.emplace_back(p->rows, p->cols);
      Tensor2* grad_alpha = train_encoder ? &grads.back() : nullptr;
      for (std::size_t i = start; i < end; ++i) {
        const auto& [ci, pair] = pool[i];
        epoch_loss +=
            pair_backward(states[ci], pair, model, config.omega, weight,
                          grads, grad_alpha);
      }
      opt.step(params, grads);
    }
    if (log_out)
      *log_out << "summarizer epoch " << epoch << " mean pair loss "
               << (pool.empty() ? 0.0
                                : epoch_loss / static_cast<double>(pool.size()))
               << "\n";
  }
  return model;
}

// Fraction of sampled labeled pairs ranked correctly (r+ > r-).
inline double pairwise_accuracy(const std::vector<ClusterRecord>& clusters,
                                const TcsumModel& model,
                                const EmbeddingTable& table,
                                const RougeConfig& label_config,
                                const SaliencyThresholds& thresholds,
                                std::size_t pairs_per_cluster,
                                std::uint64_t seed) {
  Rng rng(seed);
  std::size_t correct = 0, total = 0;
  for (const auto& cluster : clusters) {
    if (cluster.references.empty()) continue;
    SaliencyLabels labels = label_saliency(cluster, label_config);
    const auto [lo, hi] =
        std::minmax_element(labels.scores.begin(), labels.scores.end());
    if (labels.scores.size() < 2 || *lo == *hi) continue;
    std::vector<double> scores = rank_sentences(cluster, model, table);
    for (std::size_t p = 0; p < pairs_per_cluster; ++p) {
      TrainPair pair = sample_pair(labels, thresholds, rng);
      if (scores[pair.s_plus] > scores[pair.s_minus]) ++correct;
      ++total;
    }
  }
  if (total == 0)
    throw std::runtime_error("pairwise_accuracy: no usable pairs");
  return static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace tcsum
