#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcsum/adagrad.hpp"
#include "tcsum/corpus.hpp"
#include "tcsum/encoder.hpp"
#include "tcsum/tensor.hpp"

namespace tcsum {

struct ClassifierParams {
  Tensor2 w_beta;  // |C| x m
  std::vector<std::string> categories;

  static ClassifierParams init(const std::vector<std::string>& categories,
                               std::size_t m, Rng& rng, double scale = 0.1) {
    if (categories.size() < 2)
      throw std::invalid_argument("ClassifierParams: need >= 2 categories");
    ClassifierParams p;
    p.categories = categories;
    p.w_beta = init_uniform(categories.size(), m, scale, rng);
    return p;
  }

  std::size_t category_index(const std::string& name) const {
    for (std::size_t i = 0; i < categories.size(); ++i)
      if (categories[i] == name) return i;
    throw std::invalid_argument("unknown category '" + name + "'");
  }
};

struct CategoryDistribution {
  std::vector<double> probs;
};

inline CategoryDistribution softmax(const std::vector<double>& logits) {
  CategoryDistribution dist;
  dist.probs.resize(logits.size());
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    dist.probs[i] = std::exp(logits[i] - max_logit);
    sum += dist.probs[i];
  }
  for (double& p : dist.probs) p /= sum;
  return dist;
}

inline CategoryDistribution classify(const std::vector<double>& v_d,
                                     const ClassifierParams& params) {
  if (v_d.size() != params.w_beta.cols)
    throw std::invalid_argument("classify: dimension mismatch");
  return softmax(matvec(params.w_beta, v_d));
}

inline double cross_entropy(const CategoryDistribution& dist,
                            std::size_t category) {
  if (category >= dist.probs.size())
    throw std::invalid_argument("cross_entropy: invalid category id");
  return -std::log(dist.probs[category]);
}

// Gradient of mean NLL for one document, accumulated into grad_w_beta and
// grad_w_alpha (scaled by `weight`, typically 1/batch).
inline double classification_backward(const DocEncoding& doc,
                                      std::size_t category,
                                      const ClassifierParams& classifier,
                                      Tensor2& grad_w_beta,
                                      Tensor2& grad_w_alpha, double weight) {
  CategoryDistribution dist = classify(doc.v_d, classifier);
  const double loss = cross_entropy(dist, category);
  // d loss / d logits = probs - onehot
  std::vector<double> d_logits = dist.probs;
  d_logits[category] -= 1.0;
  for (double& v : d_logits) v *= weight;
  add_outer(grad_w_beta, d_logits, doc.v_d);
  std::vector<double> d_vd = matvec_transposed(classifier.w_beta, d_logits);
  document_backward(doc, d_vd, grad_w_alpha);
  return loss;
}

struct ClassifierTrainConfig {
  std::size_t epochs = 20;
  std::size_t batch = 128;
  double learning_rate = 0.1;
  std::uint64_t seed = 1;
  double holdout_fraction = 0.1;
  bool early_stop = true;   // stop after 3 epochs without held-out improvement
  std::size_t m = 50;
  std::size_t h = 2;
};

struct EpochLog {
  std::size_t epoch;
  double mean_loss;
  double holdout_accuracy;
};

struct ClassifierTrainResult {
  EncoderParams encoder;
  ClassifierParams classifier;
  std::vector<EpochLog> log;
  double final_holdout_accuracy = 0.0;
};

inline double holdout_accuracy(const std::vector<const LabeledDoc*>& docs,
                               const EmbeddingTable& table,
                               const EncoderParams& encoder,
                               const ClassifierParams& classifier) {
  if (docs.empty()) return 0.0;
  std::size_t correct = 0;
  for (const LabeledDoc* doc : docs) {
    DocEncoding enc = encode_document(doc->sentences, table, encoder);
    CategoryDistribution dist = classify(enc.v_d, classifier);
    std::size_t best = static_cast<std::size_t>(
        std::max_element(dist.probs.begin(), dist.probs.end()) -
        dist.probs.begin());
    if (classifier.categories[best] == doc->category) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(docs.size());
}

// Mini-batched AdaGrad on mean cross-entropy. Word embeddings stay fixed;
// gradients flow through W_beta and W_alpha.
inline ClassifierTrainResult train_classifier(
    const std::vector<LabeledDoc>& corpus, const EmbeddingTable& table,
    const ClassifierTrainConfig& config, std::ostream* log_out = nullptr) {
  std::vector<std::string> categories = collect_categories(corpus);
  if (categories.size() < 2)
    throw std::invalid_argument(
        "train_classifier: corpus has fewer than 2 categories");

  Rng rng(config.seed);
  ClassifierTrainResult result;
  result.encoder =
      EncoderParams::init(config.m, config.h, table.dim(), rng);
  result.classifier = ClassifierParams::init(categories, config.m, rng);

  // Deterministic holdout split.
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  const std::size_t holdout_count = static_cast<std::size_t>(
      static_cast<double>(corpus.size()) * config.holdout_fraction);
  std::vector<const LabeledDoc*> holdout;
  std::vector<std::size_t> train_idx;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i < holdout_count)
      holdout.push_back(&corpus[order[i]]);
    else
      train_idx.push_back(order[i]);
  }

  AdaGradState opt({&result.encoder.w_alpha, &result.classifier.w_beta},
                   config.learning_rate);

  double best_acc = -1.0;
  std::size_t epochs_since_best = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(train_idx);
    double epoch_loss = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < train_idx.size();
         start += config.batch) {
      const std::size_t end =
          std::min(start + config.batch, train_idx.size());
      const double weight = 1.0 / static_cast<double>(end - start);
      Tensor2 grad_alpha(result.encoder.w_alpha.rows,
                         result.encoder.w_alpha.cols);
      Tensor2 grad_beta(result.classifier.w_beta.rows,
                        result.classifier.w_beta.cols);
      for (std::size_t i = start; i < end; ++i) {
        const LabeledDoc& doc = corpus[train_idx[i]];
        DocEncoding enc =
            encode_document(doc.sentences, table, result.encoder);
        epoch_loss += classification_backward(
            enc, result.classifier.category_index(doc.category),
            result.classifier, grad_beta, grad_alpha, weight);
        ++seen;
      }
      opt.step({&result.encoder.w_alpha, &result.classifier.w_beta},
               {grad_alpha, grad_beta});
    }
    const double acc = holdout_accuracy(holdout, table, result.encoder,
                                        result.classifier);
    result.log.push_back(
        {epoch, seen ? epoch_loss / static_cast<double>(seen) : 0.0, acc});
    if (log_out)
      *log_out << "epoch " << epoch << " loss " << result.log.back().mean_loss
               << " holdout_acc " << acc << "\n";
    if (config.early_stop && !holdout.empty()) {
      if (acc > best_acc) {
        best_acc = acc;
        epochs_since_best = 0;
      } else if (++epochs_since_best >= 3) {
        break;
      }
    }
  }
  result.final_holdout_accuracy =
      holdout_accuracy(holdout, table, result.encoder, result.classifier);
  return result;
}

}  // namespace tcsum
