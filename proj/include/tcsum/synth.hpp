#pragma once

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcsum/embeddings.hpp"
#include "tcsum/tensor.hpp"
#include "tcsum/text.hpp"

namespace tcsum {

// Desk-scale stand-in for licensed news corpora. Each category owns a
// disjoint style lexicon; cluster references are built from the sentences
// carrying the most style-lexicon tokens, so classification is learnable and
// the optimal ranking differs by category. style_signal in [0,1] controls how
// strongly reference construction prefers the cluster's own category.
struct SynthConfig {
  std::size_t categories = 3;
  std::size_t docs_per_cat = 100;      // classification documents
  std::size_t clusters_per_cat = 50;   // summarization clusters
  std::size_t docs_per_cluster = 2;
  std::size_t sents_per_doc = 8;
  std::size_t vocab_per_cat = 30;      // style lexicon size
  std::size_t common_vocab = 40;
  double style_signal = 0.8;
  std::size_t embedding_dim = 50;
  std::size_t budget_words = 20;
  double own_topic_prob = 0.6;   // a sentence is about its document's category
  double style_token_prob = 0.5; // token drawn from the topic's lexicon
};

struct SynthCorpus {
  std::vector<LabeledDoc> classification;
  std::vector<ClusterRecord> clusters;
  EmbeddingTable embeddings;
};

namespace detail {

inline std::string style_token(std::size_t cat, std::size_t j) {
  return "cat" + std::to_string(cat) + "x" + std::to_string(j);
}

inline std::string common_token(std::size_t j) {
  return "w" + std::to_string(j);
}

inline SentenceTokens make_sentence(const SynthConfig& cfg, std::size_t topic,
                                    Rng& rng) {
  SentenceTokens s;
  const std::size_t len = 5 + rng.index(5);  // 5..9 words
  for (std::size_t i = 0; i < len; ++i) {
    if (rng.uniform01() < cfg.style_token_prob)
      s.tokens.push_back(style_token(topic, rng.index(cfg.vocab_per_cat)));
    else
      s.tokens.push_back(common_token(rng.index(cfg.common_vocab)));
  }
  s.tokens.push_back(".");
  s.source_text = render_tokens(s.tokens);
  return s;
}

inline std::vector<SentenceTokens> make_document(const SynthConfig& cfg,
                                                 std::size_t category,
                                                 Rng& rng) {
  std::vector<SentenceTokens> sentences;
  for (std::size_t i = 0; i < cfg.sents_per_doc; ++i) {
    std::size_t topic = category;
    if (rng.uniform01() >= cfg.own_topic_prob) {
      // off-topic sentence: uniform over the other categories
      std::size_t other = rng.index(cfg.categories - 1);
      topic = other >= category ? other + 1 : other;
    }
    sentences.push_back(make_sentence(cfg, topic, rng));
  }
  return sentences;
}

inline std::size_t count_style_tokens(const SentenceTokens& s,
                                      std::size_t category) {
  const std::string prefix = "cat" + std::to_string(category) + "x";
  std::size_t count = 0;
  for (const auto& t : s.tokens)
    if (t.compare(0, prefix.size(), prefix) == 0) ++count;
  return count;
}

inline std::size_t count_any_style_tokens(const SentenceTokens& s) {
  std::size_t count = 0;
  for (const auto& t : s.tokens)
    if (t.size() >= 4 && t.compare(0, 3, "cat") == 0) ++count;
  return count;
}

}  // namespace detail

inline SynthCorpus synth_corpus(std::uint64_t seed, const SynthConfig& cfg) {
  if (cfg.categories < 2)
    throw std::invalid_argument("synth_corpus: need >= 2 categories");
  if (cfg.vocab_per_cat == 0 || cfg.common_vocab == 0)
    throw std::invalid_argument("synth_corpus: degenerate vocabulary config");
  if (cfg.sents_per_doc == 0 || cfg.docs_per_cluster == 0)
    throw std::invalid_argument("synth_corpus: degenerate document config");

  Rng rng(seed);

  // Shared embeddings over the full vocabulary, plus ".".
  std::unordered_map<std::string, std::vector<double>> entries;
  auto add_token = [&](const std::string& tok) {
    std::vector<double> v(cfg.embedding_dim);
    for (double& x : v) x = rng.uniform(-0.1, 0.1);
    entries[tok] = std::move(v);
  };
  for (std::size_t j = 0; j < cfg.common_vocab; ++j)
    add_token(detail::common_token(j));
  for (std::size_t c = 0; c < cfg.categories; ++c)
    for (std::size_t j = 0; j < cfg.vocab_per_cat; ++j)
      add_token(detail::style_token(c, j));
  add_token(".");

  SynthCorpus corpus{{}, {}, EmbeddingTable(cfg.embedding_dim,
                                            std::move(entries))};

  for (std::size_t c = 0; c < cfg.categories; ++c) {
    const std::string cat_name = "category" + std::to_string(c);
    for (std::size_t d = 0; d < cfg.docs_per_cat; ++d) {
      LabeledDoc doc;
      doc.id = cat_name + "_doc" + std::to_string(d);
      doc.category = cat_name;
      doc.sentences = detail::make_document(cfg, c, rng);
      corpus.classification.push_back(std::move(doc));
    }
  }

  for (std::size_t c = 0; c < cfg.categories; ++c) {
    const std::string cat_name = "category" + std::to_string(c);
    for (std::size_t k = 0; k < cfg.clusters_per_cat; ++k) {
      ClusterRecord rec;
      rec.id = "cluster_" + cat_name + "_" + std::to_string(k);
      rec.category = cat_name;
      rec.budget = {Budget::Unit::Words, cfg.budget_words};
      for (std::size_t d = 0; d < cfg.docs_per_cluster; ++d)
        rec.documents.push_back(detail::make_document(cfg, c, rng));

      // Reference-worthiness: style_signal weights the own-category token
      // count against a category-agnostic style count.
      std::vector<const SentenceTokens*> flat = flatten_cluster(rec);
      std::vector<std::size_t> order(flat.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::vector<double> worth(flat.size());
      for (std::size_t i = 0; i < flat.size(); ++i) {
        const double own =
            static_cast<double>(detail::count_style_tokens(*flat[i], c));
        const double any =
            static_cast<double>(detail::count_any_style_tokens(*flat[i]));
        worth[i] = cfg.style_signal * own + (1.0 - cfg.style_signal) * any;
      }
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return worth[a] > worth[b];
                       });
      // Two references sharing the best sentence, for graded labels.
      const std::size_t n = order.size();
      auto sent_text = [&](std::size_t rank) {
        return flat[order[rank % n]]->source_text;
      };
      rec.references.push_back(sent_text(0) + " " + sent_text(1));
      rec.references.push_back(sent_text(0) + " " + sent_text(2));
      corpus.clusters.push_back(std::move(rec));
    }
  }
  return corpus;
}

}  // namespace tcsum
