#include <gtest/gtest.h>

#include "tcsum/corpus.hpp"
#include "tcsum/rouge.hpp"
#include "tcsum/synth.hpp"

using namespace tcsum;

TEST(SynthCorpus, DegenerateConfigsRejected) {
  SynthConfig cfg;
  cfg.categories = 1;
  EXPECT_THROW(synth_corpus(1, cfg), std::invalid_argument);
  cfg = SynthConfig{};
  cfg.vocab_per_cat = 0;
  EXPECT_THROW(synth_corpus(1, cfg), std::invalid_argument);
}

TEST(SynthCorpus, DeterministicFromSeed) {
  SynthConfig cfg;
  cfg.categories = 2;
  cfg.docs_per_cat = 5;
  cfg.clusters_per_cat = 3;
  cfg.embedding_dim = 6;
  SynthCorpus a = synth_corpus(99, cfg);
  SynthCorpus b = synth_corpus(99, cfg);
  ASSERT_EQ(a.classification.size(), b.classification.size());
  for (std::size_t i = 0; i < a.classification.size(); ++i) {
    EXPECT_EQ(a.classification[i].id, b.classification[i].id);
    ASSERT_EQ(a.classification[i].sentences.size(),
              b.classification[i].sentences.size());
    for (std::size_t s = 0; s < a.classification[i].sentences.size(); ++s)
      EXPECT_EQ(a.classification[i].sentences[s].tokens,
                b.classification[i].sentences[s].tokens);
  }
  ASSERT_EQ(a.clusters.size(), b.clusters.size());
  for (std::size_t i = 0; i < a.clusters.size(); ++i) {
    EXPECT_EQ(a.clusters[i].references, b.clusters[i].references);
  }
  // and byte-identical on disk
  const std::string pa = std::string(::testing::TempDir()) + "synth_a.jsonl";
  const std::string pb = std::string(::testing::TempDir()) + "synth_b.jsonl";
  write_cluster_corpus(a.clusters, pa);
  write_cluster_corpus(b.clusters, pb);
  std::ifstream fa(pa), fb(pb);
  std::string ca((std::istreambuf_iterator<char>(fa)),
                 std::istreambuf_iterator<char>());
  std::string cb((std::istreambuf_iterator<char>(fb)),
                 std::istreambuf_iterator<char>());
  EXPECT_EQ(ca, cb);
}

TEST(SynthCorpus, ExpectedShapes) {
  SynthConfig cfg;
  cfg.categories = 3;
  cfg.docs_per_cat = 4;
  cfg.clusters_per_cat = 2;
  cfg.docs_per_cluster = 2;
  cfg.sents_per_doc = 5;
  cfg.embedding_dim = 7;
  SynthCorpus corpus = synth_corpus(5, cfg);
  EXPECT_EQ(corpus.classification.size(), 12u);
  EXPECT_EQ(corpus.clusters.size(), 6u);
  EXPECT_EQ(corpus.embeddings.dim(), 7u);
  for (const auto& cluster : corpus.clusters) {
    EXPECT_EQ(cluster.documents.size(), 2u);
    for (const auto& doc : cluster.documents)
      EXPECT_EQ(doc.size(), 5u);
    EXPECT_EQ(cluster.references.size(), 2u);
    ASSERT_TRUE(cluster.category.has_value());
  }
  // every generated token has a stored embedding
  for (const auto& cluster : corpus.clusters)
    for (const auto* sent : flatten_cluster(cluster))
      for (const auto& tok : sent->tokens)
        EXPECT_TRUE(corpus.embeddings.contains(tok)) << tok;
}

TEST(SynthCorpus, FullStyleSignalPutsOwnLexiconOnTop) {
  SynthConfig cfg;
  cfg.categories = 3;
  cfg.clusters_per_cat = 40;
  cfg.docs_per_cat = 2;
  cfg.style_signal = 1.0;
  cfg.embedding_dim = 6;
  SynthCorpus corpus = synth_corpus(7, cfg);
  std::size_t hits = 0;
  for (const auto& cluster : corpus.clusters) {
    // the top-labeled sentence should carry at least one own-category token
    SaliencyLabels labels = label_saliency(cluster, {2, false, false});
    auto flat = flatten_cluster(cluster);
    std::size_t best = 0;
    for (std::size_t i = 1; i < labels.scores.size(); ++i)
      if (labels.scores[i] > labels.scores[best]) best = i;
    const std::string prefix =
        "cat" + cluster.category->substr(std::string("category").size()) + "x";
    for (const auto& tok : flat[best]->tokens)
      if (tok.compare(0, prefix.size(), prefix) == 0) {
        ++hits;
        break;
      }
  }
  EXPECT_GE(static_cast<double>(hits),
            0.95 * static_cast<double>(corpus.clusters.size()));
}

TEST(SynthCorpus, RoundTripsThroughCorpusFiles) {
  SynthConfig cfg;
  cfg.categories = 2;
  cfg.docs_per_cat = 3;
  cfg.clusters_per_cat = 2;
  cfg.embedding_dim = 5;
  SynthCorpus corpus = synth_corpus(11, cfg);
  const std::string cpath = std::string(::testing::TempDir()) + "synth_c.jsonl";
  const std::string kpath = std::string(::testing::TempDir()) + "synth_k.jsonl";
  write_classification_corpus(corpus.classification, cpath);
  write_cluster_corpus(corpus.clusters, kpath);
  auto docs = read_classification_corpus(cpath);
  auto clusters = read_cluster_corpus(kpath);
  ASSERT_EQ(docs.size(), corpus.classification.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    ASSERT_EQ(docs[i].sentences.size(), corpus.classification[i].sentences.size());
    for (std::size_t s = 0; s < docs[i].sentences.size(); ++s)
      EXPECT_EQ(docs[i].sentences[s].tokens,
                corpus.classification[i].sentences[s].tokens);
  }
  ASSERT_EQ(clusters.size(), corpus.clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    auto a = flatten_cluster(clusters[i]);
    auto b = flatten_cluster(corpus.clusters[i]);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t s = 0; s < a.size(); ++s)
      EXPECT_EQ(a[s]->tokens, b[s]->tokens);
  }
}
