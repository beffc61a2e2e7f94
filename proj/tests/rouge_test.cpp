#include <gtest/gtest.h>

#include <map>
#include <string>
#include <vector>

#include "tcsum/rouge.hpp"
#include "tcsum/stemmer.hpp"
#include "tcsum/tensor.hpp"

using namespace tcsum;

namespace {

using Tokens = std::vector<std::string>;

// Independent brute-force oracle: explicit n-gram multisets with clipping.
double oracle_rouge_n(const Tokens& cand, const Tokens& ref, std::size_t n) {
  auto counts = [n](const Tokens& t) {
    std::map<Tokens, int> m;
    if (t.size() >= n)
      for (std::size_t i = 0; i + n <= t.size(); ++i)
        ++m[Tokens(t.begin() + i, t.begin() + i + n)];
    return m;
  };
  auto ref_counts = counts(ref);
  auto cand_counts = counts(cand);
  int total = 0, matched = 0;
  for (const auto& [gram, c] : ref_counts) {
    total += c;
    auto it = cand_counts.find(gram);
    if (it != cand_counts.end()) matched += std::min(c, it->second);
  }
  return static_cast<double>(matched) / static_cast<double>(total);
}

const RougeConfig kPlain1{1, false, false};
const RougeConfig kPlain2{2, false, false};

}  // namespace

TEST(RougeN, IdenticalScoresOne) {
  Tokens t{"the", "cat", "sat", "on", "the", "mat"};
  EXPECT_DOUBLE_EQ(rouge_n(t, {t}, kPlain1), 1.0);
  EXPECT_DOUBLE_EQ(rouge_n(t, {t}, kPlain2), 1.0);
}

TEST(RougeN, HandCountedExample) {
  Tokens cand{"the", "cat"};
  Tokens ref{"the", "cat", "sat"};
  EXPECT_NEAR(rouge_n(cand, {ref}, kPlain1), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(rouge_n(cand, {ref}, kPlain2), 0.5, 1e-12);
}

TEST(RougeN, DisjointVocabulariesScoreZero) {
  EXPECT_DOUBLE_EQ(rouge_n({"a", "b"}, {{"c", "d"}}, kPlain1), 0.0);
}

TEST(RougeN, ShortReferencesSkipped) {
  Tokens cand{"a", "b"};
  // one usable reference, one too short for bigrams
  EXPECT_DOUBLE_EQ(rouge_n(cand, {{"a", "b", "c"}, {"a"}}, kPlain2), 0.5);
  EXPECT_THROW(rouge_n(cand, {{"a"}}, kPlain2), std::runtime_error);
}

TEST(RougeN, MultiReferenceIsMeanOverReferences) {
  Tokens cand{"a", "b"};
  double expect = (1.0 + 2.0 / 3.0) / 2.0;
  EXPECT_NEAR(rouge_n(cand, {{"a", "b"}, {"a", "b", "c"}}, kPlain1), expect,
              1e-12);
}

TEST(RougeN, RecallMonotoneUnderCandidateExtension) {
  Rng rng(11);
  const Tokens alphabet{"a", "b", "c", "d"};
  for (int trial = 0; trial < 1000; ++trial) {
    Tokens cand, ref;
    std::size_t cl = rng.index(6), rl = 2 + rng.index(5);
    for (std::size_t i = 0; i < cl; ++i)
      cand.push_back(alphabet[rng.index(4)]);
    for (std::size_t i = 0; i < rl; ++i)
      ref.push_back(alphabet[rng.index(4)]);
    double before = rouge_n(cand, {ref}, kPlain2);
    cand.push_back(alphabet[rng.index(4)]);
    double after = rouge_n(cand, {ref}, kPlain2);
    EXPECT_GE(after, before - 1e-12);
  }
}

TEST(RougeN, ClippingCapsRepeats) {
  Tokens ref{"a", "b", "c"};
  Tokens once{"a", "b"};
  Tokens thrice{"a", "b", "a", "b", "a", "b"};
  EXPECT_DOUBLE_EQ(rouge_n(once, {ref}, kPlain2),
                   rouge_n(thrice, {ref}, kPlain2));
}

TEST(RougeN, ReferencePermutationSymmetry) {
  Tokens cand{"a", "b", "c"};
  std::vector<Tokens> refs{{"a", "b"}, {"c", "d", "a"}, {"b", "b", "c"}};
  double base = rouge_n(cand, refs, kPlain2);
  std::vector<Tokens> perm{refs[2], refs[0], refs[1]};
  EXPECT_DOUBLE_EQ(rouge_n(cand, perm, kPlain2), base);
}

TEST(RougeN, MatchesOracleOnRandomInstances) {
  Rng rng(5);
  const Tokens alphabet{"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 2000; ++trial) {
    Tokens cand, ref;
    std::size_t cl = rng.index(10), rl = 1 + rng.index(9);
    for (std::size_t i = 0; i < cl; ++i)
      cand.push_back(alphabet[rng.index(alphabet.size())]);
    for (std::size_t i = 0; i < rl; ++i)
      ref.push_back(alphabet[rng.index(alphabet.size())]);
    for (std::size_t n : {std::size_t{1}, std::size_t{2}}) {
      if (ref.size() < n) continue;
      RougeConfig cfg{n, false, false};
      EXPECT_DOUBLE_EQ(rouge_n(cand, {ref}, cfg), oracle_rouge_n(cand, ref, n));
    }
  }
}

TEST(Stemmer, KnownStems) {
  EXPECT_EQ(PorterStemmer::stem("caresses"), "caress");
  EXPECT_EQ(PorterStemmer::stem("ponies"), "poni");
  EXPECT_EQ(PorterStemmer::stem("cats"), "cat");
  EXPECT_EQ(PorterStemmer::stem("agreed"), "agre");
  EXPECT_EQ(PorterStemmer::stem("plastered"), "plaster");
  EXPECT_EQ(PorterStemmer::stem("motoring"), "motor");
  EXPECT_EQ(PorterStemmer::stem("hopping"), "hop");
  EXPECT_EQ(PorterStemmer::stem("happy"), "happi");
  EXPECT_EQ(PorterStemmer::stem("relational"), "relat");
  EXPECT_EQ(PorterStemmer::stem("conditional"), "condit");
  EXPECT_EQ(PorterStemmer::stem("triplicate"), "triplic");
  EXPECT_EQ(PorterStemmer::stem("formalize"), "formal");
  EXPECT_EQ(PorterStemmer::stem("revival"), "reviv");
  EXPECT_EQ(PorterStemmer::stem("adjustment"), "adjust");
  EXPECT_EQ(PorterStemmer::stem("probate"), "probat");
  EXPECT_EQ(PorterStemmer::stem("controll"), "control");
  EXPECT_EQ(PorterStemmer::stem("the"), "the");
  EXPECT_EQ(PorterStemmer::stem("123"), "123");
  EXPECT_EQ(PorterStemmer::stem("."), ".");
}

TEST(RougeN, StemmingUnifiesInflections) {
  RougeConfig stemmed{1, true, false};
  EXPECT_DOUBLE_EQ(rouge_n({"cats"}, {{"cat"}}, stemmed), 1.0);
  EXPECT_DOUBLE_EQ(rouge_n({"cats"}, {{"cat"}}, kPlain1), 0.0);
}

TEST(LabelSaliency, VerbatimSentenceScoresPositive) {
  ClusterRecord cluster;
  cluster.id = "c";
  cluster.budget = {Budget::Unit::Words, 10};
  cluster.documents.push_back(tokenize("The game ended early. Rain was heavy."));
  cluster.references = {"The game ended early."};
  SaliencyLabels labels = label_saliency(cluster, {2, false, false});
  ASSERT_EQ(labels.scores.size(), 2u);
  EXPECT_GT(labels.scores[0], 0.0);
  EXPECT_DOUBLE_EQ(labels.scores[1], 0.0);
}

TEST(LabelSaliency, NoReferencesThrows) {
  ClusterRecord cluster;
  cluster.id = "c";
  cluster.documents.push_back(tokenize("Hi there."));
  EXPECT_THROW(label_saliency(cluster, {2, false, false}),
               std::runtime_error);
}

TEST(LabelSaliency, MatchesOracleOnFixture) {
  ClusterRecord cluster;
  cluster.id = "fixture";
  cluster.documents.push_back(
      tokenize("a b c d. b c b c. d d d d. a a b b."));
  cluster.references = {"a b c", "b c d d"};
  SaliencyLabels labels = label_saliency(cluster, {2, false, false});
  auto flat = flatten_cluster(cluster);
  ASSERT_EQ(labels.scores.size(), flat.size());
  std::vector<Tokens> refs{{"a", "b", "c"}, {"b", "c", "d", "d"}};
  for (std::size_t i = 0; i < flat.size(); ++i) {
    double expect = 0.0;
    for (const auto& ref : refs)
      expect += oracle_rouge_n(flat[i]->tokens, ref, 2);
    expect /= refs.size();
    EXPECT_NEAR(labels.scores[i], expect, 1e-12) << "sentence " << i;
  }
}
