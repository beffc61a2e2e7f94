#include <gtest/gtest.h>

#include "tcsum/selection.hpp"
#include "tcsum/tensor.hpp"
#include "tcsum/text.hpp"

using namespace tcsum;

namespace {

std::vector<SentenceTokens> make_sentences(
    std::initializer_list<const char*> texts) {
  std::vector<SentenceTokens> out;
  for (const char* t : texts) {
    auto sents = tokenize(t);
    for (auto& s : sents) out.push_back(std::move(s));
  }
  return out;
}

std::vector<const SentenceTokens*> ptrs(
    const std::vector<SentenceTokens>& sents) {
  std::vector<const SentenceTokens*> out;
  for (const auto& s : sents) out.push_back(&s);
  return out;
}

}  // namespace

TEST(GreedySelect, LargeBudgetTakesEverything) {
  auto sents = make_sentences({"cats chase mice.", "dogs chase cats.",
                               "birds sing songs."});
  std::vector<double> scores{0.9, 0.5, 0.7};
  auto result = greedy_select(ptrs(sents), scores,
                              {Budget::Unit::Words, 1000}, 1.0);
  EXPECT_EQ(result.selected, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(GreedySelect, DuplicateSentenceSkippedByRedundancy) {
  auto sents = make_sentences({"cats chase mice.", "cats chase mice."});
  std::vector<double> scores{0.9, 0.8};
  auto result =
      greedy_select(ptrs(sents), scores, {Budget::Unit::Words, 1000}, 0.5);
  EXPECT_EQ(result.selected, (std::vector<std::size_t>{0}));
}

TEST(GreedySelect, BudgetArithmeticExcludesSecondSentence) {
  // 60- and 50-word sentences under a 100-word budget
  std::string long1, long2;
  for (int i = 0; i < 60; ++i) long1 += "tok" + std::to_string(i) + " ";
  for (int i = 100; i < 150; ++i) long2 += "tok" + std::to_string(i) + " ";
  std::vector<SentenceTokens> sents;
  SentenceTokens a, b;
  for (int i = 0; i < 60; ++i) a.tokens.push_back("tok" + std::to_string(i));
  for (int i = 100; i < 150; ++i)
    b.tokens.push_back("tok" + std::to_string(i));
  a.source_text = render_tokens(a.tokens);
  b.source_text = render_tokens(b.tokens);
  sents = {a, b};
  std::vector<double> scores{0.9, 0.8};
  auto result =
      greedy_select(ptrs(sents), scores, {Budget::Unit::Words, 100}, 1.0);
  EXPECT_EQ(result.selected, (std::vector<std::size_t>{0}));
  EXPECT_EQ(result.used, 60u);
}

TEST(GreedySelect, ByteBudgetCountsJoiningSpaces) {
  auto sents = make_sentences({"abc de.", "fg hi."});
  // source texts: "abc de." = 7 bytes, "fg hi." = 6 bytes, join space = 1
  std::vector<double> scores{0.9, 0.8};
  auto exact = greedy_select(ptrs(sents), scores, {Budget::Unit::Bytes, 14},
                             1.0);
  EXPECT_EQ(exact.selected, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(exact.used, 14u);
  EXPECT_EQ(exact.text, "abc de. fg hi.");
  auto tight = greedy_select(ptrs(sents), scores, {Budget::Unit::Bytes, 13},
                             1.0);
  EXPECT_EQ(tight.selected, (std::vector<std::size_t>{0}));
}

TEST(GreedySelect, RenderedInDocumentOrder) {
  auto sents = make_sentences({"first thing here.", "second thing there.",
                               "third item now."});
  std::vector<double> scores{0.1, 0.9, 0.5};
  auto result = greedy_select(ptrs(sents), scores,
                              {Budget::Unit::Words, 1000}, 1.0);
  EXPECT_EQ(result.selected, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(result.text,
            "first thing here. second thing there. third item now.");
}

TEST(GreedySelect, EmptyWhenNothingFits) {
  auto sents = make_sentences({"one two three four five six."});
  std::vector<double> scores{0.5};
  auto result =
      greedy_select(ptrs(sents), scores, {Budget::Unit::Words, 3}, 1.0);
  EXPECT_TRUE(result.selected.empty());
  EXPECT_EQ(result.used, 0u);
  EXPECT_EQ(result.text, "");
}

TEST(GreedySelect, TiesBrokenByEarlierPosition) {
  auto sents = make_sentences({"alpha beta gamma.", "delta epsilon zeta."});
  std::vector<double> scores{0.5, 0.5};
  auto result =
      greedy_select(ptrs(sents), scores, {Budget::Unit::Words, 4}, 1.0);
  EXPECT_EQ(result.selected, (std::vector<std::size_t>{0}));
}

TEST(GreedySelect, BudgetNeverExceededProperty) {
  Rng rng(8);
  const char* words[] = {"cat", "dog", "bird", "fish", "tree", "rock"};
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<SentenceTokens> sents;
    const std::size_t count = 1 + rng.index(6);
    for (std::size_t s = 0; s < count; ++s) {
      SentenceTokens st;
      const std::size_t len = 1 + rng.index(8);
      for (std::size_t i = 0; i < len; ++i)
        st.tokens.push_back(words[rng.index(6)]);
      st.source_text = render_tokens(st.tokens);
      sents.push_back(std::move(st));
    }
    std::vector<double> scores(count);
    for (double& v : scores) v = rng.uniform(-1.0, 1.0);
    Budget budget{rng.index(2) ? Budget::Unit::Words : Budget::Unit::Bytes,
                  1 + rng.index(40)};
    double threshold = rng.uniform01();
    auto result = greedy_select(ptrs(sents), scores, budget, threshold);
    EXPECT_LE(result.used, budget.value);
    if (budget.unit == Budget::Unit::Bytes)
      EXPECT_LE(result.text.size(), budget.value);
    // determinism
    auto again = greedy_select(ptrs(sents), scores, budget, threshold);
    EXPECT_EQ(again.selected, result.selected);
    EXPECT_EQ(again.text, result.text);
  }
}

TEST(GreedySelect, ThresholdOneDisablesRedundancyFiltering) {
  auto sents = make_sentences({"cats chase mice.", "dogs chase cats.",
                               "mice cats chase."});
  std::vector<double> scores{0.9, 0.8, 0.7};
  // threshold 1.0: selection depends only on saliency order and budget
  auto open = greedy_select(ptrs(sents), scores, {Budget::Unit::Words, 1000},
                            1.0);
  EXPECT_EQ(open.selected, (std::vector<std::size_t>{0, 1, 2}));
  // just below 1.0: sentence 2 is fully covered by sentence 0 and is skipped
  auto filtered = greedy_select(ptrs(sents), scores,
                                {Budget::Unit::Words, 1000}, 0.99);
  EXPECT_EQ(filtered.selected, (std::vector<std::size_t>{0, 1}));
}

TEST(GreedySelect, DegenerateInputsThrow) {
  auto sents = make_sentences({"hello world."});
  std::vector<double> scores{0.5};
  EXPECT_THROW(greedy_select({}, {}, {Budget::Unit::Words, 5}, 0.5),
               std::invalid_argument);
  EXPECT_THROW(
      greedy_select(ptrs(sents), {0.5, 0.6}, {Budget::Unit::Words, 5}, 0.5),
      std::invalid_argument);
  EXPECT_THROW(greedy_select(ptrs(sents), scores, {Budget::Unit::Words, 0},
                             0.5),
               std::invalid_argument);
}
