#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tcsum/text.hpp"
#include "tcsum/tokenize_util.hpp"

namespace tcsum {

struct SummaryResult {
  std::vector<std::size_t> selected;  // flattened-cluster indices, doc order
  std::string text;
  std::size_t used = 0;  // in budget units
  Budget budget;
};

namespace detail {

inline std::size_t sentence_cost(const SentenceTokens& s, Budget::Unit unit) {
  if (unit == Budget::Unit::Words) return s.tokens.size();
  return s.source_text.size();  // UTF-8 bytes
}

}  // namespace detail

// Greedy budgeted selection. Candidates are visited in descending saliency
// (ties: earlier flattened position first). A candidate is skipped when more
// than redundancy_threshold of its distinct non-stopword unigrams already
// appear in the selection, or when it does not fit the remaining budget.
// Byte budgets count single joining spaces between sentences. Selected
// sentences render in original document order.
inline SummaryResult greedy_select(
    const std::vector<const SentenceTokens*>& sentences,
    const std::vector<double>& scores, const Budget& budget,
    double redundancy_threshold = 0.5) {
  if (sentences.empty())
    throw std::invalid_argument("greedy_select: no sentences");
  if (sentences.size() != scores.size())
    throw std::invalid_argument("greedy_select: score count mismatch");
  if (budget.value == 0)
    throw std::invalid_argument("greedy_select: budget must be positive");

  std::vector<std::size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });

  SummaryResult result;
  result.budget = budget;
  std::set<std::string> covered;
  for (std::size_t idx : order) {
    const SentenceTokens& sent = *sentences[idx];
    // Redundancy test on distinct non-stopword unigrams.
    std::set<std::string> content;
    for (const auto& t : sent.tokens)
      if (!is_stopword(t)) content.insert(t);
    if (!content.empty()) {
      std::size_t overlap = 0;
      for (const auto& t : content)
        if (covered.count(t)) ++overlap;
      if (static_cast<double>(overlap) / static_cast<double>(content.size()) >
          redundancy_threshold)
        continue;
    }
    // Budget test.
    std::size_t cost = detail::sentence_cost(sent, budget.unit);
    if (budget.unit == Budget::Unit::Bytes && !result.selected.empty())
      cost += 1;  // joining space
    if (result.used + cost > budget.value) continue;
    result.used += cost;
    result.selected.push_back(idx);
    covered.insert(content.begin(), content.end());
  }

  std::sort(result.selected.begin(), result.selected.end());
  for (std::size_t i = 0; i < result.selected.size(); ++i) {
    if (i) result.text += ' ';
    result.text += sentences[result.selected[i]]->source_text;
  }
  return result;
}

}  // namespace tcsum
