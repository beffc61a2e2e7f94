#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tcsum/stemmer.hpp"
#include "tcsum/text.hpp"
#include "tcsum/tokenize_util.hpp"

namespace tcsum {

struct RougeConfig {
  std::size_t n = 2;
  bool stem = true;
  bool stopword_removal = false;
  // Multi-reference rule: arithmetic mean of per-reference recall.
};

struct SaliencyLabels {
  std::string cluster_id;
  std::vector<double> scores;  // one per sentence of the flattened cluster
};

namespace detail {

inline std::vector<std::string> prepare_tokens(
    const std::vector<std::string>& tokens, const RougeConfig& config) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (config.stopword_removal && is_stopword(t)) continue;
    out.push_back(config.stem ? PorterStemmer::stem(t) : t);
  }
  return out;
}

inline bool ngram_equal(const std::vector<std::string>& a, std::size_t i,
                        const std::vector<std::string>& b, std::size_t j,
                        std::size_t n) {
  for (std::size_t t = 0; t < n; ++t)
    if (a[i + t] != b[j + t]) return false;
  return true;
}

// Clipped match count of reference n-grams covered by the candidate.
// Direct scanning; candidate and reference lists here are sentence- or
// summary-sized, so quadratic cost is negligible.
inline std::size_t clipped_matches(const std::vector<std::string>& cand,
                                   const std::vector<std::string>& ref,
                                   std::size_t n) {
  if (ref.size() < n) return 0;
  const std::size_t ref_ngrams = ref.size() - n + 1;
  const std::size_t cand_ngrams = cand.size() >= n ? cand.size() - n + 1 : 0;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < ref_ngrams; ++i) {
    // Count each distinct reference n-gram once, at its first occurrence.
    bool first = true;
    for (std::size_t j = 0; j < i; ++j)
      if (ngram_equal(ref, i, ref, j, n)) {
        first = false;
        break;
      }
    if (!first) continue;
    std::size_t in_ref = 0;
    for (std::size_t j = i; j < ref_ngrams; ++j)
      if (ngram_equal(ref, i, ref, j, n)) ++in_ref;
    std::size_t in_cand = 0;
    for (std::size_t j = 0; j < cand_ngrams; ++j)
      if (ngram_equal(ref, i, cand, j, n)) ++in_cand;
    matched += std::min(in_ref, in_cand);
  }
  return matched;
}

}  // namespace detail

// ROUGE-N recall of a candidate against one or more references. References
// shorter than n are skipped; the score is the mean over the rest.
inline double rouge_n(const std::vector<std::string>& candidate,
                      const std::vector<std::vector<std::string>>& references,
                      const RougeConfig& config) {
  if (config.n < 1) throw std::invalid_argument("rouge_n: n must be >= 1");
  if (references.empty())
    throw std::invalid_argument("rouge_n: no references");
  const auto cand = detail::prepare_tokens(candidate, config);
  double sum = 0.0;
  std::size_t used = 0;
  for (const auto& raw_ref : references) {
    const auto ref = detail::prepare_tokens(raw_ref, config);
    if (ref.size() < config.n) continue;
    const std::size_t total = ref.size() - config.n + 1;
    sum += static_cast<double>(detail::clipped_matches(cand, ref, config.n)) /
           static_cast<double>(total);
    ++used;
  }
  if (used == 0)
    throw std::runtime_error("rouge_n: every reference is shorter than n");
  return sum / static_cast<double>(used);
}

// Actual saliency labels: each sentence of the flattened cluster scored by
// ROUGE-N recall against all references.
inline SaliencyLabels label_saliency(const ClusterRecord& cluster,
                                     const RougeConfig& config) {
  if (cluster.references.empty())
    throw std::runtime_error("label_saliency: cluster '" + cluster.id +
                             "' has no references");
  std::vector<std::vector<std::string>> refs;
  for (const auto& ref_text : cluster.references) {
    std::vector<std::string> tokens;
    for (const auto& sent : tokenize(ref_text))
      tokens.insert(tokens.end(), sent.tokens.begin(), sent.tokens.end());
    refs.push_back(std::move(tokens));
  }
  SaliencyLabels labels;
  labels.cluster_id = cluster.id;
  for (const SentenceTokens* sent : flatten_cluster(cluster))
    labels.scores.push_back(rouge_n(sent->tokens, refs, config));
  return labels;
}

}  // namespace tcsum
