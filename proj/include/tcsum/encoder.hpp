#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tcsum/embeddings.hpp"
#include "tcsum/tensor.hpp"
#include "tcsum/text.hpp"

namespace tcsum {

struct EncoderParams {
  Tensor2 w_alpha;       // m x (h*k)
  std::size_t window = 2;  // h
  std::size_t feature_dim = 50;  // m
  std::size_t word_dim = 50;     // k

  static EncoderParams init(std::size_t m, std::size_t h, std::size_t k,
                            Rng& rng, double scale = 0.1) {
    EncoderParams p;
    p.w_alpha = init_uniform(m, h * k, scale, rng);
    p.window = h;
    p.feature_dim = m;
    p.word_dim = k;
    return p;
  }
};

// Sentence embedding plus the forward cache needed by the backward pass:
// the concatenated window vectors and, per feature, the winning window.
struct SentenceEncoding {
  std::vector<double> v_s;            // m
  std::vector<std::size_t> argmax;    // m, window index of the max
  std::vector<std::vector<double>> windows;  // each h*k
};

struct DocEncoding {
  std::vector<double> v_d;  // m
  std::vector<SentenceEncoding> sentences;
};

// Convolution over windows of h words (zero-padded on the right when the
// sentence is shorter than h), tanh, then max-over-time pooling. Ties go to
// the lowest window index.
inline SentenceEncoding encode_sentence(const SentenceTokens& sentence,
                                        const EmbeddingTable& table,
                                        const EncoderParams& params) {
  if (sentence.tokens.empty())
    throw std::invalid_argument("encode_sentence: empty token list");
  const std::size_t n = sentence.tokens.size();
  const std::size_t h = params.window;
  const std::size_t k = params.word_dim;
  const std::size_t m = params.feature_dim;
  const std::size_t num_windows = n >= h ? n - h + 1 : 1;

  std::vector<std::vector<double>> embeddings(n);
  for (std::size_t i = 0; i < n; ++i)
    embeddings[i] = table.lookup(sentence.tokens[i]);

  SentenceEncoding enc;
  enc.v_s.assign(m, 0.0);
  enc.argmax.assign(m, 0);
  enc.windows.resize(num_windows);
  for (std::size_t w = 0; w < num_windows; ++w) {
    std::vector<double> window(h * k, 0.0);
    for (std::size_t j = 0; j < h; ++j) {
      if (w + j >= n) break;  // right zero-padding
      std::copy(embeddings[w + j].begin(), embeddings[w + j].end(),
                window.begin() + j * k);
    }
    std::vector<double> g = matvec(params.w_alpha, window);
    for (double& v : g) v = std::tanh(v);
    for (std::size_t f = 0; f < m; ++f) {
      if (w == 0 || g[f] > enc.v_s[f]) {
        enc.v_s[f] = g[f];
        enc.argmax[f] = w;
      }
    }
    enc.windows[w] = std::move(window);
  }
  return enc;
}

// Average pooling over sentence embeddings.
inline DocEncoding encode_document(std::vector<SentenceEncoding> sentences) {
  if (sentences.empty())
    throw std::invalid_argument("encode_document: empty document");
  const std::size_t m = sentences.front().v_s.size();
  DocEncoding doc;
  doc.v_d.assign(m, 0.0);
  for (const auto& s : sentences) {
    if (s.v_s.size() != m)
      throw std::invalid_argument("encode_document: inconsistent dimensions");
    for (std::size_t f = 0; f < m; ++f) doc.v_d[f] += s.v_s[f];
  }
  for (double& v : doc.v_d) v /= static_cast<double>(sentences.size());
  doc.sentences = std::move(sentences);
  return doc;
}

inline DocEncoding encode_document(const std::vector<SentenceTokens>& sentences,
                                   const EmbeddingTable& table,
                                   const EncoderParams& params) {
  std::vector<SentenceEncoding> encs;
  encs.reserve(sentences.size());
  for (const auto& s : sentences) encs.push_back(encode_sentence(s, table, params));
  return encode_document(std::move(encs));
}

// Accumulates dL/dW_alpha for one sentence given dL/dv_s. The gradient is
// routed only through each feature's winning window (max subgradient), with
// tanh' = 1 - v_s^2.
inline void sentence_backward(const SentenceEncoding& enc,
                              const std::vector<double>& d_vs,
                              Tensor2& grad_w_alpha) {
  const std::size_t m = enc.v_s.size();
  if (d_vs.size() != m)
    throw std::invalid_argument("sentence_backward: gradient size mismatch");
  if (grad_w_alpha.rows != m ||
      grad_w_alpha.cols != enc.windows.front().size())
    throw std::invalid_argument("sentence_backward: stale cache shape");
  for (std::size_t f = 0; f < m; ++f) {
    if (d_vs[f] == 0.0) continue;
    const double d_pre = d_vs[f] * (1.0 - enc.v_s[f] * enc.v_s[f]);
    const std::vector<double>& window = enc.windows[enc.argmax[f]];
    double* row = grad_w_alpha.data.data() + f * grad_w_alpha.cols;
    for (std::size_t c = 0; c < grad_w_alpha.cols; ++c)
      row[c] += d_pre * window[c];
  }
}

// Accumulates dL/dW_alpha for a whole document given dL/dv_D; the mean pool
// distributes 1/|D| to every sentence.
inline void document_backward(const DocEncoding& doc,
                              const std::vector<double>& d_vd,
                              Tensor2& grad_w_alpha) {
  const double inv = 1.0 / static_cast<double>(doc.sentences.size());
  std::vector<double> d_vs(d_vd.size());
  for (std::size_t f = 0; f < d_vd.size(); ++f) d_vs[f] = d_vd[f] * inv;
  for (const auto& s : doc.sentences) sentence_backward(s, d_vs, grad_w_alpha);
}

}  // namespace tcsum
