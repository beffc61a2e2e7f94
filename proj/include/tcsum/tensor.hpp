#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcsum {

// Deterministic RNG used everywhere. mt19937_64 output is fixed by the
// standard; the uniform mapping below avoids std::uniform_real_distribution,
// whose output differs between standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform index in [0, n). Modulo bias is negligible for our n.
  std::size_t index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::index: n must be positive");
    return static_cast<std::size_t>(engine_() % n);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Dense row-major matrix of doubles. Vectors are Tensor2 with cols == 1 or
// plain std::vector<double> depending on context.
struct Tensor2 {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Tensor2() = default;
  Tensor2(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::size_t size() const { return data.size(); }

  bool same_shape(const Tensor2& o) const {
    return rows == o.rows && cols == o.cols;
  }

  void fill(double v) { std::fill(data.begin(), data.end(), v); }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }

  static Tensor2 identity(std::size_t n) {
    Tensor2 t(n, n);
    for (std::size_t i = 0; i < n; ++i) t.at(i, i) = 1.0;
    return t;
  }
};

inline Tensor2 init_uniform(std::size_t rows, std::size_t cols, double scale,
                            Rng& rng) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("init_uniform: zero-sized shape");
  if (scale <= 0.0)
    throw std::invalid_argument("init_uniform: scale must be positive");
  Tensor2 t(rows, cols);
  for (double& v : t.data) v = rng.uniform(-scale, scale);
  return t;
}

// y = M x
inline std::vector<double> matvec(const Tensor2& m,
                                  const std::vector<double>& x) {
  if (m.cols != x.size())
    throw std::invalid_argument("matvec: dimension mismatch (" +
                                std::to_string(m.cols) + " vs " +
                                std::to_string(x.size()) + ")");
  std::vector<double> y(m.rows, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    double acc = 0.0;
    const double* row = m.data.data() + r * m.cols;
    for (std::size_t c = 0; c < m.cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
  return y;
}

// y = M^T x
inline std::vector<double> matvec_transposed(const Tensor2& m,
                                             const std::vector<double>& x) {
  if (m.rows != x.size())
    throw std::invalid_argument("matvec_transposed: dimension mismatch");
  std::vector<double> y(m.cols, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double* row = m.data.data() + r * m.cols;
    for (std::size_t c = 0; c < m.cols; ++c) y[c] += row[c] * x[r];
  }
  return y;
}

// out += scale * a b^T
inline void add_outer(Tensor2& out, const std::vector<double>& a,
                      const std::vector<double>& b, double scale = 1.0) {
  if (out.rows != a.size() || out.cols != b.size())
    throw std::invalid_argument("add_outer: dimension mismatch");
  for (std::size_t r = 0; r < out.rows; ++r) {
    double* row = out.data.data() + r * out.cols;
    const double s = scale * a[r];
    for (std::size_t c = 0; c < out.cols; ++c) row[c] += s * b[c];
  }
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm(const std::vector<double>& v) {
  return std::sqrt(dot(v, v));
}

}  // namespace tcsum
