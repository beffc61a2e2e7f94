#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "tcsum/tensor.hpp"

namespace tcsum {

// Central-difference check of hand-derived gradients. `loss` is evaluated at
// the current contents of `params`, which are perturbed in place and
// restored. Returns max over scalars of |a - n| / max(|a|, |n|, 1e-8).
inline double grad_check(const std::function<double()>& loss,
                         const std::vector<Tensor2*>& params,
                         const std::vector<Tensor2>& analytic, double h) {
  if (h <= 0.0) throw std::invalid_argument("grad_check: h must be > 0");
  if (params.size() != analytic.size())
    throw std::invalid_argument("grad_check: parameter set size mismatch");
  double max_rel = 0.0;
  for (std::size_t t = 0; t < params.size(); ++t) {
    Tensor2& p = *params[t];
    const Tensor2& a = analytic[t];
    if (!p.same_shape(a))
      throw std::invalid_argument("grad_check: shape mismatch");
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double orig = p.data[i];
      p.data[i] = orig + h;
      const double fp = loss();
      p.data[i] = orig - h;
      const double fm = loss();
      p.data[i] = orig;
      if (!std::isfinite(fp) || !std::isfinite(fm))
        throw std::runtime_error("grad_check: loss is non-finite");
      const double numeric = (fp - fm) / (2.0 * h);
      const double denom =
          std::max({std::fabs(a.data[i]), std::fabs(numeric), 1e-8});
      max_rel = std::max(max_rel, std::fabs(a.data[i] - numeric) / denom);
    }
  }
  return max_rel;
}

}  // namespace tcsum
