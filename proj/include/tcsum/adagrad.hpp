#pragma once

#include <stdexcept>
#include <vector>

#include "tcsum/tensor.hpp"

namespace tcsum {

// Diagonal AdaGrad over a set of parameter tensors. Accumulators mirror the
// parameter shapes and never decrease. Update per scalar:
//   acc += g^2;  theta -= lr * g / (sqrt(acc) + eps)
class AdaGradState {
 public:
  AdaGradState(const std::vector<Tensor2*>& params, double learning_rate,
               double epsilon = 1e-8)
      : learning_rate_(learning_rate), epsilon_(epsilon) {
    if (learning_rate <= 0.0)
      throw std::invalid_argument("AdaGradState: learning rate must be > 0");
    if (epsilon <= 0.0)
      throw std::invalid_argument("AdaGradState: epsilon must be > 0");
    for (const Tensor2* p : params)
      accumulators_.emplace_back(p->rows, p->cols, 0.0);
  }

  void step(const std::vector<Tensor2*>& params,
            const std::vector<Tensor2>& grads) {
    if (params.size() != grads.size() ||
        params.size() != accumulators_.size())
      throw std::invalid_argument("adagrad_step: parameter set size mismatch");
    for (std::size_t t = 0; t < params.size(); ++t) {
      Tensor2& p = *params[t];
      const Tensor2& g = grads[t];
      Tensor2& acc = accumulators_[t];
      if (!p.same_shape(g) || !p.same_shape(acc))
        throw std::invalid_argument("adagrad_step: shape mismatch");
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double gi = g.data[i];
        acc.data[i] += gi * gi;
        p.data[i] -= learning_rate_ * gi /
                     (std::sqrt(acc.data[i]) + epsilon_);
      }
    }
  }

  double learning_rate() const { return learning_rate_; }
  double epsilon() const { return epsilon_; }
  const std::vector<Tensor2>& accumulators() const { return accumulators_; }

 private:
  double learning_rate_;
  double epsilon_;
  std::vector<Tensor2> accumulators_;
};

}  // namespace tcsum
