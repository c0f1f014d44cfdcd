#include "box2el/adam.hpp"

#include <cmath>

#include "box2el/errors.hpp"

namespace box2el {

void adam_step(std::vector<double>& params, const std::vector<double>& grad, AdamState& state,
               double lr, const AdamOptions& o) {
  if (params.size() != grad.size()) {
    throw DataError("adam_step: gradient/parameter shape mismatch");
  }
  if (state.t == 0) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  if (state.m.size() != params.size()) {
    throw DataError("adam_step: optimizer state shape mismatch");
  }
  ++state.t;
  const double bc1 = 1.0 - std::pow(o.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(o.beta2, static_cast<double>(state.t));
  for (size_t i = 0; i < params.size(); ++i) {
    state.m[i] = o.beta1 * state.m[i] + (1.0 - o.beta1) * grad[i];
    state.v[i] = o.beta2 * state.v[i] + (1.0 - o.beta2) * grad[i] * grad[i];
    double mhat = state.m[i] / bc1;
    double vhat = state.v[i] / bc2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + o.eps);
  }
}

double clip_global_norm(std::vector<double>& grad, double max_norm) {
  double sum = 0.0;
  for (double g : grad) sum += g * g;
  double norm = std::sqrt(sum);
  if (norm > max_norm && norm > 0.0) {
    double scale = max_norm / norm;
    for (double& g : grad) g *= scale;
  }
  return norm;
}

}  // namespace box2el
