#pragma once

#include <cstdint>
#include <vector>

namespace box2el {

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First/second moment accumulators; sized on first use.
struct AdamState {
  std::vector<double> m, v;
  std::int64_t t = 0;
};

// One bias-corrected Adam update in place. Throws on shape mismatch.
void adam_step(std::vector<double>& params, const std::vector<double>& grad, AdamState& state,
               double lr, const AdamOptions& options = {});

// Scale grad so its global L2 norm is at most max_norm; returns the
// pre-clip norm.
double clip_global_norm(std::vector<double>& grad, double max_norm);

}  // namespace box2el
