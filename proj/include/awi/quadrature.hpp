#pragma once

#include <functional>
#include <vector>

namespace awi {

// Gauss-Hermite rule: integrates f against exp(-t^2) on the real line as
// sum(weights[i] * f(nodes[i])).  Nodes ascend; sum(weights) = sqrt(pi).
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermite gauss_hermite(int n);

struct AdaptiveResult {
  double value = 0.0;
  bool converged = true;
  double worst_panel_error = 0.0;  // relative to the requested tolerance
};

// Adaptive Simpson on [a, b].  abs_tol is the absolute error budget for the
// whole interval.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                  double b, double abs_tol, int max_depth = 48);

}  // namespace awi
