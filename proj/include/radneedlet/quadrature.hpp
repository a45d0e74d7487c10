#pragma once

#include <functional>
#include <vector>

namespace radneedlet {

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n);

  int size() const { return static_cast<int>(nodes.size()); }

  /// Integrates f over [lo, hi] with this rule.
  double integrate(const std::function<double(double)>& f, double lo, double hi) const;
};

/// Returns a cached rule with n points. Thread-safe; references stay valid.
const GaussLegendre& gauss_legendre(int n);

/// Composite rule: [lo, hi] split into `panels` equal panels, each with `rule`.
double integrate_composite(const std::function<double(double)>& f, double lo, double hi,
                           const GaussLegendre& rule, int panels);

/// Adaptive bisection driven by an n-point rule. Panels are split until the
/// rule estimate and the sum over its two halves agree to `tol` (absolute,
/// scaled by the panel share of the interval). Suited to piecewise-smooth
/// integrands with isolated jumps.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi, double tol,
                          int rule_points = 8, int max_depth = 48);

}  // namespace radneedlet
