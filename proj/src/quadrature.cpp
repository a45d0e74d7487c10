#include "radneedlet/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace radneedlet {

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) {
    throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  }
  nodes.resize(n);
  weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on the Legendre recurrence.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p0 = 1.0;
        p1 = x;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    nodes[n / 2] = 0.0;
  }
}

double GaussLegendre::integrate(const std::function<double(double)>& f, double lo, double hi) const {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    sum += weights[i] * f(mid + half * nodes[i]);
  }
  return sum * half;
}

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<GaussLegendre>(n);
  }
  return *slot;
}

double integrate_composite(const std::function<double(double)>& f, double lo, double hi,
                           const GaussLegendre& rule, int panels) {
  if (panels < 1) {
    throw std::invalid_argument("composite rule needs at least one panel");
  }
  const double h = (hi - lo) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    sum += rule.integrate(f, lo + p * h, lo + (p + 1) * h);
  }
  return sum;
}

namespace {

double adaptive_step(const std::function<double(double)>& f, const GaussLegendre& rule, double lo, double hi,
                     double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = rule.integrate(f, lo, mid);
  const double right = rule.integrate(f, mid, hi);
  if (depth <= 0 || std::abs(left + right - whole) <= tol) {
    return left + right;
  }
  return adaptive_step(f, rule, lo, mid, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, rule, mid, hi, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi, double tol,
                          int rule_points, int max_depth) {
  if (hi <= lo) {
    return 0.0;
  }
  const GaussLegendre& rule = gauss_legendre(rule_points);
  return adaptive_step(f, rule, lo, hi, rule.integrate(f, lo, hi), tol, max_depth);
}

}  // namespace radneedlet
