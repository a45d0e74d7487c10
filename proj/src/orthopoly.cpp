#include "radneedlet/orthopoly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace radneedlet {

JacobiParams::JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw std::invalid_argument("Jacobi parameters must satisfy alpha > -1 and beta > -1, got (" +
                                std::to_string(alpha) + ", " + std::to_string(beta) + ")");
  }
}

GegenbauerParam::GegenbauerParam(double lambda) : lambda_(lambda) {
  if (!(lambda > -0.5) || lambda == 0.0) {
    throw std::invalid_argument("Gegenbauer parameter must satisfy lambda > -1/2 and lambda != 0, got " +
                                std::to_string(lambda));
  }
}

namespace {

void check_degree(int n) {
  if (n < 0) {
    throw std::invalid_argument("polynomial degree must be non-negative");
  }
}

}  // namespace

void jacobi_sequence(const JacobiParams& params, double t, std::span<double> out) {
  if (out.empty()) {
    return;
  }
  const double a = params.alpha();
  const double b = params.beta();
  out[0] = 1.0;
  if (out.size() == 1) {
    return;
  }
  out[1] = (a + 1.0) + (a + b + 2.0) * (t - 1.0) * 0.5;
  const double a2b2 = a * a - b * b;
  for (std::size_t m = 1; m + 1 < out.size(); ++m) {
    const double n = static_cast<double>(m);
    const double s = 2.0 * n + a + b;
    const double c0 = 2.0 * (n + 1.0) * (n + a + b + 1.0) * s;
    const double c1 = (s + 1.0) * ((s + 2.0) * s * t + a2b2);
    const double c2 = 2.0 * (n + a) * (n + b) * (s + 2.0);
    out[m + 1] = (c1 * out[m] - c2 * out[m - 1]) / c0;
  }
}

double jacobi_eval(int n, const JacobiParams& params, double t) {
  check_degree(n);
  if (n == 0) {
    return 1.0;
  }
  const double a = params.alpha();
  const double b = params.beta();
  double prev = 1.0;
  double cur = (a + 1.0) + (a + b + 2.0) * (t - 1.0) * 0.5;
  const double a2b2 = a * a - b * b;
  for (int m = 1; m < n; ++m) {
    const double nn = static_cast<double>(m);
    const double s = 2.0 * nn + a + b;
    const double c0 = 2.0 * (nn + 1.0) * (nn + a + b + 1.0) * s;
    const double c1 = (s + 1.0) * ((s + 2.0) * s * t + a2b2);
    const double c2 = 2.0 * (nn + a) * (nn + b) * (s + 2.0);
    const double next = (c1 * cur - c2 * prev) / c0;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_norm(int n, const JacobiParams& params) {
  check_degree(n);
  const double a = params.alpha();
  const double b = params.beta();
  const double log2ab = (a + b + 1.0) * std::numbers::ln2;
  if (n == 0) {
    // (a+b+1) Gamma(a+b+1) folded into Gamma(a+b+2); valid also when a+b+1 = 0.
    return std::exp(log2ab + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
  }
  const double nn = static_cast<double>(n);
  const double lg = std::lgamma(nn + a + 1.0) + std::lgamma(nn + b + 1.0) - std::lgamma(nn + 1.0) -
                    std::lgamma(nn + a + b + 1.0);
  return std::exp(log2ab + lg) / (2.0 * nn + a + b + 1.0);
}

void gegenbauer_sequence(const GegenbauerParam& param, double t, std::span<double> out) {
  if (out.empty()) {
    return;
  }
  const double lam = param.lambda();
  out[0] = 1.0;
  if (out.size() == 1) {
    return;
  }
  out[1] = 2.0 * lam * t;
  for (std::size_t m = 1; m + 1 < out.size(); ++m) {
    const double n = static_cast<double>(m);
    out[m + 1] = (2.0 * (n + lam) * t * out[m] - (n + 2.0 * lam - 1.0) * out[m - 1]) / (n + 1.0);
  }
}

double gegenbauer_eval(int n, const GegenbauerParam& param, double t) {
  check_degree(n);
  if (n == 0) {
    return 1.0;
  }
  const double lam = param.lambda();
  double prev = 1.0;
  double cur = 2.0 * lam * t;
  for (int m = 1; m < n; ++m) {
    const double nn = static_cast<double>(m);
    const double next = (2.0 * (nn + lam) * t * cur - (nn + 2.0 * lam - 1.0) * prev) / (nn + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double gegenbauer_norm(int n, const GegenbauerParam& param) {
  check_degree(n);
  const double lam = param.lambda();
  const double nn = static_cast<double>(n);
  // Gamma(lambda)^2 may be evaluated with lgamma for negative lambda too; the sign is squared away.
  const double log_pref = (1.0 - 2.0 * lam) * std::numbers::ln2 + std::log(std::numbers::pi) -
                          2.0 * std::lgamma(lam);
  const double lg = std::lgamma(nn + 2.0 * lam) - std::lgamma(nn + 1.0);
  return std::abs(std::exp(log_pref + lg) / (nn + lam));
}

}  // namespace radneedlet
