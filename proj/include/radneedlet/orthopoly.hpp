#pragma once

// Jacobi and Gegenbauer polynomials: evaluation by forward three-term
// recurrence and the classical L2 normalization constants.

#include <span>

namespace radneedlet {

/// Parameters (alpha, beta) of the Jacobi weight (1-t)^alpha (1+t)^beta.
/// Construction throws std::invalid_argument unless alpha > -1 and beta > -1.
class JacobiParams {
public:
  JacobiParams(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

private:
  double alpha_;
  double beta_;
};

/// Gegenbauer parameter lambda > -1/2, lambda != 0.
class GegenbauerParam {
public:
  explicit GegenbauerParam(double lambda);

  double lambda() const { return lambda_; }

private:
  double lambda_;
};

/// P_n^{(alpha,beta)}(t), normalized so that P_n(1) = binom(n + alpha, n).
double jacobi_eval(int n, const JacobiParams& params, double t);

/// Fills out[m] = P_m^{(alpha,beta)}(t) for m = 0 .. out.size()-1.
void jacobi_sequence(const JacobiParams& params, double t, std::span<double> out);

/// h_n = int_{-1}^{1} P_n(t)^2 (1-t)^alpha (1+t)^beta dt, via log-gamma.
double jacobi_norm(int n, const JacobiParams& params);

/// C_n^lambda(t) with C_0 = 1 and C_1 = 2 lambda t.
double gegenbauer_eval(int n, const GegenbauerParam& param, double t);

/// Fills out[m] = C_m^lambda(t) for m = 0 .. out.size()-1.
void gegenbauer_sequence(const GegenbauerParam& param, double t, std::span<double> out);

/// h_n^{(lambda)} = int_{-1}^{1} C_n(t)^2 (1-t^2)^{lambda-1/2} dt.
double gegenbauer_norm(int n, const GegenbauerParam& param);

}  // namespace radneedlet
