#include "doctest.h"

#include "radneedlet/orthopoly.hpp"
#include "radneedlet/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

using namespace radneedlet;
using std::numbers::pi;

namespace {

double binom(double n, int k) {
  double v = 1.0;
  for (int q = 1; q <= k; ++q) {
    v *= (n - k + q) / q;
  }
  return v;
}

// Explicit sum: P_n = sum_s binom(n+a, n-s) binom(n+b, s) ((t-1)/2)^s ((t+1)/2)^(n-s).
double jacobi_explicit(int n, double a, double b, double t) {
  double sum = 0.0;
  for (int s = 0; s <= n; ++s) {
    sum += binom(n + a, n - s) * binom(n + b, s) * std::pow(0.5 * (t - 1.0), s) * std::pow(0.5 * (t + 1.0), n - s);
  }
  return sum;
}

// Plain Gauss-Legendre via Newton on the Legendre recurrence, independent of the library rule.
void legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * z * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) {
        break;
      }
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace

TEST_CASE("jacobi examples") {
  CHECK(jacobi_eval(3, JacobiParams(0, 1), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(jacobi_eval(0, JacobiParams(2.5, 0.3), -0.4) == 1.0);
  CHECK(jacobi_eval(1, JacobiParams(0, 1), 0.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(jacobi_norm(0, JacobiParams(0, 0)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(jacobi_norm(0, JacobiParams(0, 1)) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("jacobi recurrence agrees with the explicit sum") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> T(-1.0, 1.0);
  const double params[][2] = {{0, 0}, {0, 1}, {0, 5}, {0.5, -0.5}, {1.5, 2.25}, {-0.3, 0.7}};
  for (const auto& ab : params) {
    const JacobiParams jp(ab[0], ab[1]);
    for (int n = 0; n <= 12; ++n) {
      for (int q = 0; q < 5; ++q) {
        const double t = T(rng);
        const double ref = jacobi_explicit(n, ab[0], ab[1], t);
        CHECK(jacobi_eval(n, jp, t) == doctest::Approx(ref).epsilon(1e-11).scale(1.0));
      }
    }
  }
}

TEST_CASE("jacobi_sequence matches pointwise evaluation") {
  const JacobiParams jp(0, 3);
  std::vector<double> seq(20);
  jacobi_sequence(jp, 0.37, seq);
  for (int n = 0; n < 20; ++n) {
    CHECK(seq[n] == doctest::Approx(jacobi_eval(n, jp, 0.37)).epsilon(1e-13));
  }
}

TEST_CASE("jacobi orthogonality and norms under (1+t)^beta") {
  std::vector<double> x, w;
  legendre_rule(40, x, w);
  for (int beta = 0; beta <= 4; ++beta) {
    const JacobiParams jp(0, beta);
    for (int m = 0; m <= 10; ++m) {
      for (int n = 0; n <= m; ++n) {
        double sum = 0.0;
        for (std::size_t q = 0; q < x.size(); ++q) {
          sum += w[q] * std::pow(1.0 + x[q], beta) * jacobi_eval(m, jp, x[q]) * jacobi_eval(n, jp, x[q]);
        }
        const double ref = m == n ? jacobi_norm(n, jp) : 0.0;
        CHECK(sum == doctest::Approx(ref).epsilon(1e-11).scale(1.0));
      }
    }
  }
  // spec example: n = 2, (0, 1)
  double sum = 0.0;
  for (std::size_t q = 0; q < x.size(); ++q) {
    sum += w[q] * (1.0 + x[q]) * std::pow(jacobi_eval(2, JacobiParams(0, 1), x[q]), 2);
  }
  CHECK(std::abs(jacobi_norm(2, JacobiParams(0, 1)) - sum) <= 1e-10);
}

TEST_CASE("jacobi params are validated") {
  CHECK_THROWS_AS(JacobiParams(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(JacobiParams(0.0, -1.5), std::invalid_argument);
  CHECK_THROWS_AS(GegenbauerParam(-0.5), std::invalid_argument);
}

TEST_CASE("gegenbauer examples") {
  const GegenbauerParam one(1.0);
  CHECK(gegenbauer_eval(1, one, 0.3) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(gegenbauer_eval(4, one, 1.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(gegenbauer_eval(0, one, -0.9) == 1.0);
  CHECK(gegenbauer_norm(0, GegenbauerParam(0.5)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gegenbauer_norm(3, one) == doctest::Approx(pi / 2).epsilon(1e-14));
}

TEST_CASE("C_n^1 is the Chebyshev U polynomial") {
  const GegenbauerParam one(1.0);
  std::vector<double> seq(30);
  for (double phi : {0.1, 0.7, 1.3, 2.2, 3.0}) {
    const double t = std::cos(phi);
    gegenbauer_sequence(one, t, seq);
    for (int n = 0; n < 30; ++n) {
      const double ref = std::sin((n + 1) * phi) / std::sin(phi);
      CHECK(gegenbauer_eval(n, one, t) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
      CHECK(seq[n] == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("gegenbauer lambda = 1/2 gives Legendre") {
  const GegenbauerParam half(0.5);
  for (double t : {-0.8, -0.1, 0.45, 0.9}) {
    CHECK(gegenbauer_eval(2, half, t) == doctest::Approx(0.5 * (3 * t * t - 1)).epsilon(1e-14));
    CHECK(gegenbauer_eval(3, half, t) == doctest::Approx(0.5 * (5 * t * t * t - 3 * t)).epsilon(1e-14));
  }
}

TEST_CASE("gegenbauer norm for lambda = 1 is pi/2 by quadrature") {
  // t = cos(phi): int C_n^1(t)^2 (1-t^2)^{1/2} dt = int_0^pi sin^2((n+1) phi) dphi.
  const GegenbauerParam one(1.0);
  const int M = 400;
  for (int n = 0; n <= 8; ++n) {
    double sum = 0.0;
    for (int q = 0; q < M; ++q) {
      const double phi = pi * (q + 0.5) / M;
      const double c = gegenbauer_eval(n, one, std::cos(phi));
      sum += c * c * std::sin(phi) * std::sin(phi) * pi / M;
    }
    CHECK(gegenbauer_norm(n, one) == doctest::Approx(sum).epsilon(1e-12));
    CHECK(gegenbauer_norm(n, one) == doctest::Approx(pi / 2).epsilon(1e-14));
  }
}

TEST_CASE("gauss-legendre exactness") {
  for (int n : {1, 2, 5, 16, 64}) {
    const GaussLegendre& rule = gauss_legendre(n);
    REQUIRE(rule.size() == n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      const double got = rule.integrate([deg](double t) { return std::pow(t, deg); }, -1.0, 1.0);
      const double ref = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
      CHECK(got == doctest::Approx(ref).epsilon(1e-13).scale(1.0));
    }
  }
  std::vector<double> x, w;
  legendre_rule(33, x, w);
  const GaussLegendre& rule = gauss_legendre(33);
  for (int i = 0; i < 33; ++i) {
    CHECK(rule.nodes[i] == doctest::Approx(x[32 - i]).epsilon(1e-14).scale(1.0));
    CHECK(rule.weights[i] == doctest::Approx(w[32 - i]).epsilon(1e-13));
  }
}

TEST_CASE("adaptive integration of a step") {
  auto step = [](double t) { return t < 0.3141 ? 1.0 : -2.0; };
  const double ref = (0.3141 + 1.0) - 2.0 * (1.0 - 0.3141);
  CHECK(integrate_adaptive(step, -1.0, 1.0, 1e-12) == doctest::Approx(ref).epsilon(1e-9));
  CHECK(integrate_composite([](double t) { return std::exp(t); }, 0.0, 2.0, gauss_legendre(8), 4) ==
        doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-14));
}
