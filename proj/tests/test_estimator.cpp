#include "doctest.h"

#include "radneedlet/estimator.hpp"
#include "radneedlet/needlet.hpp"
#include "radneedlet/phantom.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace radneedlet;
using std::numbers::pi;

namespace {

CoefficientVector random_coefficients(int K, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  CoefficientVector c(K);
  for (double& v : c.values()) {
    v = N(rng);
  }
  return c;
}

CoefficientVector unit(int K, const SvdIndex& idx) {
  CoefficientVector c(K);
  c[idx] = 1.0;
  return c;
}

double max_abs_diff(const CoefficientVector& a, const CoefficientVector& b) {
  const int K = std::max(a.max_degree(), b.max_degree());
  const CoefficientVector x = a.resized(K), y = b.resized(K);
  double worst = 0.0;
  for (std::size_t r = 0; r < x.size(); ++r) {
    worst = std::max(worst, std::abs(x.at_rank(r) - y.at_rank(r)));
  }
  return worst;
}

}  // namespace

TEST_CASE("keyed normals") {
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int q = 0; q < n; ++q) {
    const double z = keyed_normal(99, 3, q);
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean) < 5.0 / std::sqrt(n));
  CHECK(sq / n - mean * mean == doctest::Approx(1.0).epsilon(0.02));
  CHECK(keyed_normal(1, 2, 3) == keyed_normal(1, 2, 3));
  CHECK(keyed_normal(1, 2, 3) != keyed_normal(1, 2, 4));
  CHECK(derive_seed(5, {1, 2}) != derive_seed(5, {2, 1}));
}

TEST_CASE("white-noise simulation") {
  const CoefficientVector c = random_coefficients(20, 1);
  const WhiteNoiseObservation clean = simulate_white_noise(c, 0.0, 16, 7);
  CHECK(clean.y.max_degree() == 16);
  for (const SvdIndex& idx : enumerate_indices(16)) {
    CHECK(clean.y[idx] == singular_value(idx.k()) * c[idx]);
  }
  const WhiteNoiseObservation a = simulate_white_noise(c, 0.3, 16, 7);
  const WhiteNoiseObservation b = simulate_white_noise(c, 0.3, 16, 7);
  CHECK(max_abs_diff(a.y, b.y) == 0.0);
  CHECK(max_abs_diff(a.y, simulate_white_noise(c, 0.3, 16, 8).y) > 0.0);

  const double eps = 0.7;
  const SvdIndex probe(5, 3, 2);
  const int trials = 10000;
  double sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const WhiteNoiseObservation obs = simulate_white_noise(c, eps, 6, derive_seed(17, {std::uint64_t(t)}));
    const double d = obs.y[probe] - clean.y[probe];
    sq += d * d;
  }
  CHECK(sq / trials == doctest::Approx(eps * eps).epsilon(0.03));
}

TEST_CASE("regression simulation") {
  const SvdIndex idx(2, 0, 1);
  const RadonSampler sampler = svd_radon_sampler(unit(4, idx));
  const RegressionObservation obs = simulate_regression(sampler, 12, 10, 0.0, 1);
  REQUIRE(obs.values.size() == 120);
  for (int i1 = 0; i1 < 12; ++i1) {
    for (int i2 = 0; i2 < 10; ++i2) {
      const ParallelCoordinates pc = regression_line(i1, i2, 12, 10);
      const double ref = std::abs(pc.s) < 1.0 ? singular_value(2) * eval_g(idx, pc.theta, pc.s) : 0.0;
      CHECK(obs.at(i1, i2) == doctest::Approx(ref).scale(1.0).epsilon(1e-12));
    }
  }
  const RegressionObservation n1 = simulate_regression(sampler, 12, 10, 0.5, 3);
  const RegressionObservation n2 = simulate_regression(sampler, 12, 10, 0.5, 3);
  CHECK(n1.values == n2.values);
}

TEST_CASE("riemann coefficients at sigma = 0") {
  for (const SvdIndex& idx : {SvdIndex(0, 0, 1), SvdIndex(3, 1, 2), SvdIndex(6, 4, 1), SvdIndex(8, 2, 2)}) {
    CAPTURE(idx.k());
    const RegressionObservation obs = simulate_regression(svd_radon_sampler(unit(8, idx)), 256, 256, 0.0, 0);
    const CoefficientVector y = riemann_svd_coeffs(obs, 8);
    for (const SvdIndex& other : enumerate_indices(8)) {
      const double ref = other == idx ? singular_value(idx.k()) : 0.0;
      CHECK(std::abs(y[other] - ref) <= 5e-3);
    }
  }
  // polynomial data of degree 16 is summed exactly once the grid resolves it
  const CoefficientVector c = random_coefficients(16, 6);
  const double exact_bias =
      max_abs_diff(riemann_svd_coeffs(simulate_regression(svd_radon_sampler(c), 48, 48, 0.0, 0), 16), radon_forward_svd(c));
  CHECK(exact_bias < 1e-12);
  // on the phantom sinogram the bias shrinks as the grid is refined
  const Phantom ph = shepp_logan();
  const CoefficientVector target = radon_forward_svd(project_coefficients(ph, 16, cubature_disk(1024)));
  const RadonSampler sampler = [&](double theta, double s) { return phantom_radon_analytic(ph, theta, s); };
  double prev = INFINITY;
  for (int n : {32, 64, 128, 256}) {
    const double bias = max_abs_diff(riemann_svd_coeffs(simulate_regression(sampler, n, n, 0.0, 0), 16), target);
    CAPTURE(n);
    CHECK(bias < prev);
    prev = bias;
  }
  RegressionObservation zero;
  zero.n1 = zero.n2 = 16;
  zero.values.assign(256, 0.0);
  CHECK(riemann_svd_coeffs(zero, 8).squared_norm() == 0.0);
  CHECK(regression_degree_limit(64, 48) == 24);
}

TEST_CASE("estimators") {
  const int k0 = 16;
  const CoefficientVector c = random_coefficients(24, 2);
  const WhiteNoiseObservation clean = simulate_white_noise(c, 0.0, k0, 0);
  const CoefficientVector truncated = c.resized(k0);

  // 2^{J-1} >= k0 keeps the full window
  CHECK(max_abs_diff(estimate(clean, EstimatorSpec::needlet(5)), truncated) < 1e-13);
  const WhiteNoiseObservation noisy = simulate_white_noise(c, 0.4, k0, 3);
  CHECK(max_abs_diff(estimate(noisy, EstimatorSpec::naive()), estimate(noisy, EstimatorSpec::svd(k0))) == 0.0);
  for (int J : {2, 3, 4}) {
    const CoefficientVector hard = estimate(noisy, EstimatorSpec::needlet(J, CutoffKind::Hard));
    CHECK(max_abs_diff(hard, estimate(noisy, EstimatorSpec::svd(1 << J)).resized(k0)) < 1e-15);
  }
  const CoefficientVector j0 = estimate(noisy, EstimatorSpec::needlet(0));
  for (std::size_t r = 1; r < j0.size(); ++r) {
    CHECK(j0.at_rank(r) == 0.0);
  }
  CHECK(j0.at_rank(0) == doctest::Approx(noisy.y.at_rank(0) / singular_value(0)));

  const auto m = estimator_multipliers(EstimatorSpec::needlet(3), k0);
  const CutoffFunction cut;
  for (int k = 0; k <= k0; ++k) {
    CHECK(m[k] == doctest::Approx(cut.a(k / 8.0) / singular_value(k)).scale(1.0));
  }
}

TEST_CASE("tuning selection") {
  const std::vector<EstimatorSpec> cands{EstimatorSpec::needlet(5), EstimatorSpec::needlet(3), EstimatorSpec::needlet(4)};
  CHECK(select_best(cands, {1.0, 0.5, 0.7}) == 1);
  CHECK(select_best(cands, {0.5, 0.7, 0.5}) == 2);
  const auto defaults = default_candidates(32);
  bool has_naive = false;
  for (const EstimatorSpec& spec : defaults) {
    if (spec.kind == EstimatorKind::Svd) {
      CHECK(spec.degree <= 32);
    }
    if (spec.kind == EstimatorKind::Needlet) {
      CHECK(spec.level >= 3);
      CHECK((1 << (spec.level - 1)) <= 32);
    }
    has_naive = has_naive || spec.kind == EstimatorKind::Naive;
  }
  CHECK(has_naive);
  CHECK(parse_estimator_kind("svd") == EstimatorKind::Svd);
  CHECK_THROWS_AS(parse_estimator_kind("wavelet"), std::invalid_argument);
}

TEST_CASE("empirical needlet variance") {
  const SigmaReport zero = empirical_sigma_bound(3, 0.0, 100, 1);
  CHECK(zero.max_empirical == 0.0);
  double prev = 0.0;
  for (int j = 2; j <= 4; ++j) {
    const SigmaReport rep = empirical_sigma_bound(j, 1.0, 4000, 5);
    CAPTURE(j);
    CHECK(rep.max_empirical <= rep.bound);
    CHECK(rep.max_exact <= rep.bound);
    CHECK(rep.max_empirical == doctest::Approx(rep.max_exact).epsilon(0.15));
    CHECK(rep.max_empirical > prev);
    prev = rep.max_empirical;
  }
}
