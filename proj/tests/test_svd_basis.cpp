#include "doctest.h"

#include "radneedlet/coefficient_io.hpp"
#include "radneedlet/polar_transform.hpp"
#include "radneedlet/quadrature.hpp"
#include "radneedlet/svd_basis.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

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

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("radneedlet_test_" + name)).string();
}

}  // namespace

TEST_CASE("index enumeration") {
  CHECK(enumerate_indices(0).size() == 1);
  CHECK(enumerate_indices(0)[0] == SvdIndex(0, 0, 1));
  CHECK(enumerate_indices(8).size() == 45);
  CHECK(index_count(8) == 45);
  int block4 = 0;
  for (const SvdIndex& idx : enumerate_indices(4)) {
    if (idx.k() == 4) {
      ++block4;
      CHECK(idx.l() % 2 == 0);
    }
  }
  CHECK(block4 == 5);
  const auto all = enumerate_indices(20);
  for (std::size_t r = 0; r < all.size(); ++r) {
    CHECK(all[r].rank() == r);
    CHECK(SvdIndex::from_rank(r) == all[r]);
  }
  CHECK_THROWS_AS(SvdIndex(1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(SvdIndex(2, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(SvdIndex(2, 3, 1), std::invalid_argument);
}

TEST_CASE("eval_f examples") {
  CHECK(eval_f(SvdIndex(0, 0, 1), DiskPoint::polar(0.3, 1.0)) == doctest::Approx(1.0 / std::sqrt(pi)).epsilon(1e-14));
  CHECK(eval_f(SvdIndex(1, 1, 1), DiskPoint::polar(1.0, 0.0)) == doctest::Approx(2.0 / std::sqrt(pi)).epsilon(1e-14));
  for (const SvdIndex& idx : enumerate_indices(10)) {
    if (idx.l() > 0 && idx.i() == 2) {
      CHECK(eval_f(idx, DiskPoint::polar(0.77, 0.0)) == doctest::Approx(0.0).scale(1.0));
    }
  }
}

TEST_CASE("f basis is orthonormal under an independent polar quadrature") {
  const int K = 6;
  const auto idx = enumerate_indices(K);
  // int_0^1 r dr with Gauss-Legendre on [0,1], uniform angles.
  const GaussLegendre& gl = gauss_legendre(20);
  const int M = 32;
  std::vector<double> gram(idx.size() * idx.size(), 0.0);
  std::vector<double> v(idx.size());
  for (int a = 0; a < gl.size(); ++a) {
    const double r = 0.5 * (gl.nodes[a] + 1.0);
    const double wr = 0.5 * gl.weights[a] * r;
    for (int b = 0; b < M; ++b) {
      const DiskPoint p = DiskPoint::polar(r, 2 * pi * b / M);
      for (std::size_t q = 0; q < idx.size(); ++q) {
        v[q] = eval_f(idx[q], p);
      }
      for (std::size_t q = 0; q < idx.size(); ++q) {
        for (std::size_t s = 0; s < idx.size(); ++s) {
          gram[q * idx.size() + s] += wr * 2 * pi / M * v[q] * v[s];
        }
      }
    }
  }
  double worst = 0.0;
  for (std::size_t q = 0; q < idx.size(); ++q) {
    for (std::size_t s = 0; s < idx.size(); ++s) {
      worst = std::max(worst, std::abs(gram[q * idx.size() + s] - (q == s ? 1.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("g basis is orthonormal under dtheta ds / sqrt(1-s^2)") {
  // s = cos(phi) turns the measure into dtheta dphi; midpoint sums are exact on trig polynomials.
  const int K = 6;
  const auto idx = enumerate_indices(K);
  const int M = 32;
  std::vector<double> gram(idx.size() * idx.size(), 0.0);
  std::vector<double> v(idx.size());
  for (int a = 0; a < M; ++a) {
    const double s = std::cos(pi * (a + 0.5) / M);
    for (int b = 0; b < M; ++b) {
      const double theta = 2 * pi * b / M;
      for (std::size_t q = 0; q < idx.size(); ++q) {
        v[q] = eval_g(idx[q], theta, s);
      }
      for (std::size_t q = 0; q < idx.size(); ++q) {
        for (std::size_t t = 0; t < idx.size(); ++t) {
          gram[q * idx.size() + t] += (pi / M) * (2 * pi / M) * v[q] * v[t];
        }
      }
    }
  }
  double worst = 0.0;
  for (std::size_t q = 0; q < idx.size(); ++q) {
    for (std::size_t t = 0; t < idx.size(); ++t) {
      worst = std::max(worst, std::abs(gram[q * idx.size() + t] - (q == t ? 1.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-12);
  CHECK(eval_g(SvdIndex(0, 0, 1), 0.4, 0.0) == doctest::Approx(1.0 / pi).epsilon(1e-14));
  CHECK_THROWS_AS(eval_g(SvdIndex(0, 0, 1), 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("batch evaluators agree with the single-index ones") {
  const int K = 9;
  const auto idx = enumerate_indices(K);
  std::vector<double> out(idx.size());
  const DiskPoint p = DiskPoint::polar(0.63, 2.1);
  eval_f_all(K, p, out);
  for (std::size_t q = 0; q < idx.size(); ++q) {
    CHECK(out[q] == doctest::Approx(eval_f(idx[q], p)).epsilon(1e-12).scale(1.0));
  }
  eval_g_all(K, 1.2, -0.35, out);
  for (std::size_t q = 0; q < idx.size(); ++q) {
    CHECK(out[q] == doctest::Approx(eval_g(idx[q], 1.2, -0.35)).epsilon(1e-12).scale(1.0));
  }
  const CoefficientVector c = random_coefficients(K, 3);
  double sum = 0.0;
  for (std::size_t q = 0; q < idx.size(); ++q) {
    sum += c[idx[q]] * eval_f(idx[q], p);
  }
  CHECK(synthesize_at(c, p) == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("radial profile stays finite at high angular order") {
  std::vector<double> out((600 - 500) / 2 + 1);
  radial_profile(500, 600, 0.999, out);
  for (double v : out) {
    CHECK(std::isfinite(v));
  }
}

TEST_CASE("singular values") {
  CHECK(singular_value(0) == doctest::Approx(2 * std::sqrt(pi)).epsilon(1e-15));
  CHECK(singular_value(3) == doctest::Approx(std::sqrt(pi)).epsilon(1e-15));
  CHECK(singular_value(0, 3) == doctest::Approx(2 * pi).epsilon(1e-15));
}

TEST_CASE("diagonal Radon action") {
  CoefficientVector e(5);
  e[SvdIndex(0, 0, 1)] = 1.0;
  const CoefficientVector y = radon_forward_svd(e);
  CHECK(y[SvdIndex(0, 0, 1)] == doctest::Approx(singular_value(0)));
  for (std::size_t r = 1; r < y.size(); ++r) {
    CHECK(y.at_rank(r) == 0.0);
  }
  CHECK(radon_forward_svd(CoefficientVector(7)).squared_norm() == 0.0);
  const CoefficientVector c = random_coefficients(64, 11);
  const CoefficientVector back = radon_inverse_svd(radon_forward_svd(c));
  double worst = 0.0;
  for (std::size_t r = 0; r < c.size(); ++r) {
    worst = std::max(worst, std::abs(back.at_rank(r) - c.at_rank(r)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("line integrals") {
  const DiskFunction one = [](const DiskPoint&) { return 1.0; };
  CHECK(radon_line_integral(one, 0.8, 0.0, 16) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(radon_line_integral(one, 2.5, 0.6, 16) == doctest::Approx(1.6).epsilon(1e-14));
  // R f_{k,l,i} = lambda_k g_{k,l,i}, the weight (1-s^2)^{1/2} being part of g.
  for (const SvdIndex& idx : {SvdIndex(2, 0, 1), SvdIndex(5, 3, 2), SvdIndex(6, 2, 1)}) {
    const DiskFunction f = [&](const DiskPoint& p) { return eval_f(idx, p); };
    for (double theta : {0.0, 1.1, 4.0}) {
      for (double s : {-0.9, -0.2, 0.35, 0.8}) {
        const double ref = singular_value(idx.k()) * eval_g(idx, theta, s);
        CHECK(radon_line_integral(f, theta, s, 512) == doctest::Approx(ref).epsilon(1e-6).scale(1.0));
      }
    }
  }
}

TEST_CASE("fan-beam to parallel coordinates") {
  auto pc = fanbeam_to_parallel(pi / 2, 0.0);
  CHECK(pc.theta == doctest::Approx(pi / 2));
  CHECK(pc.s == doctest::Approx(0.0).scale(1.0));
  pc = fanbeam_to_parallel(0.0, pi / 6);
  CHECK(pc.theta == doctest::Approx(2 * pi - pi / 6));
  CHECK(pc.s == doctest::Approx(0.5));
  pc = fanbeam_to_parallel(1.3, 1.3);
  CHECK(pc.theta == doctest::Approx(0.0).scale(1.0));
  CHECK(pc.s == doctest::Approx(std::sin(1.3)));
}

TEST_CASE("polar transform analyze inverts synthesize on an exact grid") {
  const int K = 24;
  // Gauss-Legendre in u = 2r^2 - 1 with weight w/4 is exact for radial polynomials of degree <= 2K.
  const GaussLegendre& gl = gauss_legendre(K + 1);
  std::vector<double> radii, rw;
  for (int a = 0; a < gl.size(); ++a) {
    radii.push_back(std::sqrt(0.5 * (gl.nodes[a] + 1.0)));
    rw.push_back(0.25 * gl.weights[a]);
  }
  for (auto cache : {PolarTransform::RadialCache::Always, PolarTransform::RadialCache::Never}) {
    const PolarTransform tr(radii, rw, 2 * K + 1, K, cache);
    const CoefficientVector c = random_coefficients(K, 5);
    std::vector<double> values(tr.n_nodes());
    tr.synthesize(c, values);
    for (int a : {0, 7}) {
      for (int b : {0, 13}) {
        const DiskPoint p = DiskPoint::polar(radii[a], tr.angle(b));
        CHECK(values[a * tr.n_angles() + b] == doctest::Approx(synthesize_at(c, p)).epsilon(1e-11).scale(1.0));
      }
    }
    const CoefficientVector back = tr.analyze(values);
    double worst = 0.0;
    for (std::size_t r = 0; r < c.size(); ++r) {
      worst = std::max(worst, std::abs(back.at_rank(r) - c.at_rank(r)));
    }
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("angular aliasing") {
  const int n = 10;
  for (int l = 0; l < 40; ++l) {
    const AliasedBin bin = alias_frequency(l, n);
    for (int b = 0; b < n; ++b) {
      const double t = 2 * pi * b / n;
      CHECK(std::cos(l * t) == doctest::Approx(std::cos(bin.bin * t)).scale(1.0).epsilon(1e-10));
      CHECK(std::sin(l * t) == doctest::Approx(bin.sin_sign * std::sin(bin.bin * t)).scale(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("coefficient files") {
  const CoefficientVector c = random_coefficients(12, 9);
  std::stringstream ss;
  write_coefficients_csv(c, ss);
  const CoefficientVector from_csv = read_coefficients_csv(ss);
  REQUIRE(from_csv.max_degree() == 12);
  for (std::size_t r = 0; r < c.size(); ++r) {
    CHECK(from_csv.at_rank(r) == c.at_rank(r));
  }
  const std::string path = temp_path("coeffs.bin");
  write_coefficients(c, path);
  const CoefficientVector from_bin = read_coefficients(path);
  std::filesystem::remove(path);
  for (std::size_t r = 0; r < c.size(); ++r) {
    CHECK(from_bin.at_rank(r) == c.at_rank(r));
  }
  std::stringstream sparse("k,l,i,value\n2,0,1,0.5\n");
  const CoefficientVector s = read_coefficients_csv(sparse);
  CHECK(s.max_degree() == 2);
  CHECK(s[SvdIndex(2, 0, 1)] == 0.5);
  CHECK(s[SvdIndex(0, 0, 1)] == 0.0);
  std::stringstream bad("k,l,i,value\n2,1,1,0.5\n");
  CHECK_THROWS(read_coefficients_csv(bad));
  CHECK_THROWS(read_coefficients(temp_path("missing.bin")));
}

TEST_CASE("resized truncates and zero-extends") {
  const CoefficientVector c = random_coefficients(6, 1);
  const CoefficientVector small = c.resized(3);
  const CoefficientVector big = c.resized(9);
  CHECK(small.size() == index_count(3));
  for (std::size_t r = 0; r < small.size(); ++r) {
    CHECK(small.at_rank(r) == c.at_rank(r));
  }
  for (std::size_t r = 0; r < big.size(); ++r) {
    CHECK(big.at_rank(r) == (r < c.size() ? c.at_rank(r) : 0.0));
  }
}
