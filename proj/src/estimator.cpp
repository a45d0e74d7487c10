#include "radneedlet/estimator.hpp"

#include "radneedlet/orthopoly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace radneedlet {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1), never 0.
double to_unit(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53; }

double wrap_angle(double t) {
  t = std::fmod(t, 2.0 * kPi);
  return t < 0.0 ? t + 2.0 * kPi : t;
}

}  // namespace

double keyed_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t key = splitmix64(splitmix64(seed ^ splitmix64(stream)) ^ counter);
  const double u1 = to_unit(splitmix64(key));
  const double u2 = to_unit(splitmix64(key ^ 0x5851f42d4c957f2dULL));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t p : path) {
    s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  }
  return s;
}

ParallelCoordinates regression_line(int i1, int i2, int n1, int n2) {
  const double t1 = 2.0 * kPi * i1 / n1;
  const double t2 = 2.0 * kPi * i2 / n2;
  return ParallelCoordinates{wrap_angle(t1 - t2), std::sin(t2)};
}

WhiteNoiseObservation simulate_white_noise(const CoefficientVector& c_true, double epsilon, int k0,
                                           std::uint64_t seed) {
  if (k0 < 0 || c_true.max_degree() < k0) {
    throw std::invalid_argument("white-noise simulation needs true coefficients up to degree k0 = " +
                                std::to_string(k0));
  }
  if (epsilon < 0.0) {
    throw std::invalid_argument("noise level must be non-negative");
  }
  WhiteNoiseObservation obs{radon_forward_svd(c_true.resized(k0)), epsilon, k0, seed};
  if (epsilon > 0.0) {
    for (std::size_t r = 0; r < obs.y.size(); ++r) {
      obs.y.at_rank(r) += epsilon * keyed_normal(seed, 0, r);
    }
  }
  return obs;
}

std::vector<double> regression_grid(const RadonSampler& sampler, int n1, int n2) {
  if (n1 < 1 || n2 < 1) {
    throw std::invalid_argument("regression grid sizes must be positive");
  }
  std::vector<double> values(static_cast<std::size_t>(n1) * n2);
#pragma omp parallel for collapse(2) schedule(dynamic)
  for (int i1 = 0; i1 < n1; ++i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      const ParallelCoordinates line = regression_line(i1, i2, n1, n2);
      values[static_cast<std::size_t>(i1) * n2 + i2] = sampler(line.theta, line.s);
    }
  }
  return values;
}

RegressionObservation simulate_regression(const std::vector<double>& clean, int n1, int n2, double sigma,
                                          std::uint64_t seed) {
  if (clean.size() != static_cast<std::size_t>(n1) * n2) {
    throw std::invalid_argument("noise-free grid does not match N1 x N2");
  }
  if (sigma < 0.0) {
    throw std::invalid_argument("noise level must be non-negative");
  }
  RegressionObservation obs{n1, n2, sigma, seed, clean};
  if (sigma > 0.0) {
    for (std::size_t n = 0; n < obs.values.size(); ++n) {
      obs.values[n] += sigma * keyed_normal(seed, 1, n);
    }
  }
  return obs;
}

RegressionObservation simulate_regression(const RadonSampler& sampler, int n1, int n2, double sigma,
                                          std::uint64_t seed) {
  return simulate_regression(regression_grid(sampler, n1, n2), n1, n2, sigma, seed);
}

RadonSampler svd_radon_sampler(const CoefficientVector& c) {
  const CoefficientVector y = radon_forward_svd(c);
  return [y](double theta, double s) {
    const int K = y.max_degree();
    if (std::abs(s) >= 1.0) {
      return 0.0;
    }
    std::vector<double> cheb(static_cast<std::size_t>(K) + 1), cs(cheb.size()), sn(cheb.size());
    gegenbauer_sequence(GegenbauerParam(1.0), s, cheb);
    for (int l = 0; l <= K; ++l) {
      cs[l] = harmonic_normalization(l) * std::cos(l * theta);
      sn[l] = harmonic_normalization(l) * std::sin(l * theta);
    }
    double sum = 0.0;
    for (int k = 0; k <= K; ++k) {
      double acc = 0.0;
      for (int l = k % 2; l <= k; l += 2) {
        if (l == 0) {
          acc += cs[0] * y.at_rank(degree_offset(k));
        } else {
          const std::size_t base = degree_offset(k) + static_cast<std::size_t>(l - 1);
          acc += cs[l] * y.at_rank(base) + sn[l] * y.at_rank(base + 1);
        }
      }
      sum += cheb[k] * acc;
    }
    return std::sqrt(2.0 / kPi) * std::sqrt(1.0 - s * s) * sum;
  };
}

CoefficientVector riemann_raw_coeffs(const RegressionObservation& obs, int max_degree) {
  const int n1 = obs.n1, n2 = obs.n2, K = max_degree;
  if (K < 0 || obs.values.size() != static_cast<std::size_t>(n1) * n2) {
    throw std::invalid_argument("inconsistent regression observation");
  }
  // Column i2 sees angles alpha_{i1} - beta_{i2}; expand cos/sin of the difference.
  std::vector<double> ca(static_cast<std::size_t>(n1) * (K + 1)), sa(ca.size());
  for (int i1 = 0; i1 < n1; ++i1) {
    for (int l = 0; l <= K; ++l) {
      const double t = 2.0 * kPi * static_cast<double>((static_cast<long long>(l) * i1) % n1) / n1;
      ca[static_cast<std::size_t>(i1) * (K + 1) + l] = std::cos(t);
      sa[static_cast<std::size_t>(i1) * (K + 1) + l] = std::sin(t);
    }
  }
  CoefficientVector out(K);
  std::vector<double> cheb(static_cast<std::size_t>(K) + 1), A(cheb.size()), B(cheb.size());
  for (int i2 = 0; i2 < n2; ++i2) {
    std::fill(A.begin(), A.end(), 0.0);
    std::fill(B.begin(), B.end(), 0.0);
    for (int i1 = 0; i1 < n1; ++i1) {
      const double y = obs.at(i1, i2);
      const double* c = ca.data() + static_cast<std::size_t>(i1) * (K + 1);
      const double* s = sa.data() + static_cast<std::size_t>(i1) * (K + 1);
      for (int l = 0; l <= K; ++l) {
        A[l] += y * c[l];
        B[l] += y * s[l];
      }
    }
    const double s_val = std::sin(2.0 * kPi * i2 / n2);
    gegenbauer_sequence(GegenbauerParam(1.0), s_val, cheb);
    const double weight = std::sqrt(2.0 / kPi) * std::sqrt(std::max(0.0, 1.0 - s_val * s_val));
    for (int l = 0; l <= K; ++l) {
      const double beta = 2.0 * kPi * static_cast<double>((static_cast<long long>(l) * i2) % n2) / n2;
      const double cb = std::cos(beta), sb = std::sin(beta);
      const double cl = harmonic_normalization(l);
      const double cos_sum = cl * (A[l] * cb + B[l] * sb);
      const double sin_sum = cl * (B[l] * cb - A[l] * sb);
      for (int k = l; k <= K; k += 2) {
        const double g = weight * cheb[k];
        if (l == 0) {
          out.at_rank(degree_offset(k)) += g * cos_sum;
        } else {
          const std::size_t base = degree_offset(k) + static_cast<std::size_t>(l - 1);
          out.at_rank(base) += g * cos_sum;
          out.at_rank(base + 1) += g * sin_sum;
        }
      }
    }
  }
  const double scale = 1.0 / (static_cast<double>(n1) * n2);
  for (double& v : out.values()) {
    v *= scale;
  }
  return out;
}

double riemann_calibration(int n1, int n2) {
  CoefficientVector unit(0);
  unit.at_rank(0) = 1.0;
  const RegressionObservation obs = simulate_regression(svd_radon_sampler(unit), n1, n2, 0.0, 0);
  return singular_value(0) / riemann_raw_coeffs(obs, 0).at_rank(0);
}

CoefficientVector riemann_svd_coeffs(const RegressionObservation& obs, int max_degree) {
  CoefficientVector y = riemann_raw_coeffs(obs, max_degree);
  const double c = riemann_calibration(obs.n1, obs.n2);
  for (double& v : y.values()) {
    v *= c;
  }
  return y;
}

int regression_degree_limit(int n1, int n2) { return std::min(n1, n2) / 2; }

double regression_equivalent_epsilon(double sigma, int n1, int n2) {
  return sigma / std::sqrt(static_cast<double>(n1) * n2);
}

EstimatorSpec EstimatorSpec::needlet(int J, CutoffKind cutoff) {
  if (J < 0) {
    throw std::invalid_argument("needlet level must be non-negative");
  }
  return EstimatorSpec{EstimatorKind::Needlet, J, 0, cutoff};
}

EstimatorSpec EstimatorSpec::svd(int kS) {
  if (kS < 0) {
    throw std::invalid_argument("SVD truncation degree must be non-negative");
  }
  return EstimatorSpec{EstimatorKind::Svd, 0, kS, CutoffKind::SmoothExp};
}

EstimatorSpec EstimatorSpec::naive() { return EstimatorSpec{}; }

int EstimatorSpec::tuning() const {
  switch (kind) {
    case EstimatorKind::Needlet:
      return level;
    case EstimatorKind::Svd:
      return degree;
    case EstimatorKind::Naive:
      break;
  }
  return 0;
}

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Needlet:
      return "needlet";
    case EstimatorKind::Svd:
      return "svd";
    case EstimatorKind::Naive:
      return "naive";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(const std::string& name) {
  if (name == "needlet") {
    return EstimatorKind::Needlet;
  }
  if (name == "svd") {
    return EstimatorKind::Svd;
  }
  if (name == "naive") {
    return EstimatorKind::Naive;
  }
  throw std::invalid_argument("unknown estimator '" + name + "' (expected needlet, svd or naive)");
}

std::vector<double> estimator_multipliers(const EstimatorSpec& spec, int k0) {
  if (spec.kind == EstimatorKind::Svd && spec.degree > k0) {
    throw std::invalid_argument("SVD truncation degree " + std::to_string(spec.degree) + " exceeds k0 = " +
                                std::to_string(k0));
  }
  std::vector<double> m(static_cast<std::size_t>(k0) + 1);
  const CutoffFunction cutoff(spec.cutoff);
  for (int k = 0; k <= k0; ++k) {
    double w = 1.0;
    if (spec.kind == EstimatorKind::Needlet) {
      w = cutoff.a(k / std::ldexp(1.0, spec.level));
    } else if (spec.kind == EstimatorKind::Svd) {
      w = k <= spec.degree ? 1.0 : 0.0;
    }
    m[k] = w / singular_value(k);
  }
  return m;
}

CoefficientVector estimate(const CoefficientVector& y, const EstimatorSpec& spec) {
  const std::vector<double> m = estimator_multipliers(spec, y.max_degree());
  CoefficientVector out = y;
  for (int k = 0; k <= y.max_degree(); ++k) {
    for (double& v : out.degree_block(k)) {
      v *= m[k];
    }
  }
  return out;
}

CoefficientVector estimate(const WhiteNoiseObservation& obs, const EstimatorSpec& spec) {
  return estimate(obs.y, spec);
}

CoefficientVector estimate(const RegressionObservation& obs, int k0, const EstimatorSpec& spec) {
  return estimate(riemann_svd_coeffs(obs, k0), spec);
}

std::size_t select_best(const std::vector<EstimatorSpec>& candidates, const std::vector<double>& mean_errors) {
  if (candidates.empty() || candidates.size() != mean_errors.size()) {
    throw std::invalid_argument("selection needs one mean error per candidate");
  }
  std::size_t best = 0;
  for (std::size_t n = 1; n < candidates.size(); ++n) {
    const bool better = mean_errors[n] < mean_errors[best] ||
                        (mean_errors[n] == mean_errors[best] && candidates[n].tuning() < candidates[best].tuning());
    if (better) {
      best = n;
    }
  }
  return best;
}

std::vector<EstimatorSpec> default_candidates(int k0, CutoffKind cutoff) {
  std::vector<EstimatorSpec> out;
  for (int J = 3; J <= 9; ++J) {
    out.push_back(EstimatorSpec::needlet(J, cutoff));
    if (std::ldexp(1.0, J - 1) >= k0) {
      break;
    }
  }
  for (int kS = 8; kS <= 256 && kS <= k0; kS *= 2) {
    out.push_back(EstimatorSpec::svd(kS));
  }
  out.push_back(EstimatorSpec::naive());
  return out;
}

SigmaReport empirical_sigma_bound(int j, double epsilon, int trials, std::uint64_t seed,
                                  const CutoffFunction& cutoff) {
  if (trials < 2) {
    throw std::invalid_argument("variance estimation needs at least two trials");
  }
  const GammaTable gamma(j, AtomKind::Father, cutoff);
  const int K = gamma.max_degree();
  const auto n_atoms = static_cast<Eigen::Index>(gamma.n_atoms());
  const auto n_idx = static_cast<Eigen::Index>(gamma.n_indices());

  // G(atom, idx) = gamma / lambda_k.
  Eigen::MatrixXd G(n_atoms, n_idx);
  for (Eigen::Index a = 0; a < n_atoms; ++a) {
    const auto row = gamma.row(static_cast<std::size_t>(a));
    for (int k = 0; k <= K; ++k) {
      const double inv = 1.0 / singular_value(k);
      for (std::size_t r = degree_offset(k); r < degree_offset(k + 1); ++r) {
        G(a, static_cast<Eigen::Index>(r)) = row[r] * inv;
      }
    }
  }

  SigmaReport rep;
  rep.level = j;
  rep.epsilon = epsilon;
  rep.trials = trials;
  rep.bound = std::ldexp(1.0, j) / kPi * epsilon * epsilon;
  rep.max_exact = epsilon * epsilon * G.rowwise().squaredNorm().maxCoeff();

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n_atoms), sum_sq = Eigen::VectorXd::Zero(n_atoms);
  constexpr int kChunk = 512;
  for (int start = 0; start < trials; start += kChunk) {
    const int m = std::min(kChunk, trials - start);
    Eigen::MatrixXd W(n_idx, m);
    for (int t = 0; t < m; ++t) {
      for (Eigen::Index r = 0; r < n_idx; ++r) {
        W(r, t) = epsilon * keyed_normal(seed, static_cast<std::uint64_t>(start + t), static_cast<std::uint64_t>(r));
      }
    }
    const Eigen::MatrixXd Z = G * W;
    sum += Z.rowwise().sum();
    sum_sq += Z.array().square().matrix().rowwise().sum();
  }
  rep.empirical.resize(static_cast<std::size_t>(n_atoms));
  for (Eigen::Index a = 0; a < n_atoms; ++a) {
    const double mean = sum(a) / trials;
    const double var = (sum_sq(a) - trials * mean * mean) / (trials - 1);
    rep.empirical[static_cast<std::size_t>(a)] = std::max(0.0, var);
    rep.max_empirical = std::max(rep.max_empirical, rep.empirical[static_cast<std::size_t>(a)]);
  }
  return rep;
}

}  // namespace radneedlet
