#pragma once

// Observation models (white noise in the g-basis, fan-beam regression grid)
// and the linear estimators: needlet (smooth window), truncated SVD, naive.

#include "radneedlet/needlet.hpp"
#include "radneedlet/svd_basis.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace radneedlet {

/// Standard normal variate keyed by (seed, stream, counter); identical for any
/// evaluation order or thread count.
double keyed_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// Derives an independent seed from a master seed and a path of integers.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

struct WhiteNoiseObservation {
  CoefficientVector y;  // g-side coefficients lambda_k c + epsilon W, degree k0
  double epsilon = 0.0;
  int k0 = 0;
  std::uint64_t seed = 0;
};

/// Y(i1, i2) stored row-major as values[i1 * n2 + i2].
struct RegressionObservation {
  int n1 = 0;
  int n2 = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> values;

  double at(int i1, int i2) const { return values[static_cast<std::size_t>(i1) * n2 + i2]; }
};

/// Parallel-beam line of grid cell (i1, i2): theta = 2 pi (i1/N1 - i2/N2) mod 2 pi, s = sin(2 pi i2/N2).
ParallelCoordinates regression_line(int i1, int i2, int n1, int n2);

WhiteNoiseObservation simulate_white_noise(const CoefficientVector& c_true, double epsilon, int k0, std::uint64_t seed);

using RadonSampler = std::function<double(double theta, double s)>;

/// Noise-free grid Rf(line(i1, i2)).
std::vector<double> regression_grid(const RadonSampler& sampler, int n1, int n2);

RegressionObservation simulate_regression(const RadonSampler& sampler, int n1, int n2, double sigma,
                                          std::uint64_t seed);
/// Adds keyed N(0, sigma^2) noise to a precomputed noise-free grid.
RegressionObservation simulate_regression(const std::vector<double>& clean, int n1, int n2, double sigma,
                                          std::uint64_t seed);

/// Rf = sum lambda_k c_{k,l,i} g_{k,l,i}, evaluated pointwise.
RadonSampler svd_radon_sampler(const CoefficientVector& c);

/// The grid average (1/(N1 N2)) sum g_{k,l,i}(line) Y, all indices of degree <= K.
CoefficientVector riemann_raw_coeffs(const RegressionObservation& obs, int max_degree);

/// Factor mapping the grid average onto <Rf, g>_mu, measured once on f = f_{0,0,1}
/// (noise-free) and applied to every index.
double riemann_calibration(int n1, int n2);

/// Calibrated Riemann estimate of the g-side coefficients.
CoefficientVector riemann_svd_coeffs(const RegressionObservation& obs, int max_degree);

/// Largest degree the grid resolves without angular aliasing: min(N1, N2) / 2.
int regression_degree_limit(int n1, int n2);

/// White-noise level equivalent to a regression grid: epsilon^2 = sigma^2 / (N1 N2).
double regression_equivalent_epsilon(double sigma, int n1, int n2);

enum class EstimatorKind { Needlet, Svd, Naive };

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::Naive;
  int level = 0;   // J, needlet only
  int degree = 0;  // kS, svd only
  CutoffKind cutoff = CutoffKind::SmoothExp;

  static EstimatorSpec needlet(int J, CutoffKind cutoff = CutoffKind::SmoothExp);
  static EstimatorSpec svd(int kS);
  static EstimatorSpec naive();

  /// J for needlet, kS for svd, 0 for naive.
  int tuning() const;
};

std::string to_string(EstimatorKind kind);
EstimatorKind parse_estimator_kind(const std::string& name);

/// m_k with estimate_{k,l,i} = m_k y_{k,l,i}, k = 0..k0.
std::vector<double> estimator_multipliers(const EstimatorSpec& spec, int k0);

/// Applies the multipliers to sinogram-side coefficients of degree k0.
CoefficientVector estimate(const CoefficientVector& y, const EstimatorSpec& spec);
CoefficientVector estimate(const WhiteNoiseObservation& obs, const EstimatorSpec& spec);
/// Regression data: y from riemann_svd_coeffs up to degree k0.
CoefficientVector estimate(const RegressionObservation& obs, int k0, const EstimatorSpec& spec);

/// Index of the candidate with the smallest mean error; ties go to the smaller tuning value.
std::size_t select_best(const std::vector<EstimatorSpec>& candidates, const std::vector<double>& mean_errors);

/// Default tuning grids: J in 3..9, kS in {8, 16, ..., 256}, each capped by what k0 can use.
std::vector<EstimatorSpec> default_candidates(int k0, CutoffKind cutoff = CutoffKind::SmoothExp);

struct SigmaReport {
  int level = 0;
  double epsilon = 0.0;
  int trials = 0;
  double bound = 0.0;               // (1/pi) 2^j epsilon^2
  double max_empirical = 0.0;       // max over nodes of the Monte-Carlo variance
  double max_exact = 0.0;           // max over nodes of epsilon^2 sum gamma^2 / lambda_k^2
  std::vector<double> empirical;    // per node of the level-j rule
};

/// Monte-Carlo variance of the father-needlet noise coefficients
/// Z_{j,xi} = sum gamma^{j,xi}_{k,l,i} (epsilon / lambda_k) W_{k,l,i}.
SigmaReport empirical_sigma_bound(int j, double epsilon, int trials, std::uint64_t seed,
                                  const CutoffFunction& cutoff = CutoffFunction());

}  // namespace radneedlet
