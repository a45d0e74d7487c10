#pragma once

// Lp risk evaluation on a cubature rule, the SVD-vs-needlet benchmark sweep,
// rasterization and the CSV/PGM writers.

#include "radneedlet/estimator.hpp"
#include "radneedlet/needlet.hpp"
#include "radneedlet/phantom.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace radneedlet {

/// "inf" (or "infinity") maps to +infinity.
double parse_norm(const std::string& text);
std::string format_norm(double p);
std::vector<double> parse_norm_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

/// (sum_n w_n |v_n|^p)^{1/p}, or max |v_n| for p = infinity.
double lp_norm_on_rule(std::span<const double> values, std::span<const double> weights, double p);

/// Synthesizes estimates on the nodes of a cubature rule and measures their
/// Lp distance to fixed truth values at the same nodes.
class ErrorEvaluator {
public:
  ErrorEvaluator(std::vector<double> truth_values, const CubatureRule& rule, int max_degree);
  ErrorEvaluator(const Phantom& truth, const CubatureRule& rule, int max_degree);
  ~ErrorEvaluator();

  int max_degree() const;
  const PolarTransform& transform() const { return *transform_; }
  const std::vector<double>& truth_values() const { return truth_; }

  /// errors[item][q] = ||truth - synth(batch[item])||_{norms[q]}.
  std::vector<std::vector<double>> errors(std::span<const CoefficientVector* const> batch,
                                          std::span<const double> norms) const;
  double error(const CoefficientVector& c_hat, double p) const;

private:
  std::vector<double> truth_;
  std::unique_ptr<PolarTransform> transform_;
};

/// One-shot (sum w |f - f_hat|^p)^{1/p} over the rule nodes.
double lp_error(const CoefficientVector& c_hat, const Phantom& truth, double p, const CubatureRule& rule);

enum class ObservationModel { WhiteNoise, Regression };
ObservationModel parse_model(const std::string& name);
std::string to_string(ObservationModel model);

enum class RegressionSampler { Svd, Analytic };
RegressionSampler parse_sampler(const std::string& name);

struct BenchConfig {
  ObservationModel model = ObservationModel::WhiteNoise;
  std::vector<double> noise{0.5, 1.0, 2.0, 4.0, 8.0};  // epsilon; regression uses sigma = epsilon sqrt(N1 N2)
  std::vector<double> norms{1.0, 2.0, 4.0, 6.0, 8.0, 10.0, std::numeric_limits<double>::infinity()};
  int k0 = 256;            // white noise; regression caps it at min(N1, N2) / 2
  int realizations = 50;
  std::uint64_t seed = 20090101;
  std::vector<int> levels{3, 4, 5, 6, 7, 8, 9};
  std::vector<int> svd_degrees{8, 16, 32, 64, 128, 256};
  CutoffKind cutoff = CutoffKind::SmoothExp;
  std::string phantom = "original";  // original, modified, or a phantom CSV path
  int truth_degree = 512;
  int rule_degree = 2048;
  int n1 = 64;
  int n2 = 64;
  RegressionSampler sampler = RegressionSampler::Svd;
  int jobs = 1;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  /// Degree actually estimated: k0, or the regression aliasing limit.
  int effective_k0() const;
};

Phantom load_phantom(const std::string& name_or_path);

struct BenchRow {
  std::string model;
  std::string estimator;
  int tuning = 0;
  double noise = 0.0;
  double p = 2.0;
  double mean_error = 0.0;
  double std_error = 0.0;
  int R = 0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchResult {
  std::vector<BenchRow> rows;

  /// Row for (estimator, noise, p); throws when missing.
  const BenchRow& find(const std::string& estimator, double noise, double p) const;
};

/// Mean and standard deviation over realizations of the error of every
/// candidate at every norm: mean[c][q], std[c][q].
struct CandidateErrors {
  std::vector<EstimatorSpec> candidates;
  std::vector<double> norms;
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> std;
  int R = 0;
};

/// Runs R realizations; `sinogram(r)` returns the g-side coefficients of degree k0.
CandidateErrors evaluate_candidates(const ErrorEvaluator& evaluator, const std::vector<EstimatorSpec>& candidates,
                                    const std::vector<double>& norms, int R,
                                    const std::function<CoefficientVector(int realization)>& sinogram, int jobs = 1);

/// Candidate list of a config: needlet levels, SVD degrees (capped at k0), naive.
std::vector<EstimatorSpec> config_candidates(const BenchConfig& cfg);

/// Shared inputs of a benchmark: truth projection and error evaluator.
struct BenchSetup {
  Phantom phantom;
  CubatureRule rule;
  CoefficientVector truth;  // degree cfg.truth_degree
  std::unique_ptr<ErrorEvaluator> evaluator;
};
BenchSetup prepare_benchmark(const BenchConfig& cfg);

BenchResult run_benchmark(const BenchConfig& cfg);
BenchResult run_benchmark(const BenchConfig& cfg, const BenchSetup& setup);

void write_csv(const BenchResult& result, std::ostream& out);
void write_csv(const BenchResult& result, const std::string& path);
BenchResult read_bench_csv(std::istream& in);
BenchResult read_bench_csv(const std::string& path);

/// Pixel (i, j) covers x in [-1 + 2i/W, -1 + 2(i+1)/W], y from +1 downward;
/// values at pixel centers, NaN outside the disk.
struct ImageGrid {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  ImageGrid(int width, int height);
  double& at(int i, int j) { return values[static_cast<std::size_t>(j) * width + i]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * width + i]; }
  DiskPoint pixel_point(int i, int j) const;
  bool inside(int i, int j) const;
};

ImageGrid render(const CoefficientVector& c, int width, int height);
ImageGrid render(const Phantom& ph, int width, int height);
ImageGrid render(const std::function<double(const DiskPoint&)>& f, int width, int height);

/// 8-bit binary PGM, linear min-max scaling over the disk (outside pixels are 0).
/// The scaling is written to `path + ".scale"` as `min <v>` / `max <v>` lines.
void write_pgm(const ImageGrid& img, const std::string& path);

}  // namespace radneedlet
