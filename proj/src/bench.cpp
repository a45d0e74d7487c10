#include "radneedlet/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace radneedlet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(text);
  while (std::getline(in, cell, sep)) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return v;
}

// |d|^p with repeated squaring for integer p.
double abs_pow(double d, double p) {
  d = std::abs(d);
  if (p == 1.0) {
    return d;
  }
  if (p == 2.0) {
    return d * d;
  }
  if (p == std::floor(p) && p <= 64.0) {
    double result = 1.0, base = d;
    for (auto n = static_cast<unsigned>(p); n > 0; n >>= 1) {
      if (n & 1U) {
        result *= base;
      }
      base *= base;
    }
    return result;
  }
  return std::pow(d, p);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

double parse_norm(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") {
    return kInf;
  }
  const double p = parse_real(text);
  if (!(p >= 1.0)) {
    throw std::invalid_argument("norm exponent must be >= 1, got " + text);
  }
  return p;
}

std::string format_norm(double p) { return std::isinf(p) ? "inf" : format_number(p); }

std::vector<double> parse_norm_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& cell : split(text, ',')) {
    out.push_back(parse_norm(cell));
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& cell : split(text, ',')) {
    out.push_back(parse_real(cell));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& cell : split(text, ',')) {
    const auto dots = cell.find("..");
    if (dots != std::string::npos) {
      const int lo = static_cast<int>(parse_real(cell.substr(0, dots)));
      const int hi = static_cast<int>(parse_real(cell.substr(dots + 2)));
      for (int v = lo; v <= hi; ++v) {
        out.push_back(v);
      }
      continue;
    }
    const double v = parse_real(cell);
    if (v != std::floor(v)) {
      throw std::invalid_argument("not an integer: '" + cell + "'");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

double lp_norm_on_rule(std::span<const double> values, std::span<const double> weights, double p) {
  if (values.size() != weights.size()) {
    throw std::invalid_argument("values and weights differ in length");
  }
  double acc = 0.0;
  for (std::size_t n = 0; n < values.size(); ++n) {
    acc = std::isinf(p) ? std::max(acc, std::abs(values[n])) : acc + weights[n] * abs_pow(values[n], p);
  }
  return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

ErrorEvaluator::ErrorEvaluator(std::vector<double> truth_values, const CubatureRule& rule, int max_degree)
    : truth_(std::move(truth_values)), transform_(rule.transform(max_degree)) {
  if (truth_.size() != rule.size()) {
    throw std::invalid_argument("truth values do not match the rule nodes");
  }
}

ErrorEvaluator::ErrorEvaluator(const Phantom& truth, const CubatureRule& rule, int max_degree)
    : ErrorEvaluator(phantom_on_rule(truth, rule), rule, max_degree) {}

ErrorEvaluator::~ErrorEvaluator() = default;

int ErrorEvaluator::max_degree() const { return transform_->max_degree(); }

std::vector<std::vector<double>> ErrorEvaluator::errors(std::span<const CoefficientVector* const> batch,
                                                        std::span<const double> norms) const {
  const int n = transform_->n_angles();
  std::vector<std::vector<double>> acc(batch.size(), std::vector<double>(norms.size(), 0.0));
  auto accumulate = [&](int a, int item, std::span<const double> row) {
    const double w = transform_->node_weight(a);
    const double* truth = truth_.data() + static_cast<std::size_t>(a) * n;
    std::vector<double>& out = acc[item];
    for (int b = 0; b < n; ++b) {
      const double d = std::abs(truth[b] - row[b]);
      for (std::size_t q = 0; q < norms.size(); ++q) {
        out[q] = std::isinf(norms[q]) ? std::max(out[q], d) : out[q] + w * abs_pow(d, norms[q]);
      }
    }
  };
  if (transform_->has_radial_table()) {
    transform_->synthesize_rows(batch, accumulate);
  } else {
    std::vector<double> values(transform_->n_nodes());
    for (std::size_t item = 0; item < batch.size(); ++item) {
      transform_->synthesize(*batch[item], values);
      for (int a = 0; a < transform_->n_radii(); ++a) {
        accumulate(a, static_cast<int>(item),
                   std::span<const double>(values).subspan(static_cast<std::size_t>(a) * n, n));
      }
    }
  }
  for (auto& row : acc) {
    for (std::size_t q = 0; q < norms.size(); ++q) {
      if (!std::isinf(norms[q])) {
        row[q] = std::pow(row[q], 1.0 / norms[q]);
      }
    }
  }
  return acc;
}

double ErrorEvaluator::error(const CoefficientVector& c_hat, double p) const {
  const CoefficientVector* item = &c_hat;
  const double norms[1] = {p};
  return errors(std::span<const CoefficientVector* const>(&item, 1), norms)[0][0];
}

double lp_error(const CoefficientVector& c_hat, const Phantom& truth, double p, const CubatureRule& rule) {
  return ErrorEvaluator(truth, rule, c_hat.max_degree()).error(c_hat, p);
}

ObservationModel parse_model(const std::string& name) {
  if (name == "white" || name == "white_noise") {
    return ObservationModel::WhiteNoise;
  }
  if (name == "regression") {
    return ObservationModel::Regression;
  }
  throw std::invalid_argument("unknown model '" + name + "' (expected white or regression)");
}

std::string to_string(ObservationModel model) {
  return model == ObservationModel::WhiteNoise ? "white" : "regression";
}

RegressionSampler parse_sampler(const std::string& name) {
  if (name == "svd") {
    return RegressionSampler::Svd;
  }
  if (name == "analytic") {
    return RegressionSampler::Analytic;
  }
  throw std::invalid_argument("unknown Radon sampler '" + name + "' (expected svd or analytic)");
}

void BenchConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("config field '" + field + "': " + why);
  };
  if (noise.empty()) {
    fail("noise", "needs at least one level");
  }
  for (double e : noise) {
    if (!(e >= 0.0) || std::isinf(e)) {
      fail("noise", "levels must be finite and non-negative");
    }
  }
  if (norms.empty()) {
    fail("norm", "needs at least one exponent");
  }
  for (double p : norms) {
    if (!(p >= 1.0)) {
      fail("norm", "exponents must be >= 1");
    }
  }
  if (k0 < 1) {
    fail("k0", "must be at least 1");
  }
  if (realizations < 1) {
    fail("realizations", "must be at least 1");
  }
  if (levels.empty() && svd_degrees.empty()) {
    fail("levels", "no needlet levels and no SVD degrees to tune");
  }
  for (int J : levels) {
    if (J < 0 || J > 20) {
      fail("levels", "levels must lie in 0..20");
    }
  }
  for (int kS : svd_degrees) {
    if (kS < 0) {
      fail("svd_degrees", "degrees must be non-negative");
    }
  }
  if (truth_degree < effective_k0()) {
    fail("truth_degree", "must be at least k0");
  }
  if (rule_degree < 4 * truth_degree) {
    fail("rule_degree", "must be at least 4 * truth_degree");
  }
  if (n1 < 2 || n2 < 2) {
    fail("n1/n2", "regression grid needs at least 2 x 2 samples");
  }
  if (jobs < 1) {
    fail("jobs", "must be at least 1");
  }
}

int BenchConfig::effective_k0() const {
  return model == ObservationModel::WhiteNoise ? k0 : std::min(k0, regression_degree_limit(n1, n2));
}

Phantom load_phantom(const std::string& name_or_path) {
  if (name_or_path == "original" || name_or_path == "modified") {
    return shepp_logan(parse_shepp_logan_variant(name_or_path));
  }
  return read_phantom_csv(name_or_path);
}

const BenchRow& BenchResult::find(const std::string& estimator, double noise, double p) const {
  for (const BenchRow& row : rows) {
    if (row.estimator == estimator && row.noise == noise && (row.p == p || (std::isinf(row.p) && std::isinf(p)))) {
      return row;
    }
  }
  throw std::out_of_range("no " + estimator + " row for noise " + format_number(noise) + ", p " + format_norm(p));
}

CandidateErrors evaluate_candidates(const ErrorEvaluator& evaluator, const std::vector<EstimatorSpec>& candidates,
                                    const std::vector<double>& norms, int R,
                                    const std::function<CoefficientVector(int)>& sinogram, int jobs) {
  const int k0 = evaluator.max_degree();
  // Candidates with identical multipliers (e.g. naive and svd(k0)) are synthesized once.
  std::vector<std::vector<double>> unique;
  std::vector<std::size_t> slot(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    std::vector<double> m = estimator_multipliers(candidates[c], k0);
    const auto it = std::find(unique.begin(), unique.end(), m);
    slot[c] = static_cast<std::size_t>(it - unique.begin());
    if (it == unique.end()) {
      unique.push_back(std::move(m));
    }
  }
  std::vector<std::vector<std::vector<double>>> per_run(static_cast<std::size_t>(R));
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (int r = 0; r < R; ++r) {
    const CoefficientVector y = sinogram(r);
    if (y.max_degree() != k0) {
      throw std::invalid_argument("sinogram degree does not match the evaluator");
    }
    std::vector<CoefficientVector> est(unique.size(), y);
    std::vector<const CoefficientVector*> ptrs;
    for (std::size_t u = 0; u < unique.size(); ++u) {
      for (int k = 0; k <= k0; ++k) {
        for (double& v : est[u].degree_block(k)) {
          v *= unique[u][k];
        }
      }
      ptrs.push_back(&est[u]);
    }
    per_run[r] = evaluator.errors(ptrs, norms);
  }
  CandidateErrors out;
  out.candidates = candidates;
  out.norms = norms;
  out.R = R;
  out.mean.assign(candidates.size(), std::vector<double>(norms.size(), 0.0));
  out.std.assign(candidates.size(), std::vector<double>(norms.size(), 0.0));
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (std::size_t q = 0; q < norms.size(); ++q) {
      double sum = 0.0, sum_sq = 0.0;
      for (int r = 0; r < R; ++r) {
        const double e = per_run[r][slot[c]][q];
        sum += e;
        sum_sq += e * e;
      }
      const double mean = sum / R;
      out.mean[c][q] = mean;
      out.std[c][q] = R > 1 ? std::sqrt(std::max(0.0, (sum_sq - R * mean * mean) / (R - 1))) : 0.0;
    }
  }
  return out;
}

std::vector<EstimatorSpec> config_candidates(const BenchConfig& cfg) {
  std::vector<EstimatorSpec> out;
  for (int J : cfg.levels) {
    out.push_back(EstimatorSpec::needlet(J, cfg.cutoff));
  }
  for (int kS : cfg.svd_degrees) {
    if (kS <= cfg.effective_k0()) {
      out.push_back(EstimatorSpec::svd(kS));
    }
  }
  out.push_back(EstimatorSpec::naive());
  return out;
}

BenchSetup prepare_benchmark(const BenchConfig& cfg) {
  cfg.validate();
  BenchSetup setup{load_phantom(cfg.phantom), cubature_disk(cfg.rule_degree), CoefficientVector(), nullptr};
  setup.truth = project_coefficients(setup.phantom, cfg.truth_degree, setup.rule);
  setup.evaluator = std::make_unique<ErrorEvaluator>(setup.phantom, setup.rule, cfg.effective_k0());
  return setup;
}

BenchResult run_benchmark(const BenchConfig& cfg) { return run_benchmark(cfg, prepare_benchmark(cfg)); }

BenchResult run_benchmark(const BenchConfig& cfg, const BenchSetup& setup) {
  cfg.validate();
  const int k0 = cfg.effective_k0();
  if (setup.evaluator->max_degree() != k0) {
    throw std::invalid_argument("benchmark setup was prepared for a different k0");
  }
  const std::vector<EstimatorSpec> candidates = config_candidates(cfg);
  std::vector<double> clean;
  if (cfg.model == ObservationModel::Regression) {
    const RadonSampler sampler = cfg.sampler == RegressionSampler::Svd
                                     ? svd_radon_sampler(setup.truth)
                                     : RadonSampler([&](double t, double s) {
                                         return phantom_radon_analytic(setup.phantom, t, s);
                                       });
    clean = regression_grid(sampler, cfg.n1, cfg.n2);
  }
  const std::string model = to_string(cfg.model);
  BenchResult result;
  for (std::size_t e = 0; e < cfg.noise.size(); ++e) {
    const double eps = cfg.noise[e];
    std::function<CoefficientVector(int)> sinogram;
    if (cfg.model == ObservationModel::WhiteNoise) {
      sinogram = [&, eps, e](int r) {
        return simulate_white_noise(setup.truth, eps, k0, derive_seed(cfg.seed, {0, e, static_cast<std::uint64_t>(r)})).y;
      };
    } else {
      const double sigma = eps * std::sqrt(static_cast<double>(cfg.n1) * cfg.n2);
      sinogram = [&, sigma, e](int r) {
        const RegressionObservation obs =
            simulate_regression(clean, cfg.n1, cfg.n2, sigma, derive_seed(cfg.seed, {1, e, static_cast<std::uint64_t>(r)}));
        return riemann_svd_coeffs(obs, k0);
      };
    }
    const CandidateErrors ce =
        evaluate_candidates(*setup.evaluator, candidates, cfg.norms, cfg.realizations, sinogram, cfg.jobs);
    for (std::size_t q = 0; q < cfg.norms.size(); ++q) {
      for (EstimatorKind kind : {EstimatorKind::Needlet, EstimatorKind::Svd, EstimatorKind::Naive}) {
        std::vector<EstimatorSpec> group;
        std::vector<double> means;
        std::vector<std::size_t> index;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
          if (candidates[c].kind == kind) {
            group.push_back(candidates[c]);
            means.push_back(ce.mean[c][q]);
            index.push_back(c);
          }
        }
        if (group.empty()) {
          continue;
        }
        const std::size_t c = index[select_best(group, means)];
        result.rows.push_back(BenchRow{model, to_string(kind), candidates[c].tuning(), eps, cfg.norms[q],
                                       ce.mean[c][q], ce.std[c][q], cfg.realizations});
      }
    }
  }
  return result;
}

void write_csv(const BenchResult& result, std::ostream& out) {
  out << "model,estimator,tuning,noise,p,mean_error,std_error,R\n";
  for (const BenchRow& r : result.rows) {
    out << r.model << ',' << r.estimator << ',' << r.tuning << ',' << format_number(r.noise) << ','
        << format_norm(r.p) << ',' << format_number(r.mean_error) << ',' << format_number(r.std_error) << ','
        << r.R << '\n';
  }
}

void write_csv(const BenchResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  write_csv(result, out);
  if (!out) {
    throw std::runtime_error("write failed for " + path);
  }
}

BenchResult read_bench_csv(std::istream& in) {
  BenchResult result;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.rfind("model,", 0) == 0) {
      continue;
    }
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 8) {
      throw std::runtime_error("benchmark CSV line " + std::to_string(line_no) + ": expected 8 fields");
    }
    try {
      result.rows.push_back(BenchRow{f[0], f[1], std::stoi(f[2]), parse_real(f[3]), parse_norm(f[4]),
                                     parse_real(f[5]), parse_real(f[6]), std::stoi(f[7])});
    } catch (const std::exception& ex) {
      throw std::runtime_error("benchmark CSV line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return result;
}

BenchResult read_bench_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  return read_bench_csv(in);
}

ImageGrid::ImageGrid(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1) {
    throw std::invalid_argument("image dimensions must be positive");
  }
  values.assign(static_cast<std::size_t>(w) * h, std::numeric_limits<double>::quiet_NaN());
}

DiskPoint ImageGrid::pixel_point(int i, int j) const {
  const double x = -1.0 + (2.0 * i + 1.0) / width;
  const double y = 1.0 - (2.0 * j + 1.0) / height;
  return DiskPoint{std::hypot(x, y), std::atan2(y, x) < 0.0 ? std::atan2(y, x) + 2.0 * std::numbers::pi
                                                             : std::atan2(y, x)};
}

bool ImageGrid::inside(int i, int j) const { return pixel_point(i, j).r <= 1.0; }

ImageGrid render(const std::function<double(const DiskPoint&)>& f, int width, int height) {
  ImageGrid img(width, height);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      if (img.inside(i, j)) {
        img.at(i, j) = f(img.pixel_point(i, j));
      }
    }
  }
  return img;
}

ImageGrid render(const CoefficientVector& c, int width, int height) {
  return render([&](const DiskPoint& p) { return synthesize_at(c, p); }, width, height);
}

ImageGrid render(const Phantom& ph, int width, int height) {
  return render([&](const DiskPoint& p) { return phantom_eval(ph, p); }, width, height);
}

void write_pgm(const ImageGrid& img, const std::string& path) {
  double lo = kInf, hi = -kInf;
  for (double v : img.values) {
    if (!std::isnan(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (lo > hi) {
    lo = hi = 0.0;
  }
  const double span = hi > lo ? hi - lo : 1.0;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  std::vector<unsigned char> bytes(img.values.size(), 0);
  for (std::size_t n = 0; n < bytes.size(); ++n) {
    const double v = img.values[n];
    if (!std::isnan(v)) {
      bytes[n] = static_cast<unsigned char>(std::lround(255.0 * (v - lo) / span));
    }
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("write failed for " + path);
  }
  std::ofstream scale(path + ".scale");
  scale << "min " << format_number(lo) << "\nmax " << format_number(hi) << '\n';
  if (!scale) {
    throw std::runtime_error("write failed for " + path + ".scale");
  }
}

}  // namespace radneedlet
