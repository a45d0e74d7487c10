#include "radneedlet/polar_transform.hpp"

#include <Eigen/Dense>
#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace radneedlet {

namespace {

// FFTW planning is not thread-safe; execution on fresh arrays is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr std::size_t kTableAutoLimit = 40'000'000;

struct FftwBuffer {
  explicit FftwBuffer(int n_angles)
      : real(fftw_alloc_real(static_cast<std::size_t>(n_angles))),
        spec(fftw_alloc_complex(static_cast<std::size_t>(n_angles / 2 + 1))) {}
  ~FftwBuffer() {
    fftw_free(real);
    fftw_free(spec);
  }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  double* real;
  fftw_complex* spec;
};

}  // namespace

struct PolarTransform::FftPlans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit FftPlans(int n) {
    std::lock_guard lock(fftw_planner_mutex());
    FftwBuffer tmp(n);
    forward = fftw_plan_dft_r2c_1d(n, tmp.real, tmp.spec, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(n, tmp.spec, tmp.real, FFTW_ESTIMATE);
  }
  ~FftPlans() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
};

AliasedBin alias_frequency(int l, int n_angles) {
  const int m = l % n_angles;
  if (m == 0) {
    return {0, 0.0};
  }
  if (2 * m == n_angles) {
    return {m, 0.0};
  }
  if (2 * m < n_angles) {
    return {m, 1.0};
  }
  return {n_angles - m, -1.0};
}

PolarTransform::PolarTransform(std::vector<double> radii, std::vector<double> radial_weights, int n_angles,
                               int max_degree, RadialCache cache)
    : radii_(std::move(radii)),
      radial_weights_(std::move(radial_weights)),
      n_angles_(n_angles),
      max_degree_(max_degree),
      plans_(std::make_unique<FftPlans>(n_angles)) {
  if (radii_.empty() || radii_.size() != radial_weights_.size() || n_angles < 1 || max_degree < 0) {
    throw std::invalid_argument("inconsistent polar grid description");
  }
  std::size_t total = 0;
  for (int l = 0; l <= max_degree_; ++l) {
    total += static_cast<std::size_t>(jcount(l)) * radii_.size();
  }
  const bool build = cache == RadialCache::Always || (cache == RadialCache::Auto && total <= kTableAutoLimit);
  if (build) {
    table_.resize(total);
    table_offset_.resize(static_cast<std::size_t>(max_degree_) + 1);
    std::size_t off = 0;
    for (int l = 0; l <= max_degree_; ++l) {
      table_offset_[l] = off;
      off += static_cast<std::size_t>(jcount(l)) * radii_.size();
    }
#pragma omp parallel for schedule(dynamic)
    for (int l = 0; l <= max_degree_; ++l) {
      for (int a = 0; a < n_radii(); ++a) {
        double* row = table_.data() + table_offset_[l] + static_cast<std::size_t>(a) * jcount(l);
        radial_profile(l, max_degree_, radii_[a], std::span<double>(row, static_cast<std::size_t>(jcount(l))));
      }
    }
  }
}

PolarTransform::~PolarTransform() = default;

double PolarTransform::angle(int b) const { return 2.0 * std::numbers::pi * b / n_angles_; }

double PolarTransform::node_weight(int a) const { return radial_weights_[a] * 2.0 * std::numbers::pi / n_angles_; }

CoefficientVector PolarTransform::analyze(std::span<const double> values) const {
  if (values.size() != n_nodes()) {
    throw std::invalid_argument("value array does not match the polar grid");
  }
  const int K = max_degree_;
  const int half = n_angles_ / 2 + 1;
  CoefficientVector c(K);
  std::vector<double> radial(static_cast<std::size_t>(K) / 2 + 1);
  FftwBuffer buf(n_angles_);
  for (int a = 0; a < n_radii(); ++a) {
    std::copy_n(values.data() + static_cast<std::size_t>(a) * n_angles_, n_angles_, buf.real);
    fftw_execute_dft_r2c(plans_->forward, buf.real, buf.spec);
    const double w = node_weight(a);
    for (int l = 0; l <= K; ++l) {
      const AliasedBin ab = alias_frequency(l, n_angles_);
      if (ab.bin >= half) {
        continue;
      }
      const double cl = harmonic_normalization(l) * w;
      const double fc = cl * buf.spec[ab.bin][0];
      const double fs = -cl * ab.sin_sign * buf.spec[ab.bin][1];
      const double* prof = nullptr;
      if (has_radial_table()) {
        prof = table_row(l, a);
      } else {
        radial_profile(l, K, radii_[a], radial);
        prof = radial.data();
      }
      for (int j = 0; 2 * j + l <= K; ++j) {
        const int k = l + 2 * j;
        if (l == 0) {
          c.at_rank(degree_offset(k)) += prof[j] * fc;
        } else {
          const std::size_t base = degree_offset(k) + static_cast<std::size_t>(l - 1);
          c.at_rank(base) += prof[j] * fc;
          c.at_rank(base + 1) += prof[j] * fs;
        }
      }
    }
  }
  return c;
}

void PolarTransform::synthesize(const CoefficientVector& c, std::span<double> values) const {
  if (values.size() != n_nodes()) {
    throw std::invalid_argument("value array does not match the polar grid");
  }
  if (c.max_degree() > max_degree_) {
    throw std::invalid_argument("coefficient degree exceeds the transform degree");
  }
  const int K = c.max_degree();
  const int half = n_angles_ / 2 + 1;
  std::vector<double> radial(static_cast<std::size_t>(max_degree_) / 2 + 1);
  FftwBuffer buf(n_angles_);
  for (int a = 0; a < n_radii(); ++a) {
    for (int m = 0; m < half; ++m) {
      buf.spec[m][0] = 0.0;
      buf.spec[m][1] = 0.0;
    }
    for (int l = 0; l <= K; ++l) {
      const double* prof = nullptr;
      if (has_radial_table()) {
        prof = table_row(l, a);
      } else {
        radial_profile(l, K, radii_[a], radial);
        prof = radial.data();
      }
      double acc_c = 0.0;
      double acc_s = 0.0;
      for (int j = 0; 2 * j + l <= K; ++j) {
        const int k = l + 2 * j;
        if (l == 0) {
          acc_c += prof[j] * c.at_rank(degree_offset(k));
        } else {
          const std::size_t base = degree_offset(k) + static_cast<std::size_t>(l - 1);
          acc_c += prof[j] * c.at_rank(base);
          acc_s += prof[j] * c.at_rank(base + 1);
        }
      }
      const double cl = harmonic_normalization(l);
      const AliasedBin ab = alias_frequency(l, n_angles_);
      if (ab.sin_sign == 0.0) {
        buf.spec[ab.bin][0] += cl * acc_c;
      } else {
        buf.spec[ab.bin][0] += 0.5 * cl * acc_c;
        buf.spec[ab.bin][1] -= 0.5 * cl * ab.sin_sign * acc_s;
      }
    }
    fftw_execute_dft_c2r(plans_->backward, buf.spec, buf.real);
    std::copy_n(buf.real, n_angles_, values.data() + static_cast<std::size_t>(a) * n_angles_);
  }
}

void PolarTransform::synthesize_rows(std::span<const CoefficientVector* const> batch, const RowVisitor& visit) const {
  if (!has_radial_table()) {
    throw std::logic_error("batched synthesis needs the radial table");
  }
  const int B = static_cast<int>(batch.size());
  if (B == 0) {
    return;
  }
  for (const CoefficientVector* c : batch) {
    if (c->max_degree() > max_degree_) {
      throw std::invalid_argument("coefficient degree exceeds the transform degree");
    }
  }
  const int K = max_degree_;
  const int R = n_radii();
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  // radial_sums[l] is R x 2B: columns [cos parts of items | sin parts of items].
  std::vector<Eigen::MatrixXd> radial_sums(static_cast<std::size_t>(K) + 1);
  for (int l = 0; l <= K; ++l) {
    const int nj = jcount(l);
    Eigen::MatrixXd coef = Eigen::MatrixXd::Zero(nj, 2 * B);
    for (int item = 0; item < B; ++item) {
      const CoefficientVector& c = *batch[item];
      for (int j = 0; j < nj; ++j) {
        const int k = l + 2 * j;
        if (k > c.max_degree()) {
          break;
        }
        if (l == 0) {
          coef(j, item) = c.at_rank(degree_offset(k));
        } else {
          const std::size_t base = degree_offset(k) + static_cast<std::size_t>(l - 1);
          coef(j, item) = c.at_rank(base);
          coef(j, B + item) = c.at_rank(base + 1);
        }
      }
    }
    Eigen::Map<const RowMajor> table(table_.data() + table_offset_[l], R, nj);
    radial_sums[l].noalias() = table * coef;
  }
  const int half = n_angles_ / 2 + 1;
  FftwBuffer buf(n_angles_);
  for (int a = 0; a < R; ++a) {
    for (int item = 0; item < B; ++item) {
      for (int m = 0; m < half; ++m) {
        buf.spec[m][0] = 0.0;
        buf.spec[m][1] = 0.0;
      }
      for (int l = 0; l <= K; ++l) {
        const double cl = harmonic_normalization(l);
        const double acc_c = radial_sums[l](a, item);
        const double acc_s = radial_sums[l](a, B + item);
        const AliasedBin ab = alias_frequency(l, n_angles_);
        if (ab.sin_sign == 0.0) {
          buf.spec[ab.bin][0] += cl * acc_c;
        } else {
          buf.spec[ab.bin][0] += 0.5 * cl * acc_c;
          buf.spec[ab.bin][1] -= 0.5 * cl * ab.sin_sign * acc_s;
        }
      }
      fftw_execute_dft_c2r(plans_->backward, buf.spec, buf.real);
      visit(a, item, std::span<const double>(buf.real, static_cast<std::size_t>(n_angles_)));
    }
  }
}

}  // namespace radneedlet
