#include "radneedlet/svd_basis.hpp"

#include "radneedlet/orthopoly.hpp"
#include "radneedlet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace radneedlet {

namespace {

constexpr double kPi = std::numbers::pi;
// (pi/2)^{-1/2}: inverse square root of the Gegenbauer norm h_k^{(1)} = pi/2.
const double kInvSqrtGegenbauerNorm = std::sqrt(2.0 / kPi);

}  // namespace

DiskPoint DiskPoint::polar(double r, double theta) {
  if (!(r >= 0.0) || r > 1.0 + 1e-12) {
    throw std::invalid_argument("disk point radius must lie in [0, 1], got " + std::to_string(r));
  }
  return DiskPoint{std::min(r, 1.0), theta};
}

DiskPoint DiskPoint::cartesian(double x, double y) { return polar(std::hypot(x, y), std::atan2(y, x)); }

double DiskPoint::x() const { return r * std::cos(theta); }
double DiskPoint::y() const { return r * std::sin(theta); }

SvdIndex::SvdIndex(int k, int l, int i) : k_(k), l_(l), i_(i) {
  const bool ok = k >= 0 && l >= 0 && l <= k && (k - l) % 2 == 0 && (i == 1 || i == 2) && !(l == 0 && i == 2);
  if (!ok) {
    throw std::invalid_argument("invalid SVD index (" + std::to_string(k) + ", " + std::to_string(l) + ", " +
                                std::to_string(i) + ")");
  }
}

std::size_t SvdIndex::rank() const {
  return degree_offset(k_) + (l_ == 0 ? 0 : static_cast<std::size_t>(l_ + i_ - 2));
}

SvdIndex SvdIndex::from_rank(std::size_t rank) {
  int k = static_cast<int>((std::sqrt(8.0 * static_cast<double>(rank) + 1.0) - 1.0) / 2.0);
  while (degree_offset(k + 1) <= rank) {
    ++k;
  }
  while (degree_offset(k) > rank) {
    --k;
  }
  const int pos = static_cast<int>(rank - degree_offset(k));
  if (k % 2 == 0) {
    if (pos == 0) {
      return SvdIndex(k, 0, 1);
    }
    return SvdIndex(k, 2 * ((pos + 1) / 2), (pos + 1) % 2 + 1);
  }
  return SvdIndex(k, 1 + 2 * (pos / 2), pos % 2 + 1);
}

std::size_t index_count(int max_degree) {
  if (max_degree < 0) {
    return 0;
  }
  return degree_offset(max_degree + 1);
}

std::vector<SvdIndex> enumerate_indices(int max_degree) {
  if (max_degree < 0) {
    throw std::invalid_argument("max degree must be non-negative");
  }
  std::vector<SvdIndex> out;
  out.reserve(index_count(max_degree));
  for (int k = 0; k <= max_degree; ++k) {
    for (int l = k % 2; l <= k; l += 2) {
      out.emplace_back(k, l, 1);
      if (l > 0) {
        out.emplace_back(k, l, 2);
      }
    }
  }
  return out;
}

CoefficientVector::CoefficientVector(int max_degree) : max_degree_(max_degree), values_(index_count(max_degree)) {
  if (max_degree < 0) {
    throw std::invalid_argument("max degree must be non-negative");
  }
}

CoefficientVector::CoefficientVector(int max_degree, std::vector<double> values)
    : max_degree_(max_degree), values_(std::move(values)) {
  if (max_degree < 0 || values_.size() != index_count(max_degree)) {
    throw std::invalid_argument("coefficient vector of degree " + std::to_string(max_degree) + " needs " +
                                std::to_string(index_count(max_degree)) + " values, got " +
                                std::to_string(values_.size()));
  }
}

std::span<double> CoefficientVector::degree_block(int k) {
  return std::span<double>(values_).subspan(degree_offset(k), static_cast<std::size_t>(k) + 1);
}

std::span<const double> CoefficientVector::degree_block(int k) const {
  return std::span<const double>(values_).subspan(degree_offset(k), static_cast<std::size_t>(k) + 1);
}

CoefficientVector CoefficientVector::resized(int max_degree) const {
  CoefficientVector out(max_degree);
  const std::size_t n = std::min(out.size(), size());
  std::copy_n(values_.begin(), n, out.values_.begin());
  return out;
}

double CoefficientVector::squared_norm() const {
  double s = 0.0;
  for (double v : values_) {
    s += v * v;
  }
  return s;
}

double harmonic_normalization(int l) { return l == 0 ? 1.0 / std::sqrt(2.0 * kPi) : 1.0 / std::sqrt(kPi); }

void radial_profile(int l, int max_degree, double r, std::span<double> out) {
  const int jmax = (max_degree - l) / 2;
  if (jmax < 0) {
    return;
  }
  const double u = 2.0 * r * r - 1.0;
  const double seed = std::pow(r, l);
  const double b = static_cast<double>(l);
  out[0] = seed;
  if (jmax >= 1) {
    out[1] = seed * (1.0 + (b + 2.0) * (u - 1.0) * 0.5);
  }
  const double a2b2 = -b * b;
  for (int m = 1; m < jmax; ++m) {
    const double n = static_cast<double>(m);
    const double s = 2.0 * n + b;
    const double c0 = 2.0 * (n + 1.0) * (n + b + 1.0) * s;
    const double c1 = (s + 1.0) * ((s + 2.0) * s * u + a2b2);
    const double c2 = 2.0 * n * (n + b) * (s + 2.0);
    out[m + 1] = (c1 * out[m] - c2 * out[m - 1]) / c0;
  }
  for (int j = 0; j <= jmax; ++j) {
    out[j] *= std::sqrt(2.0 * (l + 2 * j) + 2.0);
  }
}

double eval_f(const SvdIndex& idx, const DiskPoint& p) {
  const double radial = std::sqrt(2.0 * idx.k() + 2.0) *
                        jacobi_eval(idx.j(), JacobiParams(0.0, idx.l()), 2.0 * p.r * p.r - 1.0) *
                        std::pow(p.r, idx.l());
  const double ang = idx.i() == 1 ? std::cos(idx.l() * p.theta) : std::sin(idx.l() * p.theta);
  return radial * harmonic_normalization(idx.l()) * ang;
}

double eval_g(const SvdIndex& idx, double theta, double s) {
  if (!(std::abs(s) < 1.0)) {
    throw std::invalid_argument("g basis requires |s| < 1");
  }
  const double ang = idx.i() == 1 ? std::cos(idx.l() * theta) : std::sin(idx.l() * theta);
  return kInvSqrtGegenbauerNorm * std::sqrt(1.0 - s * s) * gegenbauer_eval(idx.k(), GegenbauerParam(1.0), s) *
         harmonic_normalization(idx.l()) * ang;
}

void eval_f_all(int max_degree, const DiskPoint& p, std::span<double> out) {
  std::vector<double> radial(static_cast<std::size_t>(max_degree) / 2 + 1);
  for (int l = 0; l <= max_degree; ++l) {
    radial_profile(l, max_degree, p.r, radial);
    const double cl = harmonic_normalization(l);
    const double cs = cl * std::cos(l * p.theta);
    const double sn = cl * std::sin(l * p.theta);
    for (int j = 0; 2 * j + l <= max_degree; ++j) {
      const int k = l + 2 * j;
      if (l == 0) {
        out[degree_offset(k)] = radial[j] * cs;
      } else {
        const std::size_t base = degree_offset(k) + static_cast<std::size_t>(l - 1);
        out[base] = radial[j] * cs;
        out[base + 1] = radial[j] * sn;
      }
    }
  }
}

void eval_g_all(int max_degree, double theta, double s, std::span<double> out) {
  std::vector<double> cheb(static_cast<std::size_t>(max_degree) + 1);
  gegenbauer_sequence(GegenbauerParam(1.0), s, cheb);
  const double weight = kInvSqrtGegenbauerNorm * std::sqrt(std::max(0.0, 1.0 - s * s));
  for (int k = 0; k <= max_degree; ++k) {
    const double radial = weight * cheb[k];
    for (int l = k % 2; l <= k; l += 2) {
      const double cl = harmonic_normalization(l) * radial;
      if (l == 0) {
        out[degree_offset(k)] = cl;
      } else {
        const std::size_t base = degree_offset(k) + static_cast<std::size_t>(l - 1);
        out[base] = cl * std::cos(l * theta);
        out[base + 1] = cl * std::sin(l * theta);
      }
    }
  }
}

double synthesize_at(const CoefficientVector& c, const DiskPoint& p) {
  const int K = c.max_degree();
  std::vector<double> radial(static_cast<std::size_t>(K) / 2 + 1);
  double sum = 0.0;
  for (int l = 0; l <= K; ++l) {
    radial_profile(l, K, p.r, radial);
    double acc_c = 0.0;
    double acc_s = 0.0;
    for (int j = 0; 2 * j + l <= K; ++j) {
      const int k = l + 2 * j;
      if (l == 0) {
        acc_c += radial[j] * c.at_rank(degree_offset(k));
      } else {
        const std::size_t base = degree_offset(k) + static_cast<std::size_t>(l - 1);
        acc_c += radial[j] * c.at_rank(base);
        acc_s += radial[j] * c.at_rank(base + 1);
      }
    }
    sum += harmonic_normalization(l) * (acc_c * std::cos(l * p.theta) + acc_s * std::sin(l * p.theta));
  }
  return sum;
}

double singular_value(int k, int dimension) {
  if (k < 0 || dimension < 2) {
    throw std::invalid_argument("singular value needs k >= 0 and dimension >= 2");
  }
  double pochhammer = 1.0;
  for (int m = 1; m < dimension; ++m) {
    pochhammer *= static_cast<double>(k + m);
  }
  return std::sqrt(std::pow(2.0, dimension) * std::pow(kPi, dimension - 1) / pochhammer);
}

CoefficientVector radon_forward_svd(const CoefficientVector& c) {
  CoefficientVector y = c;
  for (int k = 0; k <= c.max_degree(); ++k) {
    const double lam = singular_value(k);
    for (double& v : y.degree_block(k)) {
      v *= lam;
    }
  }
  return y;
}

CoefficientVector radon_inverse_svd(const CoefficientVector& y) {
  CoefficientVector c = y;
  for (int k = 0; k <= y.max_degree(); ++k) {
    const double lam = singular_value(k);
    for (double& v : c.degree_block(k)) {
      v /= lam;
    }
  }
  return c;
}

namespace {

struct Chord {
  double half_length;
  double cx, cy;  // foot point s e_theta
  double dx, dy;  // direction e_theta^perp
};

Chord chord(double theta, double s) {
  if (std::abs(s) > 1.0) {
    throw std::invalid_argument("line offset must satisfy |s| <= 1");
  }
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  return Chord{std::sqrt(std::max(0.0, 1.0 - s * s)), s * c, s * sn, -sn, c};
}

}  // namespace

double radon_line_integral(const DiskFunction& f, double theta, double s, int n_quad, int panels) {
  if (n_quad < 2) {
    throw std::invalid_argument("line integral needs at least two quadrature points");
  }
  const Chord ch = chord(theta, s);
  if (ch.half_length == 0.0) {
    return 0.0;
  }
  auto along = [&](double t) {
    const double x = ch.cx + t * ch.dx;
    const double y = ch.cy + t * ch.dy;
    const double r = std::min(1.0, std::hypot(x, y));
    return f(DiskPoint{r, std::atan2(y, x)});
  };
  return integrate_composite(along, -ch.half_length, ch.half_length, gauss_legendre(n_quad), panels);
}

double radon_line_integral_adaptive(const DiskFunction& f, double theta, double s, double tol) {
  const Chord ch = chord(theta, s);
  if (ch.half_length == 0.0) {
    return 0.0;
  }
  auto along = [&](double t) {
    const double x = ch.cx + t * ch.dx;
    const double y = ch.cy + t * ch.dy;
    const double r = std::min(1.0, std::hypot(x, y));
    return f(DiskPoint{r, std::atan2(y, x)});
  };
  // Piecewise constant: panels whose samples agree are integrated exactly,
  // the others are bisected until their width drops below tol.
  constexpr int kPanels = 4096;
  constexpr int kSamples = 9;
  std::function<double(double, double, double, double)> piece = [&](double lo, double hi, double flo, double fhi) {
    const double w = hi - lo;
    if (w <= tol) {
      return 0.5 * w * (flo + fhi);
    }
    bool flat = flo == fhi;
    for (int q = 1; flat && q < kSamples - 1; ++q) {
      flat = along(lo + w * q / (kSamples - 1)) == flo;
    }
    if (flat) {
      return w * flo;
    }
    const double mid = 0.5 * (lo + hi);
    const double fmid = along(mid);
    return piece(lo, mid, flo, fmid) + piece(mid, hi, fmid, fhi);
  };
  const double h = 2.0 * ch.half_length / kPanels;
  double total = 0.0;
  double fprev = along(-ch.half_length);
  for (int p = 0; p < kPanels; ++p) {
    const double lo = -ch.half_length + p * h;
    const double hi = p + 1 == kPanels ? ch.half_length : lo + h;
    const double fhi = along(hi);
    total += piece(lo, hi, fprev, fhi);
    fprev = fhi;
  }
  return total;
}

ParallelCoordinates fanbeam_to_parallel(double theta1, double theta2) {
  double theta = std::fmod(theta1 - theta2, 2.0 * kPi);
  if (theta < 0.0) {
    theta += 2.0 * kPi;
  }
  if (theta >= 2.0 * kPi) {
    theta = 0.0;
  }
  return ParallelCoordinates{theta, std::sin(theta2)};
}

}  // namespace radneedlet
