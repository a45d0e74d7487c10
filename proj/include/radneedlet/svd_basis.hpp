#pragma once

// Singular value decomposition of the Radon transform on the unit disk.
//
// f_{k,l,i}(r, theta) = sqrt(2k+2) P_j^{(0,l)}(2r^2 - 1) r^l Y_{l,i}(theta),   j = (k - l) / 2
// g_{k,l,i}(theta, s) = (pi/2)^{-1/2} (1 - s^2)^{1/2} C_k^1(s) Y_{l,i}(theta)
//
// with Y_{l,1} = c_l cos(l theta), Y_{l,2} = c_l sin(l theta), c_0 = 1/sqrt(2 pi),
// c_l = 1/sqrt(pi). {f} is orthonormal in L2(B^2, dx); {g} is orthonormal in
// L2(dmu), dmu = dtheta ds / (1 - s^2)^{1/2}; R f_{k,l,i} = lambda_k g_{k,l,i}.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace radneedlet {

/// A point of the closed unit disk in polar form.
struct DiskPoint {
  double r = 0.0;
  double theta = 0.0;

  /// Throws std::invalid_argument when r is negative or exceeds 1 (beyond rounding).
  static DiskPoint polar(double r, double theta);
  static DiskPoint cartesian(double x, double y);

  double x() const;
  double y() const;
};

/// Basis triple (k, l, i). Valid iff 0 <= l <= k, l = k (mod 2), i in {1, 2}
/// and i = 1 whenever l = 0.
class SvdIndex {
public:
  SvdIndex(int k, int l, int i);

  int k() const { return k_; }
  int l() const { return l_; }
  int i() const { return i_; }
  /// Radial Jacobi degree (k - l) / 2.
  int j() const { return (k_ - l_) / 2; }

  /// Position in the lexicographic (k, l, i) enumeration.
  std::size_t rank() const;
  static SvdIndex from_rank(std::size_t rank);

  friend bool operator==(const SvdIndex&, const SvdIndex&) = default;

private:
  int k_;
  int l_;
  int i_;
};

/// Number of indices with degree <= max_degree: (K+1)(K+2)/2.
std::size_t index_count(int max_degree);

/// Rank of the first index of degree k.
inline std::size_t degree_offset(int k) { return static_cast<std::size_t>(k) * (k + 1) / 2; }

std::vector<SvdIndex> enumerate_indices(int max_degree);

/// Dense coefficients over all indices of degree <= max_degree, in rank order.
class CoefficientVector {
public:
  CoefficientVector() = default;
  explicit CoefficientVector(int max_degree);
  CoefficientVector(int max_degree, std::vector<double> values);

  int max_degree() const { return max_degree_; }
  std::size_t size() const { return values_.size(); }

  double& operator[](const SvdIndex& idx) { return values_[idx.rank()]; }
  double operator[](const SvdIndex& idx) const { return values_[idx.rank()]; }
  double& at_rank(std::size_t r) { return values_[r]; }
  double at_rank(std::size_t r) const { return values_[r]; }

  /// The k+1 entries of degree k.
  std::span<double> degree_block(int k);
  std::span<const double> degree_block(int k) const;

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// Copy restricted (or zero-extended) to another degree bound.
  CoefficientVector resized(int max_degree) const;

  double squared_norm() const;

private:
  int max_degree_ = -1;
  std::vector<double> values_;
};

/// Angular normalization c_l.
double harmonic_normalization(int l);

double eval_f(const SvdIndex& idx, const DiskPoint& p);

/// Throws std::invalid_argument when |s| >= 1.
double eval_g(const SvdIndex& idx, double theta, double s);

/// Radial factors sqrt(2k+2) r^l P_j^{(0,l)}(2r^2 - 1) for k = l, l+2, ..., <= max_degree,
/// written to out[j]; out needs (max_degree - l)/2 + 1 entries. The r^l factor is
/// folded into the recurrence seed, so no intermediate overflows for large l.
void radial_profile(int l, int max_degree, double r, std::span<double> out);

/// Writes f_{k,l,i}(p) for every index of degree <= max_degree into out (rank order).
void eval_f_all(int max_degree, const DiskPoint& p, std::span<double> out);

/// Writes g_{k,l,i}(theta, s) for all indices; |s| <= 1 accepted (the weight vanishes at +-1).
void eval_g_all(int max_degree, double theta, double s, std::span<double> out);

/// sum_idx c[idx] f_idx(p).
double synthesize_at(const CoefficientVector& c, const DiskPoint& p);

/// Singular value lambda_k of the Radon transform on B^d:
/// lambda_k^2 = 2^d pi^{d-1} / (k+1)_{d-1}.
double singular_value(int k, int dimension = 2);

/// Componentwise multiplication by lambda_k (f-coefficients -> g-coefficients).
CoefficientVector radon_forward_svd(const CoefficientVector& c);

/// Componentwise division by lambda_k (g-coefficients -> f-coefficients).
CoefficientVector radon_inverse_svd(const CoefficientVector& y);

using DiskFunction = std::function<double(const DiskPoint&)>;

/// Integral of f along {x : <x, e_theta> = s} by an n_quad-point Gauss-Legendre
/// rule on the chord (split in `panels` equal panels).
double radon_line_integral(const DiskFunction& f, double theta, double s, int n_quad, int panels = 1);

/// Same line integral for piecewise-constant integrands: a fine panel grid,
/// with panels that contain a jump bisected down to width tol.
double radon_line_integral_adaptive(const DiskFunction& f, double theta, double s, double tol = 1e-12);

struct ParallelCoordinates {
  double theta;
  double s;
};

/// Fan-beam (source angle theta1, detector angle theta2) to parallel-beam
/// (theta1 - theta2 mod 2pi, sin theta2).
ParallelCoordinates fanbeam_to_parallel(double theta1, double theta2);

}  // namespace radneedlet
