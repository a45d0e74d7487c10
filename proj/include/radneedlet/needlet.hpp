#pragma once

// Needlets on the unit disk: cut-off windows, Littlewood-Paley multipliers,
// positive product cubature, father/mother atoms and the mother-needlet
// tight frame, all expressed against the orthonormal basis f_{k,l,i}.

#include "radneedlet/polar_transform.hpp"
#include "radneedlet/svd_basis.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace radneedlet {

enum class CutoffKind { SmoothExp, CosineTaper, Hard };

CutoffKind parse_cutoff_kind(const std::string& name);
std::string to_string(CutoffKind kind);

enum class Window { A, B, SqrtA, SqrtB };

/// Cut-off a on [0, inf): a = 1 on [0, 1/2], a = 0 on [1, inf), non-increasing
/// in between. b(t) = a(t/2) - a(t) is supported in [1/2, 2].
class CutoffFunction {
public:
  explicit CutoffFunction(CutoffKind kind = CutoffKind::SmoothExp) : kind_(kind) {}

  CutoffKind kind() const { return kind_; }
  double a(double t) const;
  double b(double t) const { return a(0.5 * t) - a(t); }
  double window(Window w, double t) const;

private:
  CutoffKind kind_;
};

CutoffFunction build_cutoff(CutoffKind kind);

/// Geodesic distance of the lifted points on the upper hemisphere.
double metric_d(const DiskPoint& x, const DiskPoint& y);

/// W_j(x) = 2^{-j} + sqrt(1 - |x|^2).
double weight_W(int j, const DiskPoint& x);

/// Positive-weight cubature on the disk, exact for polynomials of total degree
/// <= exact_degree. Built as Gauss-Legendre in u = 2r^2 - 1 times a uniform
/// angular grid, so the rule also carries its product structure.
struct CubatureRule {
  std::vector<DiskPoint> nodes;
  std::vector<double> weights;
  int exact_degree = 0;

  std::vector<double> radii;           // ascending
  std::vector<double> radial_weights;  // node weight = radial_weights[a] * 2 pi / n_angles
  int n_angles = 0;

  std::size_t size() const { return nodes.size(); }
  int n_radii() const { return static_cast<int>(radii.size()); }
  std::size_t node_index(int radius, int angle) const {
    return static_cast<std::size_t>(radius) * n_angles + angle;
  }

  /// Polar transform over this rule's nodes for coefficients up to max_degree.
  std::unique_ptr<PolarTransform> transform(int max_degree,
                                            PolarTransform::RadialCache cache = PolarTransform::RadialCache::Auto) const;
};

CubatureRule cubature_disk(int exact_degree);

/// Exactness degree 2^{j+2} of the level-j needlet cubature.
int needlet_rule_degree(int j);

/// Kernel of the orthogonal projector onto polynomials of exact degree k.
double kernel_L(int k, const DiskPoint& x, const DiskPoint& y);

/// Multiplies the degree-k block by window(k / 2^j). Realizes A_j, B_j (and
/// their square-root splittings C_j, D_j) in coefficient space.
CoefficientVector apply_multiplier(const CoefficientVector& c, int j, Window window,
                                   const CutoffFunction& cutoff = CutoffFunction());

enum class AtomKind { Father, Mother };

struct NeedletAtom {
  int level = 0;
  DiskPoint node;
  double weight = 0.0;
  AtomKind kind = AtomKind::Father;
};

/// Highest degree k with a nonzero window for atoms of this kind and level.
int atom_degree(int level, AtomKind kind);

/// Coefficients gamma_{k,l,i} = <f_{k,l,i}, atom> = sqrt(w) sqrt(window(k/2^j)) f_{k,l,i}(node).
CoefficientVector atom_coefficients(const NeedletAtom& atom, const CutoffFunction& cutoff = CutoffFunction());

/// Pointwise value sqrt(w) C_j(x, node) (father) or sqrt(w) D_j(x, node) (mother).
double needlet_eval(const NeedletAtom& atom, const DiskPoint& x, const CutoffFunction& cutoff = CutoffFunction());

/// All atoms of one level, ordered as the nodes of cubature_disk(2^{j+2}).
std::vector<NeedletAtom> level_atoms(int j, AtomKind kind);

/// Dense (atoms x indices) table of gamma coefficients for one level.
class GammaTable {
public:
  GammaTable(int j, AtomKind kind, const CutoffFunction& cutoff = CutoffFunction());

  int level() const { return level_; }
  int max_degree() const { return max_degree_; }
  std::size_t n_atoms() const { return rule_.size(); }
  std::size_t n_indices() const { return n_indices_; }
  const CubatureRule& rule() const { return rule_; }
  std::span<const double> row(std::size_t atom) const {
    return std::span<const double>(data_).subspan(atom * n_indices_, n_indices_);
  }

  /// alpha_atom = sum_idx gamma[atom, idx] c[idx] (c truncated to this table's degree).
  std::vector<double> analyze(const CoefficientVector& c) const;

private:
  int level_;
  int max_degree_;
  std::size_t n_indices_;
  CubatureRule rule_;
  std::vector<double> data_;
};

/// Father-needlet coefficients alpha_{j,xi} = <f, phi_{j,xi}> over the level-j rule.
std::vector<double> father_analyze(const CoefficientVector& c, int j, const CutoffFunction& cutoff = CutoffFunction());

/// sum_xi alpha_xi phi_{j,xi} in coefficient space (degree bound max_degree).
CoefficientVector father_synthesize(std::span<const double> alpha, int j, int max_degree,
                                    const CutoffFunction& cutoff = CutoffFunction());

/// Mother-needlet frame coefficients. Level -1 carries the unit-norm constant
/// atom f_{0,0,1}; levels 0..j_max carry beta_{j,xi} over the level-j rule.
struct FrameCoefficients {
  int max_degree = 0;
  double level_minus_one = 0.0;
  std::vector<std::vector<double>> levels;

  double squared_norm() const;
};

/// Throws std::invalid_argument when c has degree >= 2^{j_max}.
FrameCoefficients frame_analyze(const CoefficientVector& c, int j_max, const CutoffFunction& cutoff = CutoffFunction());

CoefficientVector frame_synthesize(const FrameCoefficients& beta, const CutoffFunction& cutoff = CutoffFunction());

/// Lp norm of one atom. Even integer p: exact cubature; otherwise a midpoint
/// polar grid of 2^{j+4} x 2^{j+4} nodes (p = infinity as the grid maximum).
double atom_lp_norm(const NeedletAtom& atom, double p, const CutoffFunction& cutoff = CutoffFunction());

/// Per-ring Lp norms of the level-j atoms. Atoms on one ring of the product
/// rule are rotations of each other, so one representative per ring suffices.
struct RingNorm {
  double radius;
  double weight;
  int multiplicity;
  double norm;
};
std::vector<RingNorm> ring_lp_norms(int j, double p, AtomKind kind = AtomKind::Father,
                                    const CutoffFunction& cutoff = CutoffFunction());

/// sum over xi in chi_j of ||h_{j,xi}||_p^p.
double stability_sums(int j, double p, AtomKind kind = AtomKind::Father,
                      const CutoffFunction& cutoff = CutoffFunction());

/// max |atom(x)| over d(x, node) >= distance_factor 2^{-j}, divided by max |atom|,
/// sampled on the midpoint polar grid.
double far_field_ratio(const NeedletAtom& atom, double distance_factor = 10.0,
                       const CutoffFunction& cutoff = CutoffFunction());

}  // namespace radneedlet
