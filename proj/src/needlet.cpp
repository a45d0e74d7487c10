#include "radneedlet/needlet.hpp"

#include "radneedlet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace radneedlet {

namespace {

constexpr double kPi = std::numbers::pi;

double bump_exp(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

double level_scale(int j) { return std::ldexp(1.0, j); }

// Window values w(k / 2^j) for k = 0..K.
std::vector<double> window_table(int K, int j, Window w, const CutoffFunction& cutoff) {
  std::vector<double> out(static_cast<std::size_t>(K) + 1);
  const double scale = level_scale(j);
  for (int k = 0; k <= K; ++k) {
    out[k] = cutoff.window(w, k / scale);
  }
  return out;
}

Window analysis_window(AtomKind kind) { return kind == AtomKind::Father ? Window::SqrtA : Window::SqrtB; }

// Midpoint polar grid with n x n nodes: radii (a + 1/2)/n, weight r dr dtheta.
std::unique_ptr<PolarTransform> midpoint_grid(int n, int max_degree) {
  std::vector<double> radii(n), weights(n);
  for (int a = 0; a < n; ++a) {
    radii[a] = (a + 0.5) / n;
    weights[a] = radii[a] / n;
  }
  return std::make_unique<PolarTransform>(std::move(radii), std::move(weights), n, max_degree);
}

// Values of sum_k window(k/2^j) c_k f_k at the level-j rule nodes.
std::vector<double> level_values(const CoefficientVector& c, int j, Window w, const CutoffFunction& cutoff,
                                 const CubatureRule& rule) {
  const CoefficientVector windowed = apply_multiplier(c, j, w, cutoff);
  auto tr = rule.transform(windowed.max_degree());
  std::vector<double> values(rule.size());
  tr->synthesize(windowed, values);
  return values;
}

std::vector<double> level_analyze(const CoefficientVector& c, int j, Window w, const CutoffFunction& cutoff) {
  const CubatureRule rule = cubature_disk(needlet_rule_degree(j));
  const int degree = std::min(c.max_degree(), atom_degree(j, w == Window::SqrtA ? AtomKind::Father : AtomKind::Mother));
  std::vector<double> values = level_values(c.resized(degree), j, w, cutoff, rule);
  for (std::size_t n = 0; n < values.size(); ++n) {
    values[n] *= std::sqrt(rule.weights[n]);
  }
  return values;
}

CoefficientVector level_synthesize(std::span<const double> coeffs, int j, Window w, int max_degree,
                                   const CutoffFunction& cutoff) {
  const CubatureRule rule = cubature_disk(needlet_rule_degree(j));
  if (coeffs.size() != rule.size()) {
    throw std::invalid_argument("needlet coefficient count does not match the level-" + std::to_string(j) + " rule");
  }
  std::vector<double> values(rule.size());
  for (std::size_t n = 0; n < values.size(); ++n) {
    values[n] = coeffs[n] / std::sqrt(rule.weights[n]);
  }
  auto tr = rule.transform(max_degree);
  return apply_multiplier(tr->analyze(values), j, w, cutoff);
}

}  // namespace

CutoffKind parse_cutoff_kind(const std::string& name) {
  if (name == "smooth_exp" || name == "smooth") {
    return CutoffKind::SmoothExp;
  }
  if (name == "cosine_taper" || name == "cosine") {
    return CutoffKind::CosineTaper;
  }
  if (name == "hard") {
    return CutoffKind::Hard;
  }
  throw std::invalid_argument("unknown cut-off '" + name + "' (expected smooth_exp, cosine_taper or hard)");
}

std::string to_string(CutoffKind kind) {
  switch (kind) {
    case CutoffKind::SmoothExp:
      return "smooth_exp";
    case CutoffKind::CosineTaper:
      return "cosine_taper";
    case CutoffKind::Hard:
      return "hard";
  }
  return "unknown";
}

double CutoffFunction::a(double t) const {
  if (t < 0.0) {
    throw std::invalid_argument("cut-off evaluated at a negative argument");
  }
  switch (kind_) {
    case CutoffKind::Hard:
      return t <= 1.0 ? 1.0 : 0.0;
    case CutoffKind::CosineTaper:
      if (t <= 0.5) {
        return 1.0;
      }
      if (t >= 1.0) {
        return 0.0;
      }
      return 0.5 * (1.0 + std::cos(kPi * (2.0 * t - 1.0)));
    case CutoffKind::SmoothExp:
      break;
  }
  if (t <= 0.5) {
    return 1.0;
  }
  if (t >= 1.0) {
    return 0.0;
  }
  const double u = 2.0 * (1.0 - t);
  const double e0 = bump_exp(u);
  return e0 / (e0 + bump_exp(1.0 - u));
}

double CutoffFunction::window(Window w, double t) const {
  switch (w) {
    case Window::A:
      return a(t);
    case Window::B:
      return b(t);
    case Window::SqrtA:
      return std::sqrt(a(t));
    case Window::SqrtB:
      return std::sqrt(std::max(0.0, b(t)));
  }
  return 0.0;
}

CutoffFunction build_cutoff(CutoffKind kind) { return CutoffFunction(kind); }

double metric_d(const DiskPoint& x, const DiskPoint& y) {
  const double inner = x.r * y.r * std::cos(x.theta - y.theta);
  const double lift = std::sqrt(std::max(0.0, 1.0 - x.r * x.r)) * std::sqrt(std::max(0.0, 1.0 - y.r * y.r));
  return std::acos(std::clamp(inner + lift, -1.0, 1.0));
}

double weight_W(int j, const DiskPoint& x) {
  return std::ldexp(1.0, -j) + std::sqrt(std::max(0.0, 1.0 - x.r * x.r));
}

std::unique_ptr<PolarTransform> CubatureRule::transform(int max_degree, PolarTransform::RadialCache cache) const {
  return std::make_unique<PolarTransform>(radii, radial_weights, n_angles, max_degree, cache);
}

CubatureRule cubature_disk(int exact_degree) {
  if (exact_degree < 0) {
    throw std::invalid_argument("cubature exactness degree must be non-negative");
  }
  const int m_r = (exact_degree + 2) / 2;
  const int m_t = exact_degree + 1;
  const GaussLegendre& gl = gauss_legendre(m_r);
  CubatureRule rule;
  rule.exact_degree = exact_degree;
  rule.n_angles = m_t;
  rule.radii.resize(m_r);
  rule.radial_weights.resize(m_r);
  for (int a = 0; a < m_r; ++a) {
    // r dr = du / 4 with u = 2r^2 - 1.
    rule.radii[a] = std::sqrt(0.5 * (1.0 + gl.nodes[a]));
    rule.radial_weights[a] = 0.25 * gl.weights[a];
  }
  rule.nodes.reserve(static_cast<std::size_t>(m_r) * m_t);
  rule.weights.reserve(static_cast<std::size_t>(m_r) * m_t);
  for (int a = 0; a < m_r; ++a) {
    for (int b = 0; b < m_t; ++b) {
      rule.nodes.push_back(DiskPoint{rule.radii[a], 2.0 * kPi * b / m_t});
      rule.weights.push_back(rule.radial_weights[a] * 2.0 * kPi / m_t);
    }
  }
  return rule;
}

int needlet_rule_degree(int j) {
  if (j < 0 || j > 20) {
    throw std::invalid_argument("needlet level out of range");
  }
  return 1 << (j + 2);
}

double kernel_L(int k, const DiskPoint& x, const DiskPoint& y) {
  if (k < 0) {
    throw std::invalid_argument("kernel degree must be non-negative");
  }
  std::vector<double> px(static_cast<std::size_t>(k) / 2 + 1), py(px.size());
  double sum = 0.0;
  for (int l = k % 2; l <= k; l += 2) {
    radial_profile(l, k, x.r, px);
    radial_profile(l, k, y.r, py);
    const int j = (k - l) / 2;
    const double cl = harmonic_normalization(l);
    sum += cl * cl * px[j] * py[j] * std::cos(l * (x.theta - y.theta));
  }
  return sum;
}

CoefficientVector apply_multiplier(const CoefficientVector& c, int j, Window window, const CutoffFunction& cutoff) {
  CoefficientVector out = c;
  const std::vector<double> w = window_table(c.max_degree(), j, window, cutoff);
  for (int k = 0; k <= c.max_degree(); ++k) {
    for (double& v : out.degree_block(k)) {
      v *= w[k];
    }
  }
  return out;
}

int atom_degree(int level, AtomKind kind) {
  return kind == AtomKind::Father ? (1 << level) : (1 << (level + 1));
}

CoefficientVector atom_coefficients(const NeedletAtom& atom, const CutoffFunction& cutoff) {
  const int K = atom_degree(atom.level, atom.kind);
  CoefficientVector g(K);
  eval_f_all(K, atom.node, g.values());
  const double sw = std::sqrt(atom.weight);
  const std::vector<double> w = window_table(K, atom.level, analysis_window(atom.kind), cutoff);
  for (int k = 0; k <= K; ++k) {
    for (double& v : g.degree_block(k)) {
      v *= sw * w[k];
    }
  }
  return g;
}

double needlet_eval(const NeedletAtom& atom, const DiskPoint& x, const CutoffFunction& cutoff) {
  const int K = atom_degree(atom.level, atom.kind);
  const std::vector<double> w = window_table(K, atom.level, analysis_window(atom.kind), cutoff);
  std::vector<double> px(static_cast<std::size_t>(K) / 2 + 1), py(px.size());
  double sum = 0.0;
  for (int l = 0; l <= K; ++l) {
    radial_profile(l, K, x.r, px);
    radial_profile(l, K, atom.node.r, py);
    double radial = 0.0;
    for (int j = 0; 2 * j + l <= K; ++j) {
      radial += w[l + 2 * j] * px[j] * py[j];
    }
    const double cl = harmonic_normalization(l);
    sum += cl * cl * radial * std::cos(l * (x.theta - atom.node.theta));
  }
  return std::sqrt(atom.weight) * sum;
}

std::vector<NeedletAtom> level_atoms(int j, AtomKind kind) {
  const CubatureRule rule = cubature_disk(needlet_rule_degree(j));
  std::vector<NeedletAtom> atoms;
  atoms.reserve(rule.size());
  for (std::size_t n = 0; n < rule.size(); ++n) {
    atoms.push_back(NeedletAtom{j, rule.nodes[n], rule.weights[n], kind});
  }
  return atoms;
}

GammaTable::GammaTable(int j, AtomKind kind, const CutoffFunction& cutoff)
    : level_(j),
      max_degree_(atom_degree(j, kind)),
      n_indices_(index_count(max_degree_)),
      rule_(cubature_disk(needlet_rule_degree(j))) {
  data_.resize(rule_.size() * n_indices_);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < static_cast<std::ptrdiff_t>(rule_.size()); ++n) {
    const NeedletAtom atom{j, rule_.nodes[n], rule_.weights[n], kind};
    const CoefficientVector g = atom_coefficients(atom, cutoff);
    std::copy(g.values().begin(), g.values().end(), data_.begin() + n * static_cast<std::ptrdiff_t>(n_indices_));
  }
}

std::vector<double> GammaTable::analyze(const CoefficientVector& c) const {
  const std::size_t m = std::min(c.size(), n_indices_);
  std::vector<double> out(n_atoms());
  for (std::size_t n = 0; n < n_atoms(); ++n) {
    const auto g = row(n);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      s += g[i] * c.at_rank(i);
    }
    out[n] = s;
  }
  return out;
}

std::vector<double> father_analyze(const CoefficientVector& c, int j, const CutoffFunction& cutoff) {
  return level_analyze(c, j, Window::SqrtA, cutoff);
}

CoefficientVector father_synthesize(std::span<const double> alpha, int j, int max_degree,
                                    const CutoffFunction& cutoff) {
  return level_synthesize(alpha, j, Window::SqrtA, max_degree, cutoff);
}

double FrameCoefficients::squared_norm() const {
  double s = level_minus_one * level_minus_one;
  for (const auto& lvl : levels) {
    for (double v : lvl) {
      s += v * v;
    }
  }
  return s;
}

FrameCoefficients frame_analyze(const CoefficientVector& c, int j_max, const CutoffFunction& cutoff) {
  if (j_max < 0 || c.max_degree() >= (1 << j_max)) {
    throw std::invalid_argument("frame analysis up to level " + std::to_string(j_max) +
                                " needs coefficient degree < 2^j_max, got " + std::to_string(c.max_degree()));
  }
  FrameCoefficients out;
  out.max_degree = c.max_degree();
  out.level_minus_one = c.at_rank(0);
  for (int j = 0; j <= j_max; ++j) {
    out.levels.push_back(level_analyze(c, j, Window::SqrtB, cutoff));
  }
  return out;
}

CoefficientVector frame_synthesize(const FrameCoefficients& beta, const CutoffFunction& cutoff) {
  CoefficientVector c(beta.max_degree);
  c.at_rank(0) = beta.level_minus_one;
  for (std::size_t j = 0; j < beta.levels.size(); ++j) {
    const CoefficientVector part =
        level_synthesize(beta.levels[j], static_cast<int>(j), Window::SqrtB, beta.max_degree, cutoff);
    for (std::size_t i = 0; i < c.size(); ++i) {
      c.at_rank(i) += part.at_rank(i);
    }
  }
  return c;
}

namespace {

bool is_even_integer(double p) { return std::isfinite(p) && p >= 2.0 && std::floor(p) == p && static_cast<long>(p) % 2 == 0; }

struct NormGrid {
  std::unique_ptr<PolarTransform> transform;
  std::vector<double> node_weights;
  bool exact = false;
};

NormGrid norm_grid(int level, int degree, double p) {
  NormGrid g;
  if (is_even_integer(p)) {
    const CubatureRule rule = cubature_disk(static_cast<int>(p) * degree);
    g.transform = rule.transform(degree);
    g.node_weights = rule.weights;
    g.exact = true;
  } else {
    const int n = 1 << (level + 4);
    g.transform = midpoint_grid(n, degree);
    g.node_weights.resize(g.transform->n_nodes());
    for (int a = 0; a < g.transform->n_radii(); ++a) {
      for (int b = 0; b < n; ++b) {
        g.node_weights[static_cast<std::size_t>(a) * n + b] = g.transform->node_weight(a);
      }
    }
  }
  return g;
}

double grid_norm(const NormGrid& g, const CoefficientVector& coeffs, double p, double peak_hint) {
  std::vector<double> values(g.transform->n_nodes());
  g.transform->synthesize(coeffs, values);
  if (std::isinf(p)) {
    double m = std::abs(peak_hint);
    for (double v : values) {
      m = std::max(m, std::abs(v));
    }
    return m;
  }
  double s = 0.0;
  for (std::size_t n = 0; n < values.size(); ++n) {
    s += g.node_weights[n] * std::pow(std::abs(values[n]), p);
  }
  return std::pow(s, 1.0 / p);
}

}  // namespace

double atom_lp_norm(const NeedletAtom& atom, double p, const CutoffFunction& cutoff) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("Lp norm needs p >= 1");
  }
  const CoefficientVector g = atom_coefficients(atom, cutoff);
  const NormGrid grid = norm_grid(atom.level, g.max_degree(), p);
  const double peak = std::isinf(p) ? needlet_eval(atom, atom.node, cutoff) : 0.0;
  return grid_norm(grid, g, p, peak);
}

std::vector<RingNorm> ring_lp_norms(int j, double p, AtomKind kind, const CutoffFunction& cutoff) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("Lp norm needs p >= 1");
  }
  const CubatureRule rule = cubature_disk(needlet_rule_degree(j));
  const NormGrid grid = norm_grid(j, atom_degree(j, kind), p);
  std::vector<RingNorm> out(rule.n_radii());
#pragma omp parallel for schedule(dynamic)
  for (int a = 0; a < rule.n_radii(); ++a) {
    const NeedletAtom atom{j, DiskPoint{rule.radii[a], 0.0}, rule.weights[rule.node_index(a, 0)], kind};
    const CoefficientVector g = atom_coefficients(atom, cutoff);
    const double peak = std::isinf(p) ? needlet_eval(atom, atom.node, cutoff) : 0.0;
    out[a] = RingNorm{rule.radii[a], atom.weight, rule.n_angles, grid_norm(grid, g, p, peak)};
  }
  return out;
}

double stability_sums(int j, double p, AtomKind kind, const CutoffFunction& cutoff) {
  double s = 0.0;
  for (const RingNorm& ring : ring_lp_norms(j, p, kind, cutoff)) {
    s += ring.multiplicity * (std::isinf(p) ? ring.norm : std::pow(ring.norm, p));
  }
  return s;
}

double far_field_ratio(const NeedletAtom& atom, double distance_factor, const CutoffFunction& cutoff) {
  const CoefficientVector g = atom_coefficients(atom, cutoff);
  const int n = 1 << (atom.level + 4);
  auto grid = midpoint_grid(n, g.max_degree());
  std::vector<double> values(grid->n_nodes());
  grid->synthesize(g, values);
  const double radius = distance_factor * std::ldexp(1.0, -atom.level);
  double peak = std::abs(needlet_eval(atom, atom.node, cutoff));
  double far = 0.0;
  for (int a = 0; a < grid->n_radii(); ++a) {
    for (int b = 0; b < n; ++b) {
      const double v = std::abs(values[static_cast<std::size_t>(a) * n + b]);
      peak = std::max(peak, v);
      const DiskPoint x{grid->radii()[a], grid->angle(b)};
      if (metric_d(x, atom.node) >= radius) {
        far = std::max(far, v);
      }
    }
  }
  return far / peak;
}

}  // namespace radneedlet
