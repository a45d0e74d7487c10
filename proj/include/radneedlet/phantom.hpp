#pragma once

// Piecewise-constant ellipse phantoms: pointwise values, closed-form Radon
// transform and projection onto the f_{k,l,i} basis.

#include "radneedlet/needlet.hpp"
#include "radneedlet/svd_basis.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace radneedlet {

/// Additive ellipse: density inside {((x, y) - c) rotated by -phi : (u/a)^2 + (v/b)^2 <= 1}.
struct Ellipse {
  double cx = 0.0;
  double cy = 0.0;
  double a = 1.0;
  double b = 1.0;
  double phi = 0.0;  // radians
  double density = 0.0;

  /// Throws std::invalid_argument for non-positive axes or an ellipse leaving the closed disk.
  void validate() const;
  bool contains(double x, double y) const;
  /// Chord length of the line {<x, e_theta> = s} through the ellipse, times the density.
  double radon(double theta, double s) const;
};

class Phantom {
public:
  explicit Phantom(std::vector<Ellipse> ellipses);

  const std::vector<Ellipse>& ellipses() const { return ellipses_; }
  std::size_t size() const { return ellipses_.size(); }

private:
  std::vector<Ellipse> ellipses_;
};

enum class SheppLoganVariant { Original, Modified };

SheppLoganVariant parse_shepp_logan_variant(const std::string& name);

/// The 10-ellipse head phantom (original densities or the high-contrast variant).
Phantom shepp_logan(SheppLoganVariant variant = SheppLoganVariant::Original);

double phantom_eval(const Phantom& ph, const DiskPoint& p);
double phantom_eval_xy(const Phantom& ph, double x, double y);

/// Requires |s| <= 1.
double phantom_radon_analytic(const Phantom& ph, double theta, double s);

/// c_{k,l,i} = sum_nodes w f(node) f_{k,l,i}(node). Requires rule.exact_degree >= 4 K.
CoefficientVector project_coefficients(const Phantom& ph, int max_degree, const CubatureRule& rule);

/// Phantom values at the rule nodes (node order of the rule).
std::vector<double> phantom_on_rule(const Phantom& ph, const CubatureRule& rule);

/// CSV with header `cx,cy,a,b,phi,density`, phi in radians.
Phantom read_phantom_csv(std::istream& in);
Phantom read_phantom_csv(const std::string& path);
void write_phantom_csv(const Phantom& ph, std::ostream& out);

}  // namespace radneedlet
