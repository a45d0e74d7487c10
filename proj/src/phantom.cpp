#include "radneedlet/phantom.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace radneedlet {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct TableRow {
  double cx, cy, a, b, phi_deg;
};

// Geometry of the head phantom; densities differ between the variants.
constexpr TableRow kSheppLogan[10] = {
    {0.0, 0.0, 0.69, 0.92, 0.0},       {0.0, -0.0184, 0.6624, 0.874, 0.0}, {0.22, 0.0, 0.11, 0.31, -18.0},
    {-0.22, 0.0, 0.16, 0.41, 18.0},    {0.0, 0.35, 0.21, 0.25, 0.0},       {0.0, 0.1, 0.046, 0.046, 0.0},
    {0.0, -0.1, 0.046, 0.046, 0.0},    {-0.08, -0.605, 0.046, 0.023, 0.0}, {0.0, -0.606, 0.023, 0.023, 0.0},
    {0.06, -0.605, 0.023, 0.046, 0.0},
};
constexpr double kOriginalDensity[10] = {2.0, -0.98, -0.02, -0.02, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01};
constexpr double kModifiedDensity[10] = {1.0, -0.8, -0.2, -0.2, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1};

}  // namespace

void Ellipse::validate() const {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("ellipse semi-axes must be positive");
  }
  // Farthest point from the origin: maximize |c + R(phi) (a cos t, b sin t)| over t.
  const double c = std::cos(phi), s = std::sin(phi);
  double reach = 0.0;
  constexpr int kSamples = 4096;
  for (int n = 0; n < kSamples; ++n) {
    const double t = 2.0 * std::numbers::pi * n / kSamples;
    const double u = a * std::cos(t), v = b * std::sin(t);
    reach = std::max(reach, std::hypot(cx + c * u - s * v, cy + s * u + c * v));
  }
  if (reach > 1.0 + 1e-9) {
    throw std::invalid_argument("ellipse is not contained in the unit disk (reaches radius " +
                                std::to_string(reach) + ")");
  }
}

bool Ellipse::contains(double x, double y) const {
  const double dx = x - cx, dy = y - cy;
  const double c = std::cos(phi), s = std::sin(phi);
  const double u = (c * dx + s * dy) / a;
  const double v = (-s * dx + c * dy) / b;
  return u * u + v * v <= 1.0;
}

double Ellipse::radon(double theta, double s) const {
  const double t = theta - phi;
  const double shifted = s - (cx * std::cos(theta) + cy * std::sin(theta));
  const double ct = std::cos(t), st = std::sin(t);
  const double A2 = a * a * ct * ct + b * b * st * st;
  const double gap = A2 - shifted * shifted;
  if (gap <= 0.0) {
    return 0.0;
  }
  return density * 2.0 * a * b * std::sqrt(gap) / A2;
}

Phantom::Phantom(std::vector<Ellipse> ellipses) : ellipses_(std::move(ellipses)) {
  if (ellipses_.empty()) {
    throw std::invalid_argument("a phantom needs at least one ellipse");
  }
  for (const Ellipse& e : ellipses_) {
    e.validate();
  }
}

SheppLoganVariant parse_shepp_logan_variant(const std::string& name) {
  if (name == "original") {
    return SheppLoganVariant::Original;
  }
  if (name == "modified") {
    return SheppLoganVariant::Modified;
  }
  throw std::invalid_argument("unknown Shepp-Logan variant '" + name + "' (expected original or modified)");
}

Phantom shepp_logan(SheppLoganVariant variant) {
  const double* density = variant == SheppLoganVariant::Original ? kOriginalDensity : kModifiedDensity;
  std::vector<Ellipse> out;
  for (int n = 0; n < 10; ++n) {
    const TableRow& r = kSheppLogan[n];
    out.push_back(Ellipse{r.cx, r.cy, r.a, r.b, r.phi_deg * kDeg, density[n]});
  }
  return Phantom(std::move(out));
}

double phantom_eval_xy(const Phantom& ph, double x, double y) {
  double v = 0.0;
  for (const Ellipse& e : ph.ellipses()) {
    if (e.contains(x, y)) {
      v += e.density;
    }
  }
  return v;
}

double phantom_eval(const Phantom& ph, const DiskPoint& p) { return phantom_eval_xy(ph, p.x(), p.y()); }

double phantom_radon_analytic(const Phantom& ph, double theta, double s) {
  if (std::abs(s) > 1.0) {
    throw std::invalid_argument("Radon offset must satisfy |s| <= 1");
  }
  double v = 0.0;
  for (const Ellipse& e : ph.ellipses()) {
    v += e.radon(theta, s);
  }
  return v;
}

std::vector<double> phantom_on_rule(const Phantom& ph, const CubatureRule& rule) {
  std::vector<double> values(rule.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < static_cast<std::ptrdiff_t>(values.size()); ++n) {
    values[n] = phantom_eval(ph, rule.nodes[n]);
  }
  return values;
}

CoefficientVector project_coefficients(const Phantom& ph, int max_degree, const CubatureRule& rule) {
  if (max_degree < 0) {
    throw std::invalid_argument("projection degree must be non-negative");
  }
  if (rule.exact_degree < 4 * max_degree) {
    throw std::invalid_argument("projection to degree " + std::to_string(max_degree) +
                                " needs a cubature exact to degree " + std::to_string(4 * max_degree) +
                                " (four times the degree, for the discontinuous integrand); got " +
                                std::to_string(rule.exact_degree));
  }
  const std::vector<double> values = phantom_on_rule(ph, rule);
  return rule.transform(max_degree)->analyze(values);
}

Phantom read_phantom_csv(std::istream& in) {
  std::string line;
  std::vector<Ellipse> out;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.rfind("cx", 0) == 0) {
      continue;
    }
    std::istringstream row(line);
    Ellipse e;
    double* fields[6] = {&e.cx, &e.cy, &e.a, &e.b, &e.phi, &e.density};
    for (int f = 0; f < 6; ++f) {
      std::string cell;
      if (!std::getline(row, cell, ',')) {
        throw std::runtime_error("phantom CSV line " + std::to_string(line_no) + ": expected 6 fields");
      }
      try {
        *fields[f] = std::stod(cell);
      } catch (const std::exception&) {
        throw std::runtime_error("phantom CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    out.push_back(e);
  }
  return Phantom(std::move(out));
}

Phantom read_phantom_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open phantom file " + path);
  }
  return read_phantom_csv(in);
}

void write_phantom_csv(const Phantom& ph, std::ostream& out) {
  out << "cx,cy,a,b,phi,density\n" << std::setprecision(17);
  for (const Ellipse& e : ph.ellipses()) {
    out << e.cx << ',' << e.cy << ',' << e.a << ',' << e.b << ',' << e.phi << ',' << e.density << '\n';
  }
}

}  // namespace radneedlet
