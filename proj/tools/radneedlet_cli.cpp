#include "acceptance_suite.hpp"
#include "radneedlet/bench.hpp"
#include "radneedlet/coefficient_io.hpp"
#include "radneedlet/estimator.hpp"
#include "radneedlet/needlet.hpp"
#include "radneedlet/phantom.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

using namespace radneedlet;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

// Output to a path, or stdout for "-".
class Sink {
public:
  explicit Sink(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
      }
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

// Regression observations travel as `i1,i2,value` rows.
void write_regression_csv(const RegressionObservation& obs, std::ostream& out) {
  out << "i1,i2,value\n";
  char buf[64];
  for (int i1 = 0; i1 < obs.n1; ++i1) {
    for (int i2 = 0; i2 < obs.n2; ++i2) {
      std::snprintf(buf, sizeof buf, "%.17g", obs.at(i1, i2));
      out << i1 << ',' << i2 << ',' << buf << '\n';
    }
  }
}

RegressionObservation read_regression_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::vector<std::tuple<int, int, double>> rows;
  std::string line;
  int n1 = 0, n2 = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("i1", 0) == 0) {
      continue;
    }
    int i1 = 0, i2 = 0;
    double v = 0.0;
    if (std::sscanf(line.c_str(), "%d,%d,%lf", &i1, &i2, &v) != 3 || i1 < 0 || i2 < 0) {
      throw std::runtime_error("malformed regression row: " + line);
    }
    rows.emplace_back(i1, i2, v);
    n1 = std::max(n1, i1 + 1);
    n2 = std::max(n2, i2 + 1);
  }
  if (rows.size() != static_cast<std::size_t>(n1) * n2) {
    throw std::runtime_error("regression grid in '" + path + "' is incomplete");
  }
  RegressionObservation obs;
  obs.n1 = n1;
  obs.n2 = n2;
  obs.values.assign(rows.size(), 0.0);
  for (const auto& [i1, i2, v] : rows) {
    obs.values[static_cast<std::size_t>(i1) * n2 + i2] = v;
  }
  return obs;
}

struct PhantomOpt {
  std::string phantom = "original";
  void add(CLI::App* app) {
    app->add_option("--phantom", phantom, "original, modified, or a cx,cy,a,b,phi,density CSV")->capture_default_str();
  }
};

void add_phantom_verb(CLI::App& app) {
  auto* cmd = app.add_subcommand("phantom", "render the phantom and export its ellipse table");
  auto opt = std::make_shared<PhantomOpt>();
  auto size = std::make_shared<int>(256);
  auto out = std::make_shared<std::string>();
  auto table = std::make_shared<std::string>();
  opt->add(cmd);
  cmd->add_option("--size", *size, "image width and height")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--out", *out, "PGM image path");
  cmd->add_option("--table", *table, "write the ellipse table as CSV ('-' for stdout)");
  cmd->callback([=] {
    const Phantom ph = load_phantom(opt->phantom);
    if (!out->empty()) {
      write_pgm(render(ph, *size, *size), *out);
    }
    if (!table->empty()) {
      Sink sink(*table);
      write_phantom_csv(ph, sink.get());
    }
  });
}

void add_project_verb(CLI::App& app) {
  auto* cmd = app.add_subcommand("project", "phantom to SVD coefficients by cubature");
  auto opt = std::make_shared<PhantomOpt>();
  auto degree = std::make_shared<int>(512);
  auto rule_degree = std::make_shared<int>(0);
  auto out = std::make_shared<std::string>("-");
  opt->add(cmd);
  cmd->add_option("--degree", *degree, "maximal degree K")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--rule-degree", *rule_degree, "cubature exactness (default 4K)");
  cmd->add_option("--out", *out, "coefficients, .csv or binary")->capture_default_str();
  cmd->callback([=] {
    const Phantom ph = load_phantom(opt->phantom);
    const int deg = *rule_degree > 0 ? *rule_degree : std::max(4, 4 * *degree);
    const CoefficientVector c = project_coefficients(ph, *degree, cubature_disk(deg));
    if (*out == "-") {
      write_coefficients_csv(c, std::cout);
    } else {
      write_coefficients(c, *out);
    }
  });
}

void add_radon_verb(CLI::App& app) {
  auto* cmd = app.add_subcommand("radon", "sample the Radon transform on the fan-beam grid");
  auto opt = std::make_shared<PhantomOpt>();
  auto method = std::make_shared<std::string>("analytic");
  auto coeffs = std::make_shared<std::string>();
  auto n1 = std::make_shared<int>(64);
  auto n2 = std::make_shared<int>(64);
  auto out = std::make_shared<std::string>("-");
  opt->add(cmd);
  cmd->add_option("--method", *method, "analytic, numeric or svd")
      ->check(CLI::IsMember({"analytic", "numeric", "svd"}))
      ->capture_default_str();
  cmd->add_option("--coeffs", *coeffs, "coefficient file for --method svd");
  cmd->add_option("--n1", *n1, "source angles")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--n2", *n2, "detector angles")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--out", *out, "CSV i1,i2,theta,s,value")->capture_default_str();
  cmd->callback([=] {
    RadonSampler sampler;
    if (*method == "svd") {
      if (coeffs->empty()) {
        throw CLI::ValidationError("--coeffs", "required with --method svd");
      }
      sampler = svd_radon_sampler(read_coefficients(*coeffs));
    } else {
      auto ph = std::make_shared<Phantom>(load_phantom(opt->phantom));
      if (*method == "analytic") {
        sampler = [ph](double t, double s) { return phantom_radon_analytic(*ph, t, s); };
      } else {
        sampler = [ph](double t, double s) {
          return radon_line_integral_adaptive([&](const DiskPoint& p) { return phantom_eval(*ph, p); }, t, s);
        };
      }
    }
    const std::vector<double> grid = regression_grid(sampler, *n1, *n2);
    Sink sink(*out);
    std::ostream& os = sink.get();
    os << "i1,i2,theta,s,value\n";
    char buf[128];
    for (int i1 = 0; i1 < *n1; ++i1) {
      for (int i2 = 0; i2 < *n2; ++i2) {
        const ParallelCoordinates pc = regression_line(i1, i2, *n1, *n2);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", pc.theta, pc.s,
                      grid[static_cast<std::size_t>(i1) * *n2 + i2]);
        os << i1 << ',' << i2 << ',' << buf << '\n';
      }
    }
  });
}

void add_simulate_verb(CLI::App& app) {
  auto* cmd = app.add_subcommand("simulate", "noisy observations from true coefficients");
  struct Args {
    std::string coeffs;
    std::string model = "white";
    double noise = 1.0;
    double sigma = -1.0;
    int k0 = 256;
    int n1 = 64;
    int n2 = 64;
    std::uint64_t seed = 20090101;
    std::string out = "-";
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--coeffs", a->coeffs, "true coefficients (from `project`)")->required();
  cmd->add_option("--model", a->model, "white or regression")->capture_default_str();
  cmd->add_option("--noise", a->noise, "epsilon")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--sigma", a->sigma, "regression noise level (default epsilon sqrt(N1 N2))");
  cmd->add_option("--k0", a->k0, "white-noise degree bound")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--n1", a->n1, "source angles")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--n2", a->n2, "detector angles")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--seed", a->seed, "master seed")->capture_default_str();
  cmd->add_option("--out", a->out, "observation file")->capture_default_str();
  cmd->callback([a] {
    const CoefficientVector c = read_coefficients(a->coeffs);
    if (parse_model(a->model) == ObservationModel::WhiteNoise) {
      const WhiteNoiseObservation obs = simulate_white_noise(c, a->noise, a->k0, a->seed);
      if (a->out == "-") {
        write_coefficients_csv(obs.y, std::cout);
      } else {
        write_coefficients(obs.y, a->out);
      }
      return;
    }
    const double sigma = a->sigma >= 0.0 ? a->sigma : a->noise * std::sqrt(double(a->n1) * a->n2);
    const RegressionObservation obs = simulate_regression(svd_radon_sampler(c), a->n1, a->n2, sigma, a->seed);
    Sink sink(a->out);
    write_regression_csv(obs, sink.get());
  });
}

void add_estimate_verb(CLI::App& app) {
  auto* cmd = app.add_subcommand("estimate", "one-shot reconstruction from an observation file");
  struct Args {
    std::string in;
    std::string model = "white";
    std::string estimator = "needlet";
    int tuning = 5;
    std::string cutoff = "smooth_exp";
    int k0 = 0;
    std::string out;
    std::string image;
    int size = 256;
    std::string truth;
    std::string norms = "1,2,inf";
    int rule_degree = 0;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--in", a->in, "white: g-side coefficients; regression: i1,i2,value CSV")->required();
  cmd->add_option("--model", a->model, "white or regression")->capture_default_str();
  cmd->add_option("--estimator", a->estimator, "needlet, svd or naive")->capture_default_str();
  cmd->add_option("--tuning", a->tuning, "needlet level J or SVD cutoff degree")->capture_default_str();
  cmd->add_option("--cutoff", a->cutoff, "smooth_exp, cosine_taper or hard")->capture_default_str();
  cmd->add_option("--k0", a->k0, "regression degree bound (default min(N1,N2)/2)");
  cmd->add_option("--out", a->out, "estimated coefficients");
  cmd->add_option("--image", a->image, "PGM rendering of the estimate");
  cmd->add_option("--size", a->size, "image size")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--truth", a->truth, "phantom to report Lp errors against");
  cmd->add_option("--norm", a->norms, "norms for the error report")->capture_default_str();
  cmd->add_option("--rule-degree", a->rule_degree, "error cubature exactness (default 4 x degree)");
  cmd->callback([a] {
    const CutoffKind cutoff = parse_cutoff_kind(a->cutoff);
    EstimatorSpec spec = EstimatorSpec::naive();
    switch (parse_estimator_kind(a->estimator)) {
      case EstimatorKind::Needlet: spec = EstimatorSpec::needlet(a->tuning, cutoff); break;
      case EstimatorKind::Svd: spec = EstimatorSpec::svd(a->tuning); break;
      case EstimatorKind::Naive: break;
    }
    CoefficientVector c_hat;
    if (parse_model(a->model) == ObservationModel::WhiteNoise) {
      c_hat = estimate(read_coefficients(a->in), spec);
    } else {
      const RegressionObservation obs = read_regression_csv(a->in);
      const int k0 = a->k0 > 0 ? a->k0 : regression_degree_limit(obs.n1, obs.n2);
      c_hat = estimate(obs, k0, spec);
    }
    if (!a->out.empty()) {
      write_coefficients(c_hat, a->out);
    }
    if (!a->image.empty()) {
      write_pgm(render(c_hat, a->size, a->size), a->image);
    }
    if (!a->truth.empty()) {
      const int deg = a->rule_degree > 0 ? a->rule_degree : std::max(4, 4 * c_hat.max_degree());
      const CubatureRule rule = cubature_disk(deg);
      const ErrorEvaluator eval(load_phantom(a->truth), rule, c_hat.max_degree());
      for (double p : parse_norm_list(a->norms)) {
        std::printf("p=%s error=%.10g\n", format_norm(p).c_str(), eval.error(c_hat, p));
      }
    }
  });
}

void add_bench_verb(CLI::App& app) {
  auto* cmd = app.add_subcommand("bench", "needlet vs SVD benchmark sweep");
  struct Args {
    BenchConfig cfg;
    std::string model = "white";
    std::string noise = "0.5,1,2,4,8";
    std::string norms = "1,2,4,6,8,10,inf";
    std::string levels = "3..9";
    std::string svd_degrees = "8,16,32,64,128,256";
    std::string cutoff = "smooth_exp";
    std::string sampler = "svd";
    std::string out = "-";
  };
  auto a = std::make_shared<Args>();
  BenchConfig& c = a->cfg;
  cmd->add_option("--model", a->model, "white or regression")->capture_default_str();
  cmd->add_option("--noise", a->noise, "epsilon grid")->capture_default_str();
  cmd->add_option("--norm", a->norms, "Lp norms")->capture_default_str();
  cmd->add_option("--seed", c.seed, "master seed")->capture_default_str();
  cmd->add_option("--k0", c.k0, "white-noise degree bound")->capture_default_str();
  cmd->add_option("--levels", a->levels, "needlet levels J")->capture_default_str();
  cmd->add_option("--svd-degrees", a->svd_degrees, "SVD cutoffs kS")->capture_default_str();
  cmd->add_option("--realizations", c.realizations, "R")->capture_default_str();
  cmd->add_option("--cutoff", a->cutoff, "needlet cutoff")->capture_default_str();
  cmd->add_option("--phantom", c.phantom, "original, modified, or a CSV path")->capture_default_str();
  cmd->add_option("--truth-degree", c.truth_degree, "truth projection degree")->capture_default_str();
  cmd->add_option("--rule-degree", c.rule_degree, "error cubature exactness")->capture_default_str();
  cmd->add_option("--n1", c.n1, "regression source angles")->capture_default_str();
  cmd->add_option("--n2", c.n2, "regression detector angles")->capture_default_str();
  cmd->add_option("--sampler", a->sampler, "regression clean data: svd or analytic")->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "worker threads")->capture_default_str();
  cmd->add_option("--out", a->out, "result CSV")->capture_default_str();
  cmd->callback([a] {
    BenchConfig& cfg = a->cfg;
    cfg.model = parse_model(a->model);
    cfg.noise = parse_real_list(a->noise);
    cfg.norms = parse_norm_list(a->norms);
    cfg.levels = parse_int_list(a->levels);
    cfg.svd_degrees = parse_int_list(a->svd_degrees);
    cfg.cutoff = parse_cutoff_kind(a->cutoff);
    cfg.sampler = parse_sampler(a->sampler);
    cfg.validate();
    const BenchResult result = run_benchmark(cfg);
    Sink sink(a->out);
    write_csv(result, sink.get());
  });
}

void add_atoms_verb(CLI::App& app) {
  auto* cmd = app.add_subcommand("atoms", "rasterize a needlet atom");
  struct Args {
    int level = 4;
    std::string kind = "father";
    std::string cutoff = "smooth_exp";
    double x = 0.0;
    double y = 0.0;
    int size = 256;
    std::string out;
    std::string profile;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--level", a->level, "j")->check(CLI::Range(0, 12))->capture_default_str();
  cmd->add_option("--kind", a->kind, "father or mother")->check(CLI::IsMember({"father", "mother"}))->capture_default_str();
  cmd->add_option("--cutoff", a->cutoff, "smooth_exp, cosine_taper or hard")->capture_default_str();
  cmd->add_option("--x", a->x, "target point x (snapped to the nearest cubature node)")->capture_default_str();
  cmd->add_option("--y", a->y, "target point y")->capture_default_str();
  cmd->add_option("--size", a->size, "image size")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--out", a->out, "PGM image");
  cmd->add_option("--profile", a->profile, "CSV of the atom along the line through its node and the origin");
  cmd->callback([a] {
    const CutoffFunction cutoff = build_cutoff(parse_cutoff_kind(a->cutoff));
    const AtomKind kind = a->kind == "father" ? AtomKind::Father : AtomKind::Mother;
    const DiskPoint target = DiskPoint::cartesian(a->x, a->y);
    NeedletAtom best;
    double best_d = INFINITY;
    for (const NeedletAtom& atom : level_atoms(a->level, kind)) {
      const double d = std::hypot(atom.node.x() - target.x(), atom.node.y() - target.y());
      if (d < best_d) {
        best_d = d;
        best = atom;
      }
    }
    std::fprintf(stderr, "node (%.6f, %.6f), weight %.6g\n", best.node.x(), best.node.y(), best.weight);
    const CoefficientVector coeffs = atom_coefficients(best, cutoff);
    if (!a->out.empty()) {
      write_pgm(render(coeffs, a->size, a->size), a->out);
    }
    if (!a->profile.empty()) {
      Sink sink(a->profile);
      sink.get() << "t,x,y,value\n";
      const double phi = best.node.theta;
      char buf[160];
      for (int q = 0; q <= 1000; ++q) {
        const double t = -1.0 + 2.0 * q / 1000.0;
        const DiskPoint p = DiskPoint::cartesian(t * std::cos(phi), t * std::sin(phi));
        std::snprintf(buf, sizeof buf, "%.6f,%.9g,%.9g,%.12g\n", t, p.x(), p.y(), synthesize_at(coeffs, p));
        sink.get() << buf;
      }
    }
  });
}

void add_selftest_verb(CLI::App& app, int& status) {
  auto* cmd = app.add_subcommand("selftest", "run the acceptance criteria");
  auto opt = std::make_shared<acceptance::Options>();
  cmd->add_flag("--quick", opt->quick, "5 benchmark realizations instead of 50");
  cmd->add_option("--jobs", opt->jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--only", opt->only, "criterion ids, e.g. A1 A5");
  cmd->callback([opt, &status] {
    const auto results = acceptance::run(*opt, std::cout);
    int failed = 0;
    for (const auto& r : results) {
      failed += r.passed ? 0 : 1;
    }
    std::cout << results.size() - failed << '/' << results.size() << " criteria passed\n";
    if (failed > 0) {
      status = kExitValidation;
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radon inversion on the disk: needlet and SVD estimators"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; options of a verb go under its [verb] section");
  int status = 0;
  add_phantom_verb(app);
  add_project_verb(app);
  add_radon_verb(app);
  add_simulate_verb(app);
  add_estimate_verb(app);
  add_bench_verb(app);
  add_atoms_verb(app);
  add_selftest_verb(app, status);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return status;
}
