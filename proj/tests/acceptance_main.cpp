#include "acceptance_suite.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria A1-A13"};
  radneedlet::acceptance::Options opt;
  app.add_flag("--quick", opt.quick, "5 benchmark realizations instead of 50");
  app.add_option("--jobs", opt.jobs, "worker threads for the benchmark criteria")->check(CLI::PositiveNumber);
  app.add_option("--only", opt.only, "criterion ids to run, e.g. A1 A5");
  CLI11_PARSE(app, argc, argv);

  const auto results = radneedlet::acceptance::run(opt, std::cout);
  int failed = 0;
  for (const auto& r : results) {
    failed += r.passed ? 0 : 1;
  }
  std::cout << results.size() - failed << '/' << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
