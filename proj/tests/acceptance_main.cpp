#include "fraclap/acceptance.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria; prints one PASS/FAIL line per criterion"};
  std::vector<int> only;
  std::uint64_t seed = 1;
  bool verbose = false;
  app.add_option("--only", only, "criterion ids (default: all)");
  app.add_option("--seed", seed, "seed of randomized suites");
  app.add_flag("--verbose,-v", verbose, "print measurement details");
  CLI11_PARSE(app, argc, argv);

  bool ok = true;
  for (const auto& r : fraclap::run_acceptance({seed}, only)) {
    std::cout << fraclap::format_line(r) << "\n";
    if (verbose || !r.pass) std::cout << "    " << r.detail << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
