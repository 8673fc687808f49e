#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fraclap::cli {

enum class Command { kKernel, kOp, kSolveLinear, kSolveVariational, kBranch, kExamples, kVerifyAll };

std::string command_name(Command c);

struct RunConfig {
  Command command = Command::kVerifyAll;
  double s = 0.5;
  double p = 3.0;
  double lambda = -10.0;
  int k = 1;
  /// Grid points for kernel tables and quadrature operators.
  int resolution = 2048;
  int n_modes = 0;  // 0 selects the module default
  double period = 6.283185307179586;
  double tol = 1e-8;
  std::string backend = "spectral";
  std::string nonlinearity = "u3";
  std::string formulation = "normal";
  double max_amplitude = 0.3;
  int max_points = 400;
  int k_max = 8;
  std::string which = "bo";
  std::string input;
  std::string output;
  std::string report;
  std::string history;
  std::string out_dir = "examples_out";
  std::vector<int> only;
  std::uint64_t seed = 1;
};

/// Thrown by parse_config when --help was requested; carries the full usage text.
struct HelpRequested {
  std::string text;
};

/// Parses flags, merging an optional JSON --config file underneath them, and
/// validates every numeric parameter against the owning module's preconditions.
/// Throws fraclap::Error on invalid input and HelpRequested on --help.
RunConfig parse_config(int argc, const char* const* argv);

/// Executes a validated configuration. Returns 0 on success and 1 when a
/// check fails; itemized failures go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_config + run with errors mapped to exit code 2.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fraclap::cli
