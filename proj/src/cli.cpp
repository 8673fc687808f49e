#include "fraclap/cli.hpp"

#include "fraclap/acceptance.hpp"
#include "fraclap/continuation.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/exponents.hpp"
#include "fraclap/io.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/linear.hpp"
#include "fraclap/nonlinearity.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/problems.hpp"
#include "fraclap/variational.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

namespace fraclap::cli {
namespace {

using nlohmann::json;

/// Reads a flat JSON object of option values for CLI11; keys are long flag names.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      item.name = key;
      const auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
      if (value.is_array()) {
        for (const json& v : value) item.inputs.push_back(text(v));
      } else {
        item.inputs.push_back(text(value));
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    io::write_atomic(path, content);
  }
}

std::string subcritical_message(FracOrder s, double p) {
  std::ostringstream os;
  os << "growth exponent must satisfy p < (1+2s)/(1-2s) = " << growth_exponent_bound(s) << " for s = " << s.value()
     << " (got p = " << p << ")";
  return os.str();
}

void require_subcritical(const std::string& module, FracOrder s, double p) {
  if (!(p > 1.0)) throw PreconditionError(module, "growth exponent must satisfy p > 1");
  if (!is_subcritical(s, p)) throw PreconditionError(module, subcritical_message(s, p));
}

Nonlinearity branch_nonlinearity(const RunConfig& c) {
  if (c.nonlinearity == "custom") return power_odd(c.p);
  return nonlinearity_from_name(c.nonlinearity);
}

Formulation formulation_of(const std::string& name) {
  if (name == "normal") return Formulation::kNormal;
  if (name == "unscaled") return Formulation::kUnscaled;
  throw PreconditionError("continuation", "formulation must be 'normal' or 'unscaled'");
}

void validate(const RunConfig& c) {
  const FracOrder s(c.s);
  if (c.n_modes < 0) throw PreconditionError("fracspace", "--modes must be nonnegative");
  if (!(c.tol > 0.0)) throw PreconditionError("cli", "--tol must be positive");
  switch (c.command) {
    case Command::kKernel:
      if (!is_power_of_two(c.resolution) || c.resolution < 4)
        throw PreconditionError("kernel", "--resolution must be a power of two >= 4");
      if (!(c.period > 0.0)) throw PreconditionError("kernel", "--period must be positive");
      break;
    case Command::kOp:
      if (c.backend != "spectral" && c.backend != "quadrature")
        throw PreconditionError("operator", "--backend must be 'spectral' or 'quadrature'");
      if (c.backend == "quadrature" && (!is_power_of_two(c.resolution) || c.resolution < 16))
        throw PreconditionError("operator", "--resolution must be a power of two >= 16");
      if (c.input.empty()) throw PreconditionError("operator", "--in <field.json> is required");
      break;
    case Command::kSolveLinear:
      if (c.input.empty()) throw PreconditionError("linear", "--rhs <field.json> is required");
      if (c.k_max < 0 || 2 * c.k_max + 2 > c.resolution)
        throw PreconditionError("linear", "eigenvalue check needs 0 <= k_max and 2 k_max + 2 <= resolution");
      break;
    case Command::kSolveVariational:
      require_subcritical("variational", s, c.p);
      if (c.lambda == 0.0) throw PreconditionError("variational", "λ must be nonzero (λ < 0 minimizes, λ > 0 links)");
      break;
    case Command::kBranch: {
      if (c.k < 1) throw PreconditionError("continuation", "branch index k must be at least 1");
      formulation_of(c.formulation);
      if (c.nonlinearity == "custom" || c.nonlinearity.find(':') != std::string::npos) {
        const double p = c.nonlinearity == "custom" ? c.p : std::stod(c.nonlinearity.substr(c.nonlinearity.find(':') + 1));
        require_subcritical("continuation", s, p);
      }
      branch_nonlinearity(c);
      if (!(c.max_amplitude > 0.0)) throw PreconditionError("continuation", "--max-amplitude must be positive");
      if (c.max_points < 1) throw PreconditionError("continuation", "--max-points must be positive");
      break;
    }
    case Command::kExamples: {
      const Family f = family_from_name(c.which);
      if (f == Family::kQuadraticShifted || f == Family::kBenjaminOnoStationary) {
        make_problem(f, s);
      } else {
        require_subcritical("problems", s, c.p);
      }
      break;
    }
    case Command::kVerifyAll:
      for (int id : c.only)
        if (id < 1 || id > kCriterionCount) throw PreconditionError("cli", "--only ids must lie in 1..10");
      break;
  }
}

json profile_json(const PeriodicProfile& u) {
  json j = to_json(u.shape);
  j["period"] = u.period;
  return j;
}

int run_kernel(const RunConfig& c, std::ostream& out) {
  emit(c.output, table_csv(build_table(FracOrder(c.s), c.resolution, c.period)), out);
  return 0;
}

int run_op(const RunConfig& c, std::ostream& out) {
  const FracOrder s(c.s);
  const SpectralField u = field_from_json(json::parse(io::read_file(c.input)));
  const auto apply = [&] {
    if (c.backend == "spectral") return SpectralOperator(s, u.n_modes()).apply(u);
    if (c.resolution < 2 * u.n_modes() + 2)
      throw PreconditionError("operator", "--resolution must be at least 2 n_modes + 2 for this field");
    const QuadratureOperator op(s, c.resolution);
    return from_grid(op.apply(to_grid(u, c.resolution)), u.n_modes());
  };
  const SpectralField lu = apply();
  emit(c.output, to_json(lu).dump(2) + "\n", out);
  return 0;
}

int run_solve_linear(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const FracOrder s(c.s);
  const SpectralField f = field_from_json(json::parse(io::read_file(c.input)));
  const SpectralField u = solve_linear(f, s);
  const EigenReport eig = eigen_verify(s, c.k_max, c.resolution);
  json entries = json::array();
  for (const EigenEntry& e : eig.entries)
    entries.push_back({{"k", e.k},
                       {"expected", e.expected},
                       {"rayleigh_cos", e.rayleigh_cos},
                       {"rayleigh_sin", e.rayleigh_sin},
                       {"error", e.rel_error}});
  const json report = {{"s", c.s},
                       {"n_modes", u.n_modes()},
                       {"residual", linear_residual(u, f, s)},
                       {"eigen",
                        {{"resolution", eig.resolution},
                         {"tolerance", eig.tolerance},
                         {"below_gap", eig.eigenvalues_below_gap},
                         {"expected_below_gap", eig.expected_below_gap},
                         {"passed", eig.passed},
                         {"entries", entries}}}};
  emit(c.output, to_json(u).dump(2) + "\n", out);
  emit(c.report, report.dump(2) + "\n", out);
  if (!eig.passed) {
    err << "eigenvalue check failed: worst k=" << eig.worst_k << " error " << eig.worst_error << "\n";
    return 1;
  }
  return 0;
}

int run_solve_variational(const RunConfig& c, std::ostream& out) {
  const FracOrder s(c.s);
  json sol;
  std::string history = "iteration,jtilde\n";
  if (c.lambda < 0.0) {
    MinimizeOptions mo;
    if (c.n_modes > 0) mo.n_modes = c.n_modes;
    mo.tol = c.tol;
    const MinimizeResult r = minimize_on_manifold(s, c.p, c.lambda, mo);
    sol = {{"s", c.s},
           {"p", c.p},
           {"lambda", c.lambda},
           {"route", "constrained minimization"},
           {"mu", r.mu},
           {"residual", r.residual},
           {"nonconstant_certified", r.nonconstant_certified},
           {"jtilde", r.jtilde},
           {"jtilde_constant", r.jtilde_constant},
           {"iterations", r.iterations},
           {"gradient_norm", r.gradient_norm},
           {"field", to_json(r.u)}};
    for (size_t i = 0; i < r.history.size(); ++i) history += std::to_string(i) + "," + num(r.history[i]) + "\n";
  } else {
    SignChangingOptions so;
    if (c.n_modes > 0) so.n_modes = c.n_modes;
    const SignChangingResult r = solve_sign_changing(s, c.p, c.lambda, so);
    sol = {{"s", c.s},          {"p", c.p},     {"lambda", c.lambda}, {"route", "Newton from branch"},
           {"k", r.k},          {"residual", r.residual}, {"min", r.min}, {"max", r.max},
           {"J", r.J},          {"field", to_json(r.u)}};
  }
  emit(c.output, sol.dump(2) + "\n", out);
  if (!c.history.empty()) io::write_atomic(c.history, history);
  return 0;
}

int run_branch(const RunConfig& c, std::ostream& out) {
  const FracOrder s(c.s);
  ContinuationOptions co;
  if (c.n_modes > 0) co.n_modes = c.n_modes;
  co.formulation = formulation_of(c.formulation);
  co.max_amplitude = c.max_amplitude;
  co.max_points = c.max_points;
  const Branch br = continue_branch(s, branch_nonlinearity(c), c.k, co);
  std::string csv = "lambda,amplitude,period,residual\n";
  for (const BranchPoint& pt : br.points)
    csv += num(pt.lambda) + "," + num(pt.amplitude) + "," + num(pt.minimal_period) + "," + num(pt.residual) + "\n";
  emit(c.output, csv, out);
  if (!c.output.empty())
    out << "branch k=" << br.k << ": " << br.points.size() << " points, " << br.folds.size()
        << " folds, stopped: " << br.stop_reason << "\n";
  return 0;
}

int run_examples(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const FracOrder s(c.s);
  const Family family = family_from_name(c.which);
  const ExampleReport rep = run_example(family, s, c.p);
  const std::string fam = family_name(family);
  const std::filesystem::path dir = c.out_dir;
  std::string summary = "family,s,p,name,period,amplitude,residual\n";
  const auto row = [&](const std::string& name, const PeriodicProfile& u, double amplitude, double residual,
                       json extra) {
    json j = {{"family", fam}, {"s", c.s},         {"p", rep.p},
              {"name", name},  {"period", u.period}, {"amplitude", amplitude},
              {"residual", residual}, {"field", profile_json(u)}};
    j.update(extra);
    io::write_atomic(dir / (fam + "_" + name + ".json"), j.dump(2) + "\n");
    summary += fam + "," + num(c.s) + "," + num(rep.p) + "," + name + "," + num(u.period) + "," + num(amplitude) +
               "," + num(residual) + "\n";
  };
  for (const ExampleSolution& sol : rep.solutions) row(sol.name, sol.profile, sol.amplitude, sol.residual, json::object());
  if (rep.bo) {
    for (const SuiteItem& item : rep.bo->items) {
      row(item.name, item.profile, item.oscillation, item.residual,
          {{"mean", item.mean}, {"peak", item.peak}, {"bo_residual", item.bo_residual}, {"passed", item.passed}});
      if (!item.passed)
        err << "failed: " << item.name << " residual " << item.residual << " Benjamin-Ono residual "
            << item.bo_residual << "\n";
    }
    if (rep.bo->soliton) {
      const SolitonReport& sr = *rep.bo->soliton;
      out << "soliton identity: sup residual " << sr.sup_residual << ", pointwise errors " << sr.pointwise_error[0]
          << " " << sr.pointwise_error[1] << " " << sr.pointwise_error[2] << "\n";
    }
  }
  io::write_atomic(dir / "summary.csv", summary);
  out << summary;
  if (!rep.passed) {
    err << "example family " << fam << " failed its checks\n";
    return 1;
  }
  return 0;
}

int run_verify_all(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto results = run_acceptance(AcceptanceOptions{c.seed}, c.only);
  bool ok = true;
  for (const CriterionResult& r : results) {
    out << format_line(r) << "\n";
    if (!r.pass) {
      ok = false;
      err << "criterion " << r.criterion_id << " failed: " << r.detail << "\n";
    }
  }
  const json card = {{"seed", c.seed}, {"criteria", scorecard_json(results)}};
  io::write_atomic(c.output.empty() ? "scorecard.json" : c.output, card.dump(2) + "\n");
  return ok ? 0 : 1;
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::kKernel: return "kernel";
    case Command::kOp: return "op";
    case Command::kSolveLinear: return "solve-linear";
    case Command::kSolveVariational: return "solve-variational";
    case Command::kBranch: return "branch";
    case Command::kExamples: return "examples";
    case Command::kVerifyAll: return "verify-all";
  }
  return "unknown";
}

RunConfig parse_config(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Periodic fractional Laplacian toolkit", "fraclap"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON object of option values (keys are long flag names); flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--s", c.s, "fractional order, 0 < s < 1")->capture_default_str();
  app.add_option("--p", c.p, "growth exponent of |u|^{p-1}u, subcritical")->capture_default_str();
  app.add_option("--lambda", c.lambda, "equation parameter")->capture_default_str();
  app.add_option("--k", c.k, "branch index")->capture_default_str();
  app.add_option("--resolution,--n", c.resolution, "grid points (power of two)")->capture_default_str();
  app.add_option("--modes", c.n_modes, "Fourier modes (0 = module default)")->capture_default_str();
  app.add_option("--period", c.period, "kernel period")->capture_default_str();
  app.add_option("--tol", c.tol, "solver tolerance")->capture_default_str();
  app.add_option("--backend", c.backend, "operator backend: spectral|quadrature")->capture_default_str();
  app.add_option("--f", c.nonlinearity, "nonlinearity: u2|u3|zero|odd:p|even:p|custom (odd power --p)")
      ->capture_default_str();
  app.add_option("--formulation", c.formulation, "continuation formulation: normal|unscaled")->capture_default_str();
  app.add_option("--max-amplitude", c.max_amplitude, "branch amplitude limit")->capture_default_str();
  app.add_option("--max-points", c.max_points, "branch point limit")->capture_default_str();
  app.add_option("--k-max", c.k_max, "largest wavenumber in the eigenvalue report")->capture_default_str();
  app.add_option("--which", c.which, "example family: even-power|odd-plus|odd-minus|bo")->capture_default_str();
  app.add_option("--in,--rhs", c.input, "input field JSON");
  app.add_option("--out", c.output, "output file (stdout when omitted; verify-all defaults to scorecard.json)");
  app.add_option("--report", c.report, "report JSON (solve linear)");
  app.add_option("--history", c.history, "convergence history CSV (solve variational)");
  app.add_option("--out-dir", c.out_dir, "directory for example outputs")->capture_default_str();
  app.add_option("--only", c.only, "criterion ids to run (verify-all)");
  app.add_option("--seed", c.seed, "seed of randomized suites")->capture_default_str();

  auto* kernel = app.add_subcommand("kernel", "kernel tables");
  auto* kernel_dump = kernel->add_subcommand("dump", "write the kernel table as CSV (z,H,err_bound)");
  kernel->require_subcommand(1);
  auto* op = app.add_subcommand("op", "apply the fractional Laplacian");
  auto* op_apply = op->add_subcommand("apply", "apply to a field JSON");
  op->require_subcommand(1);
  auto* solve = app.add_subcommand("solve", "linear and variational solvers");
  auto* solve_lin = solve->add_subcommand("linear", "solve (L+I)u = f and report eigenvalue errors");
  auto* solve_var = solve->add_subcommand("variational", "λ < 0: constrained minimizer; λ > 0: sign-changing solution");
  solve->require_subcommand(1);
  auto* solve_lin2 = app.add_subcommand("solve-linear", "same as 'solve linear'");
  auto* solve_var2 = app.add_subcommand("solve-variational", "same as 'solve variational'");
  auto* branch = app.add_subcommand("branch", "continue a bifurcation branch; CSV lambda,amplitude,period,residual");
  auto* examples = app.add_subcommand("examples", "worked example families");
  auto* examples_run = examples->add_subcommand("run", "solve one family and write per-solution JSON + summary.csv");
  examples->require_subcommand(1);
  auto* verify = app.add_subcommand("verify-all", "run the acceptance criteria and write a JSON scorecard");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw PreconditionError("cli", e.what());
  }

  if (*kernel_dump) c.command = Command::kKernel;
  else if (*op_apply) c.command = Command::kOp;
  else if (*solve_lin || *solve_lin2) c.command = Command::kSolveLinear;
  else if (*solve_var || *solve_var2) c.command = Command::kSolveVariational;
  else if (*branch) c.command = Command::kBranch;
  else if (*examples_run) c.command = Command::kExamples;
  else if (*verify) c.command = Command::kVerifyAll;
  validate(c);
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  switch (c.command) {
    case Command::kKernel: return run_kernel(c, out);
    case Command::kOp: return run_op(c, out);
    case Command::kSolveLinear: return run_solve_linear(c, out, err);
    case Command::kSolveVariational: return run_solve_variational(c, out);
    case Command::kBranch: return run_branch(c, out);
    case Command::kExamples: return run_examples(c, out, err);
    case Command::kVerifyAll: return run_verify_all(c, out, err);
  }
  return 1;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_config(argc, argv), out, err);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: [cli] malformed JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fraclap::cli
