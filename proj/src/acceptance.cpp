#include "fraclap/acceptance.hpp"

#include "fraclap/continuation.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/exponents.hpp"
#include "fraclap/linear.hpp"
#include "fraclap/nonlinearity.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/problems.hpp"
#include "fraclap/variational.hpp"
#include "fraclap/xspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <iomanip>
#include <random>
#include <sstream>

namespace fraclap {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// Coefficients uniform in [-1, 1] damped by (1+j)^{-2}.
SpectralField random_field(Rng& rng, int n_modes) {
  SpectralField u(n_modes);
  u.a(0) = uniform(rng, -1.0, 1.0);
  for (int j = 1; j <= n_modes; ++j) {
    const double w = 1.0 / ((1.0 + j) * (1.0 + j));
    u.a(j) = w * uniform(rng, -1.0, 1.0);
    u.b(j) = w * uniform(rng, -1.0, 1.0);
  }
  return u;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

CriterionResult make(int id, std::string description, double measured, double tolerance, bool pass,
                     std::string detail) {
  return {id, std::move(description), measured, tolerance, pass, std::move(detail)};
}

constexpr std::array<double, 3> kOrders = {0.25, 0.5, 0.75};

CriterionResult eigenvalues() {
  double worst = 0.0;
  bool pass = true;
  std::ostringstream d;
  for (double sv : kOrders) {
    const EigenReport rep = eigen_verify(FracOrder(sv), 8, 2048, 1e-3);
    worst = std::max(worst, rep.worst_error);
    pass = pass && rep.passed;
    d << "s=" << sv << ": worst k=" << rep.worst_k << " err " << fmt(rep.worst_error) << ", "
      << rep.eigenvalues_below_gap << "/" << rep.expected_below_gap << " below gap; ";
  }
  return make(1, "quadrature Rayleigh quotients of cos kx, sin kx match k^{2s}, k<=8, n=2048", worst, 1e-3, pass,
              d.str());
}

CriterionResult gram_matrix() {
  constexpr int kMax = 8;
  constexpr int kN = 2048;
  std::vector<SpectralField> basis{SpectralField::constant(kMax, 1.0)};
  for (int j = 1; j <= kMax; ++j) {
    basis.push_back(SpectralField::cosine(kMax, j));
    basis.push_back(SpectralField::sine(kMax, j));
  }
  double worst = 0.0;
  std::ostringstream d;
  for (double sv : kOrders) {
    const FracOrder s(sv);
    const QuadratureOperator op(s, kN);
    double worst_s = 0.0;
    for (size_t i = 0; i < basis.size(); ++i) {
      for (size_t j = 0; j < basis.size(); ++j) {
        const int fi = static_cast<int>((i + 1) / 2);
        double expected = 0.0;
        if (i == j) expected = i == 0 ? 2.0 * std::numbers::pi : (std::pow(fi, s.two_s()) + 1.0) * std::numbers::pi;
        worst_s = std::max(worst_s, std::abs(inner_product_quadrature(basis[i], basis[j], op) - expected));
      }
    }
    worst = std::max(worst, worst_s);
    d << "s=" << sv << ": max entry error " << fmt(worst_s) << "; ";
  }
  return make(2, "17x17 Gram matrix of {1, cos jx, sin jx} matches (j^{2s}+1) pi delta_ij", worst, 1e-6,
              worst <= 1e-6, d.str());
}

CriterionResult rayleigh_minimum() {
  double exact_worst = 0.0, cross_worst = 0.0;
  std::ostringstream d;
  for (double sv : kOrders) {
    const FracOrder s(sv);
    const QuadratureOperator op(s, 2048);
    for (int k = 1; k <= 5; ++k) {
      const RayleighMin rm = rayleigh_min_Fk(s, k);
      const double expected = std::pow(k, s.two_s()) + 1.0;
      exact_worst = std::max(exact_worst, std::abs(rm.value - expected) / expected);
      const double quad = rayleigh_quotient_quadrature(rm.minimizer, op) + 1.0;
      cross_worst = std::max(cross_worst, std::abs(quad - rm.value));
    }
  }
  d << "closed form rel err " << fmt(exact_worst) << " (tolerance 1e-14); quadrature cross-check "
    << fmt(cross_worst);
  return make(3, "min of Rayleigh quotient over F_k equals k^{2s}+1, k=1..5", cross_worst, 1e-4,
              exact_worst <= 1e-14 && cross_worst <= 1e-4, d.str());
}

CriterionResult maximum_principle(std::uint64_t seed) {
  constexpr int kSamples = 200;
  constexpr int kGrid = 256;
  Rng rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  double worst_s = 0.0;
  for (int t = 0; t < kSamples; ++t) {
    const FracOrder s(uniform(rng, 0.05, 0.95));
    std::vector<double> f(kGrid, 0.0);
    switch (t % 4) {
      case 0:
        for (double& v : f) v = uniform(rng, 0.0, 1.0);
        break;
      case 1:
        for (int m = 0; m < 5; ++m) f[std::uniform_int_distribution<int>(0, kGrid - 1)(rng)] = uniform(rng, 0.0, 10.0);
        break;
      case 2: {
        const int lo = std::uniform_int_distribution<int>(0, kGrid - 1)(rng);
        const int len = std::uniform_int_distribution<int>(1, kGrid / 2)(rng);
        for (int m = 0; m < len; ++m) f[(lo + m) % kGrid] = 1.0;
        break;
      }
      default:
        f[std::uniform_int_distribution<int>(0, kGrid - 1)(rng)] = 1.0;
    }
    const SpectralField rhs = from_grid(GridField(std::move(f)), kGrid / 2 - 1);
    const double m = to_grid(solve_linear(rhs, s), kGrid).min();
    if (m < worst) {
      worst = m;
      worst_s = s.value();
    }
  }
  std::ostringstream d;
  d << kSamples << " nonnegative right-hand sides on a " << kGrid << "-point grid; smallest solution value "
    << fmt(worst) << " at s=" << worst_s;
  return make(4, "solutions of (L+I)u = f >= 0 are nonnegative on the grid", worst, -1e-8, worst >= -1e-8, d.str());
}

struct BranchRun {
  Branch branch;
  std::vector<GlobalSolution> checked;
};

BranchRun run_branch(int k) {
  const FracOrder s(0.5);
  const Nonlinearity f = monomial(3);
  BranchRun run{continue_branch(s, f, k), {}};
  const auto& pts = run.branch.points;
  for (size_t i = 0; i < pts.size(); ++i)
    if (i % 10 == 0 || i + 1 == pts.size()) run.checked.push_back(rescale_and_check(pts[i], s, f));
  return run;
}

struct Shared {
  std::vector<BranchRun> branches;
  MinimizeResult minimizer;
  SignChangingResult sign_changing;
};

const Shared& shared_solutions() {
  static const Shared shared = [] {
    auto b1 = std::async(std::launch::async, run_branch, 1);
    auto b2 = std::async(std::launch::async, run_branch, 2);
    auto b3 = std::async(std::launch::async, run_branch, 3);
    auto mz = std::async(std::launch::async, [] { return minimize_on_manifold(FracOrder(0.5), 3.0, -10.0); });
    auto sc = std::async(std::launch::async, [] { return solve_sign_changing(FracOrder(0.5), 3.0, 0.5); });
    return Shared{{b1.get(), b2.get(), b3.get()}, mz.get(), sc.get()};
  }();
  return shared;
}

CriterionResult bifurcation() {
  const FracOrder s(0.5);
  double lambda_err = 0.0, period_def = 0.0, period_emp = 0.0;
  std::ostringstream d;
  for (const BranchRun& run : shared_solutions().branches) {
    const Branch& br = run.branch;
    const int k = br.k;
    const double star = bifurcation_value(s, k, Formulation::kNormal);
    const double le = std::abs(br.points.front().lambda - star);
    double pd = 0.0;
    for (const BranchPoint& pt : br.points) {
      const double formula = kTwoPi * std::pow(1.0 - pt.lambda, -1.0 / s.two_s());
      pd = std::max(pd, std::abs(pt.minimal_period - formula) / formula);
    }
    const PeriodicProfile prof = rescale_to_global(br.points.back(), s);
    const double emp = empirical_minimal_period(prof);
    const double pe = std::abs(emp - br.points.back().minimal_period) / br.points.back().minimal_period;
    lambda_err = std::max(lambda_err, le);
    period_def = std::max(period_def, pd);
    period_emp = std::max(period_emp, pe);
    d << "k=" << k << ": |lambda-lambda*| " << fmt(le) << ", reported period " << fmt(br.points.back().minimal_period)
      << ", empirical " << fmt(emp) << " (rel " << fmt(pe) << "), " << br.points.size() << " points, stop: "
      << br.stop_reason << "; ";
  }
  d << "definitional period gap " << fmt(period_def);
  return make(5, "branches k=1,2,3 (s=0.5, u^3) start at k^{2s}/(1+k^{2s}); period 2pi(1-lambda)^{-1/(2s)}",
              period_emp, 1e-2, lambda_err <= 1e-2 && period_def <= 1e-12 && period_emp <= 1e-2, d.str());
}

CriterionResult variational() {
  const MinimizeResult& big = shared_solutions().minimizer;
  const MinimizeResult small = minimize_on_manifold(FracOrder(0.5), 3.0, -0.01);
  const double vmin = to_grid(big.v, quadrature_points(big.v.n_modes())).min();
  const SpectralField flat = SpectralField::constant(small.v.n_modes(), small.v.mean());
  const bool small_constant = !small.nonconstant_certified && max_coeff_diff(small.v, flat) <= 1e-8;
  const bool cert_fails = !nonconstancy_certificate(certificate_test_field(3.0), FracOrder(0.5), 3.0, -0.01);
  std::ostringstream d;
  d << "lambda=-10: residual " << fmt(big.residual) << ", Jtilde " << big.jtilde << " vs constant "
    << big.jtilde_constant << ", certified " << big.nonconstant_certified << ", min v " << vmin
    << "; lambda=-0.01: constant " << small_constant << ", certificate fails " << cert_fails;
  const bool pass = big.residual <= 1e-6 && big.nonconstant_certified && big.jtilde < big.jtilde_constant &&
                    vmin > 0.0 && small_constant && cert_fails;
  return make(6, "constrained minimizer: nonconstant positive at lambda=-10, constant at lambda=-0.01",
              big.residual, 1e-6, pass, d.str());
}

CriterionResult linking() {
  const LinkingReport rep = linking_geometry_check(FracOrder(0.5), 3.0, 0.5);
  const SignChangingResult& sc = shared_solutions().sign_changing;
  std::ostringstream d;
  d << "k=" << rep.k << " r=" << rep.r << " beta=" << rep.beta << " min J sphere " << rep.min_J_sphere
    << " max J E_k " << fmt(rep.max_J_subspace) << " R=" << rep.R << " max J large " << rep.max_J_large
    << " violations " << rep.sphere_violations << "/" << rep.subspace_violations << "/" << rep.large_violations
    << "; sign-changing residual " << fmt(sc.residual) << " min " << sc.min << " max " << sc.max;
  const bool pass = rep.passed() && sc.residual <= 1e-8 && sc.min * sc.max < 0.0;
  return make(7, "linking geometry at s=0.5, p=3, lambda=0.5 and sign-changing solution", sc.residual, 1e-8, pass,
              d.str());
}

CriterionResult soliton_identity() {
  const SolitonReport rep = soliton_identity_check();
  const double pw = *std::max_element(rep.pointwise_error.begin(), rep.pointwise_error.end());
  std::ostringstream d;
  d << "sup residual " << fmt(rep.sup_residual) << " over " << rep.points.size() << " points; pointwise errors at x=0,1,2: "
    << fmt(rep.pointwise_error[0]) << " " << fmt(rep.pointwise_error[1]) << " " << fmt(rep.pointwise_error[2]);
  return make(8, "Q = 2/(1+x^2) solves (-Delta)^{1/2}Q + Q - Q^2 = 0 on |x| <= 10", rep.sup_residual, 1e-3,
              rep.sup_residual <= 1e-3 && pw <= 1e-4, d.str());
}

CriterionResult end_to_end() {
  const Shared& sh = shared_solutions();
  const FracOrder s(0.5);
  const auto rhs = [](double lambda) {
    return [lambda](double u) { return lambda * u + std::abs(u) * std::abs(u) * u; };
  };
  double worst = 0.0;
  int count = 0;
  std::ostringstream d;
  for (const BranchRun& run : sh.branches) {
    double w = 0.0;
    for (const GlobalSolution& g : run.checked) {
      w = std::max(w, g.residual.sup);
      ++count;
    }
    d << "branch k=" << run.branch.k << ": " << fmt(w) << "; ";
    worst = std::max(worst, w);
  }
  const double rv =
      periodic_residual(PeriodicProfile{sh.minimizer.u, kTwoPi}, s, rhs(-10.0)).sup;
  const double rs =
      periodic_residual(PeriodicProfile{sh.sign_changing.u, kTwoPi}, s, rhs(0.5)).sup;
  count += 2;
  worst = std::max({worst, rv, rs});
  d << "minimizer: " << fmt(rv) << "; sign-changing: " << fmt(rs);
  return make(9, "solutions of criteria 5-7 satisfy the equation pointwise at 32 off-grid points (" +
                     std::to_string(count) + " solutions)",
              worst, 1e-5, worst <= 1e-5, d.str());
}

CriterionResult property_suites(std::uint64_t seed) {
  Rng rng(seed);
  std::ostringstream d;

  double op_gap = 0.0;
  for (int t = 0; t < 50; ++t) {
    const FracOrder s(uniform(rng, 0.1, 0.95));
    const SpectralField u = random_field(rng, 32);
    const QuadratureOperator op(s, 512);
    const GridField exact = to_grid(SpectralOperator(s, 32).apply(u), 512);
    const GridField approx = op.apply(to_grid(u, 512));
    for (int i = 0; i < 512; ++i) op_gap = std::max(op_gap, std::abs(exact[i] - approx[i]));
  }
  d << "operator agreement " << fmt(op_gap) << " (<=1e-3); ";

  double grad_gap = 0.0;
  const std::array<Nonlinearity, 3> fs = {monomial(2), monomial(3), power_odd(2.5)};
  for (int t = 0; t < 30; ++t) {
    const FracOrder s(uniform(rng, 0.3, 0.95));
    const double lambda = uniform(rng, -2.0, 2.0);
    const Nonlinearity& f = fs[t % 3];
    const SpectralField u = random_field(rng, 16);
    const SpectralField phi = random_field(rng, 16);
    constexpr double h = 1e-5;
    const double fd = (eval_J(u + h * phi, s, lambda, f) - eval_J(u - h * phi, s, lambda, f)) / (2.0 * h);
    const double dd = directional_derivative_J(u, phi, s, lambda, f);
    grad_gap = std::max(grad_gap, std::abs(fd - dd) / std::max(std::abs(dd), 1e-3));
  }
  d << "J gradient vs finite differences " << fmt(grad_gap) << " (<=1e-5); ";

  double convex_violation = -std::numeric_limits<double>::infinity();
  for (const ConvexFunction& phi : convex_catalog()) {
    for (int t = 0; t < 4; ++t) {
      const FracOrder s(uniform(rng, 0.1, 0.95));
      const SpectralField u = random_field(rng, 16);
      convex_violation = std::max(convex_violation, convexity_inequality_check(u, phi, s, 256).max_violation);
    }
  }
  d << "convexity violation " << fmt(convex_violation) << " (<=1e-6); ";

  int chains = 0, unterminated = 0;
  for (int i = 1; i <= 19; ++i) {
    const FracOrder s(0.025 * i);
    const double bound = growth_exponent_bound(s);
    for (int j = 0; j <= 20; ++j) {
      const double p = 1.0 + (bound - 1.0) * (j == 20 ? 1.0 - 1e-9 : (j + 0.5) / 20.5);
      if (!bootstrap_chain(s, p).terminated()) ++unterminated;
      ++chains;
    }
  }
  d << unterminated << "/" << chains << " bootstrap chains fail to terminate";

  const bool pass = op_gap <= 1e-3 && grad_gap <= 1e-5 && convex_violation <= 1e-6 && unterminated == 0;
  const double measured = std::max({op_gap / 1e-3, grad_gap / 1e-5, convex_violation / 1e-6,
                                    static_cast<double>(unterminated)});
  return make(10, "property suites: operator agreement, J gradient, convexity inequality, bootstrap chains",
              measured, 1.0, pass, d.str());
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  switch (id) {
    case 1: return eigenvalues();
    case 2: return gram_matrix();
    case 3: return rayleigh_minimum();
    case 4: return maximum_principle(opts.seed);
    case 5: return bifurcation();
    case 6: return variational();
    case 7: return linking();
    case 8: return soliton_identity();
    case 9: return end_to_end();
    case 10: return property_suites(opts.seed);
    default: throw PreconditionError("cli", "criterion id must be in 1..10");
  }
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::span<const int> ids) {
  std::vector<int> which(ids.begin(), ids.end());
  if (which.empty())
    for (int i = 1; i <= kCriterionCount; ++i) which.push_back(i);
  std::sort(which.begin(), which.end());
  which.erase(std::unique(which.begin(), which.end()), which.end());
  std::vector<std::future<CriterionResult>> jobs;
  for (int id : which) {
    if (id < 1 || id > kCriterionCount) throw PreconditionError("cli", "criterion id must be in 1..10");
    jobs.push_back(std::async(std::launch::async, [id, &opts] {
      try {
        return run_criterion(id, opts);
      } catch (const std::exception& e) {
        return CriterionResult{id, "criterion " + std::to_string(id), std::nan(""), 0.0, false,
                               std::string("error: ") + e.what()};
      }
    }));
  }
  std::vector<CriterionResult> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << "criterion " << r.criterion_id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.description
     << "  measured=" << fmt(r.measured) << " tolerance=" << fmt(r.tolerance);
  return os.str();
}

nlohmann::json scorecard_json(std::span<const CriterionResult> results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CriterionResult& r : results) {
    arr.push_back({{"criterion_id", r.criterion_id},
                   {"description", r.description},
                   {"measured", std::isfinite(r.measured) ? nlohmann::json(r.measured) : nlohmann::json(nullptr)},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass},
                   {"detail", r.detail}});
  }
  return arr;
}

}  // namespace fraclap
