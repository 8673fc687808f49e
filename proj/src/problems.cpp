#include "fraclap/problems.hpp"

#include "fraclap/errors.hpp"
#include "fraclap/exponents.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/variational.hpp"
#include "fraclap/xspace.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace fraclap {
namespace {

constexpr const char* kModule = "problems";

void require_subcritical(FracOrder s, double p) {
  if (!(p > 1.0)) throw PreconditionError(kModule, "growth exponent must satisfy p > 1");
  if (!is_subcritical(s, p)) {
    std::ostringstream os;
    os << "growth exponent must satisfy p < (1+2s)/(1-2s) = " << growth_exponent_bound(s) << " for s = " << s.value();
    throw PreconditionError(kModule, os.str());
  }
}

double sup_amplitude(const PeriodicProfile& u) {
  const GridField g = to_grid(u.shape, next_power_of_two(8 * (u.shape.n_modes() + 1)));
  return std::max(std::abs(g.min()), std::abs(g.max()));
}

std::pair<double, double> grid_range(const SpectralField& u) {
  const GridField g = to_grid(u, next_power_of_two(8 * (u.n_modes() + 1)));
  return {g.min(), g.max()};
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13);
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::kEvenPower: return "even-power";
    case Family::kOddPlus: return "odd-plus";
    case Family::kOddMinus: return "odd-minus";
    case Family::kQuadraticShifted: return "quadratic-shifted";
    case Family::kBenjaminOnoStationary: return "benjamin-ono";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  if (name == "even-power") return Family::kEvenPower;
  if (name == "odd-plus") return Family::kOddPlus;
  if (name == "odd-minus") return Family::kOddMinus;
  if (name == "quadratic-shifted") return Family::kQuadraticShifted;
  if (name == "bo" || name == "benjamin-ono") return Family::kBenjaminOnoStationary;
  throw PreconditionError(kModule, "unknown problem family '" + name +
                                       "' (expected even-power, odd-plus, odd-minus, quadratic-shifted, bo)");
}

ProblemSpec make_problem(Family family, FracOrder s, double p) {
  switch (family) {
    case Family::kEvenPower:
      require_subcritical(s, p);
      return {s, family, p, 1.0, power_even(p)};
    case Family::kOddPlus:
      require_subcritical(s, p);
      return {s, family, p, 1.0, power_odd(p)};
    case Family::kOddMinus:
      require_subcritical(s, p);
      return {s, family, p, -1.0, power_odd(p)};
    case Family::kQuadraticShifted:
    case Family::kBenjaminOnoStationary:
      if (!(s.value() > 1.0 / 6.0)) throw PreconditionError(kModule, "the quadratic equation requires s > 1/6");
      return {s, family, 2.0, -1.0, monomial(2)};
  }
  throw PreconditionError(kModule, "unknown problem family");
}

GlobalResidualReport global_residual(const PeriodicProfile& u, const ProblemSpec& spec, int n_check, int n_pts,
                                     double richardson_tol) {
  const PeriodicResidual r =
      periodic_residual(u, spec.s, [&spec](double v) { return spec.rhs(v); }, n_check, n_pts);
  return {r.sup, r.richardson_gap, r.richardson_gap <= richardson_tol};
}

PeriodicProfile fractional_laplacian(const PeriodicProfile& u, FracOrder s) {
  const double scale = std::pow(u.wavenumber(), s.two_s());
  SpectralField out(u.shape.n_modes());
  for (int j = 1; j <= out.n_modes(); ++j) {
    const double m = scale * std::pow(j, s.two_s());
    out.a(j) = m * u.shape.a(j);
    out.b(j) = m * u.shape.b(j);
  }
  return {out, u.period};
}

double benjamin_ono_residual(const PeriodicProfile& u, FracOrder s) {
  const PeriodicProfile ux{u.wavenumber() * u.shape.derivative(), u.period};
  const PeriodicProfile lux = fractional_laplacian(ux, s);
  const int n = 2 * quadrature_points(u.shape.n_modes());
  const GridField gu = to_grid(u.shape, n);
  const GridField gx = to_grid(ux.shape, n);
  const GridField gl = to_grid(lux.shape, n);
  double sup = 0.0;
  for (int i = 0; i < n; ++i) sup = std::max(sup, std::abs(gx[i] - 2.0 * gu[i] * gx[i] + gl[i]));
  return sup;
}

SolutionPair solve_scaled_pair(Family family, FracOrder s, double p, const ScaledPairOptions& opts) {
  if (family != Family::kEvenPower && family != Family::kOddPlus)
    throw PreconditionError(kModule, "scaled pairs exist for the even-power and odd-plus families");
  const ProblemSpec spec = make_problem(family, s, p);

  ContinuationOptions copts;
  copts.n_modes = opts.n_modes;
  copts.max_amplitude = 4.0 * opts.target_amplitude;
  const Branch br = continue_branch(s, spec.f, 1, copts);

  const BranchPoint* best = nullptr;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const BranchPoint& pt : br.points) {
    const double lam = pt.lambda;
    if (!(lam > 0.0 && lam < 1.0)) continue;
    const double period = kTwoPi * std::pow(lam / (1.0 - lam), 1.0 / s.two_s());
    if (std::abs(period / kTwoPi - 1.0) > opts.period_tolerance) continue;
    const double amp = std::pow(lam, -1.0 / (p - 1.0)) * pt.amplitude;
    const double gap = std::abs(amp - opts.target_amplitude);
    if (gap < best_gap) {
      best_gap = gap;
      best = &pt;
    }
  }
  if (!best) throw ConvergenceError(kModule, "no branch point with period within tolerance of 2π");

  const double lam = best->lambda;
  const double c = std::pow(lam, -1.0 / (p - 1.0));
  const double period = kTwoPi * std::pow(lam / (1.0 - lam), 1.0 / s.two_s());
  const SpectralField shape = c * best->field;
  SolutionPair out{{PeriodicProfile{shape, period}, PeriodicProfile{shape.shifted(std::numbers::pi), period}},
                   lam,
                   period,
                   c * best->amplitude,
                   {0.0, 0.0},
                   grid_range(shape).first};
  for (int i = 0; i < 2; ++i) out.residual[i] = global_residual(out.u[i], spec).sup;
  return out;
}

SolutionPair solve_even_power_pair(FracOrder s, double p, const ScaledPairOptions& opts) {
  return solve_scaled_pair(Family::kEvenPower, s, p, opts);
}

std::vector<AmplitudeRow> amplitude_scan(FracOrder s, double p, const std::vector<double>& lambda_grid) {
  require_subcritical(s, p);
  std::vector<AmplitudeRow> rows;
  if (lambda_grid.empty()) return rows;
  ContinuationOptions copts;
  copts.max_amplitude = 0.9;
  const Branch br = continue_branch(s, power_even(p), 1, copts);
  for (double lam : lambda_grid) {
    AmplitudeRow row{lam, std::nullopt};
    for (size_t i = 1; i < br.points.size(); ++i) {
      const BranchPoint& a = br.points[i - 1];
      const BranchPoint& b = br.points[i];
      if ((a.lambda - lam) * (b.lambda - lam) <= 0.0 && a.lambda != b.lambda) {
        const double t = (lam - a.lambda) / (b.lambda - a.lambda);
        row.amplitude = a.amplitude + t * (b.amplitude - a.amplitude);
        break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

PeriodicProfile large_period_wave(FracOrder s, double p, double period, int n_modes) {
  require_subcritical(s, p);
  if (!(period > kTwoPi)) throw PreconditionError(kModule, "large-period waves need a period above 2π");
  const double big_lambda = -std::pow(period / kTwoPi, s.two_s());
  MinimizeOptions mopts;
  mopts.n_modes = n_modes;
  const MinimizeResult res = minimize_on_manifold(s, p, big_lambda, mopts);
  if (!res.nonconstant_certified) throw ConvergenceError(kModule, "variational solution is not certified nonconstant");
  const double c = std::pow(-big_lambda, -1.0 / (p - 1.0));
  return {c * res.u, period};
}

double line_fractional_laplacian(const std::function<double(double)>& f, double x, FracOrder s, double L,
                                 double delta) {
  if (!(L > std::abs(x) + delta)) throw PreconditionError(kModule, "truncation length must exceed |x| + δ");
  const double alpha = s.kernel_exponent();
  const double fx = f(x);
  const double near = integrate([&](double z) { return (2.0 * fx - f(x + z) - f(x - z)) * std::pow(z, -alpha); }, 0.0,
                                delta);
  const double right = integrate([&](double y) { return (fx - f(y)) * std::pow(y - x, -alpha); }, x + delta, L);
  const double left = integrate([&](double y) { return (fx - f(y)) * std::pow(x - y, -alpha); }, -L, x - delta);
  const double exterior_fx = fx * (std::pow(L - x, -s.two_s()) + std::pow(L + x, -s.two_s())) / s.two_s();
  const double exterior_fy = integrate(
      [&](double t) {
        const double y = L / t;
        return (f(y) * std::pow(y - x, -alpha) + f(-y) * std::pow(y + x, -alpha)) * L / (t * t);
      },
      0.0, 1.0);
  return normalization_constant(s) * (near + right + left + exterior_fx - exterior_fy);
}

double soliton(double x) { return 2.0 / (1.0 + x * x); }

SolitonReport soliton_identity_check(int n_points, double L) {
  if (n_points < 2) throw PreconditionError(kModule, "need at least two sample points");
  const FracOrder half(0.5);
  SolitonReport rep{0.0, {}, {}};
  for (int i = 0; i < n_points; ++i) {
    const double x = -10.0 + 20.0 * i / (n_points - 1);
    const double q = soliton(x);
    const double lq = line_fractional_laplacian(soliton, x, half, L);
    rep.sup_residual = std::max(rep.sup_residual, std::abs(lq + q - q * q));
    rep.points.push_back(x);
  }
  for (int i = 0; i < 3; ++i) {
    const double x = i;
    const double exact = 2.0 * (1.0 - x * x) / ((1.0 + x * x) * (1.0 + x * x));
    rep.pointwise_error[i] = std::abs(line_fractional_laplacian(soliton, x, half, L) - exact);
  }
  return rep;
}

BenjaminOnoReport benjamin_ono_suite(FracOrder s) {
  const ProblemSpec spec = make_problem(Family::kQuadraticShifted, s);
  constexpr double kResidualTol = 1e-5;
  constexpr double kBoTol = 1e-4;
  BenjaminOnoReport rep{s, {}, std::nullopt, {}, true};

  auto add_item = [&](std::string name, const PeriodicProfile& u, std::string detail) {
    const auto [lo, hi] = grid_range(u.shape);
    SuiteItem item{std::move(name), u.period, u.shape.mean(), 0.5 * (hi - lo), hi, global_residual(u, spec).sup,
                   benjamin_ono_residual(u, s), false, std::move(detail), u};
    item.passed = item.residual <= kResidualTol && item.bo_residual <= kBoTol;
    rep.passed = rep.passed && item.passed;
    rep.items.push_back(std::move(item));
  };

  add_item("constant", PeriodicProfile{SpectralField::constant(8, 1.0), kTwoPi}, "u = 1");

  // Suite items are independent; only the report assembly is sequential.
  constexpr std::array<double, 3> kMultiples = {4.0, 8.0, 16.0};
  auto pair_job = std::async(std::launch::async, [s] { return solve_even_power_pair(s, 2.0); });
  std::vector<std::future<PeriodicProfile>> wave_jobs;
  for (double mult : kMultiples)
    wave_jobs.push_back(std::async(std::launch::async, [s, mult] { return large_period_wave(s, 2.0, mult * kTwoPi); }));

  PeriodicProfile shifted = pair_job.get().u[0];
  shifted.shape += SpectralField::constant(shifted.shape.n_modes(), 1.0);
  add_item("near-one", shifted, "u = 1 + v with v a small solution of (-Δ)^s v = v + v²");

  for (size_t i = 0; i < kMultiples.size(); ++i) {
    const PeriodicProfile w = wave_jobs[i].get();
    std::ostringstream name;
    name << "positive-wave-" << 2 * static_cast<int>(kMultiples[i]) << "pi";
    add_item(name.str(), w, "positive wave from the constrained minimizer");
    rep.peaks_by_period.emplace_back(w.period, rep.items.back().peak);
  }

  if (std::abs(s.value() - 0.5) < 1e-12) {
    rep.soliton = soliton_identity_check();
    const double peak = rep.peaks_by_period.back().second;
    const bool ok = rep.soliton->sup_residual <= 1e-3 &&
                    *std::max_element(rep.soliton->pointwise_error.begin(), rep.soliton->pointwise_error.end()) <= 1e-4 &&
                    std::abs(peak - soliton(0.0)) <= 0.1 * soliton(0.0);
    rep.passed = rep.passed && ok;
  }
  return rep;
}

ExampleReport run_example(Family family, FracOrder s, double p) {
  ExampleReport rep{family, s, p, {}, std::nullopt, true};
  switch (family) {
    case Family::kEvenPower:
    case Family::kOddPlus: {
      const SolutionPair pair = solve_scaled_pair(family, s, p);
      for (int i = 0; i < 2; ++i)
        rep.solutions.push_back({i == 0 ? "u1" : "u2", pair.u[i], pair.amplitude, pair.residual[i]});
      const auto [lo, hi] = grid_range(pair.u[0].shape);
      rep.passed = pair.residual[0] <= 1e-5 && pair.residual[1] <= 1e-5 &&
                   (family == Family::kEvenPower ? lo > -1.0 : lo * hi < 0.0);
      break;
    }
    case Family::kOddMinus: {
      const ProblemSpec spec = make_problem(family, s, p);
      const PeriodicProfile w = large_period_wave(s, p, 4.0 * kTwoPi);
      const PeriodicProfile neg{-w.shape, w.period};
      for (const auto& [name, prof] : {std::pair{"positive", w}, std::pair{"negative", neg}}) {
        const double res = global_residual(prof, spec).sup;
        rep.solutions.push_back({name, prof, sup_amplitude(prof), res});
        rep.passed = rep.passed && res <= 1e-5;
      }
      break;
    }
    case Family::kQuadraticShifted:
    case Family::kBenjaminOnoStationary: {
      rep.bo = benjamin_ono_suite(s);
      rep.p = 2.0;
      rep.passed = rep.bo->passed;
      break;
    }
  }
  return rep;
}

}  // namespace fraclap
