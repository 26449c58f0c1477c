#include "yamabe/periodic.hpp"

#include <algorithm>
#include <array>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "yamabe/error.hpp"

namespace yamabe {

using detail::require;

double OdeProblem::doubling_factor() const { return std::pow(2.0, two_over_k()); }

OdeProblem circle_product_problem(const ModelManifold& M, double t) {
  require(t > 0.0, "circle_product_problem: t must be positive");
  require(M.dim() >= 2, "circle_product_problem: M must have dimension >= 2");
  require(M.scalar() > 0.0, "circle_product_problem: M must have positive scalar curvature");
  const DimData dd = dim_data(M.dim() + 1);
  return {2.0 * std::numbers::pi * std::sqrt(t), M.scalar(), dd.a, dd.p, 1.0, M.volume()};
}

std::string to_string(SolutionKind kind) {
  switch (kind) {
    case SolutionKind::Constant:
      return "constant";
    case SolutionKind::Positive:
      return "positive";
    case SolutionKind::Nodal:
      return "nodal";
  }
  return {};
}

namespace {

void validate(const OdeProblem& pr) {
  require(pr.length > 0.0 && std::isfinite(pr.length), "circle problem: length must be positive");
  require(pr.scalar > 0.0, "circle problem: scalar curvature must be positive");
  require(pr.a > 0.0, "circle problem: a must be positive");
  require(pr.p > 2.0, "circle problem: p must exceed 2");
  require(pr.lambda > 0.0, "circle problem: lambda must be positive");
  require(pr.volume_M > 0.0, "circle problem: volume of M must be positive");
}

void validate(const SearchOptions& opt) {
  require(opt.j_max >= 1, "search: j_max must be >= 1");
  require(opt.profile_points >= 16, "search: profile needs at least 16 points");
  require(opt.quad_tol > 0.0, "search: quadrature tolerance must be positive");
  require(opt.scan_points >= 8, "search: scan needs at least 8 points");
}

PhasePortrait portrait(const OdeProblem& pr) { return {pr.scalar, pr.a, pr.p, pr.lambda}; }

double functional(const OdeProblem& pr, double mass) {
  return pr.lambda * std::pow(pr.volume_M * mass, pr.two_over_k());
}

template <class F>
double solve_bracketed(F&& f, double lo, double hi) {
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

/// Index i with T[i] and T[i+1] on opposite sides of target, or -1.
int find_bracket(const std::vector<double>& T, double target) {
  for (std::size_t i = 0; i + 1 < T.size(); ++i) {
    if ((T[i] - target) * (T[i + 1] - target) <= 0.0) return int(i);
  }
  return -1;
}

PeriodicSolution constant_solution(const OdeProblem& pr) {
  PeriodicSolution sol;
  sol.kind = SolutionKind::Constant;
  sol.problem = pr;
  const double c = std::pow(pr.scalar / pr.lambda, 1.0 / (pr.p - 2.0));
  sol.energy = portrait(pr).bottom();
  sol.u_min = sol.u_max = c;
  sol.period = pr.length;
  sol.repetitions = 1;
  sol.p_mass = pr.length * std::pow(c, pr.p);
  sol.value = functional(pr, sol.p_mass);
  return sol;
}

}  // namespace

std::vector<PeriodicSolution> positive_solutions(const OdeProblem& pr, const SearchOptions& opt) {
  validate(pr);
  validate(opt);
  std::vector<PeriodicSolution> out{constant_solution(pr)};
  const PhasePortrait pp = portrait(pr);
  // Well orbits are labelled by zeta = log(u* / u_min): zeta -> 0 is the
  // bottom of the well, zeta -> infinity the homoclinic loop.
  auto period = [&](double zeta) {
    return well_orbit_from_turning_point(pp, pp.center() * std::exp(-zeta), {opt.quad_tol, true}).period;
  };
  constexpr double zeta_min = 1e-3;
  constexpr double zeta_cap = 600.0;
  const double t_min = period(zeta_min);
  if (pr.length <= t_min) return out;
  double zeta_max = 1.0;
  while (period(zeta_max) <= pr.length && zeta_max < zeta_cap) zeta_max = std::min(2.0 * zeta_max, zeta_cap);

  std::vector<double> zs(opt.scan_points), Ts(opt.scan_points);
  bool monotone = true;
  for (int i = 0; i < opt.scan_points; ++i) {
    zs[i] = zeta_min * std::pow(zeta_max / zeta_min, double(i) / (opt.scan_points - 1));
    Ts[i] = period(zs[i]);
    if (i > 0 && !(Ts[i] > Ts[i - 1])) monotone = false;
  }
  for (int j = 1; j <= opt.j_max; ++j) {
    const double target = pr.length / j;
    if (target <= t_min) break;
    const int b = find_bracket(Ts, target);
    if (b < 0) continue;
    const double zeta = solve_bracketed([&](double z) { return period(z) - target; }, zs[b], zs[b + 1]);
    const OrbitIntegrals orbit =
        well_orbit_from_turning_point(pp, pp.center() * std::exp(-zeta), {opt.quad_tol, false});
    PeriodicSolution sol;
  sol.kind = SolutionKind::Positive;
  sol.problem = pr;
    sol.energy = orbit.energy;
    sol.repetitions = j;
    sol.period = orbit.period;
    sol.u_min = orbit.u_min;
    sol.u_max = orbit.u_max;
    sol.p_mass = orbit.p_mass;
    sol.value = functional(pr, j * orbit.p_mass);
    sol.period_monotone = monotone;
    out.push_back(std::move(sol));
  }
  if (opt.with_profile) {
    for (auto& s : out) attach_profile(s, opt.profile_points);
  }
  return out;
}

NodalSearch nodal_solutions(const OdeProblem& pr, const SearchOptions& opt) {
  validate(pr);
  validate(opt);
  const PhasePortrait pp = portrait(pr);
  // Sign-changing orbits are labelled by eta = log E.
  auto period = [&](double eta) { return sign_changing_orbit(pp, std::exp(eta), {opt.quad_tol, true}).period; };
  const double longest = pr.length;
  const double shortest = pr.length / opt.j_max;
  double lo = 0.0;
  while (period(lo) <= longest && lo > -640.0) lo = std::max(lo - 8.0, -640.0);
  double hi = 0.0;
  while (period(hi) >= shortest && hi < 300.0) hi += 4.0;

  NodalSearch search;
  std::vector<double> es(opt.scan_points), Ts(opt.scan_points);
  for (int i = 0; i < opt.scan_points; ++i) {
    es[i] = lo + (hi - lo) * i / (opt.scan_points - 1);
    Ts[i] = period(es[i]);
    if (i > 0 && !(Ts[i] < Ts[i - 1])) search.monotone = false;
  }
  for (int j = 1; j <= opt.j_max; ++j) {
    const double target = pr.length / j;
    const int b = find_bracket(Ts, target);
    if (b < 0) {
      search.skipped.push_back(j);
      continue;
    }
    const double eta = solve_bracketed([&](double e) { return period(e) - target; }, es[b], es[b + 1]);
    const OrbitIntegrals orbit = sign_changing_orbit(pp, std::exp(eta), {opt.quad_tol, false});
    PeriodicSolution sol;
  sol.kind = SolutionKind::Nodal;
  sol.problem = pr;
    sol.energy = orbit.energy;
    sol.repetitions = j;
    sol.nodal_count = 2 * j;
    sol.period = orbit.period;
    sol.u_min = -orbit.u_max;
    sol.u_max = orbit.u_max;
    sol.p_mass = orbit.p_mass;
    sol.lobe_value = functional(pr, 0.5 * orbit.p_mass);
    // 2j congruent lobes, each carrying the same share of the p-mass
    sol.value = std::pow(2.0 * j, pr.two_over_k()) * sol.lobe_value;
    sol.period_monotone = search.monotone;
    if (opt.with_profile) attach_profile(sol, opt.profile_points);
    search.solutions.push_back(std::move(sol));
  }
  return search;
}

namespace {

NYamabe first_from(const std::vector<PeriodicSolution>& positive, const NodalSearch& nodal) {
  NYamabe best{std::numeric_limits<double>::infinity(), positive.front(), 0, "constant"};
  for (const auto& s : positive) {
    if (s.value < best.value) {
      best = {s.value, s, s.kind == SolutionKind::Constant ? 0 : s.repetitions, to_string(s.kind)};
    }
  }
  for (const auto& s : nodal.solutions) {
    if (s.lobe_value < best.value) best = {s.lobe_value, s, s.repetitions, "nodal-lobe"};
  }
  return best;
}

NYamabe second_from(const NodalSearch& nodal) {
  if (nodal.solutions.empty()) throw ConfigurationError("second_N_yamabe: no nodal solution found");
  const PeriodicSolution* best = &nodal.solutions.front();
  for (const auto& s : nodal.solutions) {
    if (s.value < best->value) best = &s;
  }
  return {best->value, *best, best->repetitions, "nodal"};
}

}  // namespace

CircleAnalysis analyze_circle(const OdeProblem& pr, const SearchOptions& opt) {
  CircleAnalysis out;
  out.positive = positive_solutions(pr, opt);
  out.nodal = nodal_solutions(pr, opt);
  out.first = first_from(out.positive, out.nodal);
  out.second = second_from(out.nodal);
  return out;
}

NYamabe first_N_yamabe(const OdeProblem& pr, const SearchOptions& opt) {
  return first_from(positive_solutions(pr, opt), nodal_solutions(pr, opt));
}

NYamabe second_N_yamabe(const OdeProblem& pr, const SearchOptions& opt) {
  return second_from(nodal_solutions(pr, opt));
}

namespace {

using State = std::array<double, 2>;

/// Quarter (nodal) or half (well) orbit integrated from its saddle-side end,
/// evaluated at arbitrary phases by symmetry.
class OrbitSampler {
 public:
  explicit OrbitSampler(const PeriodicSolution& sol)
      : sol_(sol), pp_(portrait(sol.problem)), nodal_(sol.kind == SolutionKind::Nodal) {
    span_ = nodal_ ? 0.25 * sol.period : 0.5 * sol.period;
    start_ = nodal_ ? State{0.0, std::sqrt(2.0 * sol.energy / pp_.a())} : State{sol.u_min, 0.0};
    // Move the reflection point onto the integrated trajectory's own turning
    // point (w' = 0) so the mirrored profile has no kink in w'.
    for (int it = 0; it < 6; ++it) {
      const State end = integrate_at({span_}).front();
      const double step = end[1] * pp_.a() / pp_.force(end[0]);
      span_ -= step;
      if (std::abs(step) <= 1e-15 * span_) break;
    }
    period_ = (nodal_ ? 4.0 : 2.0) * span_;
  }

  double period() const { return period_; }

  /// (w, w') at each phase in [0, T).
  std::vector<State> evaluate(const std::vector<double>& phases) const {
    const std::size_t n = phases.size();
    std::vector<double> args(n);
    std::vector<double> sw(n, 1.0), sd(n, 1.0);
    const double T = period_;
    for (std::size_t i = 0; i < n; ++i) {
      double phi = std::fmod(phases[i], T);
      if (phi < 0.0) phi += T;
      if (nodal_) {
        const double q = span_;
        if (phi <= q) {
          args[i] = phi;
        } else if (phi <= 2.0 * q) {
          args[i] = 2.0 * q - phi, sd[i] = -1.0;
        } else if (phi <= 3.0 * q) {
          args[i] = phi - 2.0 * q, sw[i] = -1.0, sd[i] = -1.0;
        } else {
          args[i] = 4.0 * q - phi, sw[i] = -1.0;
        }
      } else if (phi <= span_) {
        args[i] = phi;
      } else {
        args[i] = T - phi, sd[i] = -1.0;
      }
      args[i] = std::clamp(args[i], 0.0, span_);
    }
    const std::vector<State> base = integrate_at(args);
    std::vector<State> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {sw[i] * base[i][0], sd[i] * base[i][1]};
    return out;
  }

 private:
  std::vector<State> integrate_at(const std::vector<double>& args) const {
    namespace odeint = boost::numeric::odeint;
    std::vector<std::size_t> order(args.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return args[a] < args[b]; });
    std::vector<double> times{0.0};
    std::vector<std::size_t> slot(args.size());
    for (std::size_t idx : order) {
      if (args[idx] > times.back()) times.push_back(args[idx]);
      slot[idx] = times.size() - 1;
    }
    std::vector<State> states;
    states.reserve(times.size());
    State y = start_;
    const double a = pp_.a();
    auto rhs = [&](const State& q, State& dq, double) {
      dq[0] = q[1];
      dq[1] = pp_.force(q[0]) / a;
    };
    if (times.size() == 1) {
      states.push_back(y);
    } else {
      // Dense output keeps the step sequence independent of the sample times.
      auto stepper = odeint::make_dense_output(1e-300, 1e-14, odeint::runge_kutta_dopri5<State>());
      odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), 1e-3,
                              [&](const State& s, double) { states.push_back(s); });
    }
    std::vector<State> out(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) out[i] = states[slot[i]];
    return out;
  }

  const PeriodicSolution& sol_;
  PhasePortrait pp_;
  bool nodal_;
  double span_;
  double period_;
  State start_;
};

bool even_integer(double p) { return std::abs(p / 2.0 - std::round(p / 2.0)) < 1e-12; }

}  // namespace

void attach_profile(PeriodicSolution& sol, int points) {
  require(points >= 16, "attach_profile: need at least 16 points");
  const OdeProblem& pr = sol.problem;
  const PhasePortrait pp = portrait(pr);
  const double h = pr.length / points;
  sol.x.resize(points);
  for (int i = 0; i < points; ++i) sol.x[i] = i * h;

  if (sol.kind == SolutionKind::Constant) {
    sol.w.assign(points, sol.u_max);
    sol.dw.assign(points, 0.0);
    sol.max_residual = std::abs(pr.scalar * sol.u_max - pr.lambda * std::pow(sol.u_max, pr.p - 1.0));
    sol.energy_drift = 0.0;
    sol.periodicity_error = 0.0;
    return;
  }

  const OrbitSampler sampler(sol);
  // w'' is differentiated from the w' channel with a 6th-order central
  // stencil whose spacing follows the fastest local time scale of the orbit.
  constexpr int stride = 4;
  constexpr std::array<int, 6> offsets{-3, -2, -1, 1, 2, 3};
  constexpr std::array<double, 6> weights{-1.0, 9.0, -45.0, 45.0, -9.0, 1.0};
  const double stiff = (pr.p - 1.0) * pr.lambda * std::pow(std::abs(sol.u_max), pr.p - 2.0);
  const double tau = std::sqrt(pr.a / std::max(pr.scalar, stiff));
  const double delta = std::min(0.005 * tau, sol.period / 800.0);
  std::vector<double> phases = sol.x;
  std::vector<int> centers;
  for (int i = 0; i < points; i += stride) {
    centers.push_back(i);
    for (int o : offsets) phases.push_back(sol.x[i] + o * delta);
  }
  const std::vector<State> values = sampler.evaluate(phases);

  sol.w.resize(points);
  sol.dw.resize(points);
  double drift = 0.0;
  for (int i = 0; i < points; ++i) {
    sol.w[i] = values[i][0];
    sol.dw[i] = values[i][1];
    const double e = 0.5 * pr.a * sol.dw[i] * sol.dw[i] + pp.potential(sol.w[i]);
    drift = std::max(drift, std::abs(e - sol.energy));
  }
  const bool smooth_at_zero = even_integer(pr.p);
  double residual = 0.0;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const int i = centers[c];
    const State* s = &values[points + offsets.size() * c];
    const double w = sol.w[i];
    if (!smooth_at_zero && (s[0][0] * w <= 0.0 || s[5][0] * w <= 0.0)) continue;
    double d2 = 0.0;
    for (std::size_t q = 0; q < offsets.size(); ++q) d2 += weights[q] * s[q][1];
    d2 /= 60.0 * delta;
    const double r = -pr.a * d2 + pr.scalar * w - pr.lambda * std::pow(std::abs(w), pr.p - 2.0) * w;
    residual = std::max(residual, std::abs(r));
  }
  const std::vector<State> ends = sampler.evaluate({0.0, pr.length});
  sol.max_residual = residual;
  sol.energy_drift = drift;
  sol.periodicity_error = std::max(std::abs(ends[1][0] - ends[0][0]), std::abs(ends[1][1] - ends[0][1]));
}

double discrete_oracle_value(const PeriodicSolution& solution, int grid) {
  PeriodicSolution sol = solution;
  if (int(sol.w.size()) != grid) attach_profile(sol, grid);
  const OdeProblem& pr = sol.problem;
  const CircleOperator op = fd_circle_operator(pr.scalar, pr.a, pr.length, grid);
  std::vector<double> weight(grid);
  for (int i = 0; i < grid; ++i) weight[i] = std::abs(sol.w[i]);
  std::vector<std::vector<double>> basis;
  if (sol.kind == SolutionKind::Nodal) {
    std::vector<double> plus(grid), minus(grid);
    for (int i = 0; i < grid; ++i) {
      plus[i] = std::max(sol.w[i], 0.0);
      minus[i] = std::min(sol.w[i], 0.0);
    }
    basis = {plus, minus};
  } else {
    basis = {sol.w};
  }
  return subspace_rayleigh_max(op, weight, pr.p, basis) * volume_factor(weight, pr.p, op.h, pr.volume_M);
}

}  // namespace yamabe
