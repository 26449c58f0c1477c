#include "yamabe/ground_state.hpp"

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <cstdio>
#include <string>

#include "yamabe/constants.hpp"
#include "yamabe/error.hpp"

namespace yamabe {

using detail::require;
namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

struct RadialRhs {
  int n;
  double p;
  void operator()(const State& y, State& dy, double r) const {
    dy[0] = y[1];
    dy[1] = -(n - 1) * y[1] / r + y[0] - std::pow(std::abs(y[0]), p - 2.0) * y[0];
  }
};

/// Taylor start u0 + c r^2 + d r^4 at small r, where the (n-1)/r term is singular.
State series_start(int n, double p, double u0, double r) {
  const double f0 = u0 - std::pow(u0, p - 1.0);
  const double df0 = 1.0 - (p - 1.0) * std::pow(u0, p - 2.0);
  const double c = f0 / (2.0 * n);
  const double d = df0 * c / (4.0 * (n + 2));
  return {u0 + c * r * r + d * r * r * r * r, 2.0 * c * r + 4.0 * d * r * r * r};
}

struct Shot {
  ShotOutcome outcome;
  double radius;  ///< where the outcome was decided (or r_max)
};

Shot shoot(int n, double p, double u0, double r_max, double tol) {
  const double r0 = 1e-3;
  State y = series_start(n, p, u0, r0);
  auto stepper = odeint::make_dense_output(tol, tol, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(y, r0, 1e-3);
  const RadialRhs rhs{n, p};
  while (stepper.current_time() < r_max) {
    stepper.do_step(rhs);
    const State& s = stepper.current_state();
    if (s[0] < 0.0) return {ShotOutcome::CrossesZero, stepper.current_time()};
    if (s[1] > 0.0) return {ShotOutcome::TurnsBack, stepper.current_time()};
  }
  return {ShotOutcome::Undecided, r_max};
}

/// Trajectory sampled at r_i = i h, i = 0..count-1.
struct Trajectory {
  std::vector<double> u;
  std::vector<double> du;
};

Trajectory sample(int n, double p, double u0, double h, std::size_t count, double tol) {
  Trajectory out;
  out.u.reserve(count);
  out.du.reserve(count);
  out.u.push_back(u0);
  out.du.push_back(0.0);
  std::vector<double> times(count - 1);
  for (std::size_t i = 1; i < count; ++i) times[i - 1] = double(i) * h;
  State y = series_start(n, p, u0, h);
  odeint::integrate_times(odeint::make_controlled(tol * 1e-2, tol * 1e-2, odeint::runge_kutta_dopri5<State>()),
                          RadialRhs{n, p}, y, times.begin(), times.end(), h,
                          [&](const State& s, double) {
                            out.u.push_back(s[0]);
                            out.du.push_back(s[1]);
                          });
  return out;
}

double simpson(const std::vector<double>& f, double h, std::size_t last) {
  // last is an even index; composite Simpson on [0, last*h]
  double sum = f[0] + f[last];
  for (std::size_t i = 1; i < last; ++i) sum += (i % 2 ? 4.0 : 2.0) * f[i];
  return sum * h / 3.0;
}

}  // namespace

ShotOutcome classify_shot(int n, double p, double u0, double r_max, double ode_tol) {
  require(n >= 1, "classify_shot: n must be >= 1");
  require(u0 > 0.0, "classify_shot: u0 must be positive");
  return shoot(n, p, u0, r_max, ode_tol).outcome;
}

double alpha_functional(int m, int n, const RadialIntegrals& I) {
  const double k = m + n;
  const double quotient = std::pow(I.dirichlet, n / k) * std::pow(I.mass, m / k) /
                          std::pow(I.pnorm, (k - 2.0) / k);
  return 1.0 / quotient;
}

GroundState shoot_ground_state(int m, int n, const ShootingConfig& cfg) {
  require(m >= 1 && n >= 1, "shoot_ground_state: m, n must be >= 1");
  require(m + n >= 3, "shoot_ground_state: m + n must be >= 3");
  require(cfg.r_max > 0 && cfg.ode_tol > 0 && cfg.bisect_tol > 0 && cfg.quad_h > 0 &&
              cfg.residual_tol > 0,
          "shoot_ground_state: tolerances must be positive");
  const double p = dim_data(m + n).p;
  if (n >= 3) require(p < 2.0 * n / (n - 2.0), "shoot_ground_state: exponent is not subcritical");

  double r_max = cfg.r_max;
  auto decide = [&](double u0) {
    for (int attempt = 0; attempt < 4; ++attempt) {
      const Shot s = shoot(n, p, u0, r_max, cfg.ode_tol);
      if (s.outcome != ShotOutcome::Undecided) return s;
      r_max *= 2.0;
    }
    throw ConfigurationError("shoot_ground_state: shot undecided at u0 = " + std::to_string(u0) +
                             "; raise r_max");
  };

  // Below the zero level of u^p/p - u^2/2 the trajectory cannot reach 0.
  double lo = std::pow(0.5 * p, 1.0 / (p - 2.0));
  double hi = 2.0 * lo;
  Shot hi_shot = decide(hi);
  for (int i = 0; hi_shot.outcome != ShotOutcome::CrossesZero; ++i) {
    if (i > 40) throw ConfigurationError("shoot_ground_state: no overshooting initial value found");
    lo = hi;
    hi *= 2.0;
    hi_shot = decide(hi);
  }
  double lo_radius = 0.0;
  int steps = 0;
  while (hi - lo > cfg.bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const Shot s = decide(mid);
    ++steps;
    if (s.outcome == ShotOutcome::CrossesZero) {
      hi = mid;
      hi_shot = s;
    } else {
      lo = mid;
      lo_radius = s.radius;
    }
  }
  if (lo_radius == 0.0) lo_radius = shoot(n, p, lo, r_max, cfg.ode_tol).radius;

  // Both bracketing trajectories follow the ground state until they split.
  // Resolve the core, whose width scales like 1/sqrt((p-1) u0^{p-2}).
  const double core_width = 1.0 / std::sqrt((p - 1.0) * std::pow(hi, p - 2.0));
  const double h = std::min(cfg.quad_h, core_width / 200.0);
  const double horizon = std::min(lo_radius, hi_shot.radius);
  const std::size_t count = std::size_t(horizon / h);
  if (count <= 64) throw AccuracyError("shoot_ground_state: trajectories split too early; tighten bisect_tol");
  const Trajectory low = sample(n, p, lo, h, count, cfg.ode_tol);
  const Trajectory high = sample(n, p, hi, h, count, cfg.ode_tol);

  std::vector<double> u(count), du(count);
  std::size_t match = 0;
  for (std::size_t i = 0; i < count; ++i) {
    u[i] = 0.5 * (low.u[i] + high.u[i]);
    du[i] = 0.5 * (low.du[i] + high.du[i]);
    const bool agree = std::abs(low.u[i] - high.u[i]) <= 1e-7 * u[i];
    const bool decreasing = i == 0 || du[i] < 0.0;
    if (!agree || !decreasing || u[i] <= 0.0) break;
    match = i;
  }
  match -= match % 2;
  if (match <= 64) throw AccuracyError("shoot_ground_state: accepted profile is too short; tighten bisect_tol");

  GroundState gs{};
  gs.m = m;
  gs.n = n;
  gs.p = p;
  gs.u0 = 0.5 * (lo + hi);
  gs.bisection_steps = steps;
  gs.matching_radius = double(match) * h;

  // Pointwise ODE residual; u'' comes from a sixth-order difference of u'.
  const std::size_t w = std::max<std::size_t>(1, std::size_t(std::lround(0.02 * core_width / h)));
  const double delta = double(w) * h;
  double max_res = 0.0;
  for (std::size_t i = 3 * w; i + 3 * w <= match; ++i) {
    const double r = double(i) * h;
    if (r < 0.05) continue;
    const double d2 = (-du[i - 3 * w] + 9.0 * du[i - 2 * w] - 45.0 * du[i - w] + 45.0 * du[i + w] -
                       9.0 * du[i + 2 * w] + du[i + 3 * w]) /
                      (60.0 * delta);
    const double res = d2 + (n - 1) * du[i] / r - u[i] + std::pow(u[i], p - 1.0);
    max_res = std::max(max_res, std::abs(res));
  }
  gs.max_residual = max_res;
  if (!(max_res < cfg.residual_tol)) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "shoot_ground_state: ODE residual %.3e exceeds tolerance %.1e", max_res,
                  cfg.residual_tol);
    throw AccuracyError(msg);
  }

  const double surface = sphere_volume(n - 1);
  std::vector<double> fd(match + 1), fq(match + 1), fp(match + 1);
  for (std::size_t i = 0; i <= match; ++i) {
    const double weight = n == 1 ? 1.0 : std::pow(double(i) * h, n - 1);
    fd[i] = du[i] * du[i] * weight;
    fq[i] = u[i] * u[i] * weight;
    fp[i] = std::pow(u[i], p) * weight;
  }
  RadialIntegrals core{surface * simpson(fd, h, match), surface * simpson(fq, h, match),
                       surface * simpson(fp, h, match)};

  // Beyond R the profile solves the linearized equation u'' + (n-1)/r u' = u,
  // whose decaying solution is C r^{-nu} K_nu(r), nu = n/2 - 1.
  const double R = gs.matching_radius;
  const double nu = 0.5 * n - 1.0;
  auto shape = [&](double r) { return std::pow(r, -nu) * std::cyl_bessel_k(std::abs(nu), r); };
  auto shape_d = [&](double r) { return -std::pow(r, -nu) * std::cyl_bessel_k(std::abs(nu + 1.0), r); };
  const double C = u[match] / shape(R);
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto tail_integral = [&](auto&& f) { return surface * GK::integrate(f, R, R + 80.0, 10, 1e-13); };
  gs.tail.dirichlet = tail_integral([&](double r) {
    const double v = C * shape_d(r);
    return v * v * std::pow(r, n - 1);
  });
  gs.tail.mass = tail_integral([&](double r) {
    const double v = C * shape(r);
    return v * v * std::pow(r, n - 1);
  });
  gs.tail.pnorm = tail_integral([&](double r) { return std::pow(C * shape(r), p) * std::pow(r, n - 1); });

  gs.integrals = {core.dirichlet + gs.tail.dirichlet, core.mass + gs.tail.mass,
                  core.pnorm + gs.tail.pnorm};
  gs.alpha = alpha_functional(m, n, gs.integrals);

  if (cfg.keep_profile) {
    gs.r.resize(match + 1);
    for (std::size_t i = 0; i <= match; ++i) gs.r[i] = double(i) * h;
    gs.u.assign(u.begin(), u.begin() + match + 1);
    gs.du.assign(du.begin(), du.begin() + match + 1);
  }
  return gs;
}

double sech_profile(double p, double x) {
  const double sech = 1.0 / std::cosh(0.5 * (p - 2.0) * x);
  return std::pow(0.5 * p * sech * sech, 1.0 / (p - 2.0));
}

RadialIntegrals sech_integrals(double p) {
  require(p > 2.0, "sech_integrals: p must exceed 2");
  // int_R sech^{2q}(beta x) dx = B(q, 1/2) / beta
  const double beta = 0.5 * (p - 2.0);
  const double c = std::pow(0.5 * p, 1.0 / (p - 2.0));
  auto sech_power = [&](double q) { return std::beta(q, 0.5) / beta; };
  const double qm = 2.0 / (p - 2.0);
  const double mass = c * c * sech_power(qm);
  // u' = -c sech^{2/(p-2)} tanh, and tanh^2 = 1 - sech^2
  const double dirichlet = c * c * (sech_power(qm) - sech_power(qm + 1.0));
  const double pnorm = std::pow(c, p) * sech_power(p / (p - 2.0));
  return {dirichlet, mass, pnorm};
}

double closed_form_alpha_n1(int m) {
  require(m >= 2, "closed_form_alpha_n1: m must be >= 2");
  return alpha_functional(m, 1, sech_integrals(dim_data(m + 1).p));
}

}  // namespace yamabe
