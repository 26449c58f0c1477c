#include "yamabe/phase_plane.hpp"

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "yamabe/error.hpp"

namespace yamabe {

using detail::require;

PhasePortrait::PhasePortrait(double scalar, double a, double p, double lambda)
    : s_(scalar), a_(a), p_(p), lambda_(lambda) {
  require(scalar > 0.0, "PhasePortrait: scalar curvature must be positive");
  require(a > 0.0, "PhasePortrait: a must be positive");
  require(p > 2.0, "PhasePortrait: p must exceed 2");
  require(lambda > 0.0, "PhasePortrait: lambda must be positive");
  center_ = std::pow(s_ / lambda_, 1.0 / (p_ - 2.0));
}

double PhasePortrait::potential(double u) const {
  return -0.5 * s_ * u * u + lambda_ * std::pow(std::abs(u), p_) / p_;
}

double PhasePortrait::force(double u) const {
  return s_ * u - lambda_ * std::pow(std::abs(u), p_ - 2.0) * u;
}

double PhasePortrait::zero_crossing() const {
  return std::pow(0.5 * p_ * s_ / lambda_, 1.0 / (p_ - 2.0));
}

double PhasePortrait::harmonic_period() const {
  return 2.0 * std::numbers::pi * std::sqrt(a_ / ((p_ - 2.0) * s_));
}

double PhasePortrait::divided_difference(double x, double d) const {
  if (d == 0.0) return -force(x);
  const double y = x + d;
  const double z = d / y;
  // ((x + d)^p - x^p) / d = y^{p-1} (1 - (1 - z)^p) / z
  const double phi = -std::expm1(p_ * std::log1p(-z)) / z;
  return -0.5 * s_ * (x + y) + lambda_ / p_ * std::pow(y, p_ - 1.0) * phi;
}

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

/// A point on a regularized orbit segment: position u, dx/d(parameter), and
/// E - V(u) evaluated without cancellation.
struct SegmentPoint {
  double u;
  double jacobian;
  double excess;
};

struct SegmentSums {
  double period = 0.0;
  double p_mass = 0.0;
  double kinetic = 0.0;
};

template <class Segment>
SegmentSums integrate_segment(const PhasePortrait& pp, Segment&& seg, double lo, double hi,
                              const OrbitOptions& opt) {
  SegmentSums out;
  if (!(hi > lo)) return out;
  constexpr unsigned depth = 12;
  // Integrate over [0, 1]; very short parameter intervals otherwise stall
  // the error estimate.
  const double width = hi - lo;
  auto at = [&](double tau) { return seg(lo + width * tau); };
  out.period = width * GK::integrate([&](double t) { return at(t).jacobian; }, 0.0, 1.0, depth, opt.tol);
  if (opt.period_only) return out;
  out.p_mass = width * GK::integrate(
                           [&](double t) {
                             const SegmentPoint q = at(t);
                             return std::pow(std::abs(q.u), pp.p()) * q.jacobian;
                           },
                           0.0, 1.0, depth, opt.tol);
  out.kinetic = width * GK::integrate(
                            [&](double t) {
                              const SegmentPoint q = at(t);
                              return 2.0 / pp.a() * q.excess * q.jacobian;
                            },
                            0.0, 1.0, depth, opt.tol);
  return out;
}

/// From u* up to the turning point u_max, with u = u_max - (u_max - u*) sigma^2.
SegmentSums upper_segment(const PhasePortrait& pp, double u_max, const OrbitOptions& opt) {
  const double span = u_max - pp.center();
  if (!(span > 0.0)) return {};
  auto seg = [&](double sigma) {
    const double d = span * sigma * sigma;
    const double u = u_max - d;
    const double dv = pp.divided_difference(u, d);
    return SegmentPoint{u, 2.0 * std::sqrt(span) / std::sqrt(2.0 / pp.a() * dv), d * dv};
  };
  return integrate_segment(pp, seg, 0.0, 1.0, opt);
}

/// Sign-changing orbit from u = 0 to u*, with u = c sinh(theta), c = sqrt(2E/s).
/// The near-separatrix logarithm becomes a smooth plateau in theta.
SegmentSums saddle_segment(const PhasePortrait& pp, double energy, const OrbitOptions& opt) {
  const double c = std::sqrt(2.0 * energy / pp.scalar());
  const double theta_end = std::asinh(pp.center() / c);
  auto seg = [&](double theta) {
    const double u = c * std::sinh(theta);
    const double ch = std::cosh(theta);
    const double q = energy - pp.lambda() * std::pow(u, pp.p()) / (pp.p() * ch * ch);
    return SegmentPoint{u, c / std::sqrt(2.0 / pp.a() * q), ch * ch * q};
  };
  return integrate_segment(pp, seg, 0.0, theta_end, opt);
}

/// Well orbit from the lower turning point u_min to u*, with u = u_min cosh(theta).
SegmentSums lower_segment(const PhasePortrait& pp, double u_min, const OrbitOptions& opt) {
  const double theta_end = std::acosh(pp.center() / u_min);
  const double p = pp.p();
  auto seg = [&](double theta) {
    const double sh = std::sinh(theta);
    const double u = u_min * std::cosh(theta);
    double term;
    if (theta < 0.5) {
      // (cosh^p - 1) / sinh^2, continuous at theta = 0
      const double half = std::sinh(0.5 * theta);
      const double psi = theta == 0.0 ? 0.5 * p
                                      : std::expm1(p * std::log1p(2.0 * half * half)) / (sh * sh);
      term = pp.lambda() / p * std::pow(u_min, p - 2.0) * psi;
    } else {
      const double w = u_min * sh;
      term = pp.lambda() / p * (std::pow(u, p) - std::pow(u_min, p)) / (w * w);
    }
    const double b = 0.5 * pp.scalar() - term;
    const double w = u_min * sh;
    return SegmentPoint{u, 1.0 / std::sqrt(2.0 / pp.a() * b), w * w * b};
  };
  return integrate_segment(pp, seg, 0.0, theta_end, opt);
}

double nodal_amplitude(const PhasePortrait& pp, double energy) {
  const double lo = pp.zero_crossing();
  auto f = [&](double u) { return pp.potential(u) - energy; };
  if (f(lo) >= 0.0) return lo;  // E below the resolution of V near its zero
  double hi = 2.0 * lo;
  while (f(hi) <= 0.0) hi *= 2.0;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

double well_amplitude(const PhasePortrait& pp, double u_min) {
  const double lo = pp.center();
  auto f = [&](double u) { return pp.divided_difference(u_min, u - u_min); };
  if (f(lo) >= 0.0) return lo;
  double hi = 2.0 * lo;
  while (f(hi) <= 0.0) hi *= 2.0;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

double well_lower_turning_point(const PhasePortrait& pp, double energy) {
  require(energy > pp.bottom() && energy < 0.0,
          "well_lower_turning_point: energy outside (V(u*), 0)");
  // Solve V(u) = E in log u; near the saddle V ~ -s u^2 / 2.
  auto f = [&](double y) { return pp.potential(std::exp(y)) - energy; };
  double lo = 0.5 * std::log(std::abs(energy) / pp.scalar());
  const double hi = std::log(pp.center());
  while (f(lo) <= 0.0) lo -= 1.0;
  if (f(hi) >= 0.0) return pp.center();
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return std::exp(0.5 * (r.first + r.second));
}

OrbitIntegrals sign_changing_orbit(const PhasePortrait& pp, double energy, const OrbitOptions& opt) {
  if (!(energy > 0.0) || !std::isfinite(energy))
    throw DomainError("sign_changing_orbit: energy must be positive");
  const double u_max = nodal_amplitude(pp, energy);
  const SegmentSums inner = saddle_segment(pp, energy, opt);
  const SegmentSums outer = upper_segment(pp, u_max, opt);
  // four quarter-orbits by the symmetries w -> -w and x -> -x
  return {energy,
          0.0,
          u_max,
          4.0 * (inner.period + outer.period),
          4.0 * (inner.p_mass + outer.p_mass),
          4.0 * (inner.kinetic + outer.kinetic)};
}

OrbitIntegrals well_orbit_from_turning_point(const PhasePortrait& pp, double u_min,
                                             const OrbitOptions& opt) {
  require(u_min > 0.0 && u_min < pp.center(),
          "well_orbit_from_turning_point: u_min must lie in (0, u*)");
  const double u_max = well_amplitude(pp, u_min);
  const SegmentSums inner = lower_segment(pp, u_min, opt);
  const SegmentSums outer = upper_segment(pp, u_max, opt);
  return {pp.potential(u_min),
          u_min,
          u_max,
          2.0 * (inner.period + outer.period),
          2.0 * (inner.p_mass + outer.p_mass),
          2.0 * (inner.kinetic + outer.kinetic)};
}

OrbitIntegrals well_orbit(const PhasePortrait& pp, double energy, const OrbitOptions& opt) {
  if (!(energy > pp.bottom() && energy < 0.0))
    throw DomainError("well_orbit: energy must lie in (V(u*), 0)");
  OrbitIntegrals out = well_orbit_from_turning_point(pp, well_lower_turning_point(pp, energy), opt);
  out.energy = energy;
  return out;
}

double period_integral(const PhasePortrait& pp, double energy, double tol) {
  OrbitOptions opt{tol, true};
  if (energy > 0.0 && std::isfinite(energy)) return sign_changing_orbit(pp, energy, opt).period;
  if (energy > pp.bottom() && energy < 0.0) return well_orbit(pp, energy, opt).period;
  throw DomainError("period_integral: energy outside the well and sign-changing ranges");
}

double period_round_trip_error(const PhasePortrait& pp, double energy) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  const bool nodal = energy > 0.0;
  const OrbitIntegrals orbit = nodal ? sign_changing_orbit(pp, energy, {1e-13, true})
                                     : well_orbit(pp, energy, {1e-13, true});
  State y{orbit.u_max, 0.0};
  auto rhs = [&](const State& q, State& dq, double) {
    dq[0] = q[1];
    dq[1] = pp.force(q[0]) / pp.a();
  };
  odeint::integrate_adaptive(odeint::make_controlled(1e-14, 1e-14, odeint::runge_kutta_dopri5<State>()),
                             rhs, y, 0.0, orbit.period, 1e-3);
  return std::max(std::abs(y[0] - orbit.u_max), std::abs(y[1]));
}

}  // namespace yamabe
