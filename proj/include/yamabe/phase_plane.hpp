#pragma once

// Hamiltonian reduction of  -a w'' + s w = lambda |w|^{p-2} w  on a line:
//   (a/2) w'^2 + V(w) = E,   V(u) = -s u^2/2 + lambda |u|^p / p.
// V has a saddle at 0 and centers at +-u*, u* = (s/lambda)^{1/(p-2)}.
// Orbits with V(u*) < E < 0 stay inside one well (positive solutions);
// orbits with E > 0 encircle both wells (sign-changing solutions).

namespace yamabe {

class PhasePortrait {
 public:
  PhasePortrait(double scalar, double a, double p, double lambda = 1.0);

  double scalar() const { return s_; }
  double a() const { return a_; }
  double p() const { return p_; }
  double lambda() const { return lambda_; }

  double potential(double u) const;
  double force(double u) const;  ///< -V'(u) = s u - lambda |u|^{p-2} u
  double center() const { return center_; }
  double bottom() const { return potential(center_); }
  /// Positive zero of V.
  double zero_crossing() const;
  /// Period of small oscillations about u*: 2 pi sqrt(a / ((p-2) s)).
  double harmonic_period() const;

  /// (V(x + d) - V(x)) / d for x >= 0, d > 0, without cancellation.
  double divided_difference(double x, double d) const;

 private:
  double s_, a_, p_, lambda_, center_;
};

/// Quadratures over one closed orbit.
struct OrbitIntegrals {
  double energy;
  double u_min;   ///< lower turning point (well orbits); 0 for sign-changing orbits
  double u_max;   ///< upper turning point
  double period;  ///< T
  double p_mass;  ///< int_0^T |w|^p dx
  double kinetic; ///< int_0^T w'^2 dx
};

struct OrbitOptions {
  double tol = 1e-12;
  bool period_only = false;
};

/// T(E) for a well orbit (bottom < E < 0) or a sign-changing orbit (E > 0).
double period_integral(const PhasePortrait& portrait, double energy, double tol = 1e-12);

OrbitIntegrals sign_changing_orbit(const PhasePortrait& portrait, double energy,
                                   const OrbitOptions& options = {});

/// Well orbit with lower turning point u_min in (0, u*). Parametrizing by the
/// turning point keeps orbits near the bottom and near the separatrix well
/// conditioned.
OrbitIntegrals well_orbit_from_turning_point(const PhasePortrait& portrait, double u_min,
                                             const OrbitOptions& options = {});

OrbitIntegrals well_orbit(const PhasePortrait& portrait, double energy,
                          const OrbitOptions& options = {});

/// Lower turning point of the well orbit at energy E in (bottom, 0).
double well_lower_turning_point(const PhasePortrait& portrait, double energy);

/// Start at the upper turning point with zero velocity, integrate the ODE for
/// one period T(E) and return max(|w(T) - u_max|, |w'(T)|).
double period_round_trip_error(const PhasePortrait& portrait, double energy);

}  // namespace yamabe
