#pragma once

// Radial ground states of  u'' + (n-1)/r u' - u + u^{p-1} = 0  on R^n with
// p = p_{m+n}, and the Gagliardo-Nirenberg constant alpha_{m,n} they realize.

#include <vector>

namespace yamabe {

struct ShootingConfig {
  double r_max = 40.0;        ///< initial integration horizon; doubled when undecided
  double ode_tol = 1e-10;     ///< local error tolerance of the adaptive integrator
  double bisect_tol = 1e-12;  ///< stop bisection once |delta u0| is below this
  double quad_h = 1e-3;       ///< uniform resampling step for Simpson quadrature
  double residual_tol = 1e-8; ///< accepted profile must satisfy the ODE to this
  bool keep_profile = true;
};

/// Integrals over R^n (surface factor |S^{n-1}| included).
struct RadialIntegrals {
  double dirichlet;  ///< int |grad u|^2
  double mass;       ///< int u^2
  double pnorm;      ///< int |u|^p
};

struct GroundState {
  int m;
  int n;
  double p;
  double u0;
  double matching_radius;  ///< profile is trusted on [0, R]; exponential tail beyond
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> du;
  RadialIntegrals integrals;
  RadialIntegrals tail;  ///< part of `integrals` contributed by the fitted tail
  double alpha;
  double max_residual;
  int bisection_steps;
};

enum class ShotOutcome { CrossesZero, TurnsBack, Undecided };

/// Integrate from u(0) = u0, u'(0) = 0 and report how the trajectory leaves
/// the positive decreasing regime. Too large u0 overshoots through zero;
/// too small u0 turns back with a positive minimum.
ShotOutcome classify_shot(int n, double p, double u0, double r_max, double ode_tol = 1e-10);

GroundState shoot_ground_state(int m, int n, const ShootingConfig& config = {});

/// alpha = [D^{n/(m+n)} Q^{m/(m+n)} / P^{(m+n-2)/(m+n)}]^{-1}.
double alpha_functional(int m, int n, const RadialIntegrals& integrals);

/// The explicit 1-D ground state ((p/2) sech^2((p-2)x/2))^{1/(p-2)} of
/// u'' = u - u^{p-1}.
double sech_profile(double p, double x);

/// Its three integrals over R, via Beta-function identities.
RadialIntegrals sech_integrals(double p);

/// alpha_{m,1} from the explicit profile; m >= 2.
double closed_form_alpha_n1(int m);

}  // namespace yamabe
