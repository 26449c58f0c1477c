#pragma once

// Periodic solutions of  -a w'' + s w = lambda |w|^{p-2} w  on a circle of
// circumference l, and the first and second N-Yamabe constants of
// (M x S^1, g + t h) they realize.

#include <string>
#include <vector>

#include "yamabe/phase_plane.hpp"
#include "yamabe/spectra.hpp"

namespace yamabe {

/// One instance of the circle equation. Values are reported for the product
/// with a factor M of volume `volume_M`.
struct OdeProblem {
  double length = 0.0;
  double scalar = 0.0;
  double a = 0.0;
  double p = 0.0;
  double lambda = 1.0;
  double volume_M = 1.0;

  /// 2/k = (p - 2)/p for the product dimension k = 2p/(p - 2).
  double two_over_k() const { return (p - 2.0) / p; }
  /// 2^{2/k}; every comparison between first and second constants uses this value.
  double doubling_factor() const;
};

/// (M x S^1, g + t g_0^1) with round S^1: l = 2 pi sqrt(t), s = s_g, k = m + 1.
OdeProblem circle_product_problem(const ModelManifold& M, double t);

enum class SolutionKind { Constant, Positive, Nodal };
std::string to_string(SolutionKind kind);

struct PeriodicSolution {
  SolutionKind kind = SolutionKind::Constant;
  OdeProblem problem;
  double energy = 0.0;
  int repetitions = 0;  ///< number of orbit periods fitting in one circumference
  int nodal_count = 0;
  double period = 0.0;
  double u_min = 0.0;
  double u_max = 0.0;
  double p_mass = 0.0;      ///< int |w|^p over one orbit period
  double lobe_value = 0.0;  ///< J of one positive lobe (nodal only)
  double value = 0.0;       ///< lambda (vol(M) int_0^l |w|^p)^{2/k}
  bool period_monotone = true;

  // Uniform grid x_i = i l / N, filled by attach_profile.
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> dw;
  double max_residual = -1.0;
  double energy_drift = -1.0;
  double periodicity_error = -1.0;

  bool has_profile() const { return !w.empty(); }
};

struct SearchOptions {
  int j_max = 8;
  bool with_profile = false;
  int profile_points = 4096;
  double quad_tol = 1e-12;
  int scan_points = 64;
};

/// The constant solution followed by the well orbits with T(E) = l / j.
std::vector<PeriodicSolution> positive_solutions(const OdeProblem& problem,
                                                 const SearchOptions& options = {});

struct NodalSearch {
  std::vector<PeriodicSolution> solutions;
  std::vector<int> skipped;  ///< j with l / j outside the range of T
  bool monotone = true;      ///< T strictly decreasing on the scanned energies
};

NodalSearch nodal_solutions(const OdeProblem& problem, const SearchOptions& options = {});

struct NYamabe {
  double value;
  PeriodicSolution witness;
  int argmin_j;
  /// "constant", "positive", "nodal-lobe" (first constant) or "nodal" (second).
  std::string candidate;
};

/// Minimum over the constant solution, the well orbits, and single positive
/// lobes of the nodal solutions (admissible non-negative test functions).
NYamabe first_N_yamabe(const OdeProblem& problem, const SearchOptions& options = {});

/// Minimum of `value` over the nodal solutions with j <= j_max pairs of zeros.
NYamabe second_N_yamabe(const OdeProblem& problem, const SearchOptions& options = {});

/// Both constants from one orbit search.
struct CircleAnalysis {
  std::vector<PeriodicSolution> positive;
  NodalSearch nodal;
  NYamabe first;
  NYamabe second;
};
CircleAnalysis analyze_circle(const OdeProblem& problem, const SearchOptions& options = {});

/// Sample the solution on `points` uniform nodes of [0, l) by integrating
/// the ODE away from the saddle side of the orbit, then check the ODE
/// residual, energy drift and turning-point closure.
void attach_profile(PeriodicSolution& solution, int points = 4096);

/// sup of the discrete weighted Rayleigh quotient over span(w) (positive)
/// or span(w+, w-) (nodal) with weight |w|, times the volume factor. Agrees
/// with `value` up to discretization error.
double discrete_oracle_value(const PeriodicSolution& solution, int grid = 4096);

}  // namespace yamabe
