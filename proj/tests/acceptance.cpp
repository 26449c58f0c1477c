// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "yamabe/constants.hpp"
#include "yamabe/experiments.hpp"
#include "yamabe/ground_state.hpp"
#include "yamabe/periodic.hpp"
#include "yamabe/phase_plane.hpp"
#include "yamabe/spectra.hpp"

using namespace yamabe;
using std::numbers::pi;

namespace tol {
constexpr double alpha = 5e-4;
constexpr double alpha_runtime_s = 5.0;
constexpr double closed_form = 1e-6;
constexpr double product_22 = 1e-3;
constexpr double product_33 = 1e-2;
constexpr double ten_digits = 5e-10;  // relative, rounding to 10 significant digits
constexpr double sweep_gap = 0.01;
constexpr double sweep_runtime_s = 60.0;
constexpr double spectral = 1e-4;
constexpr int spectral_grid = 4096;
constexpr double conformal_identity = 1e-8;
constexpr double zero_eigenvalue = 1e-6;
constexpr int conformal_trials = 100;
constexpr double scale_invariance = 1e-10;
constexpr double ode_residual = 1e-8;
constexpr double round_trip = 1e-8;
constexpr int sandwich_grid = 1000;
}  // namespace tol

namespace {

constexpr double kAlpha22 = 0.41343;
constexpr double kAlpha33 = 0.31257;
constexpr double kBound22 = 84.01080;
constexpr double kBound33 = 119.33249;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

int sign_of(double x) { return std::abs(x) <= tol::zero_eigenvalue ? 0 : (x > 0 ? 1 : -1); }

Outcome alpha_check(int m, int n, double printed) {
  const auto t0 = std::chrono::steady_clock::now();
  const GroundState g = shoot_ground_state(m, n);
  const double secs = seconds_since(t0);
  const double err = std::abs(g.alpha - printed);
  return {err <= tol::alpha && secs < tol::alpha_runtime_s,
          fmt("alpha=%.10f |diff|=%.2e (tol %.0e) time=%.2fs (limit %.0fs)", g.alpha, err, tol::alpha, secs,
              tol::alpha_runtime_s)};
}

Outcome criterion3() {
  double worst = 0.0;
  for (int m : {2, 3, 4}) worst = std::max(worst, std::abs(shoot_ground_state(m, 1).alpha - closed_form_alpha_n1(m)));
  return {worst <= tol::closed_form, fmt("max |shoot - closed form| over m=2,3,4: %.2e (tol %.0e)", worst, tol::closed_form)};
}

Outcome criterion4() {
  const double b22 = std::sqrt(2.0) * product_constants(2, 2).A * std::sqrt(8.0 * pi) / kAlpha22;
  const double b33 = std::pow(2.0, 1.0 / 3.0) * y_rn_formula(3, 3, 6.0, sphere_volume(3), kAlpha33);
  double t22 = 0.0, t33 = 0.0;
  for (const auto& r : bound_tables()) {
    if (r.name == "Y^2_{S^2}(S^2 x S^2)") t22 = r.lower;
    if (r.name == "Y^2_{S^3}(S^3 x S^3)") t33 = r.lower;
  }
  const double e22 = std::max(std::abs(b22 - kBound22), std::abs(t22 - kBound22));
  const double e33 = std::max(std::abs(b33 - kBound33), std::abs(t33 - kBound33));
  return {e22 <= tol::product_22 && e33 <= tol::product_33,
          fmt("S2xS2 %.6f |diff|=%.1e (tol %.0e); S3xS3 %.6f |diff|=%.1e (tol %.0e)", b22, e22, tol::product_22, b33,
              e33, tol::product_33)};
}

Outcome criterion5() {
  const double y3 = sphere_yamabe(3);
  double cp_lo = 0, cp_hi = 0, rp_lo = 0, rp_hi = 0;
  for (const auto& r : bound_tables()) {
    if (r.name == "Y^2(CP^2)") cp_lo = r.lower, cp_hi = r.upper;
    if (r.name == "Y^2(RP^3)") rp_lo = r.lower, rp_hi = r.upper;
  }
  const double worst = std::max({rel(cp_lo, 24.0 * pi), rel(cp_hi, 4.0 * std::sqrt(42.0) * pi), rel(rp_lo, y3),
                                 rel(rp_hi, std::pow(1.5, 2.0 / 3.0) * y3)});
  // The CP^2 upper bound determines Y(S^4) once Y(CP^2) = 12 sqrt(2) pi is fixed.
  const double forced = std::sqrt(std::pow(4.0 * std::sqrt(42.0) * pi, 2) - std::pow(12.0 * std::sqrt(2.0) * pi, 2));
  const double consistency = std::max(rel(forced, 8.0 * std::sqrt(6.0) * pi), rel(sphere_yamabe(4), forced));
  return {worst <= tol::ten_digits && consistency <= tol::ten_digits,
          fmt("max rel error of CP2/RP3 bounds %.1e, Y(S^4) consistency %.1e (tol %.0e)", worst, consistency,
              tol::ten_digits)};
}

struct SweepRun {
  SweepResult result;
  double seconds;
};

Outcome criterion6(const SweepRun& s) {
  const SweepRecord& last = s.result.records.back();
  const double gap = std::max(last.lower_gap, last.upper_gap);
  const double target = std::pow(2.0, 2.0 / 3.0) * sphere_yamabe(3);
  const bool target_ok = rel(s.result.target, target) <= 1e-14;
  return {gap <= tol::sweep_gap && target_ok && s.seconds < tol::sweep_runtime_s && s.result.records.size() == 16,
          fmt("t=%.0f lower gap %.2e upper gap %.2e (tol %.0e), %zu points in %.2fs (limit %.0fs)", last.t,
              last.lower_gap, last.upper_gap, tol::sweep_gap, s.result.records.size(), s.seconds,
              tol::sweep_runtime_s)};
}

Outcome criterion7() {
  std::string detail;
  bool ok = true;
  for (int m : {2, 3}) {
    const ModelManifold M = ModelManifold::round_sphere(m);
    const double target = std::pow(2.0, 2.0 / (m + 1)) *
                          y_rn_formula(m, 1, M.scalar(), M.volume(), closed_form_alpha_n1(m));
    const SweepResult r = y2n_limit_sweep(M, default_t_grid());
    const double gap = r.final_gap;
    ok = ok && gap <= tol::sweep_gap && rel(r.target, target) <= 1e-12;
    detail += fmt("S^%d: target %.8f gap %.2e; ", m, target, gap);
  }
  return {ok, detail + fmt("tol %.0e", tol::sweep_gap)};
}

Outcome criterion8(const SweepRun& s) {
  int violations = 0;
  double slack = INFINITY;
  for (const auto& r : s.result.records) {
    const double bound = std::pow(2.0, 2.0 / 3.0) * r.first_N;
    if (!(r.second_N >= bound)) ++violations;
    slack = std::min(slack, r.second_N - bound);
  }
  return {violations == 0, fmt("%d violations over %zu points, min slack %.3e (exact inequality)", violations,
                               s.result.records.size(), slack)};
}

Outcome criterion9() {
  const ModelManifold S2 = ModelManifold::round_sphere(2), S1 = ModelManifold::round_sphere(1);
  double worst = 0.0;
  for (double t : {1.0, 4.0, 100.0}) {
    const double exact = 2.0 + 8.0 / t;
    const CircleOperator op = fd_circle_operator(2.0, 8.0, 2.0 * pi * std::sqrt(t), tol::spectral_grid);
    worst = std::max(worst, rel(op.matrix.smallest_eigenvalues(2)[1], exact));
    worst = std::max(worst, rel(conformal_laplacian_eigenvalue(ProductSpace(S2, S1, t), 2), exact));
  }
  return {worst <= tol::spectral, fmt("max rel error over t=1,4,100: %.2e (tol %.0e)", worst, tol::spectral)};
}

std::vector<double> random_weight(std::mt19937_64& rng, int n, double amplitude) {
  std::normal_distribution<double> N(0.0, 1.0);
  double c[4], d[4];
  for (int q = 0; q < 4; ++q) c[q] = N(rng), d[q] = N(rng);
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) {
    const double x = 2.0 * pi * i / n;
    double e = 0.0;
    for (int q = 0; q < 4; ++q) e += (c[q] * std::cos((q + 1) * x) + d[q] * std::sin((q + 1) * x)) / (q + 1);
    u[i] = std::exp(amplitude * e);
  }
  return u;
}

Outcome criterion10() {
  std::mt19937_64 rng(20240607ULL);
  const int n = 256;
  const double a = 8.0, p = 6.0, len = 4.0 * pi, h = len / n;

  double identity = 0.0;
  {
    const CircleOperator op = fd_circle_operator(2.0, a, len, n);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = random_weight(rng, n, 0.4);
      std::vector<double> v(n);
      for (double& x : v) x = N(rng);
      const auto lhs = conformal_operator_apply(op, u, p, v);
      std::vector<double> uv(n);
      for (int i = 0; i < n; ++i) uv[i] = u[i] * v[i];
      const auto Luv = op.apply(uv);
      double num = 0.0, den = 0.0;
      for (int i = 0; i < n; ++i) {
        const double rhs = std::pow(u[i], 1.0 - p) * Luv[i];
        num = std::max(num, std::abs(lhs[i] - rhs));
        den = std::max(den, std::abs(rhs));
      }
      identity = std::max(identity, num / den);
    }
  }

  // Base operators with discrete lambda_2 negative, zero and positive.
  const double shift = 4.0 * a / (h * h) * std::pow(std::sin(pi / n), 2);
  int mismatches = 0, base_signs_ok = 1;
  const int expected[3] = {-1, 0, 1};
  const double scalars[3] = {-3.0, -shift, 2.0};
  for (int b = 0; b < 3; ++b) {
    const CircleOperator op = fd_circle_operator(scalars[b], a, len, n);
    const std::vector<double> one(n, 1.0);
    const double base = weighted_eigenvalues(op, one, p, 2, 1e-12)[1];
    if (sign_of(base) != expected[b]) base_signs_ok = 0;
    for (int trial = 0; trial < tol::conformal_trials; ++trial) {
      const auto u = random_weight(rng, n, 0.4);
      const double l2 = weighted_eigenvalues(op, u, p, 2, 1e-12)[1];
      if (sign_of(l2) != sign_of(base)) ++mismatches;
    }
  }
  return {identity <= tol::conformal_identity && mismatches == 0 && base_signs_ok,
          fmt("identity rel error %.2e (tol %.0e); sign changes %d of %d weights on 3 operators", identity,
              tol::conformal_identity, mismatches, 3 * tol::conformal_trials)};
}

Outcome criterion11(const SweepRun& s) {
  // value functional under w -> c w, i.e. lambda -> lambda / c^{p-2}
  double scale = 0.0;
  for (double t : {3.0, 300.0}) {
    OdeProblem pr = circle_product_problem(ModelManifold::round_sphere(2), t);
    const double f = first_N_yamabe(pr).value, g = second_N_yamabe(pr).value;
    for (double c : {0.2, 7.0}) {
      pr.lambda = std::pow(c, -(pr.p - 2.0));
      scale = std::max({scale, rel(first_N_yamabe(pr).value, f), rel(second_N_yamabe(pr).value, g)});
    }
  }

  double residual = 0.0;
  for (auto [m, n] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{2, 1}})
    residual = std::max(residual, shoot_ground_state(m, n).max_residual);
  for (const auto& r : s.result.records) {
    const OdeProblem pr = circle_product_problem(ModelManifold::round_sphere(2), r.t);
    PeriodicSolution first = first_N_yamabe(pr).witness, second = second_N_yamabe(pr).witness;
    attach_profile(first);
    attach_profile(second);
    residual = std::max({residual, first.max_residual, second.max_residual});
  }
  SearchOptions opt;
  opt.with_profile = true;
  opt.j_max = 3;
  for (double t : {1.0, 10.0, 1000.0}) {
    const CircleAnalysis an = analyze_circle(circle_product_problem(ModelManifold::round_sphere(2), t), opt);
    for (const auto& sol : an.positive) residual = std::max(residual, sol.max_residual);
    for (const auto& sol : an.nodal.solutions) residual = std::max(residual, sol.max_residual);
  }

  double trip = 0.0;
  for (const PhasePortrait& pp : {PhasePortrait(2.0, 8.0, 6.0), PhasePortrait(6.0, 6.0, 4.0)})
    for (double f : {1e-3, 0.1, 1.0, 10.0})
      trip = std::max(trip, period_round_trip_error(pp, f * std::abs(pp.bottom())));
  for (const PhasePortrait& pp : {PhasePortrait(2.0, 8.0, 6.0), PhasePortrait(6.0, 6.0, 4.0)})
    for (double f : {0.95, 0.5, 0.05}) trip = std::max(trip, period_round_trip_error(pp, f * pp.bottom()));

  int disorder = 0;
  for (int k = 3; k <= 10; ++k) {
    const double ys = sphere_yamabe(k);
    for (int i = 0; i < tol::sandwich_grid; ++i) {
      const Sandwich sw = ah_sandwich(k, ys * i / (tol::sandwich_grid - 1.0));
      if (!(sw.lower <= sw.upper)) ++disorder;
    }
  }

  return {scale <= tol::scale_invariance && residual <= tol::ode_residual && trip <= tol::round_trip && disorder == 0,
          fmt("scale invariance %.1e (tol %.0e); max ODE residual %.1e (tol %.0e); round trip %.1e (tol %.0e); "
              "sandwich disorder %d on %d-point grids",
              scale, tol::scale_invariance, residual, tol::ode_residual, trip, tol::round_trip, disorder,
              tol::sandwich_grid)};
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  SweepRun sweep{sandwich_sweep(3, default_t_grid()), 0.0};
  sweep.seconds = seconds_since(t0);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"alpha_{2,2} vs 0.41343", [] { return alpha_check(2, 2, kAlpha22); }},
      {"alpha_{3,3} vs 0.31257", [] { return alpha_check(3, 3, kAlpha33); }},
      {"closed-form alpha_{m,1} oracle", criterion3},
      {"S2xS2 and S3xS3 product bounds", criterion4},
      {"CP2 and RP3 closed-form tables", criterion5},
      {"sandwich convergence on S2xS1", [&] { return criterion6(sweep); }},
      {"Y2 limit for M = S2, S3", criterion7},
      {"second_N >= 2^{2/k} first_N", [&] { return criterion8(sweep); }},
      {"discrete lambda_2 vs 2 + 8/t", criterion9},
      {"conformal identity and sign preservation", criterion10},
      {"property suite", [&] { return criterion11(sweep); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed, %.1fs\n", criteria.size(), failed, seconds_since(t0));
  return failed == 0 ? 0 : 1;
}
