#pragma once

// Convergence sweeps on circle products, the strict upper-bound check, and
// the table of closed-form bounds.

#include <optional>
#include <string>
#include <vector>

#include "yamabe/constants.hpp"
#include "yamabe/ground_state.hpp"
#include "yamabe/periodic.hpp"

namespace yamabe {

/// `points` geometrically spaced values from t_min to t_max inclusive.
std::vector<double> geometric_grid(double t_min, double t_max, int points);
/// 16 points from 1 to 1e4.
std::vector<double> default_t_grid();

struct SweepOptions {
  double tolerance = 0.01;  ///< relative gap allowed at the largest t
  SearchOptions search;
};

struct SweepRecord {
  double t;
  double length;
  double first_N;
  double second_N;
  double lower;  ///< 2^{2/k} first_N
  double upper;  ///< second_N
  double lower_gap;  ///< |lower - target| / target
  double upper_gap;  ///< |upper - target| / target
  std::string first_candidate;
  int first_j;
  int second_j;
  bool nodal_monotone;
  std::vector<int> skipped;
};

struct ReferenceLine {
  int l;
  double value;  ///< l^{2/k} Y(M x R)
};

struct SweepResult {
  std::string label;
  int m;  ///< dimension of the compact factor M
  int k;
  double target;
  std::string target_formula;
  double tolerance;
  std::vector<SweepRecord> records;  ///< sorted by t
  std::vector<ReferenceLine> reference_lines;
  bool envelopes_ordered = true;  ///< lower <= upper at every t
  double final_gap = 0.0;         ///< larger of the two gaps at the largest t
  bool converged = false;
  std::vector<std::string> warnings;
};

/// S^{m-1} x S^1 with t h: both 2^{2/m} first_N and second_N against
/// 2^{2/m} Y(S^m). Requires m >= 3.
SweepResult sandwich_sweep(int m, const std::vector<double>& t_grid, const SweepOptions& options = {});

/// M x S^1 with t h: second_N against 2^{2/(m+1)} Y_R(M x R), with the
/// non-compact constant from the explicit n = 1 ground state.
SweepResult y2n_limit_sweep(const ModelManifold& M, const std::vector<double>& t_grid,
                            const SweepOptions& options = {});

/// 2^{2/(m+1)} A_{m,1} (s vol^{2/m})^{m/(m+1)} / alpha_{m,1}.
double y2n_limit_target(const ModelManifold& M);

struct StrictCheckRecord {
  double t;
  double first_N;
  double second_N;
  double bound;   ///< [Y^{k/2} + Y(S^k)^{k/2}]^{2/k} at Y = min(first_N, Y(S^k))
  double margin;  ///< bound - second_N
  bool holds;
};

struct StrictCheckReport {
  int m;
  int k;
  std::vector<StrictCheckRecord> records;
  /// Smallest grid t from which the strict inequality holds at every later t.
  std::optional<double> threshold_t;
  bool holds_at_largest = false;
};

/// Compares second_N on S^{m-1} x S^1 with the upper sandwich bound. Report
/// only: no verdict is attached.
StrictCheckReport strict_upper_check(int m, const std::vector<double>& t_grid,
                                     const SearchOptions& search = {});

struct TableOptions {
  bool use_printed_alpha = true;
  ShootingConfig shooting;
};

/// Printed values of alpha_{2,2} and alpha_{3,3}.
inline constexpr double kPrintedAlpha22 = 0.41343;
inline constexpr double kPrintedAlpha33 = 0.31257;

std::vector<BoundReport> bound_tables(const TableOptions& options = {});

/// Unit-volume scalar curvature s* with A_{m,n} s*^{m/(m+n)} / alpha = Y(S^{m+n}).
/// Above s* the formula value of Y_{R^n}(M x R^n) exceeds Y(S^{m+n}).
double crossover_scalar(int m, int n, double alpha);

struct CheckResult {
  std::string name;
  bool passed;
  double measured;
  double tolerance;
};

/// Invariant and property checks across all modules, randomized with `seed`.
std::vector<CheckResult> run_check_suite(unsigned long long seed = 20240607ULL);

}  // namespace yamabe
