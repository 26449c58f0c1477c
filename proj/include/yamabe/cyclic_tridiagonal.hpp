#pragma once

#include <span>
#include <vector>

namespace yamabe {

/// Symmetric periodic tridiagonal matrix: tridiagonal plus the two corner
/// entries coupling the first and last unknowns. off[i] couples i and
/// (i + 1) mod n, so off.back() is the corner.
struct CyclicTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }

  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

  /// Number of eigenvalues strictly below sigma (Sylvester inertia).
  std::size_t count_below(double sigma) const;

  /// The `count` smallest eigenvalues (with multiplicity, ascending), by
  /// bisection on the inertia count. Each is located to within
  /// max(abs_tol, a few ulps of the matrix norm).
  std::vector<double> smallest_eigenvalues(std::size_t count, double abs_tol = 1e-10) const;

  /// D^{-1/2} A D^{-1/2} for a positive diagonal D.
  CyclicTridiagonal congruence(std::span<const double> inv_sqrt_weight) const;
};

}  // namespace yamabe
