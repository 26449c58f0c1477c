#include "yamabe/cyclic_tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "yamabe/error.hpp"

namespace yamabe {

void CyclicTridiagonal::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  detail::require(x.size() == n && y.size() == n, "CyclicTridiagonal::apply: size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t next = (i + 1) % n;
    const std::size_t prev = (i + n - 1) % n;
    y[i] = diag[i] * x[i] + off[i] * x[next] + off[prev] * x[prev];
  }
}

std::vector<double> CyclicTridiagonal::apply(std::span<const double> x) const {
  std::vector<double> y(x.size());
  apply(x, y);
  return y;
}

std::size_t CyclicTridiagonal::count_below(double sigma) const {
  // A - sigma = [[T, c], [c^T, delta]] with T the leading (n-1) tridiagonal
  // block. inertia(A) = inertia(T) + inertia(delta - c^T T^{-1} c). The
  // pivots of T = L D L^T give inertia(T), and c^T T^{-1} c = sum y_i^2 / D_i
  // with L y = c.
  const std::size_t n = size();
  double scale = std::max(1.0, std::abs(sigma));
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(diag[i]) + 2.0 * std::abs(off[i]));
  const double pivmin = std::numeric_limits<double>::min() * 1e4 * scale;

  std::size_t negatives = 0;
  double pivot = diag[0] - sigma;
  double y = off[n - 1];
  auto guard = [&](double d) { return std::abs(d) < pivmin ? -pivmin : d; };
  pivot = guard(pivot);
  double schur = 0.0;
  for (std::size_t i = 0;; ++i) {
    if (pivot < 0.0) ++negatives;
    schur += y * y / pivot;
    if (i + 2 == n) break;
    const double e = off[i];
    const double l = e / pivot;
    const double next_pivot = guard(diag[i + 1] - sigma - e * l);
    const double c_next = (i + 2 == n - 1) ? off[n - 2] : 0.0;
    y = c_next - l * y;
    pivot = next_pivot;
  }
  const double last = diag[n - 1] - sigma - schur;
  if (last < 0.0) ++negatives;
  return negatives;
}

std::vector<double> CyclicTridiagonal::smallest_eigenvalues(std::size_t count, double abs_tol) const {
  const std::size_t n = size();
  detail::require(n >= 3, "CyclicTridiagonal: need at least 3 unknowns");
  count = std::min(count, n);
  // Gershgorin interval.
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = std::abs(off[i]) + std::abs(off[(i + n - 1) % n]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
    norm = std::max(norm, std::abs(diag[i]) + radius);
  }
  const double floor_tol = 8.0 * std::numeric_limits<double>::epsilon() * norm;
  const double tol = std::max(abs_tol, floor_tol);
  lo -= tol;
  hi += tol;

  std::vector<double> out;
  out.reserve(count);
  double left = lo;
  for (std::size_t index = 0; index < count; ++index) {
    // Smallest sigma with count_below(sigma) > index.
    double a = left;
    double b = hi;
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (count_below(mid) > index)
        b = mid;
      else
        a = mid;
    }
    const double value = 0.5 * (a + b);
    out.push_back(value);
    left = a;
  }
  return out;
}

CyclicTridiagonal CyclicTridiagonal::congruence(std::span<const double> s) const {
  const std::size_t n = size();
  detail::require(s.size() == n, "CyclicTridiagonal::congruence: size mismatch");
  CyclicTridiagonal out{diag, off};
  for (std::size_t i = 0; i < n; ++i) {
    out.diag[i] *= s[i] * s[i];
    out.off[i] *= s[i] * s[(i + 1) % n];
  }
  return out;
}

}  // namespace yamabe
