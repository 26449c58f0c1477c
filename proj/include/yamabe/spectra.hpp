#pragma once

// Conformal Laplacian spectra of model products, and a periodic
// finite-difference model of L = -a d^2/dx^2 + s on a circle used as a
// discrete min-max oracle.

#include <span>
#include <string>
#include <vector>

#include "yamabe/constants.hpp"
#include "yamabe/cyclic_tridiagonal.hpp"

namespace yamabe {

class ModelManifold {
 public:
  enum class Kind { RoundSphere, Circle, Abstract };

  /// Round unit sphere S^d; S^1 is the circle of circumference 2 pi.
  static ModelManifold round_sphere(int d);
  static ModelManifold circle(double circumference);
  /// Constant scalar curvature data only; no spectrum.
  static ModelManifold abstract(int dim, double scalar, double volume);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double scalar() const { return scalar_; }
  double volume() const { return volume_; }
  bool has_spectrum() const { return kind_ != Kind::Abstract; }
  std::string label() const;

  /// j-th distinct eigenvalue of the (non-negative) Laplace-Beltrami operator.
  double laplace_eigenvalue(int j) const;
  long long multiplicity(int j) const;

 private:
  ModelManifold(Kind kind, int dim, double scalar, double volume)
      : kind_(kind), dim_(dim), scalar_(scalar), volume_(volume) {}

  Kind kind_;
  int dim_;
  double scalar_;
  double volume_;
};

/// (M x N, g + t h).
struct ProductSpace {
  ModelManifold M;
  ModelManifold N;
  double t;

  ProductSpace(ModelManifold m, ModelManifold n, double t);

  int k() const { return M.dim() + N.dim(); }
  DimData dims() const { return dim_data(k()); }
  double scalar() const { return M.scalar() + N.scalar() / t; }
  double volume() const;
};

struct SpectrumEntry {
  double value;
  long long multiplicity;
  int i;  ///< M-mode index
  int j;  ///< N-mode index
};

/// Entries of spec(L_{g+th}) = a_k (mu_i + nu_j / t) + s_g + s_h / t in
/// ascending (value, i, j) order, stopping once the cumulative multiplicity
/// reaches `count`. Every pair with a smaller value is included.
std::vector<SpectrumEntry> conformal_laplacian_spectrum(const ProductSpace& P, int count);

/// Eigenvalue number `l` (1-based, counted with multiplicity).
double conformal_laplacian_eigenvalue(const ProductSpace& P, int l);

/// Periodic second-difference model of v -> -a v'' + s v on a circle of
/// circumference `length`, uniform grid x_i = i h.
struct CircleOperator {
  double scalar;
  double a;
  double length;
  int grid;
  double h;
  CyclicTridiagonal matrix;

  std::vector<double> apply(std::span<const double> v) const { return matrix.apply(v); }
};

CircleOperator fd_circle_operator(double scalar, double a, double length, int grid);

/// Smallest `count` eigenvalues of L v = lambda u^{p-2} v for u > 0, solved
/// as the symmetric problem for w = u^{(p-2)/2} v.
std::vector<double> weighted_eigenvalues(const CircleOperator& op, std::span<const double> u,
                                         double p, std::size_t count, double abs_tol = 1e-10);

struct WeightedEigenvalue {
  double lambda;
  /// lambda * (vol(M) * sum u^p h)^{2/k}, k = 2p/(p-2): the eigenvalue of the
  /// conformal metric u^{p-2} G scaled by its volume.
  double normalized;
};

/// l-th eigenvalue (1-based) of the weighted problem, with its normalization.
WeightedEigenvalue generalized_eigenvalue(const CircleOperator& op, std::span<const double> u,
                                          double p, int l, double volume_M = 1.0);

WeightedEigenvalue generalized_second_eigenvalue(const CircleOperator& op,
                                                 std::span<const double> u, double p,
                                                 double volume_M = 1.0);

/// (vol(M) * sum_i |u_i|^p h)^{2/k}.
double volume_factor(std::span<const double> u, double p, double h, double volume_M = 1.0);

/// sup over v in span(basis) of <L v, v> / sum u^{p-2} v^2, i.e. the top
/// Ritz value of the weighted pencil restricted to the subspace. u >= 0 may
/// vanish; the weighted Gram matrix must be non-degenerate.
double subspace_rayleigh_max(const CircleOperator& op, std::span<const double> u, double p,
                             std::span<const std::vector<double>> basis);

/// Conformal Laplacian of G_u = u^{p-2} G built from its pieces,
/// -a u^{2-p} (v'' + 2 <du, dv> / u) + s_u v with s_u = u^{1-p} L u, using the
/// discrete product rule for the gradient pairing.
std::vector<double> conformal_operator_apply(const CircleOperator& op, std::span<const double> u,
                                             double p, std::span<const double> v);

/// u^{1-p} L(u v).
std::vector<double> pullback_apply(const CircleOperator& op, std::span<const double> u, double p,
                                   std::span<const double> v);

}  // namespace yamabe
