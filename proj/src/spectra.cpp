#include "yamabe/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "yamabe/error.hpp"

namespace yamabe {

using detail::require;

ModelManifold ModelManifold::round_sphere(int d) {
  require(d >= 1, "round_sphere: dimension must be >= 1");
  if (d == 1) return circle(2.0 * std::numbers::pi);
  return ModelManifold(Kind::RoundSphere, d, double(d) * (d - 1), sphere_volume(d));
}

ModelManifold ModelManifold::circle(double circumference) {
  require(circumference > 0.0, "circle: circumference must be positive");
  return ModelManifold(Kind::Circle, 1, 0.0, circumference);
}

ModelManifold ModelManifold::abstract(int dim, double scalar, double volume) {
  require(dim >= 1, "abstract: dimension must be >= 1");
  require(volume > 0.0, "abstract: volume must be positive");
  return ModelManifold(Kind::Abstract, dim, scalar, volume);
}

std::string ModelManifold::label() const {
  switch (kind_) {
    case Kind::RoundSphere:
      return "S^" + std::to_string(dim_);
    case Kind::Circle:
      return "S^1(" + std::to_string(volume_) + ")";
    case Kind::Abstract:
      return "M^" + std::to_string(dim_) + "(s=" + std::to_string(scalar_) + ")";
  }
  return {};
}

double ModelManifold::laplace_eigenvalue(int j) const {
  require(j >= 0, "laplace_eigenvalue: index must be >= 0");
  switch (kind_) {
    case Kind::RoundSphere:
      return double(j) * (j + dim_ - 1);
    case Kind::Circle: {
      const double w = 2.0 * std::numbers::pi * j / volume_;
      return w * w;
    }
    case Kind::Abstract:
      break;
  }
  throw UnsupportedSpectrumError("no Laplace spectrum available for " + label());
}

long long ModelManifold::multiplicity(int j) const {
  require(j >= 0, "multiplicity: index must be >= 0");
  switch (kind_) {
    case Kind::RoundSphere: {
      // (2j + d - 1) (j + d - 2)! / (j! (d - 1)!) = (2j + d - 1) C(j + d - 2, j) / (d - 1)
      const int d = dim_;
      long long binom = 1;
      for (int r = 1; r <= j; ++r) binom = binom * (d - 2 + r) / r;
      return (2LL * j + d - 1) * binom / (d - 1);
    }
    case Kind::Circle:
      return j == 0 ? 1 : 2;
    case Kind::Abstract:
      break;
  }
  throw UnsupportedSpectrumError("no Laplace spectrum available for " + label());
}

ProductSpace::ProductSpace(ModelManifold m, ModelManifold n, double t_) : M(m), N(n), t(t_) {
  require(t > 0.0, "ProductSpace: t must be positive");
  require(M.dim() + N.dim() >= 3, "ProductSpace: total dimension must be >= 3");
}

double ProductSpace::volume() const {
  return M.volume() * std::pow(t, 0.5 * N.dim()) * N.volume();
}

std::vector<SpectrumEntry> conformal_laplacian_spectrum(const ProductSpace& P, int count) {
  require(count >= 1, "conformal_laplacian_spectrum: count must be >= 1");
  if (!P.M.has_spectrum() || !P.N.has_spectrum())
    throw UnsupportedSpectrumError("conformal_laplacian_spectrum: factor without spectrum");

  const double a = P.dims().a;
  const double s = P.scalar();
  auto value = [&](int i, int j) {
    return a * (P.M.laplace_eigenvalue(i) + P.N.laplace_eigenvalue(j) / P.t) + s;
  };

  // Grow the cutoff until the pairs below it carry enough multiplicity.
  // Both factor spectra are increasing in the index, so each loop stops at
  // the first mode above the cutoff and nothing below it is missed.
  double cutoff = s + a * (P.M.laplace_eigenvalue(1) + P.N.laplace_eigenvalue(1) / P.t);
  std::vector<SpectrumEntry> entries;
  for (;;) {
    entries.clear();
    long long total = 0;
    for (int i = 0; value(i, 0) <= cutoff; ++i) {
      for (int j = 0; value(i, j) <= cutoff; ++j) {
        const long long mult = P.M.multiplicity(i) * P.N.multiplicity(j);
        entries.push_back({value(i, j), mult, i, j});
        total += mult;
      }
    }
    if (total >= count) break;
    cutoff = s + 2.0 * (cutoff - s);
  }
  std::sort(entries.begin(), entries.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
    if (x.value != y.value) return x.value < y.value;
    if (x.i != y.i) return x.i < y.i;
    return x.j < y.j;
  });
  long long cumulative = 0;
  std::size_t keep = 0;
  while (keep < entries.size() && cumulative < count) cumulative += entries[keep++].multiplicity;
  entries.resize(keep);
  return entries;
}

double conformal_laplacian_eigenvalue(const ProductSpace& P, int l) {
  require(l >= 1, "conformal_laplacian_eigenvalue: l must be >= 1");
  long long cumulative = 0;
  for (const auto& e : conformal_laplacian_spectrum(P, l)) {
    cumulative += e.multiplicity;
    if (cumulative >= l) return e.value;
  }
  throw AccuracyError("conformal_laplacian_eigenvalue: enumeration ended early");
}

CircleOperator fd_circle_operator(double scalar, double a, double length, int grid) {
  require(grid >= 16, "fd_circle_operator: grid must be >= 16");
  require(length > 0.0, "fd_circle_operator: length must be positive");
  const double h = length / grid;
  const double c = a / (h * h);
  CyclicTridiagonal m{std::vector<double>(grid, 2.0 * c + scalar), std::vector<double>(grid, -c)};
  return {scalar, a, length, grid, h, std::move(m)};
}

namespace {

void check_weight(const CircleOperator& op, std::span<const double> u, bool strictly_positive) {
  require(u.size() == std::size_t(op.grid), "weight size does not match the grid");
  for (double x : u) {
    if (strictly_positive)
      require(x > 0.0 && std::isfinite(x), "conformal weight must be strictly positive");
    else
      require(x >= 0.0 && std::isfinite(x), "conformal weight must be non-negative");
  }
}

}  // namespace

std::vector<double> weighted_eigenvalues(const CircleOperator& op, std::span<const double> u,
                                         double p, std::size_t count, double abs_tol) {
  require(p > 2.0, "weighted_eigenvalues: p must exceed 2");
  check_weight(op, u, true);
  std::vector<double> scale(u.size());
  // weight u^{p-2}; congruence by u^{-(p-2)/2}
  for (std::size_t i = 0; i < u.size(); ++i) scale[i] = std::pow(u[i], -(p - 2.0) / 2.0);
  return op.matrix.congruence(scale).smallest_eigenvalues(count, abs_tol);
}

double volume_factor(std::span<const double> u, double p, double h, double volume_M) {
  double sum = 0.0;
  for (double x : u) sum += std::pow(std::abs(x), p);
  const double k = 2.0 * p / (p - 2.0);
  return std::pow(volume_M * sum * h, 2.0 / k);
}

WeightedEigenvalue generalized_eigenvalue(const CircleOperator& op, std::span<const double> u,
                                          double p, int l, double volume_M) {
  require(l >= 1, "generalized_eigenvalue: l must be >= 1");
  const auto values = weighted_eigenvalues(op, u, p, std::size_t(l));
  const double lambda = values.at(std::size_t(l) - 1);
  return {lambda, lambda * volume_factor(u, p, op.h, volume_M)};
}

WeightedEigenvalue generalized_second_eigenvalue(const CircleOperator& op,
                                                 std::span<const double> u, double p,
                                                 double volume_M) {
  return generalized_eigenvalue(op, u, p, 2, volume_M);
}

double subspace_rayleigh_max(const CircleOperator& op, std::span<const double> u, double p,
                             std::span<const std::vector<double>> basis) {
  require(p > 2.0, "subspace_rayleigh_max: p must exceed 2");
  require(!basis.empty(), "subspace_rayleigh_max: empty basis");
  check_weight(op, u, false);
  const auto r = Eigen::Index(basis.size());
  Eigen::MatrixXd K(r, r), G(r, r);
  std::vector<std::vector<double>> images;
  for (const auto& b : basis) {
    require(b.size() == u.size(), "subspace_rayleigh_max: basis vector size mismatch");
    images.push_back(op.apply(b));
  }
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      double kij = 0.0, gij = 0.0;
      for (std::size_t q = 0; q < u.size(); ++q) {
        kij += basis[i][q] * images[j][q];
        gij += std::pow(u[q], p - 2.0) * basis[i][q] * basis[j][q];
      }
      K(i, j) = kij;
      G(i, j) = gij;
    }
  }
  K = 0.5 * (K + K.transpose()).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  require(llt.info() == Eigen::Success && G.diagonal().minCoeff() > 0.0,
          "subspace_rayleigh_max: weighted basis is linearly dependent");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(K, G, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

std::vector<double> conformal_operator_apply(const CircleOperator& op, std::span<const double> u,
                                             double p, std::span<const double> v) {
  check_weight(op, u, true);
  require(v.size() == u.size(), "conformal_operator_apply: size mismatch");
  const std::size_t n = u.size();
  const double h2 = op.h * op.h;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = (i + 1) % n, im = (i + n - 1) % n;
    const double d2v = (v[ip] - 2.0 * v[i] + v[im]) / h2;
    const double d2u = (u[ip] - 2.0 * u[i] + u[im]) / h2;
    const double pairing = ((u[ip] - u[i]) * (v[ip] - v[i]) + (u[im] - u[i]) * (v[im] - v[i])) / h2;
    const double scalar_u = std::pow(u[i], 1.0 - p) * (-op.a * d2u + op.scalar * u[i]);
    out[i] = -op.a * std::pow(u[i], 2.0 - p) * (d2v + pairing / u[i]) + scalar_u * v[i];
  }
  return out;
}

std::vector<double> pullback_apply(const CircleOperator& op, std::span<const double> u, double p,
                                   std::span<const double> v) {
  check_weight(op, u, true);
  require(v.size() == u.size(), "pullback_apply: size mismatch");
  std::vector<double> uv(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) uv[i] = u[i] * v[i];
  auto out = op.apply(uv);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] *= std::pow(u[i], 1.0 - p);
  return out;
}

}  // namespace yamabe
