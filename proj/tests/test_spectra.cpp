#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "yamabe/cyclic_tridiagonal.hpp"
#include "yamabe/error.hpp"
#include "yamabe/spectra.hpp"

using namespace yamabe;
using std::numbers::pi;

namespace {

struct Mode {
  double value;
  long long mult;
};

long long binom(int n, int r) {
  if (r < 0 || n < r) return 0;
  long long b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

// Spectrum of the round S^d written out directly.
double sphere_mode(int d, int i) { return double(i) * (i + d - 1); }
long long sphere_mult(int d, int i) {
  if (d == 1) return i == 0 ? 1 : 2;
  return binom(i + d, d) - binom(i + d - 2, d);
}

std::vector<Mode> brute_force(int m, int n, double t, int cap) {
  const int k = m + n;
  const double a = 4.0 * (k - 1) / (k - 2);
  const double s = m * (m - 1.0) + n * (n - 1.0) / t;
  std::vector<Mode> out;
  for (int i = 0; i < cap; ++i)
    for (int j = 0; j < cap; ++j)
      out.push_back({a * (sphere_mode(m, i) + sphere_mode(n, j) / t) + s, sphere_mult(m, i) * sphere_mult(n, j)});
  std::sort(out.begin(), out.end(), [](const Mode& x, const Mode& y) { return x.value < y.value; });
  return out;
}

Eigen::MatrixXd dense(const CyclicTridiagonal& c) {
  const auto n = Eigen::Index(c.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = c.diag[i];
    const Eigen::Index j = (i + 1) % n;
    d(i, j) += c.off[i];
    d(j, i) += c.off[i];
  }
  return d;
}

double discrete_lambda2(double t, int grid) {
  const CircleOperator op = fd_circle_operator(2.0, 8.0, 2.0 * pi * std::sqrt(t), grid);
  return op.matrix.smallest_eigenvalues(2)[1];
}

}  // namespace

TEST_CASE("product spectrum against brute-force enumeration") {
  struct Case {
    int m, n;
    double t;
  };
  for (const Case c : {Case{2, 1, 4.0}, Case{2, 2, 2.3}, Case{3, 3, 0.7}, Case{2, 3, 5.1}}) {
    const ProductSpace P(ModelManifold::round_sphere(c.m), ModelManifold::round_sphere(c.n), c.t);
    const auto got = conformal_laplacian_spectrum(P, 5000);
    const auto want = brute_force(c.m, c.n, c.t, 40);
    REQUIRE(got.size() >= 8);
    for (std::size_t q = 0; q < 8; ++q) {
      CHECK(got[q].value == doctest::Approx(want[q].value).epsilon(1e-13));
      CHECK(got[q].multiplicity == want[q].mult);
    }
  }
}

TEST_CASE("lambda_2 of S^2 x S^1") {
  const auto S2 = ModelManifold::round_sphere(2), S1 = ModelManifold::round_sphere(1);
  for (double t : {0.75, 1.0, 4.0, 100.0, 1e4})
    CHECK(conformal_laplacian_eigenvalue(ProductSpace(S2, S1, t), 2) == doctest::Approx(2.0 + 8.0 / t).epsilon(1e-14));
  // Below t = 1/2 the first sphere mode wins.
  CHECK(conformal_laplacian_eigenvalue(ProductSpace(S2, S1, 0.25), 2) == doctest::Approx(18.0));
  CHECK(conformal_laplacian_eigenvalue(ProductSpace(S2, S1, 4.0), 1) == doctest::Approx(2.0));
  CHECK(conformal_laplacian_eigenvalue(ProductSpace(S2, S1, 4.0), 3) == doctest::Approx(4.0));
}

TEST_CASE("spectrum needs concrete factors") {
  const ProductSpace P(ModelManifold::abstract(2, 3.0, 5.0), ModelManifold::round_sphere(1), 2.0);
  CHECK_THROWS_AS(conformal_laplacian_spectrum(P, 3), UnsupportedSpectrumError);
  CHECK_THROWS_AS(conformal_laplacian_spectrum(ProductSpace(ModelManifold::round_sphere(2), ModelManifold::round_sphere(1), 1.0), 0),
                  ValidationError);
  CHECK_THROWS_AS(ProductSpace(ModelManifold::round_sphere(2), ModelManifold::round_sphere(1), -1.0), ValidationError);
}

TEST_CASE("cyclic tridiagonal eigenvalues agree with a dense solver") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 30 + 7 * trial;
    CyclicTridiagonal c{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
      c.diag[i] = 3.0 * U(rng);
      c.off[i] = U(rng);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(c));
    const auto ev = c.smallest_eigenvalues(6, 1e-12);
    for (int q = 0; q < 6; ++q) CHECK(ev[q] == doctest::Approx(es.eigenvalues()[q]).epsilon(1e-9));
    for (double sigma : {-2.0, 0.0, 1.5})
      CHECK(c.count_below(sigma) == std::size_t((es.eigenvalues().array() < sigma).count()));

    std::vector<double> x(n), d(n);
    for (int i = 0; i < n; ++i) {
      x[i] = U(rng);
      d[i] = 1.0 + 0.5 * U(rng);
    }
    const Eigen::VectorXd dx = dense(c) * Eigen::Map<Eigen::VectorXd>(x.data(), n);
    const auto y = c.apply(x);
    for (int i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(dx[i]).epsilon(1e-13));

    const Eigen::MatrixXd D = Eigen::Map<Eigen::VectorXd>(d.data(), n).asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(D * dense(c) * D);
    const auto ev2 = c.congruence(d).smallest_eigenvalues(3, 1e-12);
    for (int q = 0; q < 3; ++q) CHECK(ev2[q] == doctest::Approx(es2.eigenvalues()[q]).epsilon(1e-9));
  }
}

TEST_CASE("discrete lambda_2 converges at second order") {
  for (double t : {1.0, 4.0, 100.0}) {
    const double exact = 2.0 + 8.0 / t;
    const double e1 = std::abs(discrete_lambda2(t, 512) - exact);
    const double e2 = std::abs(discrete_lambda2(t, 1024) - exact);
    const double e3 = std::abs(discrete_lambda2(t, 2048) - exact);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.02));
    CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.02));
    // Richardson extrapolation removes the h^2 term.
    const double rich = (4.0 * discrete_lambda2(t, 2048) - discrete_lambda2(t, 1024)) / 3.0;
    CHECK(std::abs(rich - exact) < 0.01 * e3);
    CHECK(std::abs(discrete_lambda2(t, 4096) - exact) / exact < 1e-4);
  }
}

TEST_CASE("weighted eigenvalues: constant weights") {
  const double p = 6.0;
  const CircleOperator op = fd_circle_operator(2.0, 8.0, 4.0 * pi, 256);
  const auto plain = op.matrix.smallest_eigenvalues(3);
  const std::vector<double> one(256, 1.0);
  for (int l = 1; l <= 3; ++l) CHECK(generalized_eigenvalue(op, one, p, l).lambda == doctest::Approx(plain[l - 1]));
  const WeightedEigenvalue base = generalized_eigenvalue(op, one, p, 2, 3.0);
  for (double c : {0.3, 2.5}) {
    const std::vector<double> u(256, c);
    const WeightedEigenvalue w = generalized_eigenvalue(op, u, p, 2, 3.0);
    CHECK(w.lambda == doctest::Approx(base.lambda / std::pow(c, p - 2.0)).epsilon(1e-8));
    CHECK(w.normalized == doctest::Approx(base.normalized).epsilon(1e-8));
  }
  // volume factor of the constant 1 is (vol * length)^{2/k}
  CHECK(volume_factor(one, p, op.h, 3.0) == doctest::Approx(std::pow(3.0 * 4.0 * pi, 2.0 / 3.0)).epsilon(1e-12));
  std::vector<double> bad(256, 1.0);
  bad[3] = 0.0;
  CHECK_THROWS_AS(generalized_eigenvalue(op, bad, p, 1), ValidationError);
  CHECK_THROWS_AS(generalized_eigenvalue(op, std::vector<double>(10, 1.0), p, 1), ValidationError);
}

TEST_CASE("conformal identity on the grid") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N(0.0, 1.0);
  const int n = 400;
  const double p = 10.0 / 3.0;
  const CircleOperator op = fd_circle_operator(-1.5, 16.0 / 3.0, 7.0, n);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> u(n), v(n);
    const double c1 = 0.3 * N(rng), c2 = 0.3 * N(rng);
    for (int i = 0; i < n; ++i) {
      const double x = 2.0 * pi * i / n;
      u[i] = std::exp(c1 * std::cos(x) + c2 * std::sin(2.0 * x));
      v[i] = N(rng);
    }
    std::vector<double> uv(n);
    for (int i = 0; i < n; ++i) uv[i] = u[i] * v[i];
    const auto Luv = op.apply(uv);
    const auto lhs = conformal_operator_apply(op, u, p, v);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      const double rhs = std::pow(u[i], 1.0 - p) * Luv[i];
      num = std::max(num, std::abs(lhs[i] - rhs));
      den = std::max(den, std::abs(rhs));
    }
    CHECK(num / den < 1e-10);
  }
}

TEST_CASE("subspace Rayleigh maximum") {
  const int n = 128;
  const CircleOperator op = fd_circle_operator(2.0, 8.0, 2.0 * pi, n);
  const std::vector<double> one(n, 1.0);
  std::vector<std::vector<double>> basis{one};
  CHECK(subspace_rayleigh_max(op, one, 6.0, basis) == doctest::Approx(2.0).epsilon(1e-12));
  std::vector<double> c(n);
  for (int i = 0; i < n; ++i) c[i] = std::cos(2.0 * pi * i / n);
  basis.push_back(c);
  const double exact = 2.0 + 8.0 * 4.0 * std::pow(std::sin(pi / n), 2) / (op.h * op.h);
  CHECK(subspace_rayleigh_max(op, one, 6.0, basis) == doctest::Approx(exact).epsilon(1e-10));
  basis.push_back(std::vector<double>(n, 0.0));
  CHECK_THROWS_AS(subspace_rayleigh_max(op, one, 6.0, basis), ValidationError);
}
