#include "yamabe/constants.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "yamabe/error.hpp"

namespace yamabe {

using detail::require;
using std::numbers::pi;

DimData dim_data(int k) {
  require(k >= 3, "dim_data: dimension must be >= 3, got " + std::to_string(k));
  const double kd = k;
  return {k, 4.0 * (kd - 1.0) / (kd - 2.0), 2.0 * kd / (kd - 2.0)};
}

double sphere_volume(int d) {
  require(d >= 0, "sphere_volume: dimension must be >= 0");
  // d odd:  (d+1)/2 = j is an integer and Gamma(j) = (j-1)!.
  // d even: (d+1)/2 = j + 1/2 and Gamma(j + 1/2) = sqrt(pi) prod_{i<j} (i + 1/2),
  //         so the sqrt(pi) cancels against pi^{(d+1)/2}.
  if (d % 2 == 1) {
    const int j = (d + 1) / 2;
    double factorial = 1.0;
    for (int i = 2; i < j; ++i) factorial *= i;
    return 2.0 * std::pow(pi, j) / factorial;
  }
  const int j = d / 2;
  double gamma_ratio = 1.0;
  for (int i = 0; i < j; ++i) gamma_ratio *= (i + 0.5);
  return 2.0 * std::pow(pi, j) / gamma_ratio;
}

SphereData sphere_data(int d) {
  require(d >= 1, "sphere_data: dimension must be >= 1");
  SphereData out{d, sphere_volume(d), double(d) * (d - 1), std::numeric_limits<double>::quiet_NaN()};
  if (d >= 3)
    out.yamabe = sphere_yamabe(d);
  else if (d == 2)
    out.yamabe = 8.0 * pi;
  return out;
}

double sphere_yamabe(int d) {
  require(d >= 3, "sphere_yamabe: dimension must be >= 3, got " + std::to_string(d));
  return double(d) * (d - 1) * std::pow(sphere_volume(d), 2.0 / d);
}

double ah_upper(int k, double yamabe) {
  require(k >= 3, "ah_upper: dimension must be >= 3");
  require(yamabe >= 0.0, "ah_upper: Yamabe constant must be non-negative");
  const double half = 0.5 * k;
  const double ys = sphere_yamabe(k);
  if (yamabe == 0.0) return ys;
  if (yamabe < 1e-3 * ys) return std::pow(std::pow(yamabe, half) + std::pow(ys, half), 2.0 / k);
  // Y (1 + (Y(S^k)/Y)^{k/2})^{2/k}: never rounds below 2^{2/k} Y when Y <= Y(S^k).
  return yamabe * std::pow(1.0 + std::pow(ys / yamabe, half), 2.0 / k);
}

Sandwich ah_sandwich(int k, double yamabe) {
  require(k >= 3, "ah_sandwich: dimension must be >= 3");
  require(yamabe >= 0.0, "ah_sandwich: Yamabe constant must be non-negative");
  require(yamabe <= sphere_yamabe(k),
          "ah_sandwich: Yamabe constant exceeds Y(S^k); no closed manifold does");
  return {std::pow(2.0, 2.0 / k) * yamabe, ah_upper(k, yamabe)};
}

ProductConstants product_constants(int m, int n) {
  require(m >= 1 && n >= 1, "product_constants: factor dimensions must be >= 1");
  require(m + n >= 3, "product_constants: total dimension must be >= 3");
  const int k = m + n;
  const double kd = k;
  const double a_k = dim_data(k).a;
  ProductConstants out{m, n, 0.0, std::nullopt};
  out.A = std::pow(a_k, n / kd) * kd * std::pow(double(m), -m / kd) * std::pow(double(n), -n / kd);
  if (m >= 3 && n >= 3) {
    const double ma = m * dim_data(m).a;
    const double na = n * dim_data(n).a;
    out.B = a_k * kd * std::pow(ma, -m / kd) * std::pow(na, -n / kd);
  }
  return out;
}

double y_rn_formula(int m, int n, double scalar, double volume, double alpha) {
  require(scalar > 0.0, "y_rn_formula: scalar curvature must be positive");
  require(volume > 0.0, "y_rn_formula: volume must be positive");
  require(alpha > 0.0, "y_rn_formula: alpha must be positive");
  const auto pc = product_constants(m, n);
  const double unit_scalar = scalar * std::pow(volume, 2.0 / m);
  return pc.A * std::pow(unit_scalar, double(m) / (m + n)) / alpha;
}

BoundReport invariant_lower_bound(const InvariantQuery& q) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  BoundReport r;
  r.upper = inf;
  switch (q.kind) {
    case InvariantCase::ProductMN: {
      require(q.m >= 3 && q.n >= 3, "product-mn: requires m, n >= 3");
      require(q.yamabe_M > 0.0, "product-mn: requires Y(M) > 0");
      require(q.yamabe_M <= sphere_yamabe(q.m), "product-mn: Y(M) exceeds Y(S^m)");
      const int k = q.m + q.n;
      const double B = *product_constants(q.m, q.n).B;
      r.name = "Y2(M^" + std::to_string(q.m) + " x N^" + std::to_string(q.n) + ")";
      r.lower = std::pow(2.0, 2.0 / k) * B * std::pow(q.yamabe_M, double(q.m) / k) *
                std::pow(sphere_yamabe(q.n), double(q.n) / k);
      r.formula = "2^(2/(m+n)) B_{m,n} Y(M)^(m/(m+n)) Y(S^n)^(n/(m+n))";
      r.parameters = {{"m", q.m}, {"n", q.n}, {"Y_M", q.yamabe_M}, {"B", B}};
      break;
    }
    case InvariantCase::SurfaceTimesS2: {
      const double c = kSurfaceIsoperimetricConstant;
      r.name = "Y2(M^2 x S^2)";
      r.lower = 2.0 * c / std::pow(3.0, 0.75) * sphere_yamabe(4);
      r.formula = "(2c/3^(3/4)) Y(S^4), c = 1.047^2";
      r.parameters = {{"c", c}};
      break;
    }
    case InvariantCase::RicciTimesS1: {
      require(q.m >= 2, "ricci-times-S1: requires m >= 2");
      require(q.volume_M > 0.0, "ricci-times-S1: volume must be positive");
      const double omega = sphere_volume(q.m);
      // Ric >= (m-1) forces vol(M) <= vol(S^m) (Bishop).
      require(q.volume_M <= omega * (1.0 + 1e-12), "ricci-times-S1: volume exceeds vol(S^m)");
      const double e = 2.0 / (q.m + 1);
      r.name = "Y2(M^" + std::to_string(q.m) + " x S^1)";
      r.lower = std::pow(2.0, e) * std::pow(q.volume_M / omega, e) * sphere_yamabe(q.m + 1);
      r.formula = "2^(2/(m+1)) (vol(M)/vol(S^m))^(2/(m+1)) Y(S^(m+1))";
      r.parameters = {{"m", q.m}, {"vol_M", q.volume_M}, {"vol_Sm", omega}};
      break;
    }
    case InvariantCase::Dim3TimesS2:
      r.name = "Y2(M^3 x S^2)";
      r.lower = std::pow(2.0, 0.4) * 0.62 * sphere_yamabe(5);
      r.formula = "2^(2/5) 0.62 Y(S^5)";
      break;
    case InvariantCase::Dim2TimesS3:
      r.name = "Y2(N^2 x S^3)";
      r.lower = std::pow(2.0, 0.4) * 0.75 * sphere_yamabe(5);
      r.formula = "2^(2/5) 0.75 Y(S^5)";
      break;
  }
  return r;
}

}  // namespace yamabe
