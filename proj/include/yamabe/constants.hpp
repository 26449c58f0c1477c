#pragma once

// Closed-form dimensional constants and bound formulas for conformal
// Laplacians on products.

#include <map>
#include <optional>
#include <string>

namespace yamabe {

/// a_k = 4(k-1)/(k-2) and p_k = 2k/(k-2) for a k-dimensional manifold.
struct DimData {
  int k;
  double a;
  double p;
};

DimData dim_data(int k);

/// Round unit sphere S^d.
struct SphereData {
  int d;
  double volume;
  double scalar;
  /// Y(S^d) for d >= 3; 8*pi for d == 2 (Gauss-Bonnet, used only as an input
  /// to the surface lower-bound formulas); NaN for d == 1.
  double yamabe;
};

/// omega_d = 2 pi^{(d+1)/2} / Gamma((d+1)/2), evaluated with the half-integer
/// Gamma recurrence so the result is exact algebra times a power of pi.
double sphere_volume(int d);

SphereData sphere_data(int d);

/// Y(S^d) = d(d-1) omega_d^{2/d}; requires d >= 3.
double sphere_yamabe(int d);

struct Sandwich {
  double lower;
  double upper;
};

/// Two-sided bound 2^{2/k} Y <= Y^2 <= (Y^{k/2} + Y(S^k)^{k/2})^{2/k}
/// for a class of non-negative Yamabe constant Y <= Y(S^k).
Sandwich ah_sandwich(int k, double yamabe);

/// Upper half of the sandwich without the Y <= Y(S^k) precondition. Used
/// by the strict-inequality experiment where Y is itself a numerical estimate.
double ah_upper(int k, double yamabe);

struct ProductConstants {
  int m;
  int n;
  double A;
  std::optional<double> B;  ///< only for m, n >= 3
};

ProductConstants product_constants(int m, int n);

/// Y_{R^n}(M x R^n, g + g_e) = A_{m,n} s'^{m/(m+n)} / alpha, where s' is the
/// scalar curvature of (M, g) after rescaling to unit volume:
/// s' = s * vol^{2/m}.
double y_rn_formula(int m, int n, double scalar, double volume, double alpha);

/// A named quantity with a lower and upper value. For one-sided bounds the
/// open side is +infinity.
struct BoundReport {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  std::string formula;
  std::map<std::string, double> parameters;
};

enum class InvariantCase {
  ProductMN,        ///< M^m x N^n, m, n >= 3, Y(M) > 0
  SurfaceTimesS2,   ///< M^2 x S^2
  RicciTimesS1,     ///< (M^m, Ric >= m-1) x S^1
  Dim3TimesS2,      ///< M^3 x S^2
  Dim2TimesS3,      ///< N^2 x S^3
};

struct InvariantQuery {
  InvariantCase kind;
  int m = 0;
  int n = 0;
  double yamabe_M = 0.0;  ///< Y(M), ProductMN only
  double volume_M = 0.0;  ///< vol(M, g), RicciTimesS1 only
};

/// Lower bounds for the second Yamabe invariant obtained by feeding known
/// Yamabe-invariant lower bounds through the 2^{2/k} factor.
BoundReport invariant_lower_bound(const InvariantQuery& query);

/// Constant c = (1.047)^2 of the surface-times-S^2 isoperimetric estimate.
inline constexpr double kSurfaceIsoperimetricConstant = 1.047 * 1.047;

}  // namespace yamabe
