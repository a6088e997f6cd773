#pragma once

#include <array>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <variant>

#include "cylcap/quadrature.hpp"

namespace cylcap {

enum class CurvatureKind { kHyperbolic, kFlat, kSpherical, kVariableNegative };

/// Warp factor h(t, s) of a cylinder whose curvature is pinched in
/// [-k2^2, -k1^2]. The pinching constants are declared by the caller and
/// checked by sampling when a Cylinder is built.
struct VariableProfile {
  std::string name;
  std::function<double(double t, double s)> h;
  std::function<double(double t, double s)> dh_ds;  // may be empty: central differences
  double k1 = 1.0;
  double k2 = 1.0;
};

/// Constant curvature -k^2, 0, +k^2, or a variable negative profile.
class CurvatureModel {
 public:
  static CurvatureModel hyperbolic(double k);
  static CurvatureModel flat();
  static CurvatureModel spherical(double k);
  static CurvatureModel variable(VariableProfile profile);

  CurvatureKind kind() const { return kind_; }
  bool is_constant() const { return kind_ != CurvatureKind::kVariableNegative; }
  /// Curvature scale: k for constant models (0 when flat), k1 for variable ones.
  double k() const { return k_; }
  /// Null unless kind() == kVariableNegative.
  const VariableProfile* profile() const { return profile_.get(); }

 private:
  CurvatureModel(CurvatureKind kind, double k, std::shared_ptr<const VariableProfile> profile)
      : kind_(kind), k_(k), profile_(std::move(profile)) {}

  CurvatureKind kind_;
  double k_;
  std::shared_ptr<const VariableProfile> profile_;
};

/// Fermi coordinates: t is arclength along the baseline (mod l), s the signed
/// distance along the perpendicular geodesic.
struct FermiPoint {
  double t = 0.0;
  double s = 0.0;
};

/// Point in the upper half-plane model of curvature -k^2.
struct HalfPlanePoint {
  std::complex<double> z;
};
/// Point on the sphere of radius 1/k in R^3.
struct SpherePoint {
  std::array<double, 3> x;
};
/// Point on the unrolled flat cylinder.
struct FlatPoint {
  std::array<double, 2> x;
};
using EmbeddedPoint = std::variant<HalfPlanePoint, SpherePoint, FlatPoint>;

/// Sampling grid for the variable-profile sanity checks.
struct PinchingCheck {
  int nt = 64;
  int ns = 64;
  double tol = 1e-10;
};

/// Guard kept between the spherical band and the pole of cos(ks).
inline constexpr double kSphericalGuard = 1e-12;

/// The cylinder S mod M expressed in Fermi coordinates over the band ]a, b[.
///
/// Evaluators named `*_at` work on the whole Fermi chart of the model surface
/// (all s for K <= 0, |s| < pi/(2k) for K > 0); they are used by the
/// symmetrization stages, whose extremal annuli may reach past b. The
/// FermiPoint overloads enforce the band.
class Cylinder {
 public:
  Cylinder(double length, double a, double b, CurvatureModel curvature,
           QuadratureSpec quad = {}, PinchingCheck check = {});

  double length() const { return length_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const CurvatureModel& curvature() const { return curvature_; }
  CurvatureKind kind() const { return curvature_.kind(); }
  double k() const { return curvature_.k(); }
  const QuadratureSpec& quadrature() const { return quad_; }

  /// Validated point: t reduced to [0, l), s inside ]a, b[ (closed at the ends).
  FermiPoint point(double t, double s) const;
  bool in_band(double s) const { return s >= a_ && s <= b_; }
  /// Largest |s| the chart supports.
  double chart_limit() const;
  double normalize_t(double t) const;

  double warp(const FermiPoint& p) const { return warp_at(p.t, checked(p).s); }
  double warp_at(double t, double s) const;
  double dwarp_ds_at(double t, double s) const;

  /// Antiderivative of 1/h in s with H(t, 0) = 0.
  double H(double t, double s) const;
  /// H(t, hi) - H(t, lo); the 1-D resistance of a subsection.
  double resistance(double t, double lo, double hi) const;
  /// Integral of h over ]lo, hi[ at fixed t; the area density of a subsection.
  double measure(double t, double lo, double hi) const;

  /// Endpoint x with measure(from, x) == m (upward) or measure(x, from) == m
  /// (downward). Closed forms for constant curvature, bisection otherwise.
  double endpoint_for_measure(double t, double from, double m, bool upward) const;
  /// Pure bisection route of endpoint_for_measure, kept as a cross-check.
  double endpoint_for_measure_bisect(double t, double from, double m, bool upward) const;

  double curvature_at(const FermiPoint& p) const;
  EmbeddedPoint embed(const FermiPoint& p) const;

 private:
  const FermiPoint& checked(const FermiPoint& p) const;
  void check_chart(double s) const;
  void verify_profile(const PinchingCheck& check) const;

  double length_;
  double a_;
  double b_;
  CurvatureModel curvature_;
  QuadratureSpec quad_;
};

/// 2 arctan(exp(x)); H = (h1(ks) - h1(0))/k for curvature -k^2.
double h1(double x);
/// log((1 + sin x)/cos x); H = h2(ks)/k for curvature k^2.
double h2(double x);

}  // namespace cylcap
