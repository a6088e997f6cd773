#include "cylcap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cylcap/error.hpp"

namespace cylcap {

namespace {

constexpr double kFirstDiffStep = 1e-5;
constexpr double kSecondDiffStep = 1e-4;
constexpr double kBisectTol = 1e-13;
constexpr double kClampSlack = 1e-14;

std::string describe(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

// asin with arguments within kClampSlack of +-1 pulled onto the boundary.
double clamped_asin(double x, ErrorKind kind, const char* what) {
  if (x > 1.0 + kClampSlack || x < -1.0 - kClampSlack) {
    throw Error(kind, std::string(what) + ": arcsin argument " + describe(x) + " outside [-1, 1]");
  }
  return std::asin(std::clamp(x, -1.0, 1.0));
}

}  // namespace

double h1(double x) { return 2.0 * std::atan(std::exp(x)); }

double h2(double x) { return std::log((1.0 + std::sin(x)) / std::cos(x)); }

CurvatureModel CurvatureModel::hyperbolic(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorKind::kDomain, "hyperbolic k must be positive");
  return CurvatureModel(CurvatureKind::kHyperbolic, k, nullptr);
}

CurvatureModel CurvatureModel::flat() { return CurvatureModel(CurvatureKind::kFlat, 0.0, nullptr); }

CurvatureModel CurvatureModel::spherical(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorKind::kDomain, "spherical k must be positive");
  return CurvatureModel(CurvatureKind::kSpherical, k, nullptr);
}

CurvatureModel CurvatureModel::variable(VariableProfile profile) {
  if (!profile.h) throw Error(ErrorKind::kInvalidModel, "variable profile has no warp evaluator");
  if (!(profile.k1 > 0.0) || !(profile.k2 >= profile.k1) || !std::isfinite(profile.k2)) {
    throw Error(ErrorKind::kInvalidModel, "pinching constants must satisfy 0 < k1 <= k2");
  }
  const double k1 = profile.k1;
  return CurvatureModel(CurvatureKind::kVariableNegative, k1,
                        std::make_shared<const VariableProfile>(std::move(profile)));
}

Cylinder::Cylinder(double length, double a, double b, CurvatureModel curvature, QuadratureSpec quad,
                   PinchingCheck check)
    : length_(length), a_(a), b_(b), curvature_(std::move(curvature)), quad_(quad) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::kDomain, "cylinder length must be positive");
  }
  if (!(a < 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::kDomain, "band must satisfy a < 0 <= b");
  }
  if (std::abs(b) > std::abs(a)) throw Error(ErrorKind::kDomain, "band must satisfy |b| <= |a|");
  if (kind() == CurvatureKind::kSpherical &&
      !(std::abs(a) < std::numbers::pi / (2.0 * k()) - kSphericalGuard)) {
    throw Error(ErrorKind::kSingularDomain,
                "spherical band must satisfy |a| < pi/(2k); perpendiculars would meet");
  }
  if (kind() == CurvatureKind::kVariableNegative) verify_profile(check);
}

double Cylinder::normalize_t(double t) const {
  double r = std::fmod(t, length_);
  if (r < 0.0) r += length_;
  if (r >= length_) r = 0.0;
  return r;
}

FermiPoint Cylinder::point(double t, double s) const {
  FermiPoint p{normalize_t(t), s};
  checked(p);
  return p;
}

const FermiPoint& Cylinder::checked(const FermiPoint& p) const {
  if (!in_band(p.s)) {
    throw Error(ErrorKind::kDomain, "s = " + describe(p.s) + " outside band [" + describe(a_) + ", " +
                                        describe(b_) + "]");
  }
  return p;
}

double Cylinder::chart_limit() const {
  if (kind() == CurvatureKind::kSpherical) return std::numbers::pi / (2.0 * k()) - kSphericalGuard;
  return std::numeric_limits<double>::infinity();
}

void Cylinder::check_chart(double s) const {
  if (kind() == CurvatureKind::kSpherical && !(std::abs(k() * s) < std::numbers::pi / 2.0)) {
    throw Error(ErrorKind::kSingularDomain, "|s| = " + describe(std::abs(s)) + " reaches pi/(2k)");
  }
}

double Cylinder::warp_at(double t, double s) const {
  switch (kind()) {
    case CurvatureKind::kHyperbolic: return std::cosh(k() * s);
    case CurvatureKind::kFlat: return 1.0;
    case CurvatureKind::kSpherical: return std::cos(k() * s);
    case CurvatureKind::kVariableNegative: return curvature_.profile()->h(t, s);
  }
  return 1.0;
}

double Cylinder::dwarp_ds_at(double t, double s) const {
  switch (kind()) {
    case CurvatureKind::kHyperbolic: return k() * std::sinh(k() * s);
    case CurvatureKind::kFlat: return 0.0;
    case CurvatureKind::kSpherical: return -k() * std::sin(k() * s);
    case CurvatureKind::kVariableNegative: {
      const VariableProfile& prof = *curvature_.profile();
      if (prof.dh_ds) return prof.dh_ds(t, s);
      return (prof.h(t, s + kFirstDiffStep) - prof.h(t, s - kFirstDiffStep)) / (2.0 * kFirstDiffStep);
    }
  }
  return 0.0;
}

double Cylinder::H(double t, double s) const {
  switch (kind()) {
    // (h1(ks) - h1(0))/k, written as the Gudermannian to avoid cancellation.
    case CurvatureKind::kHyperbolic: return std::atan(std::sinh(k() * s)) / k();
    case CurvatureKind::kFlat: return s;
    case CurvatureKind::kSpherical:
      check_chart(s);
      return std::asinh(std::tan(k() * s)) / k();
    case CurvatureKind::kVariableNegative: {
      const VariableProfile& prof = *curvature_.profile();
      return integrate([&](double x) { return 1.0 / prof.h(t, x); }, 0.0, s, quad_);
    }
  }
  return s;
}

double Cylinder::resistance(double t, double lo, double hi) const {
  if (kind() == CurvatureKind::kVariableNegative) {
    const VariableProfile& prof = *curvature_.profile();
    return integrate([&](double x) { return 1.0 / prof.h(t, x); }, lo, hi, quad_);
  }
  return H(t, hi) - H(t, lo);
}

double Cylinder::measure(double t, double lo, double hi) const {
  switch (kind()) {
    case CurvatureKind::kHyperbolic: return (std::sinh(k() * hi) - std::sinh(k() * lo)) / k();
    case CurvatureKind::kFlat: return hi - lo;
    case CurvatureKind::kSpherical:
      check_chart(lo);
      check_chart(hi);
      return (std::sin(k() * hi) - std::sin(k() * lo)) / k();
    case CurvatureKind::kVariableNegative: {
      const VariableProfile& prof = *curvature_.profile();
      return integrate([&](double x) { return prof.h(t, x); }, lo, hi, quad_);
    }
  }
  return hi - lo;
}

double Cylinder::endpoint_for_measure(double t, double from, double m, bool upward) const {
  if (m < 0.0) throw Error(ErrorKind::kDomain, "negative measure");
  const double sign = upward ? 1.0 : -1.0;
  switch (kind()) {
    case CurvatureKind::kHyperbolic: return std::asinh(std::sinh(k() * from) + sign * k() * m) / k();
    case CurvatureKind::kFlat: return from + sign * m;
    case CurvatureKind::kSpherical: {
      check_chart(from);
      const double x =
          clamped_asin(std::sin(k() * from) + sign * k() * m, ErrorKind::kGeometryOverflow,
                       "measure exceeds the spherical chart") / k();
      check_chart(x);
      return x;
    }
    case CurvatureKind::kVariableNegative: return endpoint_for_measure_bisect(t, from, m, upward);
  }
  return from;
}

double Cylinder::endpoint_for_measure_bisect(double t, double from, double m, bool upward) const {
  if (m < 0.0) throw Error(ErrorKind::kDomain, "negative measure");
  if (m == 0.0) return from;
  const double dir = upward ? 1.0 : -1.0;
  auto excess = [&](double x) {
    return (upward ? measure(t, from, x) : measure(t, x, from)) - m;
  };
  const double limit = chart_limit();
  double near = from;
  double step = std::max(m, 1e-3);
  double far = from + dir * step;
  while (true) {
    if (std::abs(far) >= limit) {
      far = dir * limit;
      if (excess(far) < 0.0) {
        throw Error(ErrorKind::kGeometryOverflow, "measure " + describe(m) + " exceeds the chart");
      }
      break;
    }
    if (excess(far) >= 0.0) break;
    near = far;
    step *= 2.0;
    far = from + dir * step;
  }
  while (std::abs(far - near) > kBisectTol) {
    const double mid = 0.5 * (near + far);
    if (mid == near || mid == far) break;
    if (excess(mid) < 0.0) {
      near = mid;
    } else {
      far = mid;
    }
  }
  return 0.5 * (near + far);
}

double Cylinder::curvature_at(const FermiPoint& p) const {
  checked(p);
  switch (kind()) {
    case CurvatureKind::kHyperbolic: return -k() * k();
    case CurvatureKind::kFlat: return 0.0;
    case CurvatureKind::kSpherical: return k() * k();
    case CurvatureKind::kVariableNegative: {
      const auto& h = curvature_.profile()->h;
      const double d = kSecondDiffStep;
      const double hss = (h(p.t, p.s + d) - 2.0 * h(p.t, p.s) + h(p.t, p.s - d)) / (d * d);
      return -hss / h(p.t, p.s);
    }
  }
  return 0.0;
}

EmbeddedPoint Cylinder::embed(const FermiPoint& p) const {
  checked(p);
  switch (kind()) {
    case CurvatureKind::kHyperbolic: {
      const double ks = k() * p.s;
      const double scale = std::exp(k() * p.t) / std::cosh(ks);
      return HalfPlanePoint{scale * std::complex<double>(std::sinh(ks), 1.0)};
    }
    case CurvatureKind::kSpherical: {
      const double r = 1.0 / k();
      const double kt = k() * p.t;
      const double ks = k() * p.s;
      return SpherePoint{{r * std::cos(kt) * std::cos(ks), r * std::sin(kt) * std::cos(ks), r * std::sin(ks)}};
    }
    case CurvatureKind::kFlat: return FlatPoint{{p.t, p.s}};
    case CurvatureKind::kVariableNegative: break;
  }
  throw Error(ErrorKind::kUnsupported, "no closed-form embedding for variable curvature");
}

void Cylinder::verify_profile(const PinchingCheck& check) const {
  const VariableProfile& prof = *curvature_.profile();
  const double tol = check.tol;
  auto fail = [&](const std::string& what, double t, double s) {
    throw Error(ErrorKind::kInvalidModel, "profile '" + prof.name + "' " + what + " at (t, s) = (" +
                                              describe(t) + ", " + describe(s) + ")");
  };
  for (int i = 0; i < check.nt; ++i) {
    const double t = length_ * i / check.nt;
    if (std::abs(prof.h(t, 0.0) - 1.0) > tol) fail("violates h(t, 0) = 1", t, 0.0);
    if (std::abs(dwarp_ds_at(t, 0.0)) > std::max(tol, 1e-8)) fail("violates dh/ds(t, 0) = 0", t, 0.0);
    for (int j = 0; j < check.ns; ++j) {
      const double s = a_ + (b_ - a_) * j / (check.ns - 1);
      const double h = prof.h(t, s);
      const double upper = std::cosh(prof.k2 * s);
      const double lower = std::cosh(prof.k1 * s);
      if (!(h <= upper * (1.0 + tol)) || !(h >= lower * (1.0 - tol))) {
        fail("leaves the pinching sandwich cosh(k1 s) <= h <= cosh(k2 s)", t, s);
      }
      if (std::abs(s) > 1e-6) {
        const double slope = dwarp_ds_at(t, s);
        if ((s > 0.0 && !(slope > 0.0)) || (s < 0.0 && !(slope < 0.0))) {
          fail("has dh/ds with the wrong sign", t, s);
        }
      }
    }
  }
}

}  // namespace cylcap
