#include "cylcap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cylcap/error.hpp"

namespace cylcap {

namespace {

constexpr double kClampSlack = 1e-14;

void require_positive_area(double area) {
  if (!(area > 0.0) || !std::isfinite(area)) {
    std::ostringstream out;
    out.precision(17);
    out << "area must be positive, got " << area;
    throw Error(ErrorKind::kDomain, out.str());
  }
}

// Column integrands of the type-A bounds at t.
struct Columns {
  double resistance;
  double q1;
  double q2;
};

Columns columns(const Cylinder& c, const TypeAAnnulus& ann, double t) {
  const double lo = ann.a1(t);
  const double hi = ann.a2(t);
  const double q1 = ann.a1_prime(t) / c.warp_at(t, lo);
  const double q2 = ann.a2_prime(t) / c.warp_at(t, hi);
  return {c.resistance(t, lo, hi), q1, q2};
}

double upper_factor(double q1, double q2) { return 1.0 + (q1 * q1 + q1 * q2 + q2 * q2) / 3.0; }

}  // namespace

double section_caps(const Cylinder& c, double t, std::span<const Subsection> parts) {
  double sum = 0.0;
  bool any = false;
  for (const Subsection& part : parts) {
    if (part.type != SubsectionType::kAB) continue;
    sum += 1.0 / c.resistance(t, part.lo, part.hi);
    any = true;
  }
  if (!any) throw Error(ErrorKind::kInvalidInput, "section has no ab subsection");
  return sum;
}

double caps_directional(const Cylinder& c, const TypeAAnnulus& ann, const QuadratureSpec& quad) {
  ann.validate(c);
  const std::vector<double> cuts = ann.cuts();
  return integrate_pieces([&](double t) { return 1.0 / c.resistance(t, ann.a1(t), ann.a2(t)); }, cuts, quad);
}

double caps_directional(const Cylinder& c, const SectionedAnnulus& ann) {
  double sum = 0.0;
  for (std::size_t j = 0; j < ann.size(); ++j) sum += section_caps(c, ann.t(j), ann.section(j));
  return sum * ann.spacing();
}

double lower_bound_negative(const Cylinder& c, double area) {
  if (c.kind() != CurvatureKind::kHyperbolic && c.kind() != CurvatureKind::kVariableNegative) {
    throw Error(ErrorKind::kUnsupported, "negative-curvature bound needs a hyperbolic or variable cylinder");
  }
  require_positive_area(area);
  const double k = c.k();
  const double l = c.length();
  // h1(W') - h1(-W') = 2 gd(W') = 2 arctan(sinh W') and sinh W' = k area / (2 l).
  return k * l / (2.0 * std::atan(k * area / (2.0 * l)));
}

double lower_bound_flat(double length, double area) {
  if (!(length > 0.0)) throw Error(ErrorKind::kDomain, "length must be positive");
  require_positive_area(area);
  return length * length / area;
}

double lower_bound_positive(const Cylinder& c, double area) {
  if (c.kind() != CurvatureKind::kSpherical) {
    throw Error(ErrorKind::kUnsupported, "positive-curvature bound needs a spherical cylinder");
  }
  const double w = extremal_width(c, area);
  const double k = c.k();
  return k * c.length() / (k * (c.H(0.0, w) - c.H(0.0, c.a())));
}

double area_lower_bound(const Cylinder& c, double area) {
  switch (c.kind()) {
    case CurvatureKind::kFlat: return lower_bound_flat(c.length(), area);
    case CurvatureKind::kSpherical: return lower_bound_positive(c, area);
    case CurvatureKind::kHyperbolic:
    case CurvatureKind::kVariableNegative: return lower_bound_negative(c, area);
  }
  return 0.0;
}

double extremal_width(const Cylinder& c, double area) {
  require_positive_area(area);
  const double k = c.k();
  const double l = c.length();
  switch (c.kind()) {
    case CurvatureKind::kFlat: return area / l;
    case CurvatureKind::kHyperbolic:
    case CurvatureKind::kVariableNegative: return std::asinh(k * area / (2.0 * l)) / k;
    case CurvatureKind::kSpherical: {
      const double band_area = l * (std::sin(k * c.b()) - std::sin(k * c.a())) / k;
      if (area > band_area * (1.0 + kClampSlack)) {
        std::ostringstream out;
        out.precision(17);
        out << "area " << area << " exceeds the band area " << band_area << " above s = a";
        throw Error(ErrorKind::kAreaInfeasible, out.str());
      }
      const double arg = (k * area + l * std::sin(k * c.a())) / l;
      if (arg > 1.0 + kClampSlack || arg < -1.0 - kClampSlack) {
        throw Error(ErrorKind::kAreaInfeasible, "arcsin argument outside [-1, 1]");
      }
      return std::asin(std::clamp(arg, -1.0, 1.0)) / k;
    }
  }
  return 0.0;
}

TypeAAnnulus extremal_annulus(const Cylinder& c, double area) {
  const double w = extremal_width(c, area);
  const double l = c.length();
  switch (c.kind()) {
    case CurvatureKind::kFlat:
      return TypeAAnnulus(l, BoundaryCurve::constant(-0.5 * w, l), BoundaryCurve::constant(0.5 * w, l));
    case CurvatureKind::kSpherical:
      return TypeAAnnulus(l, BoundaryCurve::constant(c.a(), l), BoundaryCurve::constant(w, l));
    case CurvatureKind::kHyperbolic:
    case CurvatureKind::kVariableNegative: break;
  }
  return TypeAAnnulus(l, BoundaryCurve::constant(-w, l), BoundaryCurve::constant(w, l));
}

BoundReport type_a_bounds(const Cylinder& c, const TypeAAnnulus& ann, const QuadratureSpec& quad, int samples) {
  if (!c.curvature().is_constant()) {
    throw Error(ErrorKind::kUnsupported, "the upper bound is only established for constant curvature");
  }
  ann.validate(c);
  const std::vector<double> cuts = ann.cuts();
  BoundReport report;
  report.lower = integrate_pieces(
      [&](double t) {
        const Columns col = columns(c, ann, t);
        return 1.0 / col.resistance;
      },
      cuts, quad);
  const double upper = integrate_pieces(
      [&](double t) {
        const Columns col = columns(c, ann, t);
        return upper_factor(col.q1, col.q2) / col.resistance;
      },
      cuts, quad);
  report.upper = upper;
  report.sharp = upper - report.lower <= 1e-14 * report.lower;

  const double area_value = area(c, ann, quad);
  report.details["area"] = area_value;
  report.details["area_bound"] = area_lower_bound(c, area_value);
  report.details["extremal_width"] = extremal_width(c, area_value);
  report.details["gap"] = upper - report.lower;
  report.details["variation"] = integrate_pieces(
      [&](double t) {
        const double d1 = ann.a1_prime(t);
        const double d2 = ann.a2_prime(t);
        return d1 * d1 + d2 * d2;
      },
      cuts, quad);

  for (int j = 0; j < samples; ++j) {
    const double t = c.length() * j / samples;
    const Columns col = columns(c, ann, t);
    report.samples.push_back({t, 1.0 / col.resistance, upper_factor(col.q1, col.q2) / col.resistance});
  }
  return report;
}

}  // namespace cylcap
