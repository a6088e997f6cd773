#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cylcap/annulus.hpp"
#include "cylcap/geometry.hpp"

namespace cylcap {

/// One sample of the t-integrands of the type-A bounds.
struct IntegrandSample {
  double t = 0.0;
  double lower = 0.0;  // 1 / (H(a2) - H(a1))
  double upper = 0.0;  // (1 + (q1^2 + q1 q2 + q2^2)/3) / (H(a2) - H(a1))
};

/// Closed-form bracket of capa(A): lower is the directional capacity, upper
/// the energy of the directional minimizer (constant curvature only).
struct BoundReport {
  double lower = 0.0;
  std::optional<double> upper;
  bool sharp = false;
  std::map<std::string, double> details;
  std::vector<IntegrandSample> samples;
};

/// Directional capacity of one section: the ab subsections conduct in
/// parallel, each with conductance 1/(H(hi) - H(lo)); aa subsections add 0.
double section_caps(const Cylinder& c, double t, std::span<const Subsection> parts);

/// Integral over t of 1/(H(t, a2(t)) - H(t, a1(t))).
double caps_directional(const Cylinder& c, const TypeAAnnulus& ann, const QuadratureSpec& quad = {});
/// Rectangle rule over the section grid of section_caps.
double caps_directional(const Cylinder& c, const SectionedAnnulus& ann);

/// k l / (h1(W') - h1(-W')) with W' = arcsinh(k area / (2 l)). Uses the
/// pinching constant k1 for variable-negative cylinders.
double lower_bound_negative(const Cylinder& c, double area);
/// l^2 / area.
double lower_bound_flat(double length, double area);
/// k l / (h2(kW) - h2(ka)) with W = arcsin((k area + l sin(ka)) / l) / k.
double lower_bound_positive(const Cylinder& c, double area);
/// The area-based bound matching the curvature model of c.
double area_lower_bound(const Cylinder& c, double area);

/// Shape parameter of the constant-width annulus of the given area:
/// half-width W (K < 0, symmetric about the baseline), upper edge W
/// (K > 0, annulus ]a, W[), or full width area / l (K = 0, centered).
double extremal_width(const Cylinder& c, double area);
/// The extremal annulus itself, as a type-A annulus with constant curves.
TypeAAnnulus extremal_annulus(const Cylinder& c, double area);

/// Lower and upper bound for a type-A annulus on a constant-curvature
/// cylinder. With samples > 0 the report also carries that many equispaced
/// integrand samples.
BoundReport type_a_bounds(const Cylinder& c, const TypeAAnnulus& ann, const QuadratureSpec& quad = {},
                          int samples = 0);

}  // namespace cylcap
