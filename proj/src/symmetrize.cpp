#include "cylcap/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "cylcap/bounds.hpp"
#include "cylcap/error.hpp"

namespace cylcap {

namespace {

constexpr double kBandSlack = 1e-12;

void require_single(const SectionedAnnulus& ann, const char* step) {
  if (!ann.single_subsection()) {
    throw Error(ErrorKind::kInvalidInput, std::string(step) + " needs one subsection per section");
  }
}

void require_constant(const Cylinder& c, const char* step) {
  if (!c.curvature().is_constant()) {
    throw Error(ErrorKind::kUnsupported, std::string(step) + " needs a constant-curvature cylinder");
  }
}

std::string number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

// Keeps a merged endpoint inside the band, absorbing roundoff only.
double fit_band(const Cylinder& c, double x, double t) {
  const double slack = kBandSlack * (c.b() - c.a());
  if (x > c.b() + slack || x < c.a() - slack) {
    throw Error(ErrorKind::kGeometryOverflow,
                "merged subsection ends at s = " + number(x) + " outside the band at t = " + number(t));
  }
  return std::clamp(x, c.a(), c.b());
}

std::vector<std::vector<Subsection>> single_sections(std::size_t n) {
  return std::vector<std::vector<Subsection>>(n, std::vector<Subsection>(1));
}

TraceStage snapshot(std::string label, const Cylinder& c, const SectionedAnnulus& ann) {
  return TraceStage{std::move(label), c, ann, sectioned_area(c, ann), caps_directional(c, ann)};
}

}  // namespace

SectionedAnnulus step1_merge_subsections(const Cylinder& c, const SectionedAnnulus& ann) {
  auto out = single_sections(ann.size());
  for (std::size_t j = 0; j < ann.size(); ++j) {
    const double t = ann.t(j);
    const auto parts = ann.section(j);
    Subsection merged = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const Subsection& next = parts[i];
      const double m = c.measure(t, merged.lo, merged.hi) + c.measure(t, next.lo, next.hi);
      if (merged.type == next.type || merged.type == SubsectionType::kAB) {
        // elongate the left subsection toward the right one
        merged.hi = fit_band(c, c.endpoint_for_measure(t, merged.lo, m, true), t);
        merged.type = merged.type == next.type ? merged.type : SubsectionType::kAB;
      } else {
        // aa on the left, ab on the right: the ab subsection grows downward
        merged.lo = fit_band(c, c.endpoint_for_measure(t, next.hi, m, false), t);
        merged.hi = next.hi;
        merged.type = SubsectionType::kAB;
      }
    }
    out[j][0] = merged;
  }
  return SectionedAnnulus(ann.period(), std::move(out));
}

SectionedAnnulus step2_position_sections(const Cylinder& c, const SectionedAnnulus& ann) {
  require_constant(c, "step 2");
  require_single(ann, "step 2");
  auto out = single_sections(ann.size());
  const double k = c.k();
  for (std::size_t j = 0; j < ann.size(); ++j) {
    const double t = ann.t(j);
    const Subsection& part = ann.section(j)[0];
    Subsection placed{part.lo, part.hi, SubsectionType::kAB};
    switch (c.kind()) {
      case CurvatureKind::kHyperbolic:
        if (part.lo != -part.hi) {
          const double w = std::asinh(k * c.measure(t, part.lo, part.hi) / 2.0) / k;
          placed = {-w, w, SubsectionType::kAB};
        }
        break;
      case CurvatureKind::kFlat: {
        const double half = 0.5 * (part.hi - part.lo);
        placed = {-half, half, SubsectionType::kAB};
        break;
      }
      case CurvatureKind::kSpherical:
        if (part.lo != c.a()) {
          try {
            placed = {c.a(), c.endpoint_for_measure(t, c.a(), c.measure(t, part.lo, part.hi), true),
                      SubsectionType::kAB};
          } catch (const Error& e) {
            throw Error(ErrorKind::kAreaInfeasible, std::string("step 2 cannot place the section: ") + e.what());
          }
        }
        break;
      case CurvatureKind::kVariableNegative: break;
    }
    out[j][0] = placed;
  }
  return SectionedAnnulus(ann.period(), std::move(out));
}

AveragedAnnulus step3_average_widths(const Cylinder& c, const SectionedAnnulus& ann, double caps_slack) {
  require_constant(c, "step 3");
  require_single(ann, "step 3");
  const double area_value = sectioned_area(c, ann);
  const double width = extremal_width(c, area_value);
  TypeAAnnulus result = extremal_annulus(c, area_value);

  // Jensen: the constant-width annulus has the smaller directional capacity.
  const double before = caps_directional(c, ann);
  const double after = c.length() / c.resistance(0.0, result.a1(0.0), result.a2(0.0));
  if (after > before * (1.0 + caps_slack)) {
    throw Error(ErrorKind::kPostcondition,
                "averaging raised caps from " + number(before) + " to " + number(after));
  }
  return {std::move(result), width};
}

ComparisonResult step2_variable_compare(const Cylinder& c, const SectionedAnnulus& ann) {
  if (c.kind() != CurvatureKind::kVariableNegative) {
    throw Error(ErrorKind::kUnsupported, "comparison step needs a variable-negative cylinder");
  }
  require_single(ann, "comparison step");
  const double k1 = c.k();
  Cylinder comparison(c.length(), c.a(), c.b(), CurvatureModel::hyperbolic(k1), c.quadrature());
  auto out = single_sections(ann.size());
  std::vector<double> widths(ann.size());
  std::vector<double> margins(ann.size());
  for (std::size_t j = 0; j < ann.size(); ++j) {
    const double t = ann.t(j);
    const Subsection& part = ann.section(j)[0];
    const double measure = c.measure(t, part.lo, part.hi);
    const double w = std::asinh(k1 * measure / 2.0) / k1;
    out[j][0] = {-w, w, SubsectionType::kAB};
    widths[j] = w;

    const double kept = comparison.measure(t, -w, w);
    if (std::abs(kept - measure) > 1e-12 * measure) {
      throw Error(ErrorKind::kPostcondition, "comparison section changed the measure at t = " + number(t));
    }
    // 2/k1 arctan(k1 I / 2) equals the integral of 1/cosh(k1 s) over ]-W, W[.
    const double comparison_resistance = comparison.resistance(t, -w, w);
    const double original_resistance = c.resistance(t, part.lo, part.hi);
    margins[j] = comparison_resistance - original_resistance;
    if (margins[j] < -1e-12 * comparison_resistance) {
      throw Error(ErrorKind::kPostcondition,
                  "comparison inequality fails at t = " + number(t) + " by " + number(-margins[j]));
    }
  }
  return {std::move(comparison), SectionedAnnulus(ann.period(), std::move(out)), std::move(widths),
          std::move(margins)};
}

double arctan_chain_margin(double k, double a1, double a2) {
  const double rhs = std::atan((std::sinh(k * a2) - std::sinh(k * a1)) / 2.0);
  const double lhs = std::atan(std::exp(k * a2)) - std::atan(std::exp(k * a1));
  return rhs - lhs;
}

SymmetrizationTrace run_pipeline(const Cylinder& c, const SectionedAnnulus& ann, const PipelineOptions& opts) {
  SymmetrizationTrace trace;
  trace.stages.push_back(snapshot("A0 input", c, ann));
  SectionedAnnulus merged = step1_merge_subsections(c, ann);
  trace.stages.push_back(snapshot("A1 merged", c, merged));

  const Cylinder* working = &c;
  SectionedAnnulus current = merged;
  std::optional<Cylinder> comparison_cylinder;
  if (c.kind() == CurvatureKind::kVariableNegative) {
    ComparisonResult cmp = step2_variable_compare(c, merged);
    comparison_cylinder.emplace(cmp.cylinder);
    working = &*comparison_cylinder;
    current = std::move(cmp.annulus);
    trace.stages.push_back(snapshot("A2 comparison", *working, current));
  }
  current = step2_position_sections(*working, current);
  trace.stages.push_back(snapshot("A2 positioned", *working, current));

  AveragedAnnulus averaged = step3_average_widths(*working, current, opts.caps_slack);
  // The extremal annulus may reach past b on the chart, so no band validation here.
  auto constant = single_sections(current.size());
  for (auto& parts : constant) parts[0] = {averaged.annulus.a1(0.0), averaged.annulus.a2(0.0), SubsectionType::kAB};
  SectionedAnnulus final_sections(current.period(), std::move(constant));
  trace.stages.push_back(snapshot("A3 averaged", *working, final_sections));

  const double area0 = trace.stages.front().area;
  trace.final_width = averaged.width;
  trace.final_caps = trace.stages.back().caps;
  trace.closed_form_bound = area_lower_bound(c, area0);
  trace.max_caps_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace.stages.size(); ++i) {
    trace.area_drift = std::max(trace.area_drift, std::abs(trace.stages[i].area - area0) / area0);
    if (i > 0) {
      trace.max_caps_increase =
          std::max(trace.max_caps_increase, trace.stages[i].caps - trace.stages[i - 1].caps);
    }
  }
  return trace;
}

SymmetrizationTrace run_pipeline(const Cylinder& c, const TypeAAnnulus& ann, const PipelineOptions& opts) {
  return run_pipeline(c, sample_sections(c, ann, opts.sections), opts);
}

}  // namespace cylcap
