#pragma once

#include <string>
#include <vector>

#include "cylcap/annulus.hpp"
#include "cylcap/geometry.hpp"

namespace cylcap {

/// Snapshot of one stage of the rearrangement.
struct TraceStage {
  std::string label;
  Cylinder cylinder;  // the comparison cylinder once the variable route has switched over
  SectionedAnnulus annulus;
  double area = 0.0;
  double caps = 0.0;
};

struct SymmetrizationTrace {
  std::vector<TraceStage> stages;
  double final_width = 0.0;   // see extremal_width()
  double final_caps = 0.0;
  double closed_form_bound = 0.0; // area-based closed form for the initial area
  double area_drift = 0.0;    // max |area_i - area_0| / area_0
  double max_caps_increase = 0.0;  // max (caps_{i+1} - caps_i), <= 0 for a monotone trace
};

struct PipelineOptions {
  int sections = 256;       // section grid for type-A inputs
  double caps_slack = 1e-9; // relative slack on the verified caps inequalities
};

/// Merges every section into one subsection, sweeping left to right and
/// elongating the surviving subsection so the h-measure of each merged pair
/// is preserved. Same type: the left one grows right; mixed: the ab one grows
/// toward the aa one.
SectionedAnnulus step1_merge_subsections(const Cylinder& c, const SectionedAnnulus& ann);

/// Constant curvature: replaces ]a1, a2[ by the section of equal h-measure
/// that minimizes caps: ]-W, W[ for K < 0, ]a, W[ for K > 0, a centered
/// interval for K = 0.
SectionedAnnulus step2_position_sections(const Cylinder& c, const SectionedAnnulus& ann);

struct AveragedAnnulus {
  TypeAAnnulus annulus;
  double width = 0.0;  // see extremal_width()
};

/// Replaces positioned sections by the constant-width annulus of the same
/// area. Throws Error(kPostcondition) if its caps exceeds the input caps.
AveragedAnnulus step3_average_widths(const Cylinder& c, const SectionedAnnulus& ann, double caps_slack = 1e-9);

struct ComparisonResult {
  Cylinder cylinder;              // constant curvature -k1^2, same length and band
  SectionedAnnulus annulus;       // symmetric sections ]-W(t), W(t)[
  std::vector<double> half_widths;
  /// Per section: integral of 1/cosh(k1 s) over ]-W, W[ minus the integral
  /// of 1/h over the original section. Non-negative.
  std::vector<double> margins;
};

/// Variable negative curvature: builds the comparison annulus of equal
/// section measures on the constant curvature -k1^2 cylinder.
ComparisonResult step2_variable_compare(const Cylinder& c, const SectionedAnnulus& ann);

/// arctan((sinh(k a2) - sinh(k a1)) / 2) - (arctan(e^{k a2}) - arctan(e^{k a1})).
double arctan_chain_margin(double k, double a1, double a2);

SymmetrizationTrace run_pipeline(const Cylinder& c, const SectionedAnnulus& ann, const PipelineOptions& opts = {});
SymmetrizationTrace run_pipeline(const Cylinder& c, const TypeAAnnulus& ann, const PipelineOptions& opts = {});

}  // namespace cylcap
