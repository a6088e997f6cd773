#pragma once

#include <string>

#include <json.hpp>

#include "cylcap/annulus.hpp"
#include "cylcap/bounds.hpp"
#include "cylcap/oracle.hpp"
#include "cylcap/symmetrize.hpp"

namespace cylcap {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "v1";

/// 17 significant digits, "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double v);

/// JSON text with every number printed by format_number (non-finite as
/// null). Deterministic: object members keep insertion order.
std::string write_json(const Json& doc, int indent = 2);

/// Boundary curve fixture: a number (constant), {"fourier": {"mean", "cos",
/// "sin"}}, {"samples": [...]} on an equispaced grid, or {"samples": {"t",
/// "values"}}. `field` names the curve in diagnostics.
BoundaryCurve curve_from_json(const nlohmann::json& spec, double period, const std::string& field);
Json curve_to_json(const BoundaryCurve& curve);

/// {"a1": spec, "a2": spec, "breakpoints": [...]}. Throws Error(kConfig) on
/// malformed documents; geometric validity is checked by TypeAAnnulus::validate.
TypeAAnnulus annulus_from_json(const nlohmann::json& doc, double period);
Json annulus_to_json(const TypeAAnnulus& ann);

Json bound_report_json(const BoundReport& report, bool with_samples);
/// t, lower, upper integrand samples.
std::string bound_samples_csv(const BoundReport& report);

Json trace_json(const SymmetrizationTrace& trace, bool with_sections);
/// One row per subsection of every stage: stage, label, t, index, a1, a2, type.
std::string trace_csv(const SymmetrizationTrace& trace);

Json capacity_json(const CapacityEstimate& estimate);
/// nt, nu, value, iterations per refinement level.
std::string capacity_levels_csv(const CapacityEstimate& estimate);
/// t, u, s, f over the grid nodes, with s = a1 + u (a2 - a1).
std::string field_csv(const TypeAAnnulus& ann, const GridFunction& field);

/// {"schema", "error", "message", "exit_code"}.
Json error_json(const std::string& kind, const std::string& message, int exit_code);

}  // namespace cylcap
