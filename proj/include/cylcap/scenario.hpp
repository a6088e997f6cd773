#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cylcap/annulus.hpp"
#include "cylcap/geometry.hpp"
#include "cylcap/oracle.hpp"
#include "cylcap/profiles.hpp"
#include "cylcap/quadrature.hpp"

namespace cylcap {

struct CylinderConfig {
  std::string kind = "hyperbolic";  // hyperbolic | flat | spherical | variable
  double k = 1.0;
  std::string family;               // variable only, see profiles.hpp
  ProfileParams params;
  double length = 1.0;
  double a = -1.0;
  double b = 1.0;
};

struct AnnulusConfig {
  enum class Source { kFixture, kRandom, kExtremal };
  Source source = Source::kRandom;
  nlohmann::json fixture;      // kFixture
  std::uint64_t seed = 0;      // kRandom
  double roughness = 0.1;      // kRandom
  double area = 0.0;           // kExtremal
};

struct SweepConfig {
  std::string parameter;       // area | roughness | pinching
  std::vector<double> values;
  bool oracle = false;
};

struct OutputConfig {
  std::string path;            // empty: stdout
  std::string format;           // json | csv; empty: csv for sweeps, json otherwise
  std::string field_path;      // oracle minimizer dump, optional
  int samples = 0;             // integrand samples in bound reports
  bool sections = false;       // per-section data in trace JSON
};

struct ScenarioConfig {
  CylinderConfig cylinder;
  AnnulusConfig annulus;
  std::string task;            // optional: bounds | symmetrize | oracle | verify | sweep
  QuadratureSpec quadrature;
  GridSpec grid;
  SolverOptions solver;
  int sections = 256;
  std::optional<SweepConfig> sweep;
  OutputConfig output;
};

/// Parses a scenario document. Throws Error(kConfig) naming the line of a
/// syntax error or the offending field, e.g. "field cylinder.band: ...".
/// Relative fixture paths resolve against `base_dir`.
ScenarioConfig parse_scenario(std::string_view text, const std::string& base_dir = ".");
ScenarioConfig load_scenario(const std::string& path);

Cylinder build_cylinder(const ScenarioConfig& cfg);
/// Builds and validates the annulus on c; invalid geometry throws
/// Error(kInvalidAnnulus).
TypeAAnnulus build_annulus(const ScenarioConfig& cfg, const Cylinder& c);

}  // namespace cylcap
