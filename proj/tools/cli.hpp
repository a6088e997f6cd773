#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cylcap/bounds.hpp"
#include "cylcap/error.hpp"
#include "cylcap/oracle.hpp"
#include "cylcap/scenario.hpp"
#include "cylcap/serialize.hpp"
#include "cylcap/symmetrize.hpp"

namespace cylcap::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInfeasible = 2,
  kSolver = 3,
  kViolation = 4,
};

int exit_code_for(ErrorKind kind);

/// lhs <= rhs + tolerance.
struct Assertion {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerificationReport {
  BoundReport bounds;
  CapacityEstimate oracle;
  SymmetrizationTrace trace;
  std::vector<Assertion> assertions;

  bool passed() const;
};

struct SweepRow {
  int index = 0;
  double value = 0.0;
  std::optional<double> area;
  std::optional<double> area_bound;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<double> oracle;
  std::optional<double> oracle_error;
  std::optional<double> margin;  // pinching sweeps: smallest comparison margin over the sections
  std::string status = "ok";     // "ok" or an error kind
  std::string message;
};

/// Bounds for the configured annulus. Variable-curvature cylinders get the
/// directional lower bound only.
BoundReport cmd_bounds(const ScenarioConfig& cfg);
SymmetrizationTrace cmd_symmetrize(const ScenarioConfig& cfg);
CapacityEstimate cmd_oracle(const ScenarioConfig& cfg);
VerificationReport cmd_verify(const ScenarioConfig& cfg);
/// One row per sweep value, in input order. Failures are recorded in the row.
std::vector<SweepRow> cmd_sweep(const ScenarioConfig& cfg);

Json verification_json(const VerificationReport& report);
std::string verification_csv(const VerificationReport& report);
Json sweep_json(const std::vector<SweepRow>& rows, const std::string& parameter);
std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& parameter);

/// Full command line, argv[0] included. Reports go to `out` (or --out),
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cylcap::cli
