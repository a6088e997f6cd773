#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cylcap {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  kDomain,            // point or argument outside the admissible domain
  kSingularDomain,    // spherical chart at or beyond |s| = pi/(2k)
  kInvalidAnnulus,    // boundary curves leave the band or cross
  kInvalidInput,      // malformed sections, missing ab subsection, bad counts
  kAreaInfeasible,    // no extremal annulus exists for the requested area
  kGeometryOverflow,  // a merged subsection would leave the band
  kUnsupported,       // operation not available for this curvature model
  kInvalidModel,      // variable profile fails its declared pinching
  kSolverFailure,     // iterative solver did not converge
  kShapeMismatch,     // grid function does not match the solver grid
  kConfig,            // scenario file could not be parsed
  kPostcondition,     // a verified inequality failed beyond its slack
};

/// Stable identifier used in JSON error documents, e.g. "area-infeasible".
std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cylcap
