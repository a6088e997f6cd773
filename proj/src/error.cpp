#include "cylcap/error.hpp"

namespace cylcap {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kSingularDomain: return "singular-domain";
    case ErrorKind::kInvalidAnnulus: return "invalid-annulus";
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kAreaInfeasible: return "area-infeasible";
    case ErrorKind::kGeometryOverflow: return "geometry-overflow";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kInvalidModel: return "invalid-model";
    case ErrorKind::kSolverFailure: return "solver-failure";
    case ErrorKind::kShapeMismatch: return "shape-mismatch";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kPostcondition: return "postcondition";
  }
  return "unknown";
}

}  // namespace cylcap
