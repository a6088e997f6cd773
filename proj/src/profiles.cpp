#include "cylcap/profiles.hpp"

#include <cmath>
#include <numbers>

#include "cylcap/error.hpp"

namespace cylcap {

namespace {

double param(const ProfileParams& params, std::string_view family, std::string_view key) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw Error(ErrorKind::kInvalidModel,
                std::string(family) + " profile needs parameter '" + std::string(key) + "'");
  }
  return it->second;
}

double param_or(const ProfileParams& params, std::string_view key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

// (1 - w) cosh(k1 s) + w cosh(k2 s) with a t-dependent weight.
template <class Weight>
VariableProfile mix(std::string name, double k1, double k2, Weight weight) {
  VariableProfile p;
  p.name = std::move(name);
  p.k1 = k1;
  p.k2 = k2;
  p.h = [=](double t, double s) {
    const double w = weight(t);
    return (1.0 - w) * std::cosh(k1 * s) + w * std::cosh(k2 * s);
  };
  p.dh_ds = [=](double t, double s) {
    const double w = weight(t);
    return (1.0 - w) * k1 * std::sinh(k1 * s) + w * k2 * std::sinh(k2 * s);
  };
  return p;
}

}  // namespace

std::vector<std::string> profile_families() { return {"cosh", "cosh_mix", "cosh_pinched"}; }

VariableProfile make_profile(std::string_view family, const ProfileParams& params, double period) {
  if (family == "cosh") {
    const double k2 = param(params, family, "k2");
    const double k1 = param_or(params, "k1", k2);
    VariableProfile p;
    p.name = "cosh";
    p.k1 = k1;
    p.k2 = k2;
    p.h = [k2](double, double s) { return std::cosh(k2 * s); };
    p.dh_ds = [k2](double, double s) { return k2 * std::sinh(k2 * s); };
    return p;
  }
  if (family == "cosh_mix") {
    const double w = param(params, family, "weight");
    if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorKind::kInvalidModel, "cosh_mix weight must lie in [0, 1]");
    return mix("cosh_mix", param(params, family, "k1"), param(params, family, "k2"),
               [w](double) { return w; });
  }
  if (family == "cosh_pinched") {
    const double blend = param(params, family, "blend");
    if (!(blend >= 0.0 && blend <= 1.0)) {
      throw Error(ErrorKind::kInvalidModel, "cosh_pinched blend must lie in [0, 1]");
    }
    if (!(period > 0.0)) throw Error(ErrorKind::kInvalidModel, "cosh_pinched needs a positive period");
    const double omega = 2.0 * std::numbers::pi / period;
    return mix("cosh_pinched", param(params, family, "k1"), param(params, family, "k2"),
               [=](double t) { return 0.5 * blend * (1.0 + std::sin(omega * t)); });
  }
  throw Error(ErrorKind::kInvalidModel, "unknown profile family '" + std::string(family) + "'");
}

}  // namespace cylcap
