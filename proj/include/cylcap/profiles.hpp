#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cylcap/geometry.hpp"

namespace cylcap {

/// Named analytic families of pinched negative-curvature warp profiles.
///
///   cosh          {k2, k1 = k2}        h = cosh(k2 s); curvature -k2^2, declared pinching [k1, k2]
///   cosh_mix      {k1, k2, weight}     h = (1 - w) cosh(k1 s) + w cosh(k2 s)
///   cosh_pinched  {k1, k2, blend}      same mix with w(t) = blend (1 + sin(2 pi t / l)) / 2
///
/// Every family satisfies h(t, 0) = 1, dh/ds(t, 0) = 0 and
/// cosh(k1 s) <= h <= cosh(k2 s); curvature -h_ss/h is a convex combination
/// of -k1^2 and -k2^2.
using ProfileParams = std::map<std::string, double, std::less<>>;

std::vector<std::string> profile_families();

/// Throws Error(kInvalidModel) on unknown families or bad parameters.
VariableProfile make_profile(std::string_view family, const ProfileParams& params, double period);

}  // namespace cylcap
