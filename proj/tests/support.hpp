#pragma once

#include <array>
#include <complex>
#include <optional>
#include <variant>

#include "cylcap/error.hpp"
#include "cylcap/geometry.hpp"

namespace support {

/// Kind of the cylcap::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<cylcap::ErrorKind> thrown(F&& f) {
  try {
    f();
  } catch (const cylcap::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

// First fundamental form of embed at (t, s) by central differences (step 1e-5).
inline std::array<double, 3> pulled_back_metric(const cylcap::Cylinder& c, double t, double s) {
  constexpr double d = 1e-5;
  auto diff = [&](double dt, double ds) {
    const cylcap::EmbeddedPoint plus = c.embed(cylcap::FermiPoint{t + dt, s + ds});
    const cylcap::EmbeddedPoint minus = c.embed(cylcap::FermiPoint{t - dt, s - ds});
    std::array<double, 3> v{};
    if (const auto* p = std::get_if<cylcap::HalfPlanePoint>(&plus)) {
      const auto& m = std::get<cylcap::HalfPlanePoint>(minus);
      const std::complex<double> dz = (p->z - m.z) / (2.0 * d);
      v = {dz.real(), dz.imag(), 0.0};
    } else if (const auto* q = std::get_if<cylcap::SpherePoint>(&plus)) {
      const auto& m = std::get<cylcap::SpherePoint>(minus);
      for (int i = 0; i < 3; ++i) v[i] = (q->x[i] - m.x[i]) / (2.0 * d);
    } else {
      const auto& f = std::get<cylcap::FlatPoint>(plus);
      const auto& m = std::get<cylcap::FlatPoint>(minus);
      v = {(f.x[0] - m.x[0]) / (2.0 * d), (f.x[1] - m.x[1]) / (2.0 * d), 0.0};
    }
    return v;
  };
  const auto et = diff(d, 0.0);
  const auto es = diff(0.0, d);
  double factor = 1.0;
  if (c.kind() == cylcap::CurvatureKind::kHyperbolic) {
    const double y = std::get<cylcap::HalfPlanePoint>(c.embed(cylcap::FermiPoint{t, s})).z.imag();
    factor = 1.0 / (c.k() * c.k() * y * y);
  }
  auto dot = [](const std::array<double, 3>& x, const std::array<double, 3>& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
  };
  return {factor * dot(et, et), factor * dot(et, es), factor * dot(es, es)};
}

}  // namespace support
