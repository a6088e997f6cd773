#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "cylcap/geometry.hpp"

namespace cylcap {

/// A periodic boundary curve t -> s. Fourier and sample-based curves carry
/// analytic derivatives; callables may supply one or fall back to central
/// differences.
class BoundaryCurve {
 public:
  struct Fourier {
    double period = 1.0;
    double mean = 0.0;
    std::vector<double> cos_terms;  // coefficient of cos(2 pi n t / period), n = 1, 2, ...
    std::vector<double> sin_terms;
  };
  struct Samples {
    double period = 1.0;
    std::vector<double> t;       // sorted knots in [0, period)
    std::vector<double> values;  // periodic piecewise-linear interpolation
  };
  struct Callable {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::vector<double> breakpoints;
  };

  static BoundaryCurve constant(double value, double period = 1.0);
  static BoundaryCurve fourier(Fourier series);
  /// Equispaced knots j * period / n.
  static BoundaryCurve samples(double period, std::vector<double> values);
  static BoundaryCurve samples(Samples knots);
  static BoundaryCurve callable(std::function<double(double)> f, std::function<double(double)> df = {},
                                std::vector<double> breakpoints = {});

  double operator()(double t) const;
  double derivative(double t) const;
  /// Kinks of the curve inside [0, period).
  std::vector<double> breakpoints() const;

  const std::variant<Fourier, Samples, Callable>& representation() const { return rep_; }

 private:
  explicit BoundaryCurve(std::variant<Fourier, Samples, Callable> rep) : rep_(std::move(rep)) {}

  std::variant<Fourier, Samples, Callable> rep_;
};

/// Annulus {(t, s) : a1(t) < s < a2(t)}: one subsection per section.
class TypeAAnnulus {
 public:
  TypeAAnnulus(double period, BoundaryCurve lower, BoundaryCurve upper, std::vector<double> breakpoints = {});

  double period() const { return period_; }
  const BoundaryCurve& lower() const { return lower_; }
  const BoundaryCurve& upper() const { return upper_; }
  double a1(double t) const { return lower_(t); }
  double a2(double t) const { return upper_(t); }
  double a1_prime(double t) const { return lower_.derivative(t); }
  double a2_prime(double t) const { return upper_.derivative(t); }

  /// Declared breakpoints only.
  const std::vector<double>& declared_breakpoints() const { return declared_; }
  /// Sorted, deduplicated breakpoints of both curves and the declared ones, in [0, period).
  std::vector<double> breakpoints() const;
  /// 0, breakpoints..., period: the smooth pieces for t-integrals.
  std::vector<double> cuts() const;

  /// Throws Error(kInvalidAnnulus) unless a <= a1 < a2 <= b on `samples`
  /// equispaced t plus every breakpoint.
  void validate(const Cylinder& c, int samples = 1024) const;

 private:
  double period_;
  BoundaryCurve lower_;
  BoundaryCurve upper_;
  std::vector<double> declared_;
};

/// Boundary-condition type of a subsection: aa carries equal values on both
/// ends (no directional capacity), ab carries 0 and 1.
enum class SubsectionType { kAA, kAB };

struct Subsection {
  double lo = 0.0;
  double hi = 0.0;
  SubsectionType type = SubsectionType::kAB;
};

/// Per-section subsection lists on the equispaced grid t_j = j * period / n.
class SectionedAnnulus {
 public:
  /// Validates ordering (lo < hi < next lo) and that every section has an ab
  /// subsection; throws Error(kInvalidInput) otherwise.
  SectionedAnnulus(double period, std::vector<std::vector<Subsection>> sections);

  double period() const { return period_; }
  std::size_t size() const { return sections_.size(); }
  double spacing() const { return period_ / static_cast<double>(sections_.size()); }
  double t(std::size_t j) const { return spacing() * static_cast<double>(j); }
  std::span<const Subsection> section(std::size_t j) const { return sections_[j]; }
  const std::vector<std::vector<Subsection>>& sections() const { return sections_; }
  bool single_subsection() const;

 private:
  double period_;
  std::vector<std::vector<Subsection>> sections_;
};

/// n equispaced sections of a type-A annulus, each ]a1, a2[ of type ab.
SectionedAnnulus sample_sections(const Cylinder& c, const TypeAAnnulus& ann, int n);

/// Seeded smooth annulus: a constant-width core plus a three-mode Fourier
/// perturbation of amplitude ~roughness, clamped to stay in the band and
/// not cross.
TypeAAnnulus random_annulus(const Cylinder& c, std::uint64_t seed, double roughness);

/// Seeded sectioned annulus with 1..max_parts subsections per section and
/// random aa/ab tags (at least one ab per section), all inside the band.
SectionedAnnulus random_sectioned_annulus(const Cylinder& c, std::uint64_t seed, int sections, int max_parts);

/// Riemann (periodic rectangle) area of a sectioned annulus on c.
double sectioned_area(const Cylinder& c, const SectionedAnnulus& ann);

/// Area of a type-A annulus: the t-integral of the section measures.
double area(const Cylinder& c, const TypeAAnnulus& ann, const QuadratureSpec& quad = {});

}  // namespace cylcap
