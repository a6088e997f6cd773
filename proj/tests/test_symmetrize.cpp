#include <doctest.h>

#include <cmath>
#include <vector>

#include "cylcap/bounds.hpp"
#include "cylcap/profiles.hpp"
#include "cylcap/symmetrize.hpp"
#include "reference.hpp"
#include "support.hpp"

using namespace cylcap;
using support::thrown;

namespace {

using Parts = std::vector<Subsection>;
constexpr SubsectionType AA = SubsectionType::kAA;
constexpr SubsectionType AB = SubsectionType::kAB;

Cylinder hyp(double a = -1.5, double b = 1.5) { return Cylinder(1.0, a, b, CurvatureModel::hyperbolic(1.0)); }
Cylinder flat() { return Cylinder(1.0, -1.0, 1.0, CurvatureModel::flat()); }
Cylinder sph() { return Cylinder(1.0, -1.2, 0.3, CurvatureModel::spherical(1.0)); }
Cylinder variable(const std::string& family, const ProfileParams& params, double a = -0.8, double b = 0.6) {
  return Cylinder(1.0, a, b, CurvatureModel::variable(make_profile(family, params, 1.0)));
}

SectionedAnnulus one(Parts parts) { return SectionedAnnulus(1.0, {std::move(parts)}); }

Subsection only(const SectionedAnnulus& ann, std::size_t j = 0) {
  REQUIRE(ann.section(j).size() == 1);
  return ann.section(j)[0];
}

}  // namespace

TEST_SUITE("symmetrize") {

TEST_CASE("merging two flat ab subsections keeps the total length") {
  const Subsection m = only(step1_merge_subsections(flat(), one({{0.0, 0.1, AB}, {0.2, 0.4, AB}})));
  CHECK(m.lo == 0.0);
  CHECK(m.hi == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(m.type == AB);
}

TEST_CASE("hyperbolic merge preserves the cosh measure") {
  const Subsection m = only(step1_merge_subsections(hyp(), one({{0.0, 0.2, AB}, {0.3, 0.4, AB}})));
  CHECK(m.lo == 0.0);
  const long double target = std::sinh(0.2L) + std::sinh(0.4L) - std::sinh(0.3L);
  CHECK(ref::rel(std::sinh(m.hi), static_cast<double>(target)) < 1e-14);
}

TEST_CASE("mixed merges grow the ab subsection toward the aa one") {
  const Subsection left_aa = only(step1_merge_subsections(flat(), one({{0.0, 0.1, AA}, {0.2, 0.4, AB}})));
  CHECK(left_aa.lo == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(left_aa.hi == 0.4);
  CHECK(left_aa.type == AB);

  const Subsection right_aa = only(step1_merge_subsections(flat(), one({{0.0, 0.1, AB}, {0.2, 0.4, AA}})));
  CHECK(right_aa.lo == 0.0);
  CHECK(right_aa.hi == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(right_aa.type == AB);

  const Subsection three =
      only(step1_merge_subsections(flat(), one({{-0.9, -0.8, AA}, {-0.5, -0.3, AA}, {0.0, 0.2, AB}})));
  CHECK(three.hi == 0.2);
  CHECK(three.lo == doctest::Approx(-0.3).epsilon(1e-14));
}

TEST_CASE("merging preserves measure and lowers section capacities") {
  for (const Cylinder& c : {hyp(), flat(), sph()}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const SectionedAnnulus ann = random_sectioned_annulus(c, seed, 24, 4);
      const SectionedAnnulus merged = step1_merge_subsections(c, ann);
      CHECK(merged.single_subsection());
      for (std::size_t j = 0; j < ann.size(); ++j) {
        double before_measure = 0.0;
        for (const Subsection& p : ann.section(j)) before_measure += c.measure(ann.t(j), p.lo, p.hi);
        const Subsection m = only(merged, j);
        CHECK(ref::rel(c.measure(ann.t(j), m.lo, m.hi), before_measure) < 1e-12);
        CHECK(m.lo >= c.a());
        CHECK(m.hi <= c.b());
        CHECK(section_caps(c, ann.t(j), merged.section(j)) <=
              section_caps(c, ann.t(j), ann.section(j)) * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("positioning examples") {
  {
    const Subsection p = only(step2_position_sections(hyp(), one({{0.0, 0.6, AB}})));
    const double w = std::asinh(std::sinh(0.6) / 2.0);
    CHECK(p.lo == doctest::Approx(-w).epsilon(1e-14));
    CHECK(p.hi == doctest::Approx(w).epsilon(1e-14));
    CHECK(1.0 / hyp().resistance(0.0, -w, w) < 1.0 / hyp().resistance(0.0, 0.0, 0.6));
  }
  {
    const Subsection p = only(step2_position_sections(flat(), one({{0.1, 0.4, AB}})));
    CHECK(p.lo == doctest::Approx(-0.15).epsilon(1e-14));
    CHECK(p.hi == doctest::Approx(0.15).epsilon(1e-14));
  }
  {
    const Cylinder c = sph();
    const Subsection p = only(step2_position_sections(c, one({{-0.5, 0.0, AB}})));
    CHECK(p.lo == c.a());
    const double w = std::asin(std::sin(-1.2) + std::sin(0.5));
    CHECK(p.hi == doctest::Approx(w).epsilon(1e-13));
    CHECK(c.resistance(0.0, p.lo, p.hi) > c.resistance(0.0, -0.5, 0.0));
  }
  const Subsection fixed = only(step2_position_sections(hyp(), one({{-0.3, 0.3, AB}})));
  CHECK(fixed.lo == -0.3);
  CHECK(fixed.hi == 0.3);
  CHECK(thrown([] { step2_position_sections(flat(), one({{0.0, 0.1, AB}, {0.2, 0.3, AB}})); }) ==
        ErrorKind::kInvalidInput);
  CHECK(thrown([] {
          step2_position_sections(variable("cosh", {{"k2", 1.0}}), one({{0.0, 0.1, AB}}));
        }) == ErrorKind::kUnsupported);
}

TEST_CASE("averaging: harmonic mean against arithmetic mean") {
  const Cylinder c = flat();
  const SectionedAnnulus ann(1.0, {Parts{{-0.1, 0.1, AB}}, Parts{{-0.3, 0.3, AB}}});
  const AveragedAnnulus avg = step3_average_widths(c, ann);
  CHECK(avg.width == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(avg.annulus.a1(0.2) == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(avg.annulus.a2(0.7) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(caps_directional(c, ann) == doctest::Approx((5.0 + 1.0 / 0.6) / 2.0).epsilon(1e-14));
  CHECK(caps_directional(c, avg.annulus) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("averaging never raises the capacity") {
  ref::Uniform draw(31);
  for (const Cylinder& c : {hyp(), sph()}) {
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 32;
      std::vector<std::vector<Subsection>> sections(n);
      for (auto& parts : sections) {
        if (c.kind() == CurvatureKind::kHyperbolic) {
          const double w = draw(0.05, 1.4);
          parts = {{-w, w, AB}};
        } else {
          parts = {{c.a(), draw(c.a() + 0.05, c.b()), AB}};
        }
      }
      const SectionedAnnulus ann(1.0, sections);
      const double before = caps_directional(c, ann);
      const AveragedAnnulus avg = step3_average_widths(c, ann);
      const double after = c.length() / c.resistance(0.0, avg.annulus.a1(0.0), avg.annulus.a2(0.0));
      CHECK(after <= before * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("averaging reports a violated slack") {
  const Cylinder c = flat();
  const SectionedAnnulus ann(1.0, {Parts{{-0.2, 0.2, AB}}});
  CHECK_FALSE(thrown([&] { step3_average_widths(c, ann); }));
  CHECK(thrown([&] { step3_average_widths(c, ann, -0.5); }) == ErrorKind::kPostcondition);
}

TEST_CASE("arctan chain margin") {
  auto direct = [](long double k, long double a1, long double a2) {
    return std::atan((std::sinh(k * a2) - std::sinh(k * a1)) / 2.0L) -
           (std::atan(std::exp(k * a2)) - std::atan(std::exp(k * a1)));
  };
  CHECK(arctan_chain_margin(1.0, -0.8, 0.1) == doctest::Approx(static_cast<double>(direct(1.0L, -0.8L, 0.1L))));
  CHECK(arctan_chain_margin(1.0, -0.8, 0.1) > 0.0);
  CHECK(std::abs(arctan_chain_margin(1.0, -0.4, 0.4)) < 1e-15);
  for (double a1 = -1.5; a1 < 1.5; a1 += 0.1) {
    for (double a2 = a1 + 0.05; a2 < 1.5; a2 += 0.1) {
      CHECK(arctan_chain_margin(0.7, a1, a2) >= -1e-15);
    }
  }
}

TEST_CASE("equal pinching constants reduce the margin to the arctan chain") {
  const Cylinder c = variable("cosh", {{"k2", 1.0}});
  const Cylinder h = hyp(-0.8, 0.6);
  const SectionedAnnulus ann(1.0, {Parts{{-0.8, 0.1, AB}}, Parts{{-0.2, 0.5, AB}}, Parts{{-0.3, 0.3, AB}}});
  const ComparisonResult cmp = step2_variable_compare(c, ann);
  REQUIRE(cmp.margins.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    const Subsection p = only(ann, j);
    // The margin reduces to the arctan chain, scaled by 2/k.
    CHECK(cmp.margins[j] == doctest::Approx(2.0 * arctan_chain_margin(1.0, p.lo, p.hi)).epsilon(1e-10));
    CHECK(ref::rel(h.measure(0.0, -cmp.half_widths[j], cmp.half_widths[j]), h.measure(0.0, p.lo, p.hi)) < 1e-12);
  }
  CHECK(std::abs(cmp.margins[2]) < 1e-12);
  CHECK(cmp.cylinder.kind() == CurvatureKind::kHyperbolic);
  CHECK(cmp.cylinder.k() == 1.0);
}

TEST_CASE("comparison against a steeper profile has positive margins") {
  const Cylinder c = variable("cosh", {{"k1", 1.0}, {"k2", 1.6}});
  const SectionedAnnulus ann = step1_merge_subsections(c, random_sectioned_annulus(c, 2, 40, 3));
  const ComparisonResult cmp = step2_variable_compare(c, ann);
  for (double m : cmp.margins) CHECK(m > 0.0);
  CHECK(thrown([] { step2_variable_compare(hyp(), one({{0.0, 0.1, AB}})); }) == ErrorKind::kUnsupported);
}

TEST_CASE("the extremal annulus is a fixed point") {
  for (const Cylinder& c : {hyp(), flat(), sph()}) {
    const TypeAAnnulus ext = extremal_annulus(c, 0.6);
    const SymmetrizationTrace trace = run_pipeline(c, ext, {64});
    CHECK(trace.area_drift < 1e-12);
    CHECK(ref::rel(trace.final_caps, trace.stages.front().caps) < 1e-12);
    CHECK(ref::rel(trace.final_caps, trace.closed_form_bound) < 1e-12);
    CHECK(trace.stages.size() == 4);
  }
}

TEST_CASE("the end state depends on the area only") {
  const Cylinder c = flat();
  const TypeAAnnulus straight(1.0, BoundaryCurve::constant(0.0), BoundaryCurve::constant(0.5));
  const TypeAAnnulus wavy(1.0, BoundaryCurve::fourier({1.0, -0.2, {0.1}, {}}),
                          BoundaryCurve::fourier({1.0, 0.3, {}, {0.15}}));
  const SymmetrizationTrace t1 = run_pipeline(c, straight, {128});
  const SymmetrizationTrace t2 = run_pipeline(c, wavy, {128});
  CHECK(t1.final_caps == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(t2.final_caps == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(t2.stages.front().caps > t2.final_caps);
}

TEST_CASE("random annuli end at the closed-form bound") {
  for (const Cylinder& c : {hyp(), flat(), sph()}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const SymmetrizationTrace trace = run_pipeline(c, random_annulus(c, seed, 0.2), {128});
      CHECK(ref::rel(trace.final_caps, area_lower_bound(c, trace.stages.front().area)) < 1e-10);
      CHECK(trace.max_caps_increase <= 1e-9 * trace.stages.front().caps);
      CHECK(trace.area_drift < 1e-10);
    }
  }
}

TEST_CASE("sectioned inputs run through every stage") {
  for (const Cylinder& c : {hyp(), flat(), sph()}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const SymmetrizationTrace trace = run_pipeline(c, random_sectioned_annulus(c, seed, 64, 4));
      CHECK(trace.max_caps_increase <= 1e-9 * trace.stages.front().caps);
      CHECK(trace.area_drift < 1e-10);
      CHECK(ref::rel(trace.final_caps, trace.closed_form_bound) < 1e-10);
    }
  }
}

TEST_CASE("variable curvature switches to the comparison cylinder") {
  const Cylinder c = variable("cosh_pinched", {{"k1", 1.0}, {"k2", 1.5}, {"blend", 0.5}});
  const SymmetrizationTrace trace = run_pipeline(c, random_sectioned_annulus(c, 9, 64, 3));
  REQUIRE(trace.stages.size() == 5);
  CHECK(trace.stages[2].label == "A2 comparison");
  CHECK(trace.stages[2].cylinder.kind() == CurvatureKind::kHyperbolic);
  CHECK(trace.max_caps_increase <= 1e-9 * trace.stages.front().caps);
  CHECK(trace.area_drift < 1e-10);
  const Cylinder k1(1.0, -0.8, 0.6, CurvatureModel::hyperbolic(1.0));
  CHECK(ref::rel(trace.final_caps, lower_bound_negative(k1, trace.stages.front().area)) < 1e-10);
}

}  // TEST_SUITE
