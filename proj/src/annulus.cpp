#include "cylcap/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cylcap/error.hpp"

namespace cylcap {

namespace {

constexpr double kDiffStep = 1e-5;

double wrap(double t, double period) {
  double r = std::fmod(t, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

// Uniform draw in [lo, hi) from the top 53 bits; identical on every platform.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  double operator()(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

std::string where(double t) {
  std::ostringstream out;
  out.precision(17);
  out << "t = " << t;
  return out.str();
}

}  // namespace

BoundaryCurve BoundaryCurve::constant(double value, double period) {
  return fourier(Fourier{period, value, {}, {}});
}

BoundaryCurve BoundaryCurve::fourier(Fourier series) {
  if (!(series.period > 0.0)) throw Error(ErrorKind::kInvalidAnnulus, "Fourier curve needs a positive period");
  return BoundaryCurve(std::move(series));
}

BoundaryCurve BoundaryCurve::samples(double period, std::vector<double> values) {
  Samples knots;
  knots.period = period;
  const std::size_t n = values.size();
  knots.t.resize(n);
  for (std::size_t j = 0; j < n; ++j) knots.t[j] = period * static_cast<double>(j) / static_cast<double>(n);
  knots.values = std::move(values);
  return samples(std::move(knots));
}

BoundaryCurve BoundaryCurve::samples(Samples knots) {
  if (!(knots.period > 0.0)) throw Error(ErrorKind::kInvalidAnnulus, "sampled curve needs a positive period");
  if (knots.values.empty() || knots.t.size() != knots.values.size()) {
    throw Error(ErrorKind::kInvalidAnnulus, "sampled curve needs matching, non-empty t and values");
  }
  for (std::size_t j = 0; j < knots.t.size(); ++j) {
    if (knots.t[j] < 0.0 || knots.t[j] >= knots.period || (j > 0 && !(knots.t[j] > knots.t[j - 1]))) {
      throw Error(ErrorKind::kInvalidAnnulus, "sample knots must increase strictly inside [0, period)");
    }
  }
  return BoundaryCurve(std::move(knots));
}

BoundaryCurve BoundaryCurve::callable(std::function<double(double)> f, std::function<double(double)> df,
                                      std::vector<double> breakpoints) {
  if (!f) throw Error(ErrorKind::kInvalidAnnulus, "callable curve needs an evaluator");
  std::sort(breakpoints.begin(), breakpoints.end());
  return BoundaryCurve(Callable{std::move(f), std::move(df), std::move(breakpoints)});
}

namespace {

// Segment [t[i], t[i+1]) containing x, with wrap-around past the last knot.
struct Segment {
  double t0, t1, v0, v1;
};

Segment locate(const BoundaryCurve::Samples& s, double x) {
  const std::size_t n = s.t.size();
  if (n == 1) return {0.0, s.period, s.values[0], s.values[0]};
  auto it = std::upper_bound(s.t.begin(), s.t.end(), x);
  if (it == s.t.begin()) {
    // before the first knot: segment from the last knot (shifted back a period)
    return {s.t[n - 1] - s.period, s.t[0], s.values[n - 1], s.values[0]};
  }
  const std::size_t i = static_cast<std::size_t>(it - s.t.begin()) - 1;
  if (i + 1 == n) return {s.t[n - 1], s.t[0] + s.period, s.values[n - 1], s.values[0]};
  return {s.t[i], s.t[i + 1], s.values[i], s.values[i + 1]};
}

}  // namespace

double BoundaryCurve::operator()(double t) const {
  return std::visit(
      [t](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Fourier>) {
          const double w = 2.0 * std::numbers::pi * t / rep.period;
          double v = rep.mean;
          for (std::size_t n = 0; n < rep.cos_terms.size(); ++n) v += rep.cos_terms[n] * std::cos((n + 1.0) * w);
          for (std::size_t n = 0; n < rep.sin_terms.size(); ++n) v += rep.sin_terms[n] * std::sin((n + 1.0) * w);
          return v;
        } else if constexpr (std::is_same_v<T, Samples>) {
          const double x = wrap(t, rep.period);
          const Segment seg = locate(rep, x);
          const double lam = (x - seg.t0) / (seg.t1 - seg.t0);
          return seg.v0 + lam * (seg.v1 - seg.v0);
        } else {
          return rep.f(t);
        }
      },
      rep_);
}

double BoundaryCurve::derivative(double t) const {
  return std::visit(
      [t, this](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Fourier>) {
          const double base = 2.0 * std::numbers::pi / rep.period;
          const double w = base * t;
          double v = 0.0;
          for (std::size_t n = 0; n < rep.cos_terms.size(); ++n) {
            v -= rep.cos_terms[n] * (n + 1.0) * base * std::sin((n + 1.0) * w);
          }
          for (std::size_t n = 0; n < rep.sin_terms.size(); ++n) {
            v += rep.sin_terms[n] * (n + 1.0) * base * std::cos((n + 1.0) * w);
          }
          return v;
        } else if constexpr (std::is_same_v<T, Samples>) {
          const Segment seg = locate(rep, wrap(t, rep.period));
          return (seg.v1 - seg.v0) / (seg.t1 - seg.t0);
        } else {
          if (rep.df) return rep.df(t);
          return ((*this)(t + kDiffStep) - (*this)(t - kDiffStep)) / (2.0 * kDiffStep);
        }
      },
      rep_);
}

std::vector<double> BoundaryCurve::breakpoints() const {
  if (const auto* s = std::get_if<Samples>(&rep_)) return s->t.size() > 1 ? s->t : std::vector<double>{};
  if (const auto* c = std::get_if<Callable>(&rep_)) return c->breakpoints;
  return {};
}

TypeAAnnulus::TypeAAnnulus(double period, BoundaryCurve lower, BoundaryCurve upper, std::vector<double> breakpoints)
    : period_(period), lower_(std::move(lower)), upper_(std::move(upper)), declared_(std::move(breakpoints)) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw Error(ErrorKind::kInvalidAnnulus, "annulus period must be positive");
  }
  auto check_period = [period](const BoundaryCurve& curve) {
    std::visit(
        [period](const auto& rep) {
          using T = std::decay_t<decltype(rep)>;
          if constexpr (!std::is_same_v<T, BoundaryCurve::Callable>) {
            if (std::abs(rep.period - period) > 1e-12 * period) {
              throw Error(ErrorKind::kInvalidAnnulus, "boundary curve period differs from the cylinder length");
            }
          }
        },
        curve.representation());
  };
  check_period(lower_);
  check_period(upper_);
}

std::vector<double> TypeAAnnulus::breakpoints() const {
  std::vector<double> all;
  for (double t : lower_.breakpoints()) all.push_back(wrap(t, period_));
  for (double t : upper_.breakpoints()) all.push_back(wrap(t, period_));
  for (double t : declared_) all.push_back(wrap(t, period_));
  std::sort(all.begin(), all.end());
  std::vector<double> unique;
  for (double t : all) {
    if (t <= 1e-14 * period_) continue;  // t = 0 is always a cut
    if (unique.empty() || t - unique.back() > 1e-14 * period_) unique.push_back(t);
  }
  return unique;
}

std::vector<double> TypeAAnnulus::cuts() const {
  std::vector<double> c{0.0};
  for (double t : breakpoints()) c.push_back(t);
  c.push_back(period_);
  return c;
}

void TypeAAnnulus::validate(const Cylinder& c, int samples) const {
  if (std::abs(period_ - c.length()) > 1e-12 * c.length()) {
    throw Error(ErrorKind::kInvalidAnnulus, "annulus period differs from the cylinder length");
  }
  auto check = [&](double t) {
    const double lo = a1(t);
    const double hi = a2(t);
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw Error(ErrorKind::kInvalidAnnulus, "non-finite boundary at " + where(t));
    }
    if (!(lo < hi)) throw Error(ErrorKind::kInvalidAnnulus, "boundary curves cross (a1 >= a2) at " + where(t));
    if (lo < c.a() || hi > c.b()) throw Error(ErrorKind::kInvalidAnnulus, "annulus leaves the band at " + where(t));
  };
  for (int j = 0; j < samples; ++j) check(period_ * j / samples);
  for (double t : breakpoints()) check(t);
}

SectionedAnnulus::SectionedAnnulus(double period, std::vector<std::vector<Subsection>> sections)
    : period_(period), sections_(std::move(sections)) {
  if (!(period > 0.0)) throw Error(ErrorKind::kInvalidInput, "sectioned annulus needs a positive period");
  if (sections_.empty()) throw Error(ErrorKind::kInvalidInput, "sectioned annulus needs at least one section");
  for (std::size_t j = 0; j < sections_.size(); ++j) {
    const auto& parts = sections_[j];
    if (parts.empty()) throw Error(ErrorKind::kInvalidInput, "empty section at " + where(t(j)));
    bool has_ab = false;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (!(parts[i].lo < parts[i].hi) || !std::isfinite(parts[i].lo) || !std::isfinite(parts[i].hi)) {
        throw Error(ErrorKind::kInvalidInput, "subsection with lo >= hi at " + where(t(j)));
      }
      if (i > 0 && !(parts[i - 1].hi < parts[i].lo)) {
        throw Error(ErrorKind::kInvalidInput, "overlapping or unordered subsections at " + where(t(j)));
      }
      has_ab = has_ab || parts[i].type == SubsectionType::kAB;
    }
    if (!has_ab) {
      throw Error(ErrorKind::kInvalidInput, "section without an ab subsection at " + where(t(j)) +
                                                " (annulus would be contractible)");
    }
  }
}

bool SectionedAnnulus::single_subsection() const {
  return std::all_of(sections_.begin(), sections_.end(), [](const auto& p) { return p.size() == 1; });
}

SectionedAnnulus sample_sections(const Cylinder& c, const TypeAAnnulus& ann, int n) {
  if (n < 2) throw Error(ErrorKind::kInvalidInput, "sample_sections needs n >= 2");
  ann.validate(c);
  std::vector<std::vector<Subsection>> sections(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double t = c.length() * j / n;
    sections[static_cast<std::size_t>(j)] = {Subsection{ann.a1(t), ann.a2(t), SubsectionType::kAB}};
  }
  return SectionedAnnulus(c.length(), std::move(sections));
}

TypeAAnnulus random_annulus(const Cylinder& c, std::uint64_t seed, double roughness) {
  if (!(roughness >= 0.0)) throw Error(ErrorKind::kDomain, "roughness must be non-negative");
  Draw draw(seed);
  const double span = c.b() - c.a();
  const double half_width = span * draw(0.15, 0.35);
  const double center = draw(c.a() + half_width + 0.05 * span, c.b() - half_width - 0.05 * span);
  constexpr int kModes = 3;

  auto perturbation = [&](double room) {
    BoundaryCurve::Fourier f;
    f.period = c.length();
    double total = 0.0;
    for (int n = 1; n <= kModes; ++n) {
      f.cos_terms.push_back(roughness * draw(-1.0, 1.0) / n);
      f.sin_terms.push_back(roughness * draw(-1.0, 1.0) / n);
      total += std::abs(f.cos_terms.back()) + std::abs(f.sin_terms.back());
    }
    // sum of |coefficients| bounds the excursion
    if (total > room) {
      const double scale = room / total;
      for (double& v : f.cos_terms) v *= scale;
      for (double& v : f.sin_terms) v *= scale;
    }
    return f;
  };

  const double room_low = 0.999 * std::min(center - half_width - c.a(), 0.9 * half_width);
  const double room_high = 0.999 * std::min(c.b() - center - half_width, 0.9 * half_width);
  BoundaryCurve::Fourier lower = perturbation(room_low);
  lower.mean = center - half_width;
  BoundaryCurve::Fourier upper = perturbation(room_high);
  upper.mean = center + half_width;
  return TypeAAnnulus(c.length(), BoundaryCurve::fourier(std::move(lower)), BoundaryCurve::fourier(std::move(upper)));
}

SectionedAnnulus random_sectioned_annulus(const Cylinder& c, std::uint64_t seed, int sections, int max_parts) {
  if (sections < 1 || max_parts < 1) throw Error(ErrorKind::kInvalidInput, "need positive section and part counts");
  Draw draw(seed);
  const double span = c.b() - c.a();
  std::vector<std::vector<Subsection>> out(static_cast<std::size_t>(sections));
  for (auto& parts : out) {
    const int count = draw.integer(1, max_parts);
    // 2*count sorted cut points inside the band, kept apart by a small gap.
    std::vector<double> cuts(static_cast<std::size_t>(2 * count));
    for (double& x : cuts) x = draw(0.0, 1.0);
    std::sort(cuts.begin(), cuts.end());
    const double gap = 0.01 * span / (2.0 * count);
    const double usable = span - gap * (2.0 * count + 1.0);
    for (std::size_t i = 0; i < cuts.size(); ++i) cuts[i] = c.a() + gap * (i + 1.0) + usable * cuts[i];
    const int ab_index = draw.integer(0, count - 1);
    for (int i = 0; i < count; ++i) {
      const bool ab = i == ab_index || draw(0.0, 1.0) < 0.5;
      parts.push_back({cuts[2 * static_cast<std::size_t>(i)], cuts[2 * static_cast<std::size_t>(i) + 1],
                       ab ? SubsectionType::kAB : SubsectionType::kAA});
    }
  }
  return SectionedAnnulus(c.length(), std::move(out));
}

double sectioned_area(const Cylinder& c, const SectionedAnnulus& ann) {
  double sum = 0.0;
  for (std::size_t j = 0; j < ann.size(); ++j) {
    const double t = ann.t(j);
    for (const Subsection& part : ann.section(j)) sum += c.measure(t, part.lo, part.hi);
  }
  return sum * ann.spacing();
}

double area(const Cylinder& c, const TypeAAnnulus& ann, const QuadratureSpec& quad) {
  ann.validate(c);
  const std::vector<double> cuts = ann.cuts();
  return integrate_pieces([&](double t) { return c.measure(t, ann.a1(t), ann.a2(t)); }, cuts, quad);
}

}  // namespace cylcap
