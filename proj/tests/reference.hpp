#pragma once

// Reference computations for the tests. Nothing here calls into the library:
// long double composite Simpson rules, series and direct formulas.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

#ifndef CYLCAP_SCENARIO_DIR
#define CYLCAP_SCENARIO_DIR "scenarios"
#endif

namespace ref {

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;

template <class F>
long double simpson(F&& f, long double a, long double b, int n = 20000) {
  if (n % 2) ++n;
  const long double h = (b - a) / n;
  long double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + h * i) * (i % 2 ? 4.0L : 2.0L);
  return sum * h / 3.0L;
}

/// cosh by its Taylor series.
inline long double cosh_series(long double x) {
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int n = 1; n < 60; ++n) {
    term *= x * x / ((2.0L * n - 1.0L) * (2.0L * n));
    sum += term;
  }
  return sum;
}

/// 2 arctan(e^x), written out independently of the library.
inline long double h1(long double x) { return 2.0L * std::atan(std::exp(x)); }
/// log((1 + sin x) / cos x).
inline long double h2(long double x) { return std::log((1.0L + std::sin(x)) / std::cos(x)); }

/// Relative difference, safe at zero.
inline double rel(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

/// Uniform doubles for test inputs; independent of the library generator.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

 private:
  std::mt19937 engine_;
};

inline std::string scenario(const std::string& name) { return std::string(CYLCAP_SCENARIO_DIR) + "/" + name; }

}  // namespace ref
