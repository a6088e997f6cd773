#pragma once

#include <functional>
#include <vector>

#include "cylcap/annulus.hpp"
#include "cylcap/geometry.hpp"

namespace cylcap {

/// Finest solver grid; coarser levels halve both counts.
struct GridSpec {
  int nt = 128;  // cells around the cylinder (periodic)
  int nu = 64;   // cells across the annulus
  int refinement_levels = 3;
};

struct SolverOptions {
  double residual_tol = 1e-12;   // relative to the Dirichlet load
  double iteration_factor = 50;  // cap = factor * sqrt(nt * nu)
};

/// Tensor grid over (t, u) in [0, l) x [0, 1]; s = a1(t) + u (a2(t) - a1(t)).
/// t nodes are uniform except where snapped onto curve breakpoints.
struct SolverGrid {
  double length = 1.0;
  std::vector<double> t_nodes;  // nt nodes, increasing, within one period
  int nu = 8;

  int nt() const { return static_cast<int>(t_nodes.size()); }
  double u(int j) const { return static_cast<double>(j) / nu; }
  /// Right edge of cell i (wraps to t_nodes[0] + length).
  double t_right(int i) const { return i + 1 < nt() ? t_nodes[static_cast<std::size_t>(i) + 1] : t_nodes[0] + length; }
};

SolverGrid make_grid(const TypeAAnnulus& ann, int nt, int nu);

/// Nodal values, node (i, j) at index i * (nu + 1) + j; j = 0 is the a1 side.
struct GridFunction {
  SolverGrid grid;
  std::vector<double> values;

  double& at(int i, int j) { return values[static_cast<std::size_t>(i * (grid.nu + 1) + j)]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i * (grid.nu + 1) + j)]; }
};

struct LevelResult {
  int nt = 0;
  int nu = 0;
  double value = 0.0;
  int iterations = 0;
};

struct CapacityEstimate {
  double value = 0.0;        // Richardson-extrapolated capacity
  double error_bound = 0.0;  // |V_fine - V_coarse| of the two finest levels, floored
  double observed_ratio = 0.0;  // (V1 - V0)/(V2 - V1) of the three finest levels; 0 if unavailable
  std::vector<LevelResult> levels;  // coarse to fine
};

struct Minimizer {
  GridFunction field;
  double energy = 0.0;
  int iterations = 0;
};

/// Discrete minimizer of the full Dirichlet energy on one grid.
Minimizer solve_level(const Cylinder& c, const TypeAAnnulus& ann, int nt, int nu, const SolverOptions& opts = {});

/// Capacity by Q1 finite elements on refinement_levels grids plus Richardson
/// extrapolation. Throws Error(kSolverFailure) if CG stalls.
CapacityEstimate solve_capacity(const Cylinder& c, const TypeAAnnulus& ann, const GridSpec& grid,
                                const SolverOptions& opts = {});

/// p(s) = (H(s) - H(a)) / (H(b) - H(a)), the minimizer on a constant-width
/// annulus ]a, b[ of a constant-curvature cylinder.
std::function<double(double)> minimizer_profile(const Cylinder& c, double a, double b);

/// The directional minimizer of each column interpolated onto the grid.
GridFunction profile_field(const Cylinder& c, const TypeAAnnulus& ann, const SolverGrid& grid);

struct EnergyPair {
  double full = 0.0;
  double directional = 0.0;
};

/// Discrete full and directional energies of f; full >= directional.
EnergyPair energy_of(const Cylinder& c, const TypeAAnnulus& ann, const GridFunction& f);

}  // namespace cylcap
