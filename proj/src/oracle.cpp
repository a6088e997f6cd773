#include "cylcap/oracle.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "cylcap/error.hpp"

namespace cylcap {

namespace {

// 3-point Gauss rule on [0, 1].
constexpr std::array<double, 3> kGaussX{0.5 - 0.38729833462074168852, 0.5, 0.5 + 0.38729833462074168852};
constexpr std::array<double, 3> kGaussW{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

// Boundary data of one t quadrature point.
struct Column {
  double t;
  double a1;
  double width;
  double d1;      // a1'
  double dwidth;  // a2' - a1'
};

Column column_at(const TypeAAnnulus& ann, double t) {
  const double a1 = ann.a1(t);
  const double a2 = ann.a2(t);
  const double d1 = ann.a1_prime(t);
  return {t, a1, a2 - a1, d1, ann.a2_prime(t) - d1};
}

// Pulled-back energy density coefficients: A g_t^2 + 2 B g_t g_u + C g_u^2.
struct Coefficients {
  double A;
  double B;
  double C;
  double directional;  // h / w, the g_u^2 coefficient of the directional energy
};

Coefficients coefficients(const Cylinder& c, const Column& col, double u) {
  const double s = col.a1 + u * col.width;
  const double h = c.warp_at(col.t, s);
  const double drift = col.d1 + u * col.dwidth;  // ds/dt along a line of constant u
  const double w = col.width;
  return {w / h, -drift / h, drift * drift / (h * w) + h / w, h / w};
}

// 9-point stencil, entry (di + 1) * 3 + (dj + 1).
struct Stencil {
  int nt = 0;
  int nu = 0;
  std::vector<std::array<double, 9>> coef;

  std::size_t node(int i, int j) const { return static_cast<std::size_t>(i * (nu + 1) + j); }
};

// Bilinear shape functions on the reference cell, nodes (0,0), (1,0), (0,1), (1,1).
struct Shape {
  std::array<double, 4> dxi;
  std::array<double, 4> deta;
};

Shape shape(double xi, double eta) {
  return {{-(1.0 - eta), (1.0 - eta), -eta, eta}, {-(1.0 - xi), -xi, (1.0 - xi), xi}};
}

constexpr std::array<int, 4> kCornerDi{0, 1, 0, 1};
constexpr std::array<int, 4> kCornerDj{0, 0, 1, 1};

std::vector<std::array<Column, 3>> columns_for(const TypeAAnnulus& ann, const SolverGrid& grid) {
  std::vector<std::array<Column, 3>> cols(static_cast<std::size_t>(grid.nt()));
  for (int i = 0; i < grid.nt(); ++i) {
    const double t0 = grid.t_nodes[static_cast<std::size_t>(i)];
    const double dt = grid.t_right(i) - t0;
    for (int q = 0; q < 3; ++q) cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)] = column_at(ann, t0 + kGaussX[q] * dt);
  }
  return cols;
}

Stencil assemble(const Cylinder& c, const TypeAAnnulus& ann, const SolverGrid& grid) {
  Stencil st;
  st.nt = grid.nt();
  st.nu = grid.nu;
  st.coef.assign(static_cast<std::size_t>(st.nt * (st.nu + 1)), std::array<double, 9>{});
  const auto cols = columns_for(ann, grid);
  const double du = 1.0 / grid.nu;
  for (int i = 0; i < st.nt; ++i) {
    const double dt = grid.t_right(i) - grid.t_nodes[static_cast<std::size_t>(i)];
    for (int j = 0; j < st.nu; ++j) {
      double local[4][4] = {};
      for (int qt = 0; qt < 3; ++qt) {
        const Column& col = cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(qt)];
        for (int qu = 0; qu < 3; ++qu) {
          const double eta = kGaussX[qu];
          const Coefficients k = coefficients(c, col, (j + eta) * du);
          const double weight = kGaussW[qt] * kGaussW[qu] * dt * du;
          const Shape sh = shape(kGaussX[qt], eta);
          for (int a = 0; a < 4; ++a) {
            const double ta = sh.dxi[a] / dt;
            const double ua = sh.deta[a] / du;
            for (int b = 0; b < 4; ++b) {
              const double tb = sh.dxi[b] / dt;
              const double ub = sh.deta[b] / du;
              local[a][b] += weight * (k.A * ta * tb + k.B * (ta * ub + ua * tb) + k.C * ua * ub);
            }
          }
        }
      }
      for (int a = 0; a < 4; ++a) {
        const int ia = (i + kCornerDi[a]) % st.nt;
        const int ja = j + kCornerDj[a];
        auto& row = st.coef[st.node(ia, ja)];
        for (int b = 0; b < 4; ++b) {
          const int di = kCornerDi[b] - kCornerDi[a];
          const int dj = kCornerDj[b] - kCornerDj[a];
          row[static_cast<std::size_t>((di + 1) * 3 + (dj + 1))] += local[a][b];
        }
      }
    }
  }
  return st;
}

void apply(const Stencil& st, const std::vector<double>& x, std::vector<double>& y) {
  for (int i = 0; i < st.nt; ++i) {
    const int im = (i + st.nt - 1) % st.nt;
    const int ip = (i + 1) % st.nt;
    const std::array<int, 3> rows{im, i, ip};
    for (int j = 0; j <= st.nu; ++j) {
      const auto& row = st.coef[st.node(i, j)];
      double sum = 0.0;
      for (int di = 0; di < 3; ++di) {
        const std::size_t base = static_cast<std::size_t>(rows[static_cast<std::size_t>(di)] * (st.nu + 1));
        for (int dj = -1; dj <= 1; ++dj) {
          const int jj = j + dj;
          if (jj < 0 || jj > st.nu) continue;
          sum += row[static_cast<std::size_t>(di * 3 + dj + 1)] * x[base + static_cast<std::size_t>(jj)];
        }
      }
      y[st.node(i, j)] = sum;
    }
  }
}

double dot_interior(const Stencil& st, const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (int i = 0; i < st.nt; ++i) {
    for (int j = 1; j < st.nu; ++j) sum += a[st.node(i, j)] * b[st.node(i, j)];
  }
  return sum;
}

std::string text(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

}  // namespace

SolverGrid make_grid(const TypeAAnnulus& ann, int nt, int nu) {
  if (nt < 8 || nu < 8) throw Error(ErrorKind::kInvalidInput, "solver grid needs nt, nu >= 8");
  SolverGrid grid;
  grid.length = ann.period();
  grid.nu = nu;
  grid.t_nodes.resize(static_cast<std::size_t>(nt));
  const double dt = grid.length / nt;
  for (int i = 0; i < nt; ++i) grid.t_nodes[static_cast<std::size_t>(i)] = dt * i;

  std::vector<bool> snapped(static_cast<std::size_t>(nt), false);
  for (double bp : ann.breakpoints()) {
    long idx = std::lround(bp / dt);
    double target = bp;
    if (idx >= nt) {
      idx = 0;
      target = bp - grid.length;
    }
    const auto at = static_cast<std::size_t>(idx);
    if (snapped[at]) continue;
    const double prev = idx == 0 ? grid.t_nodes.back() - grid.length : grid.t_nodes[at - 1];
    const double next = idx + 1 == nt ? grid.t_nodes[0] + grid.length : grid.t_nodes[at + 1];
    // keep every cell at least a quarter of the nominal width
    if (target - prev < 0.25 * dt || next - target < 0.25 * dt) continue;
    grid.t_nodes[at] = target;
    snapped[at] = true;
  }
  return grid;
}

std::function<double(double)> minimizer_profile(const Cylinder& c, double a, double b) {
  if (!c.curvature().is_constant()) {
    throw Error(ErrorKind::kUnsupported, "explicit minimizer needs constant curvature");
  }
  if (!(a < b)) throw Error(ErrorKind::kInvalidAnnulus, "minimizer profile needs a < b");
  const double ha = c.H(0.0, a);
  const double span = c.H(0.0, b) - ha;
  return [c, ha, span](double s) { return (c.H(0.0, s) - ha) / span; };
}

GridFunction profile_field(const Cylinder& c, const TypeAAnnulus& ann, const SolverGrid& grid) {
  GridFunction f{grid, std::vector<double>(static_cast<std::size_t>(grid.nt() * (grid.nu + 1)))};
  for (int i = 0; i < grid.nt(); ++i) {
    const double t = grid.t_nodes[static_cast<std::size_t>(i)];
    const double lo = ann.a1(t);
    const double width = ann.a2(t) - lo;
    const double total = c.resistance(t, lo, lo + width);
    f.at(i, 0) = 0.0;
    f.at(i, grid.nu) = 1.0;
    for (int j = 1; j < grid.nu; ++j) f.at(i, j) = c.resistance(t, lo, lo + grid.u(j) * width) / total;
  }
  return f;
}

Minimizer solve_level(const Cylinder& c, const TypeAAnnulus& ann, int nt, int nu, const SolverOptions& opts) {
  const SolverGrid grid = make_grid(ann, nt, nu);
  const Stencil st = assemble(c, ann, grid);
  const std::size_t n = st.coef.size();

  GridFunction field = profile_field(c, ann, grid);
  std::vector<double>& x = field.values;

  // Dirichlet load: -K applied to the boundary lift (1 on j = nu).
  std::vector<double> lift(n, 0.0);
  for (int i = 0; i < st.nt; ++i) lift[st.node(i, st.nu)] = 1.0;
  std::vector<double> work(n, 0.0);
  apply(st, lift, work);
  const double load = std::sqrt(dot_interior(st, work, work));

  std::vector<double> r(n, 0.0), z(n, 0.0), p(n, 0.0), ap(n, 0.0), diag(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) diag[k] = st.coef[k][4];

  apply(st, x, work);
  for (int i = 0; i < st.nt; ++i) {
    for (int j = 1; j < st.nu; ++j) {
      const std::size_t k = st.node(i, j);
      r[k] = -work[k];
      z[k] = r[k] / diag[k];
      p[k] = z[k];
    }
  }
  double rz = dot_interior(st, r, z);
  const int cap = static_cast<int>(opts.iteration_factor * std::sqrt(static_cast<double>(nt) * nu));
  const double target = opts.residual_tol * load;
  int iterations = 0;
  double residual = std::sqrt(dot_interior(st, r, r));
  while (residual > target) {
    if (iterations >= cap) {
      throw Error(ErrorKind::kSolverFailure, "conjugate gradient stalled on a " + std::to_string(nt) + "x" +
                                                 std::to_string(nu) + " grid after " + std::to_string(iterations) +
                                                 " iterations; relative residual " + text(residual / load));
    }
    apply(st, p, ap);
    const double alpha = rz / dot_interior(st, p, ap);
    for (int i = 0; i < st.nt; ++i) {
      for (int j = 1; j < st.nu; ++j) {
        const std::size_t k = st.node(i, j);
        x[k] += alpha * p[k];
        r[k] -= alpha * ap[k];
        z[k] = r[k] / diag[k];
      }
    }
    const double rz_next = dot_interior(st, r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (int i = 0; i < st.nt; ++i) {
      for (int j = 1; j < st.nu; ++j) {
        const std::size_t k = st.node(i, j);
        p[k] = z[k] + beta * p[k];
      }
    }
    residual = std::sqrt(dot_interior(st, r, r));
    ++iterations;
  }

  // Same quadratic form as x^T K x, summed as non-negative terms.
  const double energy = energy_of(c, ann, field).full;
  return {std::move(field), energy, iterations};
}

CapacityEstimate solve_capacity(const Cylinder& c, const TypeAAnnulus& ann, const GridSpec& spec,
                                const SolverOptions& opts) {
  if (spec.refinement_levels < 2) throw Error(ErrorKind::kInvalidInput, "Richardson study needs >= 2 levels");
  const int shift = spec.refinement_levels - 1;
  if (spec.nt % (1 << shift) != 0 || spec.nu % (1 << shift) != 0 || (spec.nt >> shift) < 8 ||
      (spec.nu >> shift) < 8) {
    throw Error(ErrorKind::kInvalidInput, "grid " + std::to_string(spec.nt) + "x" + std::to_string(spec.nu) +
                                              " cannot be halved " + std::to_string(shift) +
                                              " times down to at least 8x8");
  }
  ann.validate(c);

  CapacityEstimate est;
  for (int level = 0; level < spec.refinement_levels; ++level) {
    const int nt = spec.nt >> (shift - level);
    const int nu = spec.nu >> (shift - level);
    const Minimizer m = solve_level(c, ann, nt, nu, opts);
    est.levels.push_back({nt, nu, m.energy, m.iterations});
  }
  const std::size_t last = est.levels.size() - 1;
  const double fine = est.levels[last].value;
  const double coarse = est.levels[last - 1].value;
  // second-order elements: error ratio 4 per halving
  est.value = fine + (fine - coarse) / 3.0;
  est.error_bound = std::max(std::abs(fine - coarse), 1e-12 * std::abs(fine));
  if (est.levels.size() >= 3) {
    const double d_fine = fine - coarse;
    const double d_coarse = coarse - est.levels[last - 2].value;
    est.observed_ratio = d_fine != 0.0 ? d_coarse / d_fine : 0.0;
  }
  return est;
}

EnergyPair energy_of(const Cylinder& c, const TypeAAnnulus& ann, const GridFunction& f) {
  const SolverGrid& grid = f.grid;
  if (grid.nt() < 3 || grid.nu < 1 ||
      f.values.size() != static_cast<std::size_t>(grid.nt() * (grid.nu + 1))) {
    throw Error(ErrorKind::kShapeMismatch, "grid function does not match its grid");
  }
  for (int i = 0; i < grid.nt(); ++i) {
    if (std::abs(f.at(i, 0)) > 1e-12 || std::abs(f.at(i, grid.nu) - 1.0) > 1e-12) {
      throw Error(ErrorKind::kInvalidInput, "grid function violates the boundary values 0 and 1");
    }
  }
  const auto cols = columns_for(ann, grid);
  const double du = 1.0 / grid.nu;
  EnergyPair e;
  for (int i = 0; i < grid.nt(); ++i) {
    // per-column partial sums keep the accumulated roundoff at O((nt + nu) eps)
    EnergyPair column;
    const int ip = (i + 1) % grid.nt();
    const double dt = grid.t_right(i) - grid.t_nodes[static_cast<std::size_t>(i)];
    for (int j = 0; j < grid.nu; ++j) {
      const std::array<double, 4> g{f.at(i, j), f.at(ip, j), f.at(i, j + 1), f.at(ip, j + 1)};
      for (int qt = 0; qt < 3; ++qt) {
        const Column& col = cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(qt)];
        for (int qu = 0; qu < 3; ++qu) {
          const Shape sh = shape(kGaussX[qt], kGaussX[qu]);
          double gt = 0.0;
          double gu = 0.0;
          for (int a = 0; a < 4; ++a) {
            gt += g[a] * sh.dxi[a] / dt;
            gu += g[a] * sh.deta[a] / du;
          }
          const double u = (j + kGaussX[qu]) * du;
          const double s = col.a1 + u * col.width;
          const double h = c.warp_at(col.t, s);
          const double drift = col.d1 + u * col.dwidth;
          const double weight = kGaussW[qt] * kGaussW[qu] * dt * du;
          const double directional = weight * h / col.width * gu * gu;
          // (df/dt)^2 / h in pulled-back form
          const double dfdt = gt - drift / col.width * gu;
          column.directional += directional;
          column.full += directional + weight * col.width / h * dfdt * dfdt;
        }
      }
    }
    e.directional += column.directional;
    e.full += column.full;
  }
  return e;
}

}  // namespace cylcap
