#include "nonlocal/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace nonlocal {

double fit_log_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw ConfigurationError("fit_log_slope needs >= 2 paired samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

RateTable convergence_study(const ManufacturedCase& mms, std::span<const RefinementLevel> levels,
                            RefinementAxis axis, const FixedPointOptions& options) {
  if (levels.size() < 3) throw ConfigurationError("convergence study needs at least 3 levels");
  RateTable table;
  table.case_name = mms.name;
  table.axis = axis;
  table.scheme = options.scheme;

  std::vector<double> params, errors;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const Problem problem = mms.discretize(levels[l].interior_counts, levels[l].time_steps);
    const NonlocalSolution sol = solve_nonlocal(problem, options);
    if (!sol.report.converged)
      throw StudyError(mms.name + ": fixed-point iteration did not converge at level " +
                       std::to_string(l));
    const Grid& g = problem.grid;
    RateRow row;
    row.level = l;
    for (int a = 0; a < g.dimension(); ++a) row.h = std::max(row.h, g.spacing(a));
    row.dt = g.dt();
    row.error = max_abs_difference(sol.u, mms.sample_exact(g));
    row.rate = std::numeric_limits<double>::quiet_NaN();
    if (l > 0) {
      const RateRow& prev = table.rows.back();
      const double ratio = axis == RefinementAxis::space ? prev.h / row.h : prev.dt / row.dt;
      row.rate = std::log(prev.error / row.error) / std::log(ratio);
    }
    params.push_back(axis == RefinementAxis::space ? row.h : row.dt);
    errors.push_back(row.error);
    table.rows.push_back(row);
    table.reports.push_back(sol.report);
  }
  table.fitted_rate = fit_log_slope(params, errors);
  return table;
}

std::vector<TestFunction> test_function_family(int dimension, std::size_t count) {
  std::vector<TestFunction> out;
  for (int top = 1; out.size() < count; ++top) {
    if (dimension == 1) {
      for (int r = 1; r <= 3 && out.size() < count; ++r) out.push_back({{top, 1}, r});
      continue;
    }
    for (int p = 1; p <= top; ++p)
      for (int q = 1; q <= top; ++q) {
        if (std::max(p, q) != top) continue;
        for (int r = 1; r <= 3 && out.size() < count; ++r) out.push_back({{p, q}, r});
      }
  }
  return out;
}

namespace {

struct TestEval {
  const Grid& grid;
  TestFunction fn;

  double phase(int axis, double x) const {
    const Interval& iv = grid.extent(axis);
    return fn.modes[axis] * std::numbers::pi * (x - iv.lo) / iv.length();
  }
  double spatial(const Point& x) const {
    double s = 1.0;
    for (int a = 0; a < grid.dimension(); ++a) s *= std::sin(phase(a, x[a]));
    return s;
  }
  double temporal(double t) const { return std::pow(grid.horizon() - t, fn.power); }
  double temporal_dt(double t) const {
    return -fn.power * std::pow(grid.horizon() - t, fn.power - 1);
  }
  double spatial_derivative(int axis, const Point& x) const {
    double s = 1.0;
    for (int a = 0; a < grid.dimension(); ++a) {
      if (a == axis)
        s *= fn.modes[a] * std::numbers::pi / grid.extent(a).length() * std::cos(phase(a, x[a]));
      else
        s *= std::sin(phase(a, x[a]));
    }
    return s;
  }
};

}  // namespace

double weak_residual(const Grid& grid, const SpaceTimeField& u, const Field& zeta,
                     const Problem& problem, std::size_t family_size) {
  require_conforming(grid, u, "weak_residual(u)");
  grid.require_conforming(zeta, "weak_residual(zeta)");
  require_conforming(grid, problem.forcing, "weak_residual(forcing)");
  grid.require_conforming(problem.initial, "weak_residual(initial)");

  const std::size_t n = grid.size();
  const double vol = grid.cell_volume();
  const auto w = trapezoid_weights(grid);
  Field phi(n);
  for (std::size_t i = 0; i < n; ++i) phi[i] = problem.potential(zeta[i]);

  const std::size_t n0 = grid.count(0);
  const std::size_t n1 = grid.dimension() == 2 ? grid.count(1) : 1;
  auto node = [&](const Field& f, std::ptrdiff_t i0, std::ptrdiff_t i1) -> double {
    if (i0 < 0 || i1 < 0 || i0 >= static_cast<std::ptrdiff_t>(n0) ||
        i1 >= static_cast<std::ptrdiff_t>(n1))
      return 0.0;
    return f[static_cast<std::size_t>(i0) * n1 + static_cast<std::size_t>(i1)];
  };

  double worst = 0.0;
  for (const TestFunction& tf : test_function_family(grid.dimension(), family_size)) {
    const TestEval h{grid, tf};
    Field space(n);
    for (std::size_t i = 0; i < n; ++i) space[i] = h.spatial(grid.point(i));

    // Analytic gradient of the spatial factor at edge midpoints, edges
    // touching the boundary included.
    std::vector<double> grad0((n0 + 1) * n1), grad1;
    for (std::size_t e = 0; e <= n0; ++e)
      for (std::size_t i1 = 0; i1 < n1; ++i1) {
        Point mid{grid.extent(0).lo + (static_cast<double>(e) + 0.5) * grid.spacing(0),
                  grid.dimension() == 2 ? grid.coordinate(1, i1) : 0.0};
        grad0[e * n1 + i1] = h.spatial_derivative(0, mid);
      }
    if (grid.dimension() == 2) {
      grad1.resize(n0 * (n1 + 1));
      for (std::size_t i0 = 0; i0 < n0; ++i0)
        for (std::size_t e = 0; e <= n1; ++e) {
          Point mid{grid.coordinate(0, i0),
                    grid.extent(1).lo + (static_cast<double>(e) + 0.5) * grid.spacing(1)};
          grad1[i0 * (n1 + 1) + e] = h.spatial_derivative(1, mid);
        }
    }

    double integral = 0.0;
    double h_norm_sq = 0.0;
    for (std::size_t m = 0; m < w.size(); ++m) {
      const double t = grid.time(m);
      const double ht = h.temporal(t);
      const double ht_dt = h.temporal_dt(t);
      const Field& um = u[m];
      double slice = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double hv = ht * space[i];
        slice += um[i] * ht_dt * space[i] - phi[i] * um[i] * hv + problem.forcing[m][i] * hv;
        h_norm_sq += w[m] * hv * hv * vol;
      }
      double grad = 0.0;
      for (std::size_t e = 0; e <= n0; ++e)
        for (std::size_t i1 = 0; i1 < n1; ++i1) {
          const auto ee = static_cast<std::ptrdiff_t>(e);
          const auto j1 = static_cast<std::ptrdiff_t>(i1);
          const double du = (node(um, ee, j1) - node(um, ee - 1, j1)) / grid.spacing(0);
          grad += du * grad0[e * n1 + i1];
        }
      if (grid.dimension() == 2) {
        for (std::size_t i0 = 0; i0 < n0; ++i0)
          for (std::size_t e = 0; e <= n1; ++e) {
            const auto j0 = static_cast<std::ptrdiff_t>(i0);
            const auto ee = static_cast<std::ptrdiff_t>(e);
            const double du = (node(um, j0, ee) - node(um, j0, ee - 1)) / grid.spacing(1);
            grad += du * grad1[i0 * (n1 + 1) + e];
          }
      }
      slice -= ht * grad;
      integral += w[m] * slice * vol;
    }
    const double h0 = h.temporal(0.0);
    for (std::size_t i = 0; i < n; ++i) integral += problem.initial[i] * h0 * space[i] * vol;

    const double scale = std::max(1.0, std::sqrt(h_norm_sq));
    worst = std::max(worst, std::abs(integral) / scale);
  }
  return worst;
}

}  // namespace nonlocal
