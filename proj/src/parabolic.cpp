#include "nonlocal/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nonlocal/kernels.hpp"

namespace nonlocal {

std::string to_string(TimeScheme scheme) {
  return scheme == TimeScheme::implicit_euler ? "implicit_euler" : "crank_nicolson";
}

TimeScheme parse_time_scheme(std::string_view name) {
  if (name == "implicit_euler") return TimeScheme::implicit_euler;
  if (name == "crank_nicolson") return TimeScheme::crank_nicolson;
  throw ConfigurationError("unknown time scheme '" + std::string(name) +
                           "' (expected implicit_euler or crank_nicolson)");
}

SpaceTimeField solve_frozen(const Grid& grid, const Field& coefficient,
                            const SpaceTimeField& forcing, const Field& initial,
                            const FrozenSolveOptions& options) {
  grid.require_conforming(coefficient, "solve_frozen(coefficient)");
  grid.require_conforming(initial, "solve_frozen(initial)");
  require_conforming(grid, forcing, "solve_frozen(forcing)");
  if (!(options.lin_tol > 0.0)) throw ConfigurationError("lin_tol must be positive");
  for (std::size_t i = 0; i < coefficient.size(); ++i)
    if (!(coefficient[i] >= options.coefficient_floor))
      throw PreconditionError("frozen coefficient entry " + std::to_string(i) + " = " +
                              std::to_string(coefficient[i]) + " is below the admissible floor " +
                              std::to_string(options.coefficient_floor));

  const double dt = grid.dt();
  const bool implicit = options.scheme == TimeScheme::implicit_euler;
  const double theta = implicit ? 1.0 : 0.5;
  const std::size_t n = grid.size();

  SpaceTimeField u(grid.time_steps() + 1, n);
  u[0] = initial;
  std::vector<double> rhs(n);
  for (std::size_t m = 1; m <= grid.time_steps(); ++m) {
    const Field& prev = u[m - 1];
    if (implicit) {
      for (std::size_t i = 0; i < n; ++i) rhs[i] = prev[i] + dt * forcing[m][i];
    } else {
      // (I - dt/2 (A_h + C)) u^{m-1} + dt (f^{m-1} + f^m) / 2
      kernels::step_operator(grid, coefficient.values(), -(1.0 - theta) * dt, prev.values(), rhs);
      for (std::size_t i = 0; i < n; ++i)
        rhs[i] += dt * 0.5 * (forcing[m - 1][i] + forcing[m][i]);
    }
    Field& next = u[m];
    next = prev;
    solve_step_system(grid, coefficient.values(), theta * dt, rhs, next.values(), options.lin_tol,
                      options.solver);
  }
  return u;
}

namespace {

// Time-quadrature weights applied to slice m for the scheme; slice 0 gets
// weight 0 under implicit Euler.
std::vector<double> scheme_weights(const Grid& grid, TimeScheme scheme) {
  if (scheme == TimeScheme::crank_nicolson) return trapezoid_weights(grid);
  std::vector<double> w(grid.time_steps() + 1, grid.dt());
  w[0] = 0.0;
  return w;
}

}  // namespace

double forcing_norm_integral(const Grid& grid, const SpaceTimeField& forcing, TimeScheme scheme) {
  require_conforming(grid, forcing, "forcing_norm_integral");
  const auto w = scheme_weights(grid, scheme);
  double s = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m)
    if (w[m] != 0.0) s += w[m] * norm_l2(grid, forcing[m]);
  return s;
}

double energy_constant(const Grid& grid, const Field& initial, const SpaceTimeField& forcing,
                       TimeScheme scheme) {
  const double f_int = forcing_norm_integral(grid, forcing, scheme);
  const double a = norm_l2(grid, initial) + f_int;
  return a * a + 0.5 * f_int * f_int;
}

EnergyReport energy_report(const Grid& grid, const SpaceTimeField& u, const Field& coefficient,
                           const SpaceTimeField& forcing, const Field& initial,
                           TimeScheme scheme) {
  require_conforming(grid, u, "energy_report(u)");
  grid.require_conforming(coefficient, "energy_report(coefficient)");

  EnergyReport r;
  r.c1 = energy_constant(grid, initial, forcing, scheme);
  const auto w = scheme_weights(grid, scheme);
  const std::size_t slices = u.slice_count();

  std::vector<double> l2_sq(slices), dissipation(slices);
  Field squared(grid.size());
  for (std::size_t m = 0; m < slices; ++m) {
    const double l2 = norm_l2(grid, u[m]);
    l2_sq[m] = l2 * l2;
    const double h1 = seminorm_h1(grid, u[m]);
    for (std::size_t i = 0; i < squared.size(); ++i) squared[i] = u[m][i] * u[m][i];
    const double pot = inner(grid, coefficient, squared);
    r.max_l2 = std::max(r.max_l2, l2_sq[m]);
    r.grad_integral += w[m] * h1 * h1;
    r.potential_integral += w[m] * pot;
    dissipation[m] = h1 * h1 + pot;
  }

  // Running energy ||u^m||^2 + integral over [0, t_m] with the same quadrature.
  double partial = 0.0;
  for (std::size_t m = 0; m < slices; ++m) {
    if (m > 0) {
      partial += scheme == TimeScheme::crank_nicolson
                     ? 0.5 * grid.dt() * (dissipation[m - 1] + dissipation[m])
                     : grid.dt() * dissipation[m];
    }
    r.running_energy_peak = std::max(r.running_energy_peak, l2_sq[m] + partial);
  }

  const double limit = r.c1 * (1.0 + kEnergyTolerance);
  r.satisfied = r.running_energy_peak <= limit;
  r.combined_within_c1 = r.max_l2 + r.grad_integral + r.potential_integral <= limit;
  return r;
}

}  // namespace nonlocal
