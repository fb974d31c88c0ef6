#pragma once

#include <string>
#include <string_view>

#include "nonlocal/grid.hpp"
#include "nonlocal/linear_solvers.hpp"

namespace nonlocal {

enum class TimeScheme { implicit_euler, crank_nicolson };

std::string to_string(TimeScheme scheme);
/// Accepts "implicit_euler" and "crank_nicolson"; throws ConfigurationError otherwise.
TimeScheme parse_time_scheme(std::string_view name);

struct FrozenSolveOptions {
  TimeScheme scheme = TimeScheme::implicit_euler;
  double lin_tol = 1e-10;
  LinearSolverKind solver = LinearSolverKind::automatic;
  /// Smallest admissible coefficient entry. 0 for the nonnegative problem;
  /// a direct solve of a potential bounded below by -K may pass -K.
  double coefficient_floor = 0.0;
};

/// Theta-scheme solve of  dt u - lap u + c u = f,  u = 0 on the boundary,
/// u(., 0) = u0, with theta = 1 (implicit Euler) or 1/2 (Crank-Nicolson).
/// The coefficient c is frozen in time.
SpaceTimeField solve_frozen(const Grid& grid, const Field& coefficient, const SpaceTimeField& forcing,
                            const Field& initial, const FrozenSolveOptions& options = {});

/// Discrete energy certificate for a frozen-coefficient solve.
///
/// Time integrals use the quadrature that matches the scheme's forcing
/// samples: right endpoint for implicit Euler, trapezoid for Crank-Nicolson.
struct EnergyReport {
  double max_l2 = 0.0;              ///< max_m ||u^m||^2, m = 0..M
  double grad_integral = 0.0;       ///< time integral of |u^m|_{H1}^2
  double potential_integral = 0.0;  ///< time integral of <c, (u^m)^2>
  /// max_m ( ||u^m||^2 + gradient and potential integrals up to t_m ).
  double running_energy_peak = 0.0;
  double c1 = 0.0;
  /// running_energy_peak <= C1 (1 + 1e-8)
  bool satisfied = true;
  /// max_l2 + grad_integral + potential_integral <= C1 (1 + 1e-8). Informational:
  /// the sup and the full-interval integral are not jointly bounded by C1.
  bool combined_within_c1 = true;
};

inline constexpr double kEnergyTolerance = 1e-8;

/// Time integral of ||f(., t)|| with the scheme-matched quadrature.
double forcing_norm_integral(const Grid& grid, const SpaceTimeField& forcing, TimeScheme scheme);

/// C1 = (||u0|| + F)^2 + F^2 / 2 with F = forcing_norm_integral.
double energy_constant(const Grid& grid, const Field& initial, const SpaceTimeField& forcing,
                       TimeScheme scheme = TimeScheme::implicit_euler);

EnergyReport energy_report(const Grid& grid, const SpaceTimeField& u, const Field& coefficient,
                           const SpaceTimeField& forcing, const Field& initial,
                           TimeScheme scheme = TimeScheme::implicit_euler);

}  // namespace nonlocal
