#pragma once

#include "nonlocal/grid.hpp"
#include "nonlocal/potential.hpp"

namespace nonlocal {

/// Sampled data of  dt u - lap u + phi(int_0^T alpha u dt) u = f,
/// u = 0 on the boundary, u(., 0) = u0.
struct Problem {
  Grid grid;
  SpaceTimeField alpha;
  SpaceTimeField forcing;
  Field initial;
  PotentialSpec potential;

  /// Throws DimensionError if any field does not conform to the grid, and
  /// ConfigurationError on non-finite samples.
  void validate() const;
};

/// Problem rewritten for u_bar = exp(-K t) u: alpha_bar = exp(K t) alpha,
/// f_bar = exp(-K t) f, phi_bar = phi + K >= 0.
struct ShiftedProblem {
  Problem problem;
  double shift = 0.0;
};

ShiftedProblem positivity_shift(const Problem& problem);

/// u(., t_m) = exp(K t_m) u_bar(., t_m).
SpaceTimeField unshift_solution(const Grid& grid, const SpaceTimeField& u_bar, double shift);

/// u_bar(., t_m) = exp(-K t_m) u(., t_m).
SpaceTimeField shift_solution(const Grid& grid, const SpaceTimeField& u, double shift);

}  // namespace nonlocal
