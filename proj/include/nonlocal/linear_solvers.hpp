#pragma once

#include <cstddef>
#include <span>

#include "nonlocal/grid.hpp"

namespace nonlocal {

enum class LinearSolverKind {
  automatic,           ///< tridiagonal in 1D, conjugate gradient in 2D
  conjugate_gradient,  ///< Jacobi-preconditioned CG
  tridiagonal,         ///< Thomas elimination, 1D only
};

enum class ExecutionMode { parallel, serial };

struct LinearSolveStats {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Solves the time-step system (I + scale * (A_h + diag(coeff))) x = rhs with
/// A_h = -lap_h. `x` holds the initial guess on entry (CG only).
///
/// CG stops at ||r|| <= tol * ||rhs|| and throws SolverError after
/// 10 * unknowns iterations or on loss of positive definiteness.
LinearSolveStats solve_step_system(const Grid& grid, std::span<const double> coeff, double scale,
                                   std::span<const double> rhs, std::span<double> x, double tol,
                                   LinearSolverKind kind = LinearSolverKind::automatic,
                                   ExecutionMode mode = ExecutionMode::parallel);

LinearSolveStats pcg_solve(const Grid& grid, std::span<const double> coeff, double scale,
                           std::span<const double> rhs, std::span<double> x, double tol,
                           ExecutionMode mode = ExecutionMode::parallel);

/// Thomas algorithm for the 1D step system. Throws PreconditionError in 2D
/// and SolverError on a vanishing pivot.
void tridiagonal_solve(const Grid& grid, std::span<const double> coeff, double scale,
                       std::span<const double> rhs, std::span<double> x);

}  // namespace nonlocal
