#include "nonlocal/linear_solvers.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "nonlocal/kernels.hpp"

namespace nonlocal {

namespace {

struct ParallelOps {
  static void apply(const Grid& g, std::span<const double> c, double s, std::span<const double> in,
                    std::span<double> out) {
    kernels::step_operator(g, c, s, in, out);
  }
  static double dot(std::span<const double> a, std::span<const double> b) {
    return kernels::dot(a, b);
  }
  static void axpy(double a, std::span<const double> x, std::span<double> y) {
    kernels::axpy(a, x, y);
  }
  static void xpby(std::span<const double> x, double b, std::span<double> y) {
    kernels::xpby(x, b, y);
  }
  static void hadamard(std::span<const double> s, std::span<const double> in,
                       std::span<double> out) {
    kernels::hadamard(s, in, out);
  }
};

struct SerialOps {
  static void apply(const Grid& g, std::span<const double> c, double s, std::span<const double> in,
                    std::span<double> out) {
    kernels::serial::step_operator(g, c, s, in, out);
  }
  static double dot(std::span<const double> a, std::span<const double> b) {
    return kernels::serial::dot(a, b);
  }
  static void axpy(double a, std::span<const double> x, std::span<double> y) {
    kernels::serial::axpy(a, x, y);
  }
  static void xpby(std::span<const double> x, double b, std::span<double> y) {
    kernels::serial::xpby(x, b, y);
  }
  static void hadamard(std::span<const double> s, std::span<const double> in,
                       std::span<double> out) {
    kernels::serial::hadamard(s, in, out);
  }
};

double stencil_diagonal(const Grid& grid) {
  double d = 0.0;
  for (int a = 0; a < grid.dimension(); ++a) d += 2.0 / (grid.spacing(a) * grid.spacing(a));
  return d;
}

template <class Ops>
LinearSolveStats pcg(const Grid& grid, std::span<const double> coeff, double scale,
                     std::span<const double> rhs, std::span<double> x, double tol) {
  const std::size_t n = rhs.size();
  const double rhs_norm = std::sqrt(Ops::dot(rhs, rhs));
  if (rhs_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }

  const double lap_diag = stencil_diagonal(grid);
  std::vector<double> inv_diag(n);
  for (std::size_t i = 0; i < n; ++i) inv_diag[i] = 1.0 / (1.0 + scale * (lap_diag + coeff[i]));

  std::vector<double> r(n), z(n), p(n), q(n);
  Ops::apply(grid, coeff, scale, x, q);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - q[i];
  double res = std::sqrt(Ops::dot(r, r));
  if (res <= tol * rhs_norm) return {0, res / rhs_norm};

  Ops::hadamard(inv_diag, r, z);
  p = z;
  double rz = Ops::dot(r, z);
  const std::size_t cap = 10 * n;
  for (std::size_t it = 1; it <= cap; ++it) {
    Ops::apply(grid, coeff, scale, p, q);
    const double pq = Ops::dot(p, q);
    if (!(pq > 0.0))
      throw SolverError("conjugate gradient: step matrix is not positive definite",
                        res / rhs_norm);
    const double step = rz / pq;
    Ops::axpy(step, p, x);
    Ops::axpy(-step, q, r);
    res = std::sqrt(Ops::dot(r, r));
    if (res <= tol * rhs_norm) return {it, res / rhs_norm};
    Ops::hadamard(inv_diag, r, z);
    const double rz_next = Ops::dot(r, z);
    Ops::xpby(z, rz_next / rz, p);
    rz = rz_next;
  }
  throw SolverError("conjugate gradient did not converge in " + std::to_string(cap) +
                        " iterations (relative residual " + std::to_string(res / rhs_norm) + ")",
                    res / rhs_norm);
}

}  // namespace

LinearSolveStats pcg_solve(const Grid& grid, std::span<const double> coeff, double scale,
                           std::span<const double> rhs, std::span<double> x, double tol,
                           ExecutionMode mode) {
  if (mode == ExecutionMode::serial) return pcg<SerialOps>(grid, coeff, scale, rhs, x, tol);
  return pcg<ParallelOps>(grid, coeff, scale, rhs, x, tol);
}

void tridiagonal_solve(const Grid& grid, std::span<const double> coeff, double scale,
                       std::span<const double> rhs, std::span<double> x) {
  if (grid.dimension() != 1) throw PreconditionError("tridiagonal solve requires a 1D grid");
  const std::size_t n = rhs.size();
  const double h = grid.spacing(0);
  const double off = -scale / (h * h);
  const double base = 1.0 + 2.0 * scale / (h * h);
  std::vector<double> upper(n);
  std::vector<double> y(n);
  double pivot = base + scale * coeff[0];
  if (pivot == 0.0) throw SolverError("tridiagonal solve: zero pivot", 1.0);
  upper[0] = off / pivot;
  y[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = base + scale * coeff[i] - off * upper[i - 1];
    if (pivot == 0.0) throw SolverError("tridiagonal solve: zero pivot", 1.0);
    upper[i] = off / pivot;
    y[i] = (rhs[i] - off * y[i - 1]) / pivot;
  }
  x[n - 1] = y[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = y[i] - upper[i] * x[i + 1];
}

LinearSolveStats solve_step_system(const Grid& grid, std::span<const double> coeff, double scale,
                                   std::span<const double> rhs, std::span<double> x, double tol,
                                   LinearSolverKind kind, ExecutionMode mode) {
  if (kind == LinearSolverKind::automatic)
    kind = grid.dimension() == 1 ? LinearSolverKind::tridiagonal
                                 : LinearSolverKind::conjugate_gradient;
  if (kind == LinearSolverKind::tridiagonal) {
    tridiagonal_solve(grid, coeff, scale, rhs, x);
    return {1, 0.0};
  }
  return pcg_solve(grid, coeff, scale, rhs, x, tol, mode);
}

}  // namespace nonlocal
