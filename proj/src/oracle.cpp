#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "nonlocal/verification.hpp"

namespace nonlocal {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

constexpr std::size_t kMaxUnknowns = 64;

// Dense -lap_h, assembled node by node from the 5-point (or 3-point) rule.
Matrix dense_stiffness(const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Matrix a = Matrix::Zero(n, n);
  const std::size_t n0 = grid.count(0);
  const std::size_t n1 = grid.dimension() == 2 ? grid.count(1) : 1;
  for (std::size_t i0 = 0; i0 < n0; ++i0)
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      const auto k = static_cast<Eigen::Index>(i0 * n1 + i1);
      const double w0 = 1.0 / (grid.spacing(0) * grid.spacing(0));
      a(k, k) += 2.0 * w0;
      if (i0 > 0) a(k, k - static_cast<Eigen::Index>(n1)) -= w0;
      if (i0 + 1 < n0) a(k, k + static_cast<Eigen::Index>(n1)) -= w0;
      if (grid.dimension() == 2) {
        const double w1 = 1.0 / (grid.spacing(1) * grid.spacing(1));
        a(k, k) += 2.0 * w1;
        if (i1 > 0) a(k, k - 1) -= w1;
        if (i1 + 1 < n1) a(k, k + 1) -= w1;
      }
    }
  return a;
}

class AllAtOnceSystem {
 public:
  explicit AllAtOnceSystem(const Problem& p)
      : p_(p), n_(static_cast<Eigen::Index>(p.grid.size())),
        steps_(static_cast<Eigen::Index>(p.grid.time_steps())), stiffness_(dense_stiffness(p.grid)) {}

  Eigen::Index unknowns() const { return n_ * steps_; }

  Vector slice(const Vector& big, Eigen::Index m) const {
    if (m == 0) {
      Vector v(n_);
      for (Eigen::Index i = 0; i < n_; ++i) v(i) = p_.initial[static_cast<std::size_t>(i)];
      return v;
    }
    return big.segment((m - 1) * n_, n_);
  }

  Vector coupling(const Vector& big) const {
    const double dt = p_.grid.dt();
    Vector z = Vector::Zero(n_);
    for (Eigen::Index m = 0; m <= steps_; ++m) {
      const double w = (m == 0 || m == steps_) ? 0.5 * dt : dt;
      const Vector um = slice(big, m);
      for (Eigen::Index i = 0; i < n_; ++i)
        z(i) += w * p_.alpha[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] * um(i);
    }
    return z;
  }

  Vector residual(const Vector& big) const {
    const double dt = p_.grid.dt();
    const Vector z = coupling(big);
    Vector phi(n_);
    for (Eigen::Index i = 0; i < n_; ++i) phi(i) = p_.potential(z(i));
    Vector r(unknowns());
    for (Eigen::Index m = 1; m <= steps_; ++m) {
      const Vector um = slice(big, m);
      const Vector prev = slice(big, m - 1);
      Vector f(n_);
      for (Eigen::Index i = 0; i < n_; ++i)
        f(i) = p_.forcing[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)];
      r.segment((m - 1) * n_, n_) =
          (um - prev) / dt + stiffness_ * um + phi.cwiseProduct(um) - f;
    }
    return r;
  }

  // Chained implicit-Euler solves with the coefficient frozen at c.
  Vector frozen_chain(double c) const {
    const double dt = p_.grid.dt();
    const Matrix step = Matrix::Identity(n_, n_) / dt + stiffness_ +
                        c * Matrix::Identity(n_, n_);
    const Eigen::PartialPivLU<Matrix> lu(step);
    Vector big(unknowns());
    Vector prev = slice(big, 0);
    for (Eigen::Index m = 1; m <= steps_; ++m) {
      Vector rhs = prev / dt;
      for (Eigen::Index i = 0; i < n_; ++i)
        rhs(i) += p_.forcing[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)];
      prev = lu.solve(rhs);
      big.segment((m - 1) * n_, n_) = prev;
    }
    return big;
  }

 private:
  const Problem& p_;
  Eigen::Index n_;
  Eigen::Index steps_;
  Matrix stiffness_;
};

bool newton(const AllAtOnceSystem& sys, Vector& x, const OracleOptions& opt) {
  Vector r = sys.residual(x);
  for (std::size_t it = 0; it < opt.max_newton; ++it) {
    if (r.lpNorm<Eigen::Infinity>() <= opt.residual_tol) return true;
    const Eigen::Index n = sys.unknowns();
    Matrix jac(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double step = opt.fd_step * std::max(1.0, std::abs(x(j)));
      Vector xp = x;
      xp(j) += step;
      jac.col(j) = (sys.residual(xp) - r) / step;
    }
    const Vector delta = jac.partialPivLu().solve(-r);
    if (!delta.allFinite()) return false;
    const double base = r.norm();
    double lambda = 1.0;
    bool accepted = false;
    while (lambda >= 1e-4) {
      Vector trial = x + lambda * delta;
      Vector rt;
      try {
        rt = sys.residual(trial);
      } catch (const DomainError&) {
        lambda *= 0.5;
        continue;
      }
      if (rt.allFinite() && rt.norm() < (1.0 - 1e-4 * lambda) * base) {
        x = std::move(trial);
        r = std::move(rt);
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      // Near the root the finite-difference Jacobian limits the decrease;
      // accept a full step that does not increase the residual.
      Vector trial = x + delta;
      Vector rt = sys.residual(trial);
      if (!(rt.allFinite() && rt.norm() <= base)) return false;
      x = std::move(trial);
      r = std::move(rt);
    }
  }
  return r.lpNorm<Eigen::Infinity>() <= opt.residual_tol;
}

}  // namespace

SpaceTimeField oracle_solve(const Problem& problem, const OracleOptions& options) {
  problem.validate();
  const Grid& grid = problem.grid;
  if (grid.size() * grid.time_steps() > kMaxUnknowns)
    throw ConfigurationError("oracle_solve is limited to " + std::to_string(kMaxUnknowns) +
                             " unknowns");
  const AllAtOnceSystem sys(problem);

  const Vector heat = sys.frozen_chain(problem.potential(0.0));
  const Vector starts[] = {Vector::Zero(sys.unknowns()), heat, 0.5 * heat, 2.0 * heat, -heat};
  for (const Vector& start : starts) {
    Vector x = start;
    bool ok = false;
    try {
      ok = newton(sys, x, options);
    } catch (const DomainError&) {
      ok = false;
    }
    if (!ok) continue;
    SpaceTimeField u(grid.time_steps() + 1, grid.size());
    u[0] = problem.initial;
    for (std::size_t m = 1; m <= grid.time_steps(); ++m)
      for (std::size_t i = 0; i < grid.size(); ++i)
        u[m][i] = x(static_cast<Eigen::Index>((m - 1) * grid.size() + i));
    return u;
  }
  throw OracleFailure("all-at-once Newton did not converge from any built-in start");
}

}  // namespace nonlocal
