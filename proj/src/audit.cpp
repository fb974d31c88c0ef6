#include "nonlocal/audit.hpp"

#include <algorithm>
#include <cmath>

namespace nonlocal {

BoundAudit bound_audit(const Grid& grid, const SpaceTimeField& u, const Field& zeta,
                       const Problem& problem, TimeScheme scheme) {
  require_conforming(grid, u, "bound_audit(u)");
  grid.require_conforming(zeta, "bound_audit(zeta)");
  require_conforming(grid, problem.alpha, "bound_audit(alpha)");

  BoundAudit a;
  a.c1 = energy_constant(grid, problem.initial, problem.forcing, scheme);

  const auto w = trapezoid_weights(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double s = 0.0;
    for (std::size_t m = 0; m < w.size(); ++m) s += w[m] * problem.alpha[m][i] * problem.alpha[m][i];
    a.alpha_sup_sq = std::max(a.alpha_sup_sq, s);
  }
  a.c6 = a.c1 * a.alpha_sup_sq;

  const double vol = grid.cell_volume();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double z = zeta[i];
    const double phi = problem.potential(z);
    a.phi_zeta_sq += phi * z * z * vol;
    a.zeta_l2_sq += z * z * vol;
    a.phi_zeta_l1 += std::abs(phi) * vol;
    a.phi_zeta_zeta_l1 += std::abs(phi * z) * vol;
    double abs_int = 0.0;
    double sq_int = 0.0;
    for (std::size_t m = 0; m < w.size(); ++m) {
      abs_int += w[m] * std::abs(u[m][i]);
      sq_int += w[m] * u[m][i] * u[m][i];
    }
    a.phi_u_l1 += phi * abs_int * vol;
    a.phi_u2_l1 += phi * sq_int * vol;
  }

  const double slack = 1.0 + kAuditTolerance;
  a.phi_zeta_sq_ok = a.phi_zeta_sq <= a.c6 * slack;
  a.zeta_l2_ok = a.zeta_l2_sq <= grid.horizon() * a.c6 * slack;
  a.integrals_finite = std::isfinite(a.phi_zeta_sq) && std::isfinite(a.zeta_l2_sq) &&
                       std::isfinite(a.phi_zeta_l1) && std::isfinite(a.phi_zeta_zeta_l1) &&
                       std::isfinite(a.phi_u_l1) && std::isfinite(a.phi_u2_l1);
  return a;
}

}  // namespace nonlocal
