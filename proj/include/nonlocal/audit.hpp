#pragma once

#include "nonlocal/parabolic.hpp"
#include "nonlocal/problem.hpp"

namespace nonlocal {

inline constexpr double kAuditTolerance = 1e-6;

/// Integrability and size bounds for a computed (u, zeta) pair of a
/// nonnegative-potential problem.
struct BoundAudit {
  double c1 = 0.0;
  /// max over nodes of the time-trapezoid integral of alpha(x, .)^2
  double alpha_sup_sq = 0.0;
  double c6 = 0.0;                ///< C1 * alpha_sup_sq
  double phi_zeta_sq = 0.0;       ///< int phi(zeta) zeta^2 dx
  double zeta_l2_sq = 0.0;        ///< int zeta^2 dx
  double phi_zeta_l1 = 0.0;       ///< int phi(zeta) dx
  double phi_zeta_zeta_l1 = 0.0;  ///< int |phi(zeta) zeta| dx
  double phi_u_l1 = 0.0;          ///< int int phi(zeta) |u|
  double phi_u2_l1 = 0.0;         ///< int int phi(zeta) u^2
  bool phi_zeta_sq_ok = true;     ///< phi_zeta_sq <= C6 (1 + 1e-6)
  bool zeta_l2_ok = true;         ///< zeta_l2_sq <= T C6 (1 + 1e-6)
  bool integrals_finite = true;

  bool all_passed() const { return phi_zeta_sq_ok && zeta_l2_ok && integrals_finite; }
};

BoundAudit bound_audit(const Grid& grid, const SpaceTimeField& u, const Field& zeta,
                       const Problem& problem, TimeScheme scheme = TimeScheme::implicit_euler);

}  // namespace nonlocal
