#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "nonlocal/audit.hpp"
#include "nonlocal/parabolic.hpp"
#include "nonlocal/problem.hpp"

namespace nonlocal {

inline constexpr double kNoTruncation = std::numeric_limits<double>::infinity();
/// Floor under the L1 normalisation of the fixed-point residual.
inline constexpr double kResidualFloor = 1e-30;

/// Sequence of truncation levels k for an unbounded potential.
struct TruncationSchedule {
  enum class Mode {
    automatic,  ///< geometric default for unbounded potentials, none otherwise
    none,
    levels,     ///< the explicit strictly increasing list below
  };
  Mode mode = Mode::automatic;
  std::vector<double> levels;

  static TruncationSchedule none() { return {Mode::none, {}}; }
  static TruncationSchedule explicit_levels(std::vector<double> k) {
    return {Mode::levels, std::move(k)};
  }
};

/// k_i = 2^i k0 for i = 0..20 with k0 = max(1, phi(0)).
std::vector<double> default_truncation_levels(const PotentialSpec& potential);

struct FixedPointOptions {
  double damping = 0.5;  ///< theta in w <- (1 - theta) w + theta Psi(w)
  double tol = 1e-10;
  std::size_t max_iter = 500;
  std::optional<Field> initial_guess;  ///< zero field when empty
  TruncationSchedule truncation;
  TimeScheme scheme = TimeScheme::implicit_euler;
  double lin_tol = 1e-10;
  LinearSolverKind solver = LinearSolverKind::automatic;
  /// Additional initial guesses; distinct fixed points reached are counted.
  std::vector<Field> multi_start;
  /// Solve the exp(-K t) rescaled problem when the potential declares K > 0.
  bool apply_positivity_shift = true;

  /// Throws ConfigurationError on out-of-range values.
  void validate(const Grid& grid) const;
};

struct StageReport {
  double level = kNoTruncation;
  std::size_t iterations = 0;
  bool converged = false;
  /// max-norm distance between this stage's u and the previous stage's; NaN for the first.
  double gap_to_previous = std::numeric_limits<double>::quiet_NaN();
  /// max over nodes of the untruncated potential at the stage's zeta.
  double max_potential = 0.0;
};

struct SolveReport {
  bool converged = false;
  std::size_t iterations = 0;  ///< Psi evaluations over all stages
  std::vector<double> residual_history;
  double final_k = kNoTruncation;
  EnergyReport energy;
  double c1 = 0.0;
  double c2 = 0.0;               ///< time integral of ||alpha(., t)||
  double self_map_radius = 0.0;  ///< C2 sqrt(C1)
  BoundAudit bound_audit;
  std::vector<StageReport> stages;
  std::size_t distinct_fixed_points = 0;
  std::size_t multi_start_runs = 0;
  double shift = 0.0;  ///< K used by the positivity shift, 0 when not applied
  TimeScheme scheme = TimeScheme::implicit_euler;
};

struct PsiResult {
  Field zeta;
  SpaceTimeField u;
  Field coefficient;
};

/// Psi(w) = int_0^T alpha u_w dt where u_w solves the frozen problem with
/// coefficient min(phi(w), level).
PsiResult psi_map(const Problem& problem, const Field& w, double level,
                  const FrozenSolveOptions& frozen = {});

struct NonlocalSolution {
  SpaceTimeField u;
  Field zeta;
  /// Frozen coefficient of the final inner solve, in shifted variables.
  Field coefficient;
  SolveReport report;
};

/// Damped Picard iteration on Psi, staged over the truncation schedule.
///
/// Non-convergence is reported through report.converged, not thrown.
/// Linear-solver failures propagate as SolverError.
NonlocalSolution solve_nonlocal(const Problem& problem, const FixedPointOptions& options = {});

double alpha_norm_integral(const Problem& problem);

struct SelfMapAudit {
  double radius = 0.0;
  double worst_ratio = 0.0;  ///< max ||Psi(w)||_1 / R over the samples
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool passed = true;  ///< worst_ratio <= 1 + 1e-6
};

/// Samples w with ||w||_1 <= R = C2 sqrt(C1) and checks ||Psi(w)||_1 <= R.
/// A potential declaring K > 0 is shifted first. The (shifted) potential
/// must be bounded; throws PreconditionError otherwise.
SelfMapAudit self_map_audit(const Problem& problem, std::size_t samples, std::uint64_t seed = 42,
                            const FrozenSolveOptions& frozen = {});

}  // namespace nonlocal
