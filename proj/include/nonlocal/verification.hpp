#pragma once

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nonlocal/fixedpoint.hpp"

namespace nonlocal {

/// Closed-form exact solution u* with the forcing that makes it solve the
/// nonlocal problem for the case's alpha and phi.
struct ManufacturedCase {
  std::string name;
  std::vector<Interval> domain;
  double horizon = 1.0;
  PotentialSpec potential{ConstantPotential{0.0}};

  SpaceTimeFunction exact;
  SpaceTimeFunction exact_dt;
  SpaceTimeFunction exact_laplacian;
  SpaceTimeFunction alpha;
  /// int_0^T alpha(x, t) u*(x, t) dt in closed form.
  SpatialFunction zeta_exact;

  double forcing(const Point& x, double t) const;
  double initial(const Point& x) const { return exact(x, 0.0); }

  ManufacturedCase with_potential(PotentialSpec phi) const;

  /// Grid with the given interior counts on the case's domain and horizon.
  Grid grid(std::span<const std::size_t> interior_counts, std::size_t time_steps) const;
  Problem discretize(std::span<const std::size_t> interior_counts, std::size_t time_steps) const;
  SpaceTimeField sample_exact(const Grid& grid) const;
};

/// MMS-1, MMS-2, MMS-3 and HEAT-1 (MMS-1 with phi = 0). Throws
/// ConfigurationError for an unknown name.
ManufacturedCase build_manufactured(std::string_view name, double horizon = 1.0);
std::vector<std::string> manufactured_catalogue();

enum class RefinementAxis { space, time };

struct RefinementLevel {
  std::vector<std::size_t> interior_counts;
  std::size_t time_steps = 1;
};

struct RateRow {
  std::size_t level = 0;
  double h = 0.0;   ///< largest spatial step
  double dt = 0.0;
  double error = 0.0;  ///< max over nodes and time slices of |u - u*|
  double rate = 0.0;   ///< observed order against the previous level; NaN on level 0
};

struct RateTable {
  std::string case_name;
  RefinementAxis axis = RefinementAxis::space;
  TimeScheme scheme = TimeScheme::implicit_euler;
  std::vector<RateRow> rows;
  /// Least-squares slope of log(error) against log(h) or log(dt).
  double fitted_rate = 0.0;
  std::vector<SolveReport> reports;
};

class StudyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves the case at each level and fits the observed order. Needs at
/// least 3 levels; throws StudyError naming the first non-converged level.
RateTable convergence_study(const ManufacturedCase& mms, std::span<const RefinementLevel> levels,
                            RefinementAxis axis, const FixedPointOptions& options);

/// Least-squares slope of log(y) against log(x).
double fit_log_slope(std::span<const double> x, std::span<const double> y);

/// h(x, t) = (T - t)^r prod_i sin(p_i pi (x_i - a_i) / (b_i - a_i)).
struct TestFunction {
  std::array<int, 2> modes{1, 1};
  int power = 1;
};

/// First `count` members ordered by largest mode, then power r = 1..3.
std::vector<TestFunction> test_function_family(int dimension, std::size_t count);

/// Largest normalised defect of the weak-solution identity over the test
/// family. Each member's defect is divided by max(1, ||h||_{L2(space-time)}).
double weak_residual(const Grid& grid, const SpaceTimeField& u, const Field& zeta,
                     const Problem& problem, std::size_t family_size = 12);

class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  double residual_tol = 1e-12;
  std::size_t max_newton = 60;
  double fd_step = 1e-6;
};

/// All-at-once solve of the implicit-Euler recurrences coupled through zeta,
/// by damped Newton with a finite-difference Jacobian and dense LU. Limited
/// to 64 unknowns. Throws OracleFailure if all built-in starts fail.
SpaceTimeField oracle_solve(const Problem& problem, const OracleOptions& options = {});

}  // namespace nonlocal
