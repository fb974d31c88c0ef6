#include "nonlocal/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <string>

namespace nonlocal {

std::vector<double> default_truncation_levels(const PotentialSpec& potential) {
  const double k0 = std::max(1.0, potential(0.0));
  std::vector<double> levels;
  for (int i = 0; i <= 20; ++i) levels.push_back(std::ldexp(k0, i));
  return levels;
}

void FixedPointOptions::validate(const Grid& grid) const {
  if (!(damping > 0.0 && damping <= 1.0)) throw ConfigurationError("damping must lie in (0, 1]");
  if (!(tol > 0.0)) throw ConfigurationError("tol must be positive");
  if (max_iter < 1) throw ConfigurationError("max_iter must be at least 1");
  if (!(lin_tol > 0.0)) throw ConfigurationError("lin_tol must be positive");
  if (initial_guess) grid.require_conforming(*initial_guess, "initial_guess");
  for (const Field& g : multi_start) grid.require_conforming(g, "multi_start");
  if (truncation.mode == TruncationSchedule::Mode::levels) {
    if (truncation.levels.empty())
      throw ConfigurationError("truncation schedule must list at least one level");
    for (std::size_t i = 0; i < truncation.levels.size(); ++i) {
      if (!(truncation.levels[i] > 0.0))
        throw ConfigurationError("truncation levels must be positive");
      if (i > 0 && !(truncation.levels[i] > truncation.levels[i - 1]))
        throw ConfigurationError("truncation levels must be strictly increasing");
    }
  }
}

PsiResult psi_map(const Problem& problem, const Field& w, double level,
                  const FrozenSolveOptions& frozen) {
  problem.grid.require_conforming(w, "psi_map(w)");
  const PotentialSpec spec =
      std::isinf(level) ? problem.potential : truncate(problem.potential, level);
  PsiResult out;
  out.coefficient = Field(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.coefficient[i] = spec(w[i]);
  out.u = solve_frozen(problem.grid, out.coefficient, problem.forcing, problem.initial, frozen);
  out.zeta = weighted_time_integral(problem.grid, problem.alpha, out.u);
  return out;
}

double alpha_norm_integral(const Problem& problem) {
  return time_integral_of_l2(problem.grid, problem.alpha);
}

namespace {

struct StageOutcome {
  PsiResult psi;
  bool converged = false;
  std::size_t iterations = 0;
};

StageOutcome run_picard(const Problem& problem, double level, Field w,
                        const FixedPointOptions& options, const FrozenSolveOptions& frozen,
                        std::vector<double>& history) {
  const Grid& grid = problem.grid;
  StageOutcome out;
  for (std::size_t j = 1; j <= options.max_iter; ++j) {
    out.psi = psi_map(problem, w, level, frozen);
    out.iterations = j;
    double diff = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) diff += std::abs(out.psi.zeta[i] - w[i]);
    diff *= grid.cell_volume();
    const double residual = diff / std::max(norm_l1(grid, w), kResidualFloor);
    history.push_back(residual);
    if (residual <= options.tol) {
      out.converged = true;
      return out;
    }
    const double theta = options.damping;
    for (std::size_t i = 0; i < w.size(); ++i)
      w[i] = (1.0 - theta) * w[i] + theta * out.psi.zeta[i];
  }
  return out;
}

// One full staged solve from one initial guess. Reports everything except
// the multi-start count.
NonlocalSolution solve_from(const Problem& problem, const FixedPointOptions& options,
                      const Field& initial_guess) {
  const double declared = problem.potential.lower_bound();
  const bool shifting = options.apply_positivity_shift && declared > 0.0;
  Problem working = shifting ? positivity_shift(problem).problem : problem;
  const double floor = (!shifting && declared > 0.0) ? -declared : 0.0;

  std::vector<double> levels;
  switch (options.truncation.mode) {
    case TruncationSchedule::Mode::none:
      levels = {kNoTruncation};
      break;
    case TruncationSchedule::Mode::automatic:
      if (working.potential.is_bounded() || floor < 0.0)
        levels = {kNoTruncation};
      else
        levels = default_truncation_levels(working.potential);
      break;
    case TruncationSchedule::Mode::levels:
      if (floor < 0.0)
        throw ConfigurationError(
            "a truncation schedule needs a nonnegative potential; enable the positivity shift");
      levels = options.truncation.levels;
      break;
  }

  FrozenSolveOptions frozen;
  frozen.scheme = options.scheme;
  frozen.lin_tol = options.lin_tol;
  frozen.solver = options.solver;
  frozen.coefficient_floor = floor;

  NonlocalSolution result;
  SolveReport& report = result.report;
  report.shift = shifting ? declared : 0.0;
  report.scheme = options.scheme;

  Field w = initial_guess;
  StageOutcome last;
  bool stabilized = false;
  for (std::size_t s = 0; s < levels.size(); ++s) {
    StageOutcome stage = run_picard(working, levels[s], w, options, frozen, report.residual_history);
    StageReport sr;
    sr.level = levels[s];
    sr.iterations = stage.iterations;
    sr.converged = stage.converged;
    for (double z : stage.psi.zeta)
      sr.max_potential = std::max(sr.max_potential, working.potential(z));
    if (s > 0) sr.gap_to_previous = max_abs_difference(stage.psi.u, last.psi.u);
    report.iterations += stage.iterations;
    report.stages.push_back(sr);
    report.final_k = levels[s];
    last = std::move(stage);
    if (!last.converged) break;
    if (s > 0 && sr.gap_to_previous <= options.tol) {
      stabilized = true;
      break;
    }
    w = last.psi.zeta;
  }
  report.converged = last.converged && (levels.size() == 1 || stabilized);

  if (!std::isinf(report.final_k))
    working.potential = truncate(working.potential, report.final_k);

  report.c1 = energy_constant(working.grid, working.initial, working.forcing, options.scheme);
  report.c2 = alpha_norm_integral(working);
  report.self_map_radius = report.c2 * std::sqrt(report.c1);
  report.energy = energy_report(working.grid, last.psi.u, last.psi.coefficient, working.forcing,
                                working.initial, options.scheme);
  if (floor == 0.0)
    report.bound_audit = bound_audit(working.grid, last.psi.u, last.psi.zeta, working, options.scheme);

  result.u = unshift_solution(working.grid, last.psi.u, report.shift);
  result.zeta = std::move(last.psi.zeta);
  result.coefficient = std::move(last.psi.coefficient);
  return result;
}

}  // namespace

NonlocalSolution solve_nonlocal(const Problem& problem, const FixedPointOptions& options) {
  problem.validate();
  options.validate(problem.grid);

  const Field start = options.initial_guess.value_or(Field(problem.grid.size()));
  NonlocalSolution main = solve_from(problem, options, start);
  main.report.multi_start_runs = options.multi_start.size();

  std::vector<Field> fixed_points;
  if (main.report.converged) fixed_points.push_back(main.zeta);

  const auto starts = static_cast<std::ptrdiff_t>(options.multi_start.size());
  std::vector<std::optional<Field>> reached(options.multi_start.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < starts; ++s) {
    try {
      auto r = solve_from(problem, options, options.multi_start[static_cast<std::size_t>(s)]);
      if (r.report.converged) reached[static_cast<std::size_t>(s)] = std::move(r.zeta);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  // Two fixed points are distinct when their L1 gap exceeds 10 tol, scaled by
  // max(1, ||zeta||_1) since tol is relative.
  const Grid& grid = problem.grid;
  for (const auto& z : reached) {
    if (!z) continue;
    bool is_new = true;
    for (const Field& known : fixed_points) {
      double gap = 0.0;
      for (std::size_t i = 0; i < known.size(); ++i) gap += std::abs((*z)[i] - known[i]);
      gap *= grid.cell_volume();
      if (gap <= 10.0 * options.tol * std::max(1.0, norm_l1(grid, known))) {
        is_new = false;
        break;
      }
    }
    if (is_new) fixed_points.push_back(*z);
  }
  main.report.distinct_fixed_points = fixed_points.size();
  return main;
}

SelfMapAudit self_map_audit(const Problem& problem, std::size_t samples, std::uint64_t seed,
                            const FrozenSolveOptions& frozen) {
  problem.validate();
  const Problem working = positivity_shift(problem).problem;
  if (!working.potential.is_bounded())
    throw PreconditionError("self_map_audit needs a bounded (truncated) potential");

  SelfMapAudit audit;
  audit.samples = samples;
  audit.seed = seed;
  const Grid& grid = working.grid;
  const double c1 = energy_constant(grid, working.initial, working.forcing, frozen.scheme);
  audit.radius = alpha_norm_integral(working) * std::sqrt(c1);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::uniform_real_distribution<double> fraction(0.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    Field w(grid.size());
    for (double& v : w) v = value(rng);
    // Every fourth sample sits on the sphere ||w||_1 = R, the rest inside.
    const double target = (s % 4 == 0 ? 1.0 : fraction(rng)) * audit.radius;
    const double norm = norm_l1(grid, w);
    for (double& v : w) v = norm > 0.0 ? v * target / norm : 0.0;

    const PsiResult psi = psi_map(working, w, kNoTruncation, frozen);
    const double image = norm_l1(grid, psi.zeta);
    double ratio = 0.0;
    if (audit.radius > 0.0)
      ratio = image / audit.radius;
    else if (image > 0.0)
      ratio = std::numeric_limits<double>::infinity();
    audit.worst_ratio = std::max(audit.worst_ratio, ratio);
  }
  audit.passed = audit.worst_ratio <= 1.0 + kAuditTolerance;
  return audit;
}

}  // namespace nonlocal
