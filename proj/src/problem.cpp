#include "nonlocal/problem.hpp"

#include <cmath>

namespace nonlocal {

namespace {

void require_finite(const Field& f, const char* what) {
  for (double v : f)
    if (!std::isfinite(v)) throw ConfigurationError(std::string(what) + " contains non-finite values");
}

SpaceTimeField scale_slices(const Grid& grid, const SpaceTimeField& field, double rate) {
  require_conforming(grid, field, "scale_slices");
  SpaceTimeField out = field;
  for (std::size_t m = 0; m < out.slice_count(); ++m) {
    const double factor = std::exp(rate * grid.time(m));
    for (double& v : out[m]) v *= factor;
  }
  return out;
}

}  // namespace

void Problem::validate() const {
  require_conforming(grid, alpha, "alpha");
  require_conforming(grid, forcing, "forcing");
  grid.require_conforming(initial, "initial");
  for (const Field& s : alpha) require_finite(s, "alpha");
  for (const Field& s : forcing) require_finite(s, "forcing");
  require_finite(initial, "initial");
}

ShiftedProblem positivity_shift(const Problem& problem) {
  const double k = problem.potential.lower_bound();
  if (k == 0.0) return {problem, 0.0};
  ShiftedProblem out{problem, k};
  out.problem.alpha = scale_slices(problem.grid, problem.alpha, k);
  out.problem.forcing = scale_slices(problem.grid, problem.forcing, -k);
  out.problem.potential = problem.potential.shifted(k);
  return out;
}

SpaceTimeField unshift_solution(const Grid& grid, const SpaceTimeField& u_bar, double shift) {
  if (shift == 0.0) return u_bar;
  return scale_slices(grid, u_bar, shift);
}

SpaceTimeField shift_solution(const Grid& grid, const SpaceTimeField& u, double shift) {
  if (shift == 0.0) return u;
  return scale_slices(grid, u, -shift);
}

}  // namespace nonlocal
