#include "nonlocal/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nonlocal/kernels.hpp"

namespace nonlocal {

Grid Grid::build(std::span<const Interval> extents, std::span<const std::size_t> interior_counts,
                 double horizon, std::size_t time_steps) {
  if (extents.empty() || extents.size() > kMaxDimension)
    throw ConfigurationError("grid dimension must be 1 or 2, got " +
                             std::to_string(extents.size()));
  if (extents.size() != interior_counts.size())
    throw ConfigurationError("grid extents and interior_counts differ in length");
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw ConfigurationError("time horizon T must be positive and finite");
  if (time_steps < 1) throw ConfigurationError("time_steps must be at least 1");

  Grid g;
  g.dim_ = static_cast<int>(extents.size());
  g.size_ = 1;
  g.cell_volume_ = 1.0;
  for (int a = 0; a < g.dim_; ++a) {
    const Interval& iv = extents[a];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.hi > iv.lo))
      throw ConfigurationError("extent on axis " + std::to_string(a) +
                               " must satisfy lo < hi");
    if (interior_counts[a] < 1)
      throw ConfigurationError("interior count on axis " + std::to_string(a) +
                               " must be at least 1");
    g.extents_[a] = iv;
    g.counts_[a] = interior_counts[a];
    g.spacing_[a] = iv.length() / static_cast<double>(interior_counts[a] + 1);
    g.size_ *= interior_counts[a];
    g.cell_volume_ *= g.spacing_[a];
  }
  g.horizon_ = horizon;
  g.steps_ = time_steps;
  g.dt_ = horizon / static_cast<double>(time_steps);
  return g;
}

double Grid::domain_measure() const {
  double m = 1.0;
  for (int a = 0; a < dim_; ++a) m *= extents_[a].length();
  return m;
}

Point Grid::point(std::size_t index) const {
  if (dim_ == 1) return {coordinate(0, index), 0.0};
  const std::size_t i0 = index / counts_[1];
  const std::size_t i1 = index % counts_[1];
  return {coordinate(0, i0), coordinate(1, i1)};
}

Grid Grid::with_time(double horizon, std::size_t time_steps) const {
  std::vector<Interval> ext(extents_.begin(), extents_.begin() + dim_);
  std::vector<std::size_t> cnt(counts_.begin(), counts_.begin() + dim_);
  return build(ext, cnt, horizon, time_steps);
}

bool Grid::conforms(const Field& field) const { return field.size() == size_; }

void Grid::require_conforming(const Field& field, const char* what) const {
  if (!conforms(field))
    throw DimensionError(std::string(what) + ": field has " + std::to_string(field.size()) +
                         " values, grid has " + std::to_string(size_) + " interior nodes");
}

void require_conforming(const Grid& grid, const SpaceTimeField& field, const char* what) {
  if (field.slice_count() != grid.time_steps() + 1)
    throw DimensionError(std::string(what) + ": expected " +
                         std::to_string(grid.time_steps() + 1) + " time slices, got " +
                         std::to_string(field.slice_count()));
  for (const Field& s : field) grid.require_conforming(s, what);
}

Field sample(const Grid& grid, const SpatialFunction& fn) {
  Field out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = fn(grid.point(i));
  return out;
}

SpaceTimeField sample(const Grid& grid, const SpaceTimeFunction& fn) {
  SpaceTimeField out(grid.time_steps() + 1, grid.size());
  for (std::size_t m = 0; m <= grid.time_steps(); ++m) {
    const double t = grid.time(m);
    for (std::size_t i = 0; i < grid.size(); ++i) out[m][i] = fn(grid.point(i), t);
  }
  return out;
}

SpaceTimeField constant_in_time(const Grid& grid, const Field& slice) {
  grid.require_conforming(slice, "constant_in_time");
  return SpaceTimeField(std::vector<Field>(grid.time_steps() + 1, slice));
}

Field laplacian_apply(const Grid& grid, const Field& field) {
  grid.require_conforming(field, "laplacian_apply");
  Field out(field.size());
  kernels::laplacian(grid, field.values(), out.values());
  return out;
}

double norm_l2(const Grid& grid, const Field& field) {
  grid.require_conforming(field, "norm_l2");
  return std::sqrt(kernels::dot(field.values(), field.values()) * grid.cell_volume());
}

double norm_l1(const Grid& grid, const Field& field) {
  grid.require_conforming(field, "norm_l1");
  double s = 0.0;
  for (double v : field) s += std::abs(v);
  return s * grid.cell_volume();
}

double norm_max(const Field& field) {
  double m = 0.0;
  for (double v : field) m = std::max(m, std::abs(v));
  return m;
}

double seminorm_h1(const Grid& grid, const Field& field) {
  grid.require_conforming(field, "seminorm_h1");
  const std::size_t n0 = grid.count(0);
  const std::size_t n1 = grid.dimension() == 2 ? grid.count(1) : 1;
  auto at = [&](std::ptrdiff_t i0, std::ptrdiff_t i1) -> double {
    if (i0 < 0 || i1 < 0 || i0 >= static_cast<std::ptrdiff_t>(n0) ||
        i1 >= static_cast<std::ptrdiff_t>(n1))
      return 0.0;
    return field[static_cast<std::size_t>(i0) * n1 + static_cast<std::size_t>(i1)];
  };
  double s0 = 0.0;
  for (std::ptrdiff_t i1 = 0; i1 < static_cast<std::ptrdiff_t>(n1); ++i1)
    for (std::ptrdiff_t i0 = -1; i0 < static_cast<std::ptrdiff_t>(n0); ++i0) {
      const double d = at(i0 + 1, i1) - at(i0, i1);
      s0 += d * d;
    }
  double total = s0 / (grid.spacing(0) * grid.spacing(0));
  if (grid.dimension() == 2) {
    double s1 = 0.0;
    for (std::ptrdiff_t i0 = 0; i0 < static_cast<std::ptrdiff_t>(n0); ++i0)
      for (std::ptrdiff_t i1 = -1; i1 < static_cast<std::ptrdiff_t>(n1); ++i1) {
        const double d = at(i0, i1 + 1) - at(i0, i1);
        s1 += d * d;
      }
    total += s1 / (grid.spacing(1) * grid.spacing(1));
  }
  return std::sqrt(total * grid.cell_volume());
}

double inner(const Grid& grid, const Field& a, const Field& b) {
  grid.require_conforming(a, "inner");
  grid.require_conforming(b, "inner");
  return kernels::dot(a.values(), b.values()) * grid.cell_volume();
}

double max_abs_difference(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (a.slice_count() != b.slice_count() || a.node_count() != b.node_count())
    throw DimensionError("max_abs_difference: shape mismatch");
  double m = 0.0;
  for (std::size_t s = 0; s < a.slice_count(); ++s)
    for (std::size_t i = 0; i < a.node_count(); ++i) m = std::max(m, std::abs(a[s][i] - b[s][i]));
  return m;
}

double min_value(const SpaceTimeField& field) {
  double m = std::numeric_limits<double>::infinity();
  for (const Field& s : field)
    for (double v : s) m = std::min(m, v);
  return m;
}

std::vector<double> trapezoid_weights(const Grid& grid) {
  std::vector<double> w(grid.time_steps() + 1, grid.dt());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

Field weighted_time_integral(const Grid& grid, const SpaceTimeField& alpha,
                             const SpaceTimeField& u) {
  require_conforming(grid, alpha, "weighted_time_integral(alpha)");
  require_conforming(grid, u, "weighted_time_integral(u)");
  const auto w = trapezoid_weights(grid);
  Field zeta(grid.size());
  for (std::size_t m = 0; m < w.size(); ++m) {
    const Field& a = alpha[m];
    const Field& v = u[m];
    for (std::size_t i = 0; i < zeta.size(); ++i) zeta[i] += w[m] * a[i] * v[i];
  }
  return zeta;
}

double time_integral_of_l2(const Grid& grid, const SpaceTimeField& g) {
  require_conforming(grid, g, "time_integral_of_l2");
  const auto w = trapezoid_weights(grid);
  double s = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m) s += w[m] * norm_l2(grid, g[m]);
  return s;
}

double discrete_laplacian_min_eigenvalue(const Grid& grid) {
  double lambda = 0.0;
  for (int a = 0; a < grid.dimension(); ++a) {
    const double h = grid.spacing(a);
    const double s = std::sin(std::numbers::pi * h / (2.0 * grid.extent(a).length()));
    lambda += 4.0 / (h * h) * s * s;
  }
  return lambda;
}

double discrete_poincare_constant(const Grid& grid) {
  return 1.0 / discrete_laplacian_min_eigenvalue(grid);
}

}  // namespace nonlocal
