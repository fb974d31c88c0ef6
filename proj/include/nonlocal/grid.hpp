#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "nonlocal/errors.hpp"

namespace nonlocal {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
};

/// Spatial coordinates of a node. Unused trailing components are zero.
using Point = std::array<double, 2>;

class Field;

/// Tensor-product mesh of a 1D interval or 2D rectangle with homogeneous
/// Dirichlet closure, plus a uniform time grid on [0, T].
///
/// Only interior nodes are stored. Flattening is row-major: in 2D the node
/// (i0, i1) sits at index i0 * count(1) + i1.
class Grid {
 public:
  static constexpr int kMaxDimension = 2;

  /// Throws ConfigurationError on a degenerate extent, zero node count,
  /// T <= 0, M == 0, or a dimension outside {1, 2}.
  static Grid build(std::span<const Interval> extents,
                    std::span<const std::size_t> interior_counts, double horizon,
                    std::size_t time_steps);

  int dimension() const { return dim_; }
  const Interval& extent(int axis) const { return extents_[axis]; }
  std::size_t count(int axis) const { return counts_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }

  /// Number of interior nodes.
  std::size_t size() const { return size_; }
  /// Quadrature weight of one node (product of spacings).
  double cell_volume() const { return cell_volume_; }
  /// Measure of the spatial domain.
  double domain_measure() const;

  double horizon() const { return horizon_; }
  std::size_t time_steps() const { return steps_; }
  double dt() const { return dt_; }
  double time(std::size_t m) const { return static_cast<double>(m) * dt_; }

  double coordinate(int axis, std::size_t i) const {
    return extents_[axis].lo + static_cast<double>(i + 1) * spacing_[axis];
  }
  Point point(std::size_t index) const;

  /// Same spatial mesh with a different time grid.
  Grid with_time(double horizon, std::size_t time_steps) const;

  bool conforms(const Field& field) const;
  void require_conforming(const Field& field, const char* what) const;

 private:
  int dim_ = 1;
  std::array<Interval, kMaxDimension> extents_{};
  std::array<std::size_t, kMaxDimension> counts_{1, 1};
  std::array<double, kMaxDimension> spacing_{1.0, 1.0};
  std::size_t size_ = 0;
  double cell_volume_ = 0.0;
  double horizon_ = 0.0;
  std::size_t steps_ = 0;
  double dt_ = 0.0;
};

/// One real value per interior node.
class Field {
 public:
  Field() = default;
  explicit Field(std::size_t size, double value = 0.0) : values_(size, value) {}
  explicit Field(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }

  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool operator==(const Field&) const = default;

 private:
  std::vector<double> values_;
};

/// One Field per time node t_m = m * dt, m = 0..M.
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  SpaceTimeField(std::size_t slices, std::size_t nodes) : slices_(slices, Field(nodes)) {}
  explicit SpaceTimeField(std::vector<Field> slices) : slices_(std::move(slices)) {}

  std::size_t slice_count() const { return slices_.size(); }
  std::size_t node_count() const { return slices_.empty() ? 0 : slices_.front().size(); }
  Field& operator[](std::size_t m) { return slices_[m]; }
  const Field& operator[](std::size_t m) const { return slices_[m]; }

  auto begin() { return slices_.begin(); }
  auto end() { return slices_.end(); }
  auto begin() const { return slices_.begin(); }
  auto end() const { return slices_.end(); }

  bool operator==(const SpaceTimeField&) const = default;

 private:
  std::vector<Field> slices_;
};

void require_conforming(const Grid& grid, const SpaceTimeField& field, const char* what);

using SpatialFunction = std::function<double(const Point&)>;
using SpaceTimeFunction = std::function<double(const Point&, double)>;

Field sample(const Grid& grid, const SpatialFunction& fn);
SpaceTimeField sample(const Grid& grid, const SpaceTimeFunction& fn);
SpaceTimeField constant_in_time(const Grid& grid, const Field& slice);

/// Second-order central-difference Laplacian; boundary neighbours read as 0.
Field laplacian_apply(const Grid& grid, const Field& field);

double norm_l2(const Grid& grid, const Field& field);
double norm_l1(const Grid& grid, const Field& field);
double norm_max(const Field& field);
/// Forward differences on every edge, including the edges that touch the
/// zero boundary, so that -<lap v, v> * cell_volume == seminorm_h1(v)^2.
double seminorm_h1(const Grid& grid, const Field& field);
/// Quadrature inner product sum(a_i b_i) * cell_volume.
double inner(const Grid& grid, const Field& a, const Field& b);

double max_abs_difference(const SpaceTimeField& a, const SpaceTimeField& b);
double min_value(const SpaceTimeField& field);

/// Trapezoid weights over the M+1 time nodes.
std::vector<double> trapezoid_weights(const Grid& grid);

/// Per-node trapezoid approximation of the integral over [0, T] of alpha * u.
Field weighted_time_integral(const Grid& grid, const SpaceTimeField& alpha,
                             const SpaceTimeField& u);

/// Trapezoid in time of the per-slice L2 norm: integral over [0, T] of ||g(., t)||.
double time_integral_of_l2(const Grid& grid, const SpaceTimeField& g);

/// Smallest eigenvalue of the 1D or 2D discrete Dirichlet Laplacian (negated).
double discrete_laplacian_min_eigenvalue(const Grid& grid);
/// Discrete Poincare constant 1 / lambda_min: ||v||^2 <= c_P |v|_{H1}^2.
double discrete_poincare_constant(const Grid& grid);

}  // namespace nonlocal
