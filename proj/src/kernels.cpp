#include "nonlocal/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nonlocal::kernels {

namespace {

// Stencil value at node (i0, i1); i1 is ignored in 1D.
inline double stencil_at(const Grid& grid, std::span<const double> u, std::size_t i0,
                         std::size_t i1, double inv_h0_sq, double inv_h1_sq) {
  if (grid.dimension() == 1) {
    const std::size_t n = grid.count(0);
    const double left = i0 > 0 ? u[i0 - 1] : 0.0;
    const double right = i0 + 1 < n ? u[i0 + 1] : 0.0;
    return (left - 2.0 * u[i0] + right) * inv_h0_sq;
  }
  const std::size_t n0 = grid.count(0);
  const std::size_t n1 = grid.count(1);
  const std::size_t k = i0 * n1 + i1;
  const double up = i0 > 0 ? u[k - n1] : 0.0;
  const double down = i0 + 1 < n0 ? u[k + n1] : 0.0;
  const double left = i1 > 0 ? u[k - 1] : 0.0;
  const double right = i1 + 1 < n1 ? u[k + 1] : 0.0;
  const double c = u[k];
  return (up - 2.0 * c + down) * inv_h0_sq + (left - 2.0 * c + right) * inv_h1_sq;
}

inline double inv_sq(double h) { return 1.0 / (h * h); }

}  // namespace

void laplacian(const Grid& grid, std::span<const double> in, std::span<double> out) {
  const double a0 = inv_sq(grid.spacing(0));
  const double a1 = grid.dimension() == 2 ? inv_sq(grid.spacing(1)) : 0.0;
  const auto n0 = static_cast<std::ptrdiff_t>(grid.count(0));
  const std::size_t n1 = grid.dimension() == 2 ? grid.count(1) : 1;
  const bool par = in.size() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t i0 = 0; i0 < n0; ++i0) {
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      out[static_cast<std::size_t>(i0) * n1 + i1] =
          stencil_at(grid, in, static_cast<std::size_t>(i0), i1, a0, a1);
    }
  }
}

void step_operator(const Grid& grid, std::span<const double> coeff, double scale,
                   std::span<const double> in, std::span<double> out) {
  const double a0 = inv_sq(grid.spacing(0));
  const double a1 = grid.dimension() == 2 ? inv_sq(grid.spacing(1)) : 0.0;
  const auto n0 = static_cast<std::ptrdiff_t>(grid.count(0));
  const std::size_t n1 = grid.dimension() == 2 ? grid.count(1) : 1;
  const bool par = in.size() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t i0 = 0; i0 < n0; ++i0) {
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      const std::size_t k = static_cast<std::size_t>(i0) * n1 + i1;
      const double lap = stencil_at(grid, in, static_cast<std::size_t>(i0), i1, a0, a1);
      out[k] = in[k] + scale * (coeff[k] * in[k] - lap);
    }
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  if (blocks <= 1) return serial::dot(a, b);
  std::vector<double> partial(blocks, 0.0);
  const bool par = n >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(blocks); ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    partial[static_cast<std::size_t>(blk)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const bool par = x.size() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpby(std::span<const double> x, double b, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const bool par = x.size() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

void hadamard(std::span<const double> scale, std::span<const double> in, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  const bool par = in.size() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = scale[i] * in[i];
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_worker_count(int threads) {
  if (threads < 1) return;
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
}

void configure_from_environment() {
  const char* env = std::getenv("NONLOCAL_THREADS");
  if (env == nullptr) return;
  try {
    const int requested = std::stoi(env);
    if (requested >= 1) set_worker_count(std::min(requested, worker_count()));
  } catch (const std::exception&) {
    // unparsable value: keep the runtime default
  }
}

namespace serial {

void laplacian(const Grid& grid, std::span<const double> in, std::span<double> out) {
  const double a0 = inv_sq(grid.spacing(0));
  const double a1 = grid.dimension() == 2 ? inv_sq(grid.spacing(1)) : 0.0;
  const std::size_t n1 = grid.dimension() == 2 ? grid.count(1) : 1;
  for (std::size_t i0 = 0; i0 < grid.count(0); ++i0)
    for (std::size_t i1 = 0; i1 < n1; ++i1)
      out[i0 * n1 + i1] = stencil_at(grid, in, i0, i1, a0, a1);
}

void step_operator(const Grid& grid, std::span<const double> coeff, double scale,
                   std::span<const double> in, std::span<double> out) {
  laplacian(grid, in, out);
  for (std::size_t k = 0; k < in.size(); ++k)
    out[k] = in[k] + scale * (coeff[k] * in[k] - out[k]);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void xpby(std::span<const double> x, double b, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + b * y[i];
}

void hadamard(std::span<const double> scale, std::span<const double> in, std::span<double> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = scale[i] * in[i];
}

}  // namespace serial

}  // namespace nonlocal::kernels
