#pragma once

#include <cstddef>
#include <span>

#include "nonlocal/grid.hpp"

// Data-parallel inner loops shared by the stencil operators and the Krylov
// solver. The default namespace holds the OpenMP kernels; kernels::serial
// holds plain loops kept as the reference for tests and benchmarks.
//
// Reductions are blocked with a fixed block size and the partial sums are
// combined in block order, so results do not depend on the thread count.
namespace nonlocal::kernels {

inline constexpr std::size_t kReductionBlock = 2048;
/// Below this many entries loops stay single-threaded.
inline constexpr std::size_t kParallelThreshold = 4096;

/// out = lap_h(in) with zero Dirichlet closure.
void laplacian(const Grid& grid, std::span<const double> in, std::span<double> out);

/// out = in + scale * (-lap_h(in) + coeff .* in)
void step_operator(const Grid& grid, std::span<const double> coeff, double scale,
                   std::span<const double> in, std::span<double> out);

double dot(std::span<const double> a, std::span<const double> b);

/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

/// y = x + b * y
void xpby(std::span<const double> x, double b, std::span<double> y);

/// out = in .* scale
void hadamard(std::span<const double> scale, std::span<const double> in, std::span<double> out);

/// Number of worker threads the parallel kernels will use.
int worker_count();
/// Caps the worker count; values < 1 are ignored.
void set_worker_count(int threads);
/// Applies NONLOCAL_THREADS from the environment if set.
void configure_from_environment();

namespace serial {

void laplacian(const Grid& grid, std::span<const double> in, std::span<double> out);
void step_operator(const Grid& grid, std::span<const double> coeff, double scale,
                   std::span<const double> in, std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double a, std::span<const double> x, std::span<double> y);
void xpby(std::span<const double> x, double b, std::span<double> y);
void hadamard(std::span<const double> scale, std::span<const double> in, std::span<double> out);

}  // namespace serial

}  // namespace nonlocal::kernels
