#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/linear_solvers.hpp"

using namespace nonlocal;

TEST_CASE("parallel kernels agree with the serial reference") {
  std::mt19937_64 rng(3);
  const Grid grids[] = {testing::line(0.0, 1.0, 20000), testing::rect({0, 1}, {0, 1}, 130, 170),
                        testing::rect({0, 1}, {0, 2}, 7, 9)};
  for (const Grid& g : grids) {
    const std::size_t n = g.size();
    const Field a = testing::random_field(n, rng), b = testing::random_field(n, rng);
    const Field c = testing::random_field(n, rng, 0.0, 3.0);
    std::vector<double> p(n), s(n);

    kernels::laplacian(g, a.values(), p);
    kernels::serial::laplacian(g, a.values(), s);
    CHECK(p == s);

    kernels::step_operator(g, c.values(), 0.01, a.values(), p);
    kernels::serial::step_operator(g, c.values(), 0.01, a.values(), s);
    CHECK(p == s);

    kernels::hadamard(c.values(), a.values(), p);
    kernels::serial::hadamard(c.values(), a.values(), s);
    CHECK(p == s);

    p = b.vector();
    s = b.vector();
    kernels::axpy(0.3, a.values(), p);
    kernels::serial::axpy(0.3, a.values(), s);
    CHECK(p == s);
    kernels::xpby(a.values(), -0.7, p);
    kernels::serial::xpby(a.values(), -0.7, s);
    CHECK(p == s);

    const double dp = kernels::dot(a.values(), b.values());
    const double ds = kernels::serial::dot(a.values(), b.values());
    CHECK(dp == doctest::Approx(ds).epsilon(1e-12));
  }
}

TEST_CASE("parallel dot does not depend on the thread count") {
  std::mt19937_64 rng(5);
  const Field a = testing::random_field(100000, rng), b = testing::random_field(100000, rng);
  const int before = kernels::worker_count();
  kernels::set_worker_count(1);
  const double one = kernels::dot(a.values(), b.values());
  kernels::set_worker_count(std::max(before, 4));
  const double many = kernels::dot(a.values(), b.values());
  kernels::set_worker_count(before);
  CHECK(one == many);
}

TEST_CASE("laplacian_apply matches the kernel") {
  std::mt19937_64 rng(9);
  const Grid g = testing::rect({0, 1}, {0, 1}, 12, 7);
  const Field a = testing::random_field(g.size(), rng);
  std::vector<double> k(g.size());
  kernels::laplacian(g, a.values(), k);
  CHECK(laplacian_apply(g, a).vector() == k);
}

TEST_CASE("step-system solvers agree") {
  std::mt19937_64 rng(13);
  const Grid g = testing::line(0.0, 1.0, 200);
  const Field c = testing::random_field(g.size(), rng, 0.0, 5.0);
  const Field rhs = testing::random_field(g.size(), rng);
  std::vector<double> xt(g.size()), xc(g.size()), xs(g.size());
  tridiagonal_solve(g, c.values(), 0.01, rhs.values(), xt);
  const auto stats = pcg_solve(g, c.values(), 0.01, rhs.values(), xc, 1e-13);
  pcg_solve(g, c.values(), 0.01, rhs.values(), xs, 1e-13, ExecutionMode::serial);
  CHECK(stats.relative_residual <= 1e-13);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(xc[i] == doctest::Approx(xt[i]).epsilon(1e-10));
    CHECK(xs[i] == doctest::Approx(xt[i]).epsilon(1e-10));
  }
  std::vector<double> back(g.size());
  kernels::step_operator(g, c.values(), 0.01, xt, back);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(back[i] == doctest::Approx(rhs[i]).epsilon(1e-10));

  const Grid r = testing::rect({0, 1}, {0, 1}, 5, 5);
  CHECK_THROWS_AS(tridiagonal_solve(r, Field(25).values(), 0.1, Field(25, 1.0).values(), xt),
                  PreconditionError);
}

TEST_CASE("conjugate gradient reports loss of definiteness") {
  const Grid g = testing::rect({0, 1}, {0, 1}, 4, 4);
  const Field c(16, -1e4);
  const Field rhs(16, 1.0);
  std::vector<double> x(16);
  CHECK_THROWS_AS(pcg_solve(g, c.values(), 1.0, rhs.values(), x, 1e-12), SolverError);
}
