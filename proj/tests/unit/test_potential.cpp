#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "nonlocal/potential.hpp"
#include "nonlocal/problem.hpp"

using namespace nonlocal;
using doctest::Approx;

namespace {

PotentialSpec square() { return PotentialSpec(PolynomialPotential{{0.0, 0.0, 1.0}}); }

std::vector<double> sample_points() {
  std::vector<double> xs;
  for (int i = -400; i <= 400; ++i) xs.push_back(0.025 * i);
  return xs;
}

}  // namespace

TEST_CASE("potential families evaluate") {
  CHECK(evaluate(PotentialSpec(ConstantPotential{3.0}), -7.0) == 3.0);
  CHECK(evaluate(square(), 1.5) == Approx(2.25));
  CHECK(evaluate(PotentialSpec(ExpAbsPotential{1.0}), 2.0) == Approx(7.38905609893065));
  CHECK(evaluate(PotentialSpec(ExpAbsPotential{1.0}), -2.0) == Approx(7.38905609893065));
  CHECK(evaluate(PotentialSpec(ExpPotential{-1.0}), 1.0) == Approx(std::exp(-1.0)));
  CHECK(evaluate(PotentialSpec(AbsAffinePotential{1.0, 2.0}), -0.5) == Approx(2.0));
  const PotentialSpec well(GaussianWellPotential{2.0, 0.5, 1.0}, 1.0);
  CHECK(evaluate(well, 0.0) == Approx(-1.0));
  CHECK(evaluate(well, 0.5) == Approx(2.0 * (1.0 - std::exp(-1.0)) - 1.0));
  CHECK(well.is_bounded());
  CHECK(*well.upper_bound() == Approx(1.0));
}

TEST_CASE("table potential interpolates and continues flat") {
  const PotentialSpec t(TablePotential{{-1.0, 0.0, 2.0}, {4.0, 0.0, 1.0}});
  CHECK(t(-1.0) == Approx(4.0));
  CHECK(t(-0.5) == Approx(2.0));
  CHECK(t(1.0) == Approx(0.5));
  CHECK(t(-10.0) == Approx(4.0));
  CHECK(t(10.0) == Approx(1.0));
  CHECK(t.is_bounded());
  CHECK(*t.upper_bound() == Approx(4.0));
  CHECK_THROWS_AS(PotentialSpec(TablePotential{{0.0, 0.0}, {1.0, 2.0}}), ConfigurationError);
  CHECK_THROWS_AS(PotentialSpec(TablePotential{{0.0}, {1.0}}), ConfigurationError);
}

TEST_CASE("potential rejects bad input") {
  CHECK_THROWS_AS(evaluate(square(), std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(evaluate(square(), std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(PotentialSpec(PolynomialPotential{{}}), ConfigurationError);
  CHECK_THROWS_AS(PotentialSpec(GaussianWellPotential{1.0, 0.0, 0.0}), ConfigurationError);
  // x^2 - 5 needs K >= 5
  CHECK_THROWS_AS(PotentialSpec(PolynomialPotential{{-5.0, 0.0, 1.0}}), ConfigurationError);
  CHECK_THROWS_AS(PotentialSpec(PolynomialPotential{{-5.0, 0.0, 1.0}}, 4.0), ConfigurationError);
  CHECK_NOTHROW(PotentialSpec(PolynomialPotential{{-5.0, 0.0, 1.0}}, 5.0));
  CHECK_THROWS_AS(PotentialSpec(PolynomialPotential{{0.0, 1.0}}, 100.0), ConfigurationError);
  CHECK_THROWS_AS(PotentialSpec(ConstantPotential{0.0}, -1.0), ConfigurationError);
}

TEST_CASE("truncation") {
  const PotentialSpec k4 = truncate(square(), 4.0);
  CHECK(evaluate(k4, 3.0) == 4.0);
  CHECK(evaluate(k4, 1.0) == 1.0);
  CHECK(evaluate(k4, 10.0) == 4.0);
  CHECK(k4.is_bounded());
  CHECK(*k4.truncation_level() == 4.0);

  const PotentialSpec same = truncate(square(), std::numeric_limits<double>::infinity());
  CHECK_FALSE(same.truncation_level().has_value());
  for (double x : sample_points()) CHECK(same(x) == square()(x));

  const PotentialSpec c2 = truncate(PotentialSpec(ConstantPotential{2.0}), 5.0);
  for (double x : sample_points()) CHECK(c2(x) == 2.0);

  CHECK_THROWS_AS(truncate(square(), 0.0), ConfigurationError);
  CHECK_THROWS_AS(truncate(square(), -1.0), ConfigurationError);
  CHECK_THROWS_AS(truncate(square(), std::numeric_limits<double>::quiet_NaN()), ConfigurationError);
  CHECK_THROWS_AS(truncate(PotentialSpec(PolynomialPotential{{-5.0, 0.0, 1.0}}, 5.0), 3.0),
                  PreconditionError);
}

TEST_CASE("truncation is monotone and exact below the level") {
  const PotentialSpec specs[] = {square(), PotentialSpec(ExpAbsPotential{1.3}),
                                 PotentialSpec(PolynomialPotential{{0.5, -1.0, 0.0, 0.0, 2.0}})};
  for (const PotentialSpec& phi : specs) {
    for (double k1 : {0.5, 1.0, 3.0}) {
      const double k2 = 2.0 * k1;
      const PotentialSpec t1 = truncate(phi, k1), t2 = truncate(phi, k2);
      for (double x : sample_points()) {
        CHECK(t1(x) <= t2(x));
        CHECK(t2(x) <= phi(x));
        CHECK(t1(x) <= k1);
        if (phi(x) <= k1) CHECK(t1(x) == phi(x));
      }
    }
  }
}

TEST_CASE("shifted and scaled potentials") {
  const PotentialSpec phi(PolynomialPotential{{-5.0, 0.0, 1.0}}, 5.0);
  const PotentialSpec bar = phi.shifted(5.0);
  CHECK(bar.lower_bound() == 0.0);
  for (double x : sample_points()) {
    CHECK(bar(x) == Approx(x * x).epsilon(1e-14).scale(1.0));
    CHECK(bar(x) >= 0.0);
  }
  const PotentialSpec strong = square().scaled(3.0);
  CHECK(strong(2.0) == Approx(12.0));
  CHECK_THROWS_AS(square().scaled(0.0), ConfigurationError);
  CHECK_THROWS_AS(truncate(square(), 2.0).scaled(2.0), PreconditionError);
}

TEST_CASE("positivity shift of problem data") {
  const Grid g = testing::line(0.0, 1.0, 3, 1.0, 2);
  const SpaceTimeField one = sample(g, [](const Point&, double) { return 1.0; });
  const Problem p{g, one, one, Field(3, 1.0), PotentialSpec(ConstantPotential{-1.0}, 1.0)};
  const ShiftedProblem s = positivity_shift(p);
  CHECK(s.shift == 1.0);
  const double ea[] = {1.0, std::exp(0.5), std::exp(1.0)};
  const double ef[] = {1.0, std::exp(-0.5), std::exp(-1.0)};
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(s.problem.alpha[m][i] == Approx(ea[m]).epsilon(1e-15));
      CHECK(s.problem.forcing[m][i] == Approx(ef[m]).epsilon(1e-15));
    }
  CHECK(s.problem.initial == p.initial);
  CHECK(s.problem.potential(0.0) == Approx(0.0).scale(1.0));
  CHECK(s.problem.potential.lower_bound() == 0.0);

  const Problem sq{g, one, one, Field(3, 1.0), PotentialSpec(PolynomialPotential{{-5.0, 0.0, 1.0}}, 5.0)};
  const ShiftedProblem s5 = positivity_shift(sq);
  CHECK(s5.problem.alpha[2][0] == Approx(std::exp(5.0)));
  CHECK(s5.problem.potential(3.0) == Approx(9.0));

  const Problem plain{g, one, one, Field(3, 1.0), square()};
  const ShiftedProblem id = positivity_shift(plain);
  CHECK(id.shift == 0.0);
  CHECK(id.problem.alpha == plain.alpha);
  CHECK(id.problem.forcing == plain.forcing);
  CHECK(id.problem.initial == plain.initial);
}

TEST_CASE("shift and unshift are inverse") {
  std::mt19937_64 rng(21);
  const Grid g = testing::line(0.0, 1.0, 5, 2.0, 6);
  SpaceTimeField u(7, 5);
  for (auto& s : u) s = testing::random_field(5, rng);
  const SpaceTimeField bar = shift_solution(g, u, 3.0);
  CHECK(bar[4][2] == Approx(std::exp(-3.0 * g.time(4)) * u[4][2]));
  const SpaceTimeField back = unshift_solution(g, bar, 3.0);
  for (std::size_t m = 0; m < 7; ++m)
    for (std::size_t i = 0; i < 5; ++i) CHECK(back[m][i] == Approx(u[m][i]).epsilon(1e-14));
  CHECK(unshift_solution(g, u, 0.0) == u);
}
