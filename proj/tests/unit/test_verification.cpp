#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "nonlocal/verification.hpp"

using namespace nonlocal;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("manufactured catalogue") {
  const ManufacturedCase m = build_manufactured("MMS-1");
  CHECK(m.zeta_exact({0.5, 0.0}) == Approx(0.63212055882855767));
  CHECK(m.initial({0.3, 0.0}) == Approx(std::sin(0.3 * pi)));
  CHECK(m.exact({0.0, 0.0}, 0.7) == Approx(0.0).scale(1.0));
  CHECK(m.exact({1.0, 0.0}, 0.7) == Approx(0.0).scale(1.0));
  const double s = std::sin(0.3 * pi), d = 1.0 - std::exp(-1.0);
  CHECK(m.forcing({0.3, 0.0}, 0.4) ==
        Approx((pi * pi - 1.0) * std::exp(-0.4) * s + d * d * s * s * std::exp(-0.4) * s));

  const ManufacturedCase heat = build_manufactured("HEAT-1");
  for (double x : {0.1, 0.5, 0.77})
    for (double t : {0.0, 0.3, 1.0})
      CHECK(heat.forcing({x, 0.0}, t) == Approx((pi * pi - 1.0) * std::exp(-t) * std::sin(pi * x)));

  const ManufacturedCase m3 = build_manufactured("MMS-3");
  CHECK(m3.domain.size() == 2);
  CHECK(m3.potential(2.0) == Approx(5.0));
  CHECK(build_manufactured("MMS-2").potential(1.0) == Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(build_manufactured("nosuch"), ConfigurationError);
  CHECK(manufactured_catalogue().size() == 4);
}

TEST_CASE("closed-form couplings match fine quadrature") {
  for (const std::string& name : manufactured_catalogue()) {
    for (double T : {0.5, 1.0, 2.0}) {
      const ManufacturedCase c = build_manufactured(name, T);
      const std::size_t n = 20000;
      const double dt = T / n;
      for (Point x : {Point{0.2, 0.4}, Point{0.5, 0.5}, Point{0.9, 0.15}}) {
        double q = 0.0;
        for (std::size_t m = 0; m <= n; ++m) {
          const double t = m * dt;
          const double w = (m == 0 || m == n) ? 0.5 * dt : dt;
          q += w * c.alpha(x, t) * c.exact(x, t);
        }
        CHECK(std::abs(q - c.zeta_exact(x)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("test function family") {
  const auto one = test_function_family(1, 12);
  REQUIRE(one.size() == 12);
  CHECK(one[0].modes[0] == 1);
  CHECK(one[0].power == 1);
  CHECK(one[2].power == 3);
  CHECK(one[3].modes[0] == 2);
  CHECK(one[11].modes[0] == 4);
  const auto two = test_function_family(2, 12);
  REQUIRE(two.size() == 12);
  for (const TestFunction& t : two) {
    CHECK(t.modes[0] <= 2);
    CHECK(t.modes[1] <= 2);
    CHECK(t.power >= 1);
    CHECK(t.power <= 3);
  }
}

TEST_CASE("weak residual") {
  const ManufacturedCase heat = build_manufactured("HEAT-1");
  const Problem zero_problem = [&] {
    Problem p = heat.discretize(std::vector<std::size_t>{15}, 8);
    p.forcing = SpaceTimeField(9, 15);
    p.initial = Field(15);
    return p;
  }();
  CHECK(weak_residual(zero_problem.grid, SpaceTimeField(9, 15), Field(15), zero_problem) <= 1e-15);

  const ManufacturedCase mms = build_manufactured("MMS-1");
  FixedPointOptions o;
  o.damping = 1.0;
  o.tol = 1e-12;
  o.scheme = TimeScheme::crank_nicolson;
  std::vector<double> hs, exact_res;
  for (std::size_t n : {15u, 31u, 63u}) {
    const Problem p = mms.discretize(std::vector<std::size_t>{n}, n + 1);
    const SpaceTimeField ue = mms.sample_exact(p.grid);
    const double re = weak_residual(p.grid, ue, sample(p.grid, mms.zeta_exact), p);
    const NonlocalSolution s = solve_nonlocal(p, o);
    REQUIRE(s.report.converged);
    const double rs = weak_residual(p.grid, s.u, s.zeta, p);
    CHECK(rs <= 10.0 * re);
    hs.push_back(p.grid.spacing(0));
    exact_res.push_back(re);
  }
  CHECK(fit_log_slope(hs, exact_res) >= 1.0);
}

TEST_CASE("fit_log_slope") {
  const std::vector<double> x{0.1, 0.05, 0.025}, y{3e-2, 7.5e-3, 1.875e-3};
  CHECK(fit_log_slope(x, y) == Approx(2.0));
  CHECK_THROWS_AS(fit_log_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), ConfigurationError);
}

TEST_CASE("convergence study errors") {
  const ManufacturedCase mms = build_manufactured("MMS-1");
  const std::vector<RefinementLevel> two{{{7}, 4}, {{15}, 4}};
  CHECK_THROWS_AS(convergence_study(mms, two, RefinementAxis::space, {}), ConfigurationError);
  const std::vector<RefinementLevel> three{{{7}, 4}, {{15}, 4}, {{31}, 4}};
  FixedPointOptions starved;
  starved.max_iter = 1;
  starved.truncation = TruncationSchedule::none();
  CHECK_THROWS_AS(convergence_study(mms, three, RefinementAxis::space, starved), StudyError);
}

TEST_CASE("spatial convergence on MMS-1") {
  const ManufacturedCase mms = build_manufactured("MMS-1");
  FixedPointOptions o;
  o.damping = 1.0;
  o.tol = 1e-12;
  o.scheme = TimeScheme::crank_nicolson;
  const std::vector<RefinementLevel> levels{{{15}, 400}, {{31}, 400}, {{63}, 400}};
  const RateTable t = convergence_study(mms, levels, RefinementAxis::space, o);
  CHECK(t.fitted_rate == Approx(2.0).epsilon(0.1));
  CHECK(t.rows.size() == 3);
  CHECK(std::isnan(t.rows[0].rate));
  for (const SolveReport& r : t.reports) CHECK(r.bound_audit.all_passed());
}

TEST_CASE("oracle") {
  const ManufacturedCase heat = build_manufactured("MMS-1");
  Problem p = heat.discretize(std::vector<std::size_t>{3}, 3);
  p.forcing = SpaceTimeField(4, 3);

  Problem zero = p;
  zero.initial = Field(3);
  const SpaceTimeField z = oracle_solve(zero);
  CHECK(norm_max(z[3]) == 0.0);

  p.initial = Field(std::vector<double>{0.1, 0.2, 0.1});
  FixedPointOptions o;
  o.damping = 1.0;
  o.tol = 1e-14;
  o.lin_tol = 1e-15;
  const NonlocalSolution s = solve_nonlocal(p, o);
  REQUIRE(s.report.converged);
  CHECK(max_abs_difference(s.u, oracle_solve(p)) <= 1e-8);

  Problem lin = heat.discretize(std::vector<std::size_t>{4}, 5);
  lin.potential = PotentialSpec(ConstantPotential{1.5});
  const SpaceTimeField chain = solve_frozen(lin.grid, Field(4, 1.5), lin.forcing, lin.initial);
  CHECK(max_abs_difference(chain, oracle_solve(lin)) <= 1e-12);

  const Problem big = heat.discretize(std::vector<std::size_t>{9}, 8);
  CHECK_THROWS_AS(oracle_solve(big), ConfigurationError);
}

TEST_CASE("bound audit") {
  const Grid g = testing::line(0.0, pi, 31, 1.0, 10);
  Field u0 = sample(g, [](const Point& x) { return std::sin(x[0]); });
  const double nrm = norm_l2(g, u0);
  for (double& v : u0) v /= nrm;
  const SpaceTimeField one = sample(g, [](const Point&, double) { return 1.0; });
  const Problem p{g, one, SpaceTimeField(11, 31), u0, PotentialSpec(PolynomialPotential{{0.0, 0.0, 1.0}})};

  const BoundAudit a = bound_audit(g, SpaceTimeField(11, 31), Field(31), p);
  CHECK(a.c1 == Approx(1.0));
  CHECK(a.alpha_sup_sq == Approx(1.0));
  CHECK(a.c6 == Approx(1.0));
  CHECK(a.phi_zeta_sq == 0.0);
  CHECK(a.zeta_l2_sq == 0.0);
  CHECK(a.phi_u_l1 == 0.0);
  CHECK(a.phi_u2_l1 == 0.0);
  CHECK(a.all_passed());

  const NonlocalSolution s = solve_nonlocal(p);
  REQUIRE(s.report.converged);
  const BoundAudit b = bound_audit(g, s.u, s.zeta, p);
  CHECK(b.phi_zeta_sq_ok);
  CHECK(b.all_passed());
  CHECK(b.phi_zeta_sq == s.report.bound_audit.phi_zeta_sq);

  Field huge(31, 10.0);
  const BoundAudit c = bound_audit(g, s.u, huge, p);
  CHECK_FALSE(c.phi_zeta_sq_ok);
  CHECK_FALSE(c.all_passed());
}
