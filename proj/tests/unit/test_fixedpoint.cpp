#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "nonlocal/fixedpoint.hpp"

using namespace nonlocal;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {

Problem make(const Grid& g, PotentialSpec phi, const SpatialFunction& u0, const SpaceTimeFunction& f,
             const SpaceTimeFunction& alpha = [](const Point&, double) { return 1.0; }) {
  return Problem{g, sample(g, alpha), sample(g, f), sample(g, u0), std::move(phi)};
}

PotentialSpec square() { return PotentialSpec(PolynomialPotential{{0.0, 0.0, 1.0}}); }

Problem sine_problem(const Grid& g, PotentialSpec phi) {
  return make(g, std::move(phi), [](const Point& x) { return std::sin(pi * x[0]); },
              [](const Point& x, double t) { return std::exp(-t) * std::sin(pi * x[0]) * 4.0; });
}

}  // namespace

TEST_CASE("psi map matches a dense evaluation of the chain") {
  // values from tests/oracles/dense_chain.py
  const Grid g = testing::line(0.0, 1.0, 3, 0.5, 2);
  Problem p = make(g, square(), [](const Point&) { return 0.0; },
                   [](const Point&, double t) { return 1.0 + t; });
  p.initial = Field(std::vector<double>{0.3, 0.5, 0.2});
  const Field w(std::vector<double>{0.1, -0.2, 0.3});
  for (auto kind : {LinearSolverKind::tridiagonal, LinearSolverKind::conjugate_gradient}) {
    FrozenSolveOptions o;
    o.solver = kind;
    o.lin_tol = 1e-14;
    const PsiResult r = psi_map(p, w, kNoTruncation, o);
    CHECK(r.zeta[0] == Approx(0.10000803578936857).epsilon(1e-12));
    CHECK(r.zeta[1] == Approx(0.14771950716257606).epsilon(1e-12));
    CHECK(r.zeta[2] == Approx(0.084439704200569399).epsilon(1e-12));
    CHECK(r.u[2][0] == Approx(0.15045526961916975).epsilon(1e-12));
    CHECK(r.u[2][1] == Approx(0.20116726409967153).epsilon(1e-12));
    CHECK(r.u[2][2] == Approx(0.14885039361522329).epsilon(1e-12));
    CHECK(r.coefficient[1] == Approx(0.04));
  }
  const PsiResult t = psi_map(p, w, 0.05);
  CHECK(t.coefficient[2] == 0.05);
  CHECK(t.coefficient[0] == Approx(0.01));
}

TEST_CASE("zero data has the zero fixed point") {
  const Grid g = testing::rect({0, 1}, {0, 1}, 5, 4, 1.0, 6);
  const Problem p = make(g, square(), [](const Point&) { return 0.0; }, [](const Point&, double) { return 0.0; });
  const PsiResult psi = psi_map(p, Field(std::vector<double>(g.size(), 0.7)), kNoTruncation);
  for (double v : psi.zeta) CHECK(v == 0.0);
  const NonlocalSolution s = solve_nonlocal(p);
  CHECK(s.report.converged);
  CHECK(s.report.iterations <= 2);
  CHECK(min_value(s.u) == 0.0);
  CHECK(norm_max(s.zeta) == 0.0);
  CHECK(s.report.energy.satisfied);
  CHECK(s.report.bound_audit.all_passed());
}

TEST_CASE("constant potential converges in two iterations") {
  const Grid g = testing::line(0.0, 1.0, 15, 1.0, 10);
  const Problem p = sine_problem(g, PotentialSpec(ConstantPotential{2.5}));
  FixedPointOptions o;
  o.damping = 1.0;
  const NonlocalSolution s = solve_nonlocal(p, o);
  CHECK(s.report.converged);
  CHECK(s.report.iterations <= 2);
  const PsiResult a = psi_map(p, Field(g.size()), kNoTruncation);
  const PsiResult b = psi_map(p, a.zeta, kNoTruncation);
  CHECK(a.zeta == b.zeta);
}

TEST_CASE("converged solves certify the fixed point") {
  const Grid g = testing::line(0.0, 1.0, 31, 1.0, 20);
  for (double damping : {0.5, 1.0}) {
    FixedPointOptions o;
    o.damping = damping;
    const Problem p = sine_problem(g, square());
    const NonlocalSolution s = solve_nonlocal(p, o);
    REQUIRE(s.report.converged);
    CHECK(s.report.residual_history.back() <= o.tol);
    const Field z = weighted_time_integral(g, p.alpha, s.u);
    double gap = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) gap += std::abs(z[i] - s.zeta[i]);
    CHECK(gap * g.cell_volume() <= o.tol * std::max(norm_l1(g, s.zeta), kResidualFloor));
    CHECK(s.report.energy.satisfied);
    CHECK(s.report.bound_audit.all_passed());
    CHECK(s.report.self_map_radius == Approx(s.report.c2 * std::sqrt(s.report.c1)));
    CHECK(norm_l1(g, s.zeta) <= s.report.self_map_radius);
  }
}

TEST_CASE("non-convergence is reported") {
  const Grid g = testing::line(0.0, 1.0, 15, 1.0, 10);
  FixedPointOptions o;
  o.max_iter = 1;
  const NonlocalSolution s = solve_nonlocal(sine_problem(g, square()), o);
  CHECK_FALSE(s.report.converged);
  CHECK(s.report.residual_history.size() == 1);
}

TEST_CASE("truncation above the supremum is inert") {
  const Grid g = testing::line(0.0, 1.0, 21, 1.0, 12);
  const PotentialSpec well(GaussianWellPotential{3.0, 0.4, 0.0});
  const Problem p = sine_problem(g, well);
  FixedPointOptions none;
  none.truncation = TruncationSchedule::none();
  FixedPointOptions above;
  above.truncation = TruncationSchedule::explicit_levels({3.5});
  const NonlocalSolution a = solve_nonlocal(p, none), b = solve_nonlocal(p, above);
  CHECK(a.u == b.u);
  CHECK(a.zeta == b.zeta);
  CHECK(a.report.residual_history == b.report.residual_history);
}

TEST_CASE("default truncation schedule") {
  const auto levels = default_truncation_levels(square());
  REQUIRE(levels.size() == 21);
  CHECK(levels.front() == 1.0);
  CHECK(levels.back() == std::ldexp(1.0, 20));
  const auto lifted = default_truncation_levels(PotentialSpec(PolynomialPotential{{3.0, 0.0, 1.0}}));
  CHECK(lifted.front() == 3.0);
  CHECK(lifted[2] == 12.0);
}

TEST_CASE("staged solve for an unbounded potential") {
  const Grid g = testing::line(0.0, 1.0, 31, 1.0, 16);
  const Problem p = sine_problem(g, square());
  FixedPointOptions o;
  o.truncation = TruncationSchedule::explicit_levels({0.1, 0.2, 0.4, 0.8, 1.6, 3.2, 6.4});
  const NonlocalSolution s = solve_nonlocal(p, o);
  CHECK(s.report.converged);
  REQUIRE(s.report.stages.size() >= 2);
  CHECK(std::isnan(s.report.stages.front().gap_to_previous));
  CHECK(s.report.stages.back().gap_to_previous <= o.tol);
  CHECK(s.report.final_k == s.report.stages.back().level);
  CHECK(s.report.stages.back().max_potential < s.report.final_k);

  // automatic mode picks the geometric schedule for an unbounded potential
  const NonlocalSolution d = solve_nonlocal(p);
  CHECK(d.report.converged);
  CHECK(d.report.stages.size() >= 2);
  CHECK(d.report.stages.front().level == 1.0);
}

TEST_CASE("option validation") {
  const Grid g = testing::line(0.0, 1.0, 5, 1.0, 4);
  const Problem p = sine_problem(g, square());
  auto bad = [&](auto edit) {
    FixedPointOptions o;
    edit(o);
    CHECK_THROWS_AS(solve_nonlocal(p, o), ConfigurationError);
  };
  bad([](FixedPointOptions& o) { o.damping = 0.0; });
  bad([](FixedPointOptions& o) { o.damping = 1.5; });
  bad([](FixedPointOptions& o) { o.tol = 0.0; });
  bad([](FixedPointOptions& o) { o.max_iter = 0; });
  bad([](FixedPointOptions& o) { o.lin_tol = -1.0; });
  bad([](FixedPointOptions& o) { o.truncation = TruncationSchedule::explicit_levels({}); });
  bad([](FixedPointOptions& o) { o.truncation = TruncationSchedule::explicit_levels({2.0, 1.0}); });
  bad([](FixedPointOptions& o) { o.truncation = TruncationSchedule::explicit_levels({0.0, 1.0}); });
  FixedPointOptions wrong;
  wrong.initial_guess = Field(4);
  CHECK_THROWS_AS(solve_nonlocal(p, wrong), DimensionError);
}

TEST_CASE("solves are deterministic") {
  const Grid g = testing::rect({0, 1}, {0, 1}, 40, 40, 1.0, 8);
  const Problem p = make(g, PotentialSpec(PolynomialPotential{{1.0, 0.0, 1.0}}),
                         [](const Point& x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); },
                         [](const Point&, double) { return 1.0; });
  FixedPointOptions o;
  o.truncation = TruncationSchedule::none();
  const NonlocalSolution a = solve_nonlocal(p, o), b = solve_nonlocal(p, o);
  CHECK(a.u == b.u);
  CHECK(a.zeta == b.zeta);
  CHECK(a.report.residual_history == b.report.residual_history);
}

TEST_CASE("positivity shift inside the solver") {
  const Grid g = testing::line(0.0, 1.0, 15, 0.5, 20);
  const Problem p = sine_problem(g, PotentialSpec(PolynomialPotential{{-2.0, 0.0, 1.0}}, 2.0));
  const NonlocalSolution s = solve_nonlocal(p);
  CHECK(s.report.converged);
  CHECK(s.report.shift == 2.0);
  CHECK(s.report.bound_audit.all_passed());
  for (double c : s.coefficient) CHECK(c >= 0.0);
  // u is returned in original variables: u(., 0) = u0
  CHECK(s.u[0] == p.initial);

  FixedPointOptions direct;
  direct.apply_positivity_shift = false;
  const NonlocalSolution d = solve_nonlocal(p, direct);
  CHECK(d.report.converged);
  CHECK(d.report.shift == 0.0);
  CHECK(max_abs_difference(s.u, d.u) < 0.05);
  direct.truncation = TruncationSchedule::explicit_levels({1.0, 2.0});
  CHECK_THROWS_AS(solve_nonlocal(p, direct), ConfigurationError);
}

TEST_CASE("multi-start counts distinct fixed points") {
  const Grid g = testing::line(0.0, 1.0, 15, 1.0, 10);
  const Problem p = sine_problem(g, square());
  FixedPointOptions o;
  o.multi_start = {Field(g.size(), 1.0), Field(g.size(), -0.5), Field(g.size(), 0.2)};
  const NonlocalSolution s = solve_nonlocal(p, o);
  CHECK(s.report.converged);
  CHECK(s.report.multi_start_runs == 3);
  CHECK(s.report.distinct_fixed_points == 1);
  const NonlocalSolution plain = solve_nonlocal(p);
  CHECK(plain.report.distinct_fixed_points == 1);
  CHECK(plain.report.multi_start_runs == 0);
}

TEST_CASE("self-map audit") {
  const Grid g = testing::line(0.0, pi, 31, 1.0, 10);
  Field u0 = sample(g, [](const Point& x) { return std::sin(x[0]); });
  const double nrm = norm_l2(g, u0);
  for (double& v : u0) v /= nrm;
  Problem p = make(g, truncate(square(), 4.0), [](const Point&) { return 0.0; },
                   [](const Point&, double) { return 0.0; });
  p.initial = u0;
  const SelfMapAudit a = self_map_audit(p, 100);
  CHECK(a.passed);
  CHECK(a.samples == 100);
  CHECK(a.seed == 42);
  CHECK(a.worst_ratio <= 1.0 + kAuditTolerance);
  CHECK(a.worst_ratio > 0.0);
  // C1 = 1, C2 = T |Omega_h|^{1/2} with the discrete measure n h
  CHECK(a.radius == Approx(std::sqrt(31.0 * g.spacing(0))).epsilon(1e-12));

  const SelfMapAudit again = self_map_audit(p, 100);
  CHECK(again.worst_ratio == a.worst_ratio);

  Problem zero = p;
  zero.initial = Field(g.size());
  const SelfMapAudit z = self_map_audit(zero, 10);
  CHECK(z.radius == 0.0);
  CHECK(z.worst_ratio == 0.0);
  CHECK(z.passed);

  Problem unbounded = p;
  unbounded.potential = square();
  CHECK_THROWS_AS(self_map_audit(unbounded, 10), PreconditionError);
}
