#include <cmath>
#include <numbers>

#include "nonlocal/verification.hpp"

namespace nonlocal {

namespace {

constexpr double kPi = std::numbers::pi;

ManufacturedCase sine_decay_1d(std::string name, double horizon) {
  ManufacturedCase c;
  c.name = std::move(name);
  c.domain = {{0.0, 1.0}};
  c.horizon = horizon;
  c.exact = [](const Point& x, double t) { return std::exp(-t) * std::sin(kPi * x[0]); };
  c.exact_dt = [](const Point& x, double t) { return -std::exp(-t) * std::sin(kPi * x[0]); };
  c.exact_laplacian = [](const Point& x, double t) {
    return -kPi * kPi * std::exp(-t) * std::sin(kPi * x[0]);
  };
  return c;
}

}  // namespace

double ManufacturedCase::forcing(const Point& x, double t) const {
  return exact_dt(x, t) - exact_laplacian(x, t) + potential(zeta_exact(x)) * exact(x, t);
}

ManufacturedCase ManufacturedCase::with_potential(PotentialSpec phi) const {
  ManufacturedCase out = *this;
  out.potential = std::move(phi);
  return out;
}

Grid ManufacturedCase::grid(std::span<const std::size_t> interior_counts,
                            std::size_t time_steps) const {
  return Grid::build(domain, interior_counts, horizon, time_steps);
}

Problem ManufacturedCase::discretize(std::span<const std::size_t> interior_counts,
                                     std::size_t time_steps) const {
  const Grid g = grid(interior_counts, time_steps);
  Problem p{g, sample(g, alpha),
            sample(g, [this](const Point& x, double t) { return forcing(x, t); }),
            sample(g, [this](const Point& x) { return initial(x); }), potential};
  return p;
}

SpaceTimeField ManufacturedCase::sample_exact(const Grid& g) const { return sample(g, exact); }

ManufacturedCase build_manufactured(std::string_view name, double horizon) {
  if (!(horizon > 0.0)) throw ConfigurationError("manufactured horizon must be positive");
  const double decay = 1.0 - std::exp(-horizon);

  if (name == "MMS-1" || name == "HEAT-1") {
    ManufacturedCase c = sine_decay_1d(std::string(name), horizon);
    c.alpha = [](const Point&, double) { return 1.0; };
    c.zeta_exact = [decay](const Point& x) { return decay * std::sin(kPi * x[0]); };
    c.potential = name == "MMS-1" ? PotentialSpec(PolynomialPotential{{0.0, 0.0, 1.0}})
                                  : PotentialSpec(ConstantPotential{0.0});
    return c;
  }
  if (name == "MMS-2") {
    ManufacturedCase c = sine_decay_1d("MMS-2", horizon);
    // int_0^T t e^{-t} dt = 1 - (1 + T) e^{-T}
    const double moment = 1.0 - (1.0 + horizon) * std::exp(-horizon);
    c.alpha = [](const Point&, double t) { return t; };
    c.zeta_exact = [moment](const Point& x) { return moment * std::sin(kPi * x[0]); };
    c.potential = PotentialSpec(ExpPotential{-1.0});
    return c;
  }
  if (name == "MMS-3") {
    ManufacturedCase c;
    c.name = "MMS-3";
    c.domain = {{0.0, 1.0}, {0.0, 1.0}};
    c.horizon = horizon;
    auto shape = [](const Point& x) { return std::sin(kPi * x[0]) * std::sin(kPi * x[1]); };
    c.exact = [shape](const Point& x, double t) { return std::exp(-t) * shape(x); };
    c.exact_dt = [shape](const Point& x, double t) { return -std::exp(-t) * shape(x); };
    c.exact_laplacian = [shape](const Point& x, double t) {
      return -2.0 * kPi * kPi * std::exp(-t) * shape(x);
    };
    c.alpha = [](const Point&, double) { return 1.0; };
    c.zeta_exact = [decay, shape](const Point& x) { return decay * shape(x); };
    c.potential = PotentialSpec(PolynomialPotential{{1.0, 0.0, 1.0}});
    return c;
  }
  throw ConfigurationError("unknown manufactured case '" + std::string(name) + "'");
}

std::vector<std::string> manufactured_catalogue() { return {"MMS-1", "MMS-2", "MMS-3", "HEAT-1"}; }

}  // namespace nonlocal
