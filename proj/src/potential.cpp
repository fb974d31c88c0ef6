#include "nonlocal/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

constexpr double kBoundSlack = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double horner(const std::vector<double>& c, double xi) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * xi + *it;
  return v;
}

std::size_t effective_degree(const std::vector<double>& c) {
  std::size_t d = c.size();
  while (d > 0 && c[d - 1] == 0.0) --d;
  return d == 0 ? 0 : d - 1;
}

void validate_family(const PotentialFamily& family) {
  std::visit(overloaded{
                 [](const ConstantPotential& p) {
                   if (!std::isfinite(p.value))
                     throw ConfigurationError("constant potential value must be finite");
                 },
                 [](const PolynomialPotential& p) {
                   if (p.coefficients.empty())
                     throw ConfigurationError("polynomial potential needs coefficients");
                   for (double c : p.coefficients)
                     if (!std::isfinite(c))
                       throw ConfigurationError("polynomial coefficients must be finite");
                 },
                 [](const ExpAbsPotential& p) {
                   if (!std::isfinite(p.scale))
                     throw ConfigurationError("exp_abs scale must be finite");
                 },
                 [](const ExpPotential& p) {
                   if (!std::isfinite(p.rate)) throw ConfigurationError("exp rate must be finite");
                 },
                 [](const AbsAffinePotential& p) {
                   if (!std::isfinite(p.offset) || !std::isfinite(p.slope))
                     throw ConfigurationError("abs_affine parameters must be finite");
                 },
                 [](const GaussianWellPotential& p) {
                   if (!(p.width > 0.0) || !std::isfinite(p.depth) || !std::isfinite(p.offset))
                     throw ConfigurationError("gaussian_well needs width > 0 and finite depth/offset");
                 },
                 [](const TablePotential& p) {
                   if (p.xi.size() < 2 || p.xi.size() != p.phi.size())
                     throw ConfigurationError("table potential needs >= 2 (xi, phi) pairs");
                   for (std::size_t i = 0; i < p.xi.size(); ++i) {
                     if (!std::isfinite(p.xi[i]) || !std::isfinite(p.phi[i]))
                       throw ConfigurationError("table potential entries must be finite");
                     if (i > 0 && !(p.xi[i] > p.xi[i - 1]))
                       throw ConfigurationError("table potential xi must be strictly increasing");
                   }
                 },
             },
             family);
}

// Infimum of the bare family, or nullopt when it is only found by sampling.
// -inf marks a family unbounded below.
std::optional<double> family_infimum(const PotentialFamily& family) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  return std::visit(
      overloaded{
          [](const ConstantPotential& p) -> std::optional<double> { return p.value; },
          [&](const PolynomialPotential& p) -> std::optional<double> {
            const std::size_t deg = effective_degree(p.coefficients);
            if (deg == 0) return p.coefficients.front();
            if (deg % 2 == 1 || p.coefficients[deg] < 0.0) return kNegInf;
            return std::nullopt;
          },
          [](const ExpAbsPotential&) -> std::optional<double> { return 0.0; },
          [](const ExpPotential&) -> std::optional<double> { return 0.0; },
          [&](const AbsAffinePotential& p) -> std::optional<double> {
            return p.slope < 0.0 ? kNegInf : p.offset;
          },
          [](const GaussianWellPotential& p) -> std::optional<double> {
            return p.depth >= 0.0 ? -p.offset : p.depth - p.offset;
          },
          [](const TablePotential& p) -> std::optional<double> {
            return *std::min_element(p.phi.begin(), p.phi.end());
          },
      },
      family);
}

}  // namespace

PotentialSpec::PotentialSpec(PotentialFamily family, double lower_bound)
    : family_(std::move(family)), lower_bound_(lower_bound) {
  if (!(lower_bound >= 0.0) || !std::isfinite(lower_bound))
    throw ConfigurationError("potential lower_bound K must be a finite number >= 0");
  validate_family(family_);
  check_declared_bound();
}

void PotentialSpec::check_declared_bound() const {
  const auto inf = family_infimum(family_);
  const double floor = -lower_bound_ - kBoundSlack;
  if (inf.has_value()) {
    if (strength_ * *inf + offset_ < floor)
      throw ConfigurationError("potential violates its declared lower bound " +
                               std::to_string(-lower_bound_));
    return;
  }
  // Even-degree polynomial with positive leading coefficient: every critical
  // point lies inside the Cauchy bound of the coefficients.
  const auto& c = std::get<PolynomialPotential>(family_).coefficients;
  const std::size_t deg = effective_degree(c);
  double radius = 1.0;
  for (std::size_t i = 0; i < deg; ++i) radius = std::max(radius, 1.0 + std::abs(c[i] / c[deg]));
  constexpr int kSamples = 20000;
  for (int s = 0; s <= kSamples; ++s) {
    const double xi = -radius + 2.0 * radius * s / kSamples;
    if (strength_ * horner(c, xi) + offset_ < floor)
      throw ConfigurationError("potential violates its declared lower bound " +
                               std::to_string(-lower_bound_));
  }
}

double PotentialSpec::raw(double xi) const {
  return std::visit(
      overloaded{
          [](const ConstantPotential& p) { return p.value; },
          [xi](const PolynomialPotential& p) { return horner(p.coefficients, xi); },
          [xi](const ExpAbsPotential& p) { return std::exp(p.scale * std::abs(xi)); },
          [xi](const ExpPotential& p) { return std::exp(p.rate * xi); },
          [xi](const AbsAffinePotential& p) { return p.offset + p.slope * std::abs(xi); },
          [xi](const GaussianWellPotential& p) {
            const double r = xi / p.width;
            return p.depth * (1.0 - std::exp(-r * r)) - p.offset;
          },
          [xi](const TablePotential& p) {
            if (xi <= p.xi.front()) return p.phi.front();
            if (xi >= p.xi.back()) return p.phi.back();
            const auto hi = std::upper_bound(p.xi.begin(), p.xi.end(), xi);
            const auto j = static_cast<std::size_t>(hi - p.xi.begin());
            const double w = (xi - p.xi[j - 1]) / (p.xi[j] - p.xi[j - 1]);
            return (1.0 - w) * p.phi[j - 1] + w * p.phi[j];
          },
      },
      family_);
}

double PotentialSpec::operator()(double xi) const {
  if (!std::isfinite(xi)) throw DomainError("potential argument must be finite");
  double v = strength_ * raw(xi) + offset_;
  if (truncation_) v = std::min(v, *truncation_);
  if (v < -lower_bound_ - kBoundSlack)
    throw DomainError("potential value " + std::to_string(v) + " at xi=" + std::to_string(xi) +
                      " is below the declared lower bound");
  return v;
}

std::string PotentialSpec::family_name() const {
  return std::visit(overloaded{
                        [](const ConstantPotential&) { return std::string("constant"); },
                        [](const PolynomialPotential&) { return std::string("polynomial"); },
                        [](const ExpAbsPotential&) { return std::string("exp_abs"); },
                        [](const ExpPotential&) { return std::string("exp"); },
                        [](const AbsAffinePotential&) { return std::string("abs_affine"); },
                        [](const GaussianWellPotential&) { return std::string("gaussian_well"); },
                        [](const TablePotential&) { return std::string("table"); },
                    },
                    family_);
}

std::optional<double> PotentialSpec::upper_bound() const {
  const std::optional<double> family_sup = std::visit(
      overloaded{
          [](const ConstantPotential& p) -> std::optional<double> { return p.value; },
          [](const PolynomialPotential& p) -> std::optional<double> {
            if (effective_degree(p.coefficients) == 0) return p.coefficients.front();
            return std::nullopt;
          },
          [](const ExpAbsPotential& p) -> std::optional<double> {
            if (p.scale == 0.0) return 1.0;
            if (p.scale < 0.0) return 1.0;
            return std::nullopt;
          },
          [](const ExpPotential& p) -> std::optional<double> {
            if (p.rate == 0.0) return 1.0;
            return std::nullopt;
          },
          [](const AbsAffinePotential& p) -> std::optional<double> {
            if (p.slope <= 0.0) return p.offset;
            return std::nullopt;
          },
          [](const GaussianWellPotential& p) -> std::optional<double> {
            return p.depth >= 0.0 ? p.depth - p.offset : -p.offset;
          },
          [](const TablePotential& p) -> std::optional<double> {
            return *std::max_element(p.phi.begin(), p.phi.end());
          },
      },
      family_);
  std::optional<double> sup;
  if (family_sup) sup = strength_ * *family_sup + offset_;
  if (truncation_) sup = sup ? std::min(*sup, *truncation_) : *truncation_;
  return sup;
}

bool PotentialSpec::is_bounded() const { return upper_bound().has_value(); }

PotentialSpec PotentialSpec::shifted(double amount) const {
  if (!std::isfinite(amount)) throw ConfigurationError("potential shift must be finite");
  PotentialSpec out = *this;
  out.offset_ += amount;
  out.lower_bound_ = std::max(0.0, lower_bound_ - amount);
  if (out.truncation_) *out.truncation_ += amount;
  return out;
}

PotentialSpec PotentialSpec::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw ConfigurationError("potential strength must be positive and finite");
  if (truncation_) throw PreconditionError("scale the potential before truncating it");
  PotentialSpec out = *this;
  out.strength_ *= factor;
  out.offset_ *= factor;
  out.lower_bound_ *= factor;
  return out;
}

double evaluate(const PotentialSpec& spec, double xi) { return spec(xi); }

PotentialSpec truncate(const PotentialSpec& spec, double level) {
  if (std::isnan(level) || !(level > 0.0))
    throw ConfigurationError("truncation level must be positive");
  if (spec.lower_bound() > 0.0)
    throw PreconditionError("truncate a nonnegative potential; apply the positivity shift first");
  if (std::isinf(level)) return spec;
  PotentialSpec out = spec;
  out.truncation_ = spec.truncation_ ? std::min(*spec.truncation_, level) : level;
  return out;
}

}  // namespace nonlocal
