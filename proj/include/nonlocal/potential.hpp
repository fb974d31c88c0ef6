#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nonlocal {

// Potential families. Each is a continuous map R -> R.

struct ConstantPotential {
  double value = 0.0;
};

/// sum_i coefficients[i] * xi^i
struct PolynomialPotential {
  std::vector<double> coefficients;
};

/// exp(scale * |xi|)
struct ExpAbsPotential {
  double scale = 1.0;
};

/// exp(rate * xi)
struct ExpPotential {
  double rate = -1.0;
};

/// offset + slope * |xi|
struct AbsAffinePotential {
  double offset = 1.0;
  double slope = 1.0;
};

/// depth * (1 - exp(-xi^2 / width^2)) - offset
struct GaussianWellPotential {
  double depth = 1.0;
  double width = 1.0;
  double offset = 0.0;
};

/// Piecewise-linear interpolant through (xi, phi) pairs with constant
/// continuation outside [xi.front(), xi.back()].
struct TablePotential {
  std::vector<double> xi;
  std::vector<double> phi;
};

using PotentialFamily =
    std::variant<ConstantPotential, PolynomialPotential, ExpAbsPotential, ExpPotential,
                 AbsAffinePotential, GaussianWellPotential, TablePotential>;

/// Evaluation rule for the interaction potential.
///
/// A spec evaluates  min(strength * family(xi) + offset, k)  where the
/// additive offset comes from positivity shifts, strength from parameter
/// sweeps, and k is the optional truncation level. The declared lower bound
/// K promises value >= -K for every xi; it is checked at construction where
/// the family allows it and on every evaluation.
class PotentialSpec {
 public:
  explicit PotentialSpec(PotentialFamily family, double lower_bound = 0.0);

  double operator()(double xi) const;

  const PotentialFamily& family() const { return family_; }
  std::string family_name() const;
  double lower_bound() const { return lower_bound_; }
  std::optional<double> truncation_level() const { return truncation_; }
  double offset() const { return offset_; }
  double strength() const { return strength_; }

  /// True when the evaluation is bounded above (finite sup).
  bool is_bounded() const;
  /// Supremum of the evaluation when bounded.
  std::optional<double> upper_bound() const;

  /// phi + amount, with the declared lower bound reduced accordingly.
  PotentialSpec shifted(double amount) const;
  /// strength * phi; factor must be positive.
  PotentialSpec scaled(double factor) const;

 private:
  friend PotentialSpec truncate(const PotentialSpec& spec, double level);

  double raw(double xi) const;
  void check_declared_bound() const;

  PotentialFamily family_;
  double lower_bound_ = 0.0;
  double offset_ = 0.0;
  double strength_ = 1.0;
  std::optional<double> truncation_;
};

/// phi(xi), clamped to the truncation level when one is set. Throws
/// DomainError for a non-finite argument.
double evaluate(const PotentialSpec& spec, double xi);

/// The bounded surrogate min(phi, level). level == +inf returns the potential
/// unchanged. Throws ConfigurationError for level <= 0 and
/// PreconditionError when phi may be negative (lower_bound > 0).
PotentialSpec truncate(const PotentialSpec& spec, double level);

}  // namespace nonlocal
