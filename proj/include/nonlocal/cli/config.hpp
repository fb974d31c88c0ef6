#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nonlocal/cli/expression.hpp"
#include "nonlocal/fixedpoint.hpp"
#include "nonlocal/verification.hpp"

namespace nonlocal::cli {

using Json = nlohmann::json;

/// alpha, f, u0 or an initial guess: an expression (numbers included) or raw
/// sampled values. Raw spatial data is one value per interior node; raw
/// space-time data is one such list per time node.
struct DataSpec {
  std::optional<Expression> expression;
  std::vector<std::vector<double>> values;
};

struct ProblemConfig {
  std::vector<Interval> domain;
  std::vector<std::size_t> interior_counts;
  double horizon = 1.0;
  std::size_t time_steps = 1;
  DataSpec alpha, forcing, initial;
  PotentialSpec potential{ConstantPotential{0.0}};
};

struct ManufacturedConfig {
  std::string name;
  std::vector<std::size_t> interior_counts;  ///< empty: case default
  std::size_t time_steps = 32;
  double horizon = 1.0;
};

struct SolverConfig {
  TimeScheme scheme = TimeScheme::implicit_euler;
  double damping = 0.5;
  double tol = 1e-10;
  std::size_t max_iter = 500;
  TruncationSchedule truncation;
  double lin_tol = 1e-10;
  LinearSolverKind linear_solver = LinearSolverKind::automatic;
  std::optional<DataSpec> initial_guess;
  std::vector<DataSpec> multi_start;
  bool positivity_shift = true;
  std::size_t self_map_samples = 16;
};

struct OutputConfig {
  std::filesystem::path directory = "nonlocal_out";
  bool u = true;
  bool zeta = true;
  bool coefficient = true;
  bool report = true;
  bool residuals = true;
};

struct RunConfig {
  std::optional<ProblemConfig> problem;
  std::optional<ManufacturedConfig> manufactured;
  SolverConfig solver;
  OutputConfig output;
  std::uint64_t seed = 42;
  /// The configuration as a self-contained document: relative table paths
  /// resolved, command-line overrides applied.
  Json resolved;
};

/// Validates the document and builds the configuration. Every violation is
/// reported as a ConfigurationError whose message starts with the field path.
/// Relative table paths resolve against base_dir.
RunConfig parse_config(const Json& document, const std::filesystem::path& base_dir);

/// Reads and parses a JSON file; unreadable or malformed files throw ConfigurationError.
Json read_json_file(const std::filesystem::path& path);

/// Builds the potential from its JSON block.
PotentialSpec parse_potential(const Json& block, const std::string& path,
                              const std::filesystem::path& base_dir, Json* resolved = nullptr);

/// Two-column CSV (xi, phi), optional header line.
TablePotential load_potential_table(const std::filesystem::path& file);

struct BuiltProblem {
  Problem problem;
  std::optional<ManufacturedCase> manufactured;
};

BuiltProblem build_problem(const RunConfig& config);
FixedPointOptions build_options(const RunConfig& config, const Grid& grid);

Field sample_spatial(const Grid& grid, const DataSpec& spec, const std::string& what);
SpaceTimeField sample_space_time(const Grid& grid, const DataSpec& spec, const std::string& what);

/// Default interior counts for a manufactured case: 31 in 1D, 15 x 15 in 2D.
std::vector<std::size_t> default_manufactured_counts(const ManufacturedCase& mms);

}  // namespace nonlocal::cli
