#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nonlocal/fixedpoint.hpp"

namespace nonlocal::cli {

using Json = nlohmann::json;

/// Shortest round-trip-safe decimal form with 17 significant digits.
std::string format_number(double v);

/// One row per node: coordinates, then the value.
void write_field_csv(const std::filesystem::path& file, const Grid& grid, const Field& field);
Field read_field_csv(const std::filesystem::path& file, const Grid& grid);

/// dir/index.csv lists (m, t, file); one field CSV per time node.
void write_space_time_csv(const std::filesystem::path& dir, const Grid& grid,
                          const SpaceTimeField& field, const std::string& stem);
SpaceTimeField read_space_time_csv(const std::filesystem::path& dir, const Grid& grid);

void write_residuals_csv(const std::filesystem::path& file, const std::vector<double>& history);

void write_json(const std::filesystem::path& file, const Json& value);

Json to_json(const EnergyReport& e);
Json to_json(const BoundAudit& a);
Json to_json(const SelfMapAudit& a);
Json to_json(const StageReport& s);
Json to_json(const SolveReport& r);

/// Inverse of to_json for the fields the audit command needs.
struct StoredReport {
  bool converged = false;
  double final_k = kNoTruncation;
  double shift = 0.0;
  TimeScheme scheme = TimeScheme::implicit_euler;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  Json raw;
};
StoredReport read_report(const std::filesystem::path& file);

}  // namespace nonlocal::cli
