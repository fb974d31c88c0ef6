#include "nonlocal/cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nonlocal/cli/config.hpp"

namespace nonlocal::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw std::runtime_error(file.string() + ": cannot write");
  return out;
}

// JSON has no infinity or NaN; both serialize as null.
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str()) return {};
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(const fs::path& file, const Grid& grid, const Field& field) {
  grid.require_conforming(field, file.string().c_str());
  std::ofstream out = open_out(file);
  out << (grid.dimension() == 2 ? "x,y,value\n" : "x,value\n");
  for (std::size_t i = 0; i < field.size(); ++i) {
    const Point p = grid.point(i);
    out << format_number(p[0]) << ',';
    if (grid.dimension() == 2) out << format_number(p[1]) << ',';
    out << format_number(field[i]) << '\n';
  }
}

Field read_field_csv(const fs::path& file, const Grid& grid) {
  std::ifstream in(file);
  if (!in) throw ConfigurationError(file.string() + ": cannot open");
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> values;
  const std::size_t columns = static_cast<std::size_t>(grid.dimension()) + 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<double> row = parse_row(line);
    if (row.size() != columns)
      throw ConfigurationError(file.string() + ": expected " + std::to_string(columns) +
                               " numeric columns per row");
    values.push_back(row.back());
  }
  if (values.size() != grid.size())
    throw ConfigurationError(file.string() + ": expected " + std::to_string(grid.size()) +
                             " rows, found " + std::to_string(values.size()));
  return Field(std::move(values));
}

void write_space_time_csv(const fs::path& dir, const Grid& grid, const SpaceTimeField& field,
                          const std::string& stem) {
  require_conforming(grid, field, stem.c_str());
  fs::create_directories(dir);
  std::ofstream index = open_out(dir / "index.csv");
  index << "m,t,file\n";
  for (std::size_t m = 0; m < field.slice_count(); ++m) {
    char name[64];
    std::snprintf(name, sizeof name, "%s_%05zu.csv", stem.c_str(), m);
    write_field_csv(dir / name, grid, field[m]);
    index << m << ',' << format_number(grid.time(m)) << ',' << name << '\n';
  }
}

SpaceTimeField read_space_time_csv(const fs::path& dir, const Grid& grid) {
  std::ifstream index(dir / "index.csv");
  if (!index) throw ConfigurationError((dir / "index.csv").string() + ": cannot open");
  std::string line;
  std::getline(index, line);
  std::vector<Field> slices;
  while (std::getline(index, line)) {
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) throw ConfigurationError((dir / "index.csv").string() + ": malformed row");
    slices.push_back(read_field_csv(dir / line.substr(comma + 1), grid));
  }
  if (slices.size() != grid.time_steps() + 1)
    throw ConfigurationError((dir / "index.csv").string() + ": expected " +
                             std::to_string(grid.time_steps() + 1) + " slices, found " +
                             std::to_string(slices.size()));
  return SpaceTimeField(std::move(slices));
}

void write_residuals_csv(const fs::path& file, const std::vector<double>& history) {
  std::ofstream out = open_out(file);
  out << "iteration,residual\n";
  for (std::size_t i = 0; i < history.size(); ++i)
    out << i + 1 << ',' << format_number(history[i]) << '\n';
}

void write_json(const fs::path& file, const Json& value) {
  std::ofstream out = open_out(file);
  out << value.dump(2) << '\n';
}

Json to_json(const EnergyReport& e) {
  return {{"max_l2", num(e.max_l2)},
          {"grad_integral", num(e.grad_integral)},
          {"potential_integral", num(e.potential_integral)},
          {"running_energy_peak", num(e.running_energy_peak)},
          {"c1", num(e.c1)},
          {"satisfied", e.satisfied},
          {"combined_within_c1", e.combined_within_c1}};
}

Json to_json(const BoundAudit& a) {
  return {{"c1", num(a.c1)},
          {"alpha_sup_sq", num(a.alpha_sup_sq)},
          {"c6", num(a.c6)},
          {"phi_zeta_sq", num(a.phi_zeta_sq)},
          {"zeta_l2_sq", num(a.zeta_l2_sq)},
          {"phi_zeta_l1", num(a.phi_zeta_l1)},
          {"phi_zeta_zeta_l1", num(a.phi_zeta_zeta_l1)},
          {"phi_u_l1", num(a.phi_u_l1)},
          {"phi_u2_l1", num(a.phi_u2_l1)},
          {"phi_zeta_sq_ok", a.phi_zeta_sq_ok},
          {"zeta_l2_ok", a.zeta_l2_ok},
          {"integrals_finite", a.integrals_finite},
          {"all_passed", a.all_passed()}};
}

Json to_json(const SelfMapAudit& a) {
  return {{"radius", num(a.radius)},
          {"worst_ratio", num(a.worst_ratio)},
          {"samples", a.samples},
          {"seed", a.seed},
          {"passed", a.passed}};
}

Json to_json(const StageReport& s) {
  return {{"level", num(s.level)},
          {"iterations", s.iterations},
          {"converged", s.converged},
          {"gap_to_previous", num(s.gap_to_previous)},
          {"max_potential", num(s.max_potential)}};
}

Json to_json(const SolveReport& r) {
  Json stages = Json::array();
  for (const StageReport& s : r.stages) stages.push_back(to_json(s));
  Json history = Json::array();
  for (double v : r.residual_history) history.push_back(num(v));
  return {{"converged", r.converged},
          {"iterations", r.iterations},
          {"residual_history", history},
          {"final_k", num(r.final_k)},
          {"energy", to_json(r.energy)},
          {"c1", num(r.c1)},
          {"c2", num(r.c2)},
          {"c6", num(r.bound_audit.c6)},
          {"self_map_radius", num(r.self_map_radius)},
          {"bound_audit", to_json(r.bound_audit)},
          {"stages", stages},
          {"distinct_fixed_points", r.distinct_fixed_points},
          {"multi_start_runs", r.multi_start_runs},
          {"shift", num(r.shift)},
          {"scheme", to_string(r.scheme)}};
}

StoredReport read_report(const fs::path& file) {
  StoredReport s;
  s.raw = read_json_file(file);
  try {
    const Json& r = s.raw.at("solve");
    s.converged = r.at("converged").get<bool>();
    s.final_k = r.at("final_k").is_null() ? kNoTruncation : r.at("final_k").get<double>();
    s.shift = r.at("shift").get<double>();
    s.scheme = parse_time_scheme(r.at("scheme").get<std::string>());
    s.seed = s.raw.at("seed").get<std::uint64_t>();
    s.tol = s.raw.at("tol").get<double>();
  } catch (const Json::exception& e) {
    throw ConfigurationError(file.string() + ": missing or malformed field: " + e.what());
  }
  return s;
}

}  // namespace nonlocal::cli
