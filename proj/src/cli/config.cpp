#include "nonlocal/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nonlocal::cli {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigurationError(path + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "must be an object");
}

void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) fail(join(path, k), "unknown field");
}

const Json& member(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(join(path, key), "is required");
  return j.at(key);
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

double positive(const Json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0.0)) fail(path, "must be > 0");
  return v;
}

std::size_t count(const Json& j, const std::string& path, std::size_t minimum = 1) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(path, "must be an integer");
  const auto v = j.get<long long>();
  if (v < static_cast<long long>(minimum))
    fail(path, "must be >= " + std::to_string(minimum));
  return static_cast<std::size_t>(v);
}

bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "must be true or false");
  return j.get<bool>();
}

std::string string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "must be a string");
  return j.get<std::string>();
}

std::vector<double> number_list(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], index(path, i)));
  return out;
}

Expression expression(const Json& j, const std::string& path) {
  if (j.is_number()) return Expression::parse(j.dump());
  try {
    return Expression::parse(string(j, path));
  } catch (const ConfigurationError& e) {
    fail(path, e.what());
  }
}

// Spatial data: expression, or a flat list of node values.
DataSpec spatial_data(const Json& j, const std::string& path) {
  DataSpec d;
  if (j.is_array()) {
    d.values.push_back(number_list(j, path));
    return d;
  }
  if (!j.is_string() && !j.is_number()) fail(path, "must be an expression or an array of numbers");
  d.expression = expression(j, path);
  if (!d.expression->time_independent()) fail(path, "must not depend on t");
  return d;
}

// Space-time data: expression, or one list of node values per time node.
DataSpec space_time_data(const Json& j, const std::string& path) {
  DataSpec d;
  if (j.is_array()) {
    for (std::size_t m = 0; m < j.size(); ++m) d.values.push_back(number_list(j[m], index(path, m)));
    return d;
  }
  if (!j.is_string() && !j.is_number())
    fail(path, "must be an expression or an array of per-time-node arrays");
  d.expression = expression(j, path);
  return d;
}

std::vector<std::size_t> counts_list(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty() || j.size() > 2) fail(path, "must list 1 or 2 interior counts");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(count(j[i], index(path, i)));
  return out;
}

ProblemConfig parse_problem(const Json& j, const std::string& path, const fs::path& base,
                            Json& resolved) {
  require_object(j, path);
  only_keys(j, path, {"domain", "interior_counts", "T", "M", "alpha", "forcing", "initial", "potential"});
  ProblemConfig p;
  const Json& dom = member(j, path, "domain");
  const std::string dpath = join(path, "domain");
  if (!dom.is_array() || dom.empty() || dom.size() > 2) fail(dpath, "must list 1 or 2 intervals");
  for (std::size_t a = 0; a < dom.size(); ++a) {
    const std::string ipath = index(dpath, a);
    if (!dom[a].is_array() || dom[a].size() != 2) fail(ipath, "must be [lo, hi]");
    const double lo = number(dom[a][0], index(ipath, 0)), hi = number(dom[a][1], index(ipath, 1));
    if (!(hi > lo)) fail(ipath, "needs hi > lo");
    p.domain.push_back({lo, hi});
  }
  p.interior_counts = counts_list(member(j, path, "interior_counts"), join(path, "interior_counts"));
  if (p.interior_counts.size() != p.domain.size())
    fail(join(path, "interior_counts"), "must have one entry per domain axis");
  p.horizon = positive(member(j, path, "T"), join(path, "T"));
  p.time_steps = count(member(j, path, "M"), join(path, "M"));
  p.alpha = j.contains("alpha") ? space_time_data(j["alpha"], join(path, "alpha")) : space_time_data(1.0, "");
  p.forcing = j.contains("forcing") ? space_time_data(j["forcing"], join(path, "forcing"))
                                    : space_time_data(0.0, "");
  p.initial = j.contains("initial") ? spatial_data(j["initial"], join(path, "initial")) : spatial_data(0.0, "");
  p.potential = parse_potential(member(j, path, "potential"), join(path, "potential"), base,
                                &resolved["potential"]);
  return p;
}

ManufacturedConfig parse_manufactured(const Json& j, const std::string& path) {
  ManufacturedConfig m;
  if (j.is_string()) {
    m.name = j.get<std::string>();
  } else {
    require_object(j, path);
    only_keys(j, path, {"name", "interior_counts", "M", "T"});
    m.name = string(member(j, path, "name"), join(path, "name"));
    if (j.contains("interior_counts"))
      m.interior_counts = counts_list(j["interior_counts"], join(path, "interior_counts"));
    if (j.contains("M")) m.time_steps = count(j["M"], join(path, "M"));
    if (j.contains("T")) m.horizon = positive(j["T"], join(path, "T"));
  }
  const auto names = manufactured_catalogue();
  if (std::find(names.begin(), names.end(), m.name) == names.end())
    fail(j.is_string() ? path : join(path, "name"), "unknown manufactured case '" + m.name + "'");
  return m;
}

SolverConfig parse_solver(const Json& j, const std::string& path) {
  require_object(j, path);
  only_keys(j, path,
            {"scheme", "damping", "tol", "max_iter", "truncation", "lin_tol", "linear_solver",
             "initial_guess", "multi_start", "positivity_shift", "self_map_samples"});
  SolverConfig s;
  if (j.contains("scheme")) {
    try {
      s.scheme = parse_time_scheme(string(j["scheme"], join(path, "scheme")));
    } catch (const ConfigurationError&) {
      fail(join(path, "scheme"), "must be \"implicit_euler\" or \"crank_nicolson\"");
    }
  }
  if (j.contains("damping")) {
    s.damping = number(j["damping"], join(path, "damping"));
    if (!(s.damping > 0.0 && s.damping <= 1.0)) fail(join(path, "damping"), "must lie in (0, 1]");
  }
  if (j.contains("tol")) s.tol = positive(j["tol"], join(path, "tol"));
  if (j.contains("max_iter")) s.max_iter = count(j["max_iter"], join(path, "max_iter"));
  if (j.contains("lin_tol")) s.lin_tol = positive(j["lin_tol"], join(path, "lin_tol"));
  if (j.contains("truncation")) {
    const Json& t = j["truncation"];
    const std::string tpath = join(path, "truncation");
    if (t.is_string()) {
      const std::string mode = t.get<std::string>();
      if (mode == "none")
        s.truncation = TruncationSchedule::none();
      else if (mode != "auto")
        fail(tpath, "must be \"auto\", \"none\" or an increasing list of levels");
    } else {
      const std::vector<double> levels = number_list(t, tpath);
      if (levels.empty()) fail(tpath, "must list at least one level");
      for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] > 0.0)) fail(index(tpath, i), "must be > 0");
        if (i > 0 && !(levels[i] > levels[i - 1])) fail(index(tpath, i), "levels must increase strictly");
      }
      s.truncation = TruncationSchedule::explicit_levels(levels);
    }
  }
  if (j.contains("linear_solver")) {
    const std::string k = string(j["linear_solver"], join(path, "linear_solver"));
    if (k == "automatic")
      s.linear_solver = LinearSolverKind::automatic;
    else if (k == "conjugate_gradient")
      s.linear_solver = LinearSolverKind::conjugate_gradient;
    else if (k == "tridiagonal")
      s.linear_solver = LinearSolverKind::tridiagonal;
    else
      fail(join(path, "linear_solver"), "must be automatic, conjugate_gradient or tridiagonal");
  }
  if (j.contains("initial_guess"))
    s.initial_guess = spatial_data(j["initial_guess"], join(path, "initial_guess"));
  if (j.contains("multi_start")) {
    const Json& ms = j["multi_start"];
    if (!ms.is_array()) fail(join(path, "multi_start"), "must be an array of initial guesses");
    for (std::size_t i = 0; i < ms.size(); ++i)
      s.multi_start.push_back(spatial_data(ms[i], index(join(path, "multi_start"), i)));
  }
  if (j.contains("positivity_shift"))
    s.positivity_shift = boolean(j["positivity_shift"], join(path, "positivity_shift"));
  if (j.contains("self_map_samples"))
    s.self_map_samples = count(j["self_map_samples"], join(path, "self_map_samples"), 0);
  return s;
}

OutputConfig parse_output(const Json& j, const std::string& path) {
  require_object(j, path);
  only_keys(j, path, {"directory", "u", "zeta", "coefficient", "report", "residuals"});
  OutputConfig o;
  if (j.contains("directory")) o.directory = string(j["directory"], join(path, "directory"));
  if (j.contains("u")) o.u = boolean(j["u"], join(path, "u"));
  if (j.contains("zeta")) o.zeta = boolean(j["zeta"], join(path, "zeta"));
  if (j.contains("coefficient")) o.coefficient = boolean(j["coefficient"], join(path, "coefficient"));
  if (j.contains("report")) o.report = boolean(j["report"], join(path, "report"));
  if (j.contains("residuals")) o.residuals = boolean(j["residuals"], join(path, "residuals"));
  return o;
}

Field spatial_values(const Grid& g, const std::vector<double>& v, const std::string& what) {
  if (v.size() != g.size())
    throw ConfigurationError(what + ": expected " + std::to_string(g.size()) + " node values, got " +
                             std::to_string(v.size()));
  return Field(v);
}

}  // namespace

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError(path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigurationError(path.string() + ": malformed JSON: " + e.what());
  }
}

TablePotential load_potential_table(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigurationError(file.string() + ": cannot open potential table");
  TablePotential t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream row(line);
    double xi = 0.0, phi = 0.0;
    if (!(row >> xi >> phi)) {
      if (t.xi.empty() && lineno == 1) continue;  // header
      throw ConfigurationError(file.string() + ":" + std::to_string(lineno) +
                               ": expected two numeric columns");
    }
    t.xi.push_back(xi);
    t.phi.push_back(phi);
  }
  return t;
}

PotentialSpec parse_potential(const Json& j, const std::string& path, const fs::path& base,
                              Json* resolved) {
  require_object(j, path);
  const std::string family = string(member(j, path, "family"), join(path, "family"));
  const std::string fpath = join(path, "family");
  auto get = [&](const char* key, double fallback) {
    return j.contains(key) ? number(j[key], join(path, key)) : fallback;
  };
  PotentialFamily fam;
  if (family == "constant") {
    only_keys(j, path, {"family", "value", "lower_bound", "strength", "truncation"});
    fam = ConstantPotential{number(member(j, path, "value"), join(path, "value"))};
  } else if (family == "polynomial") {
    only_keys(j, path, {"family", "coefficients", "lower_bound", "strength", "truncation"});
    const auto c = number_list(member(j, path, "coefficients"), join(path, "coefficients"));
    if (c.empty()) fail(join(path, "coefficients"), "must not be empty");
    fam = PolynomialPotential{c};
  } else if (family == "exp_abs") {
    only_keys(j, path, {"family", "scale", "lower_bound", "strength", "truncation"});
    fam = ExpAbsPotential{get("scale", 1.0)};
  } else if (family == "exp") {
    only_keys(j, path, {"family", "rate", "lower_bound", "strength", "truncation"});
    fam = ExpPotential{get("rate", -1.0)};
  } else if (family == "abs_affine") {
    only_keys(j, path, {"family", "offset", "slope", "lower_bound", "strength", "truncation"});
    fam = AbsAffinePotential{get("offset", 1.0), get("slope", 1.0)};
  } else if (family == "gaussian_well") {
    only_keys(j, path, {"family", "depth", "width", "offset", "lower_bound", "strength", "truncation"});
    const double width = get("width", 1.0);
    if (!(width > 0.0)) fail(join(path, "width"), "must be > 0");
    fam = GaussianWellPotential{get("depth", 1.0), width, get("offset", 0.0)};
  } else if (family == "table") {
    only_keys(j, path, {"family", "file", "xi", "phi", "lower_bound", "strength", "truncation"});
    TablePotential t;
    if (j.contains("file")) {
      fs::path file = string(j["file"], join(path, "file"));
      if (file.is_relative()) file = base / file;
      if (!fs::exists(file)) fail(join(path, "file"), "table '" + file.string() + "' does not exist");
      try {
        t = load_potential_table(file);
      } catch (const ConfigurationError& e) {
        fail(join(path, "file"), e.what());
      }
      if (resolved) (*resolved)["file"] = fs::absolute(file).lexically_normal().string();
    } else {
      t.xi = number_list(member(j, path, "xi"), join(path, "xi"));
      t.phi = number_list(member(j, path, "phi"), join(path, "phi"));
      if (t.xi.size() != t.phi.size()) fail(join(path, "phi"), "must have as many entries as xi");
    }
    fam = std::move(t);
  } else {
    fail(fpath, "unknown family '" + family +
                    "' (constant, polynomial, exp_abs, exp, abs_affine, gaussian_well, table)");
  }
  const double lower = get("lower_bound", 0.0);
  if (lower < 0.0) fail(join(path, "lower_bound"), "must be >= 0");
  try {
    PotentialSpec spec(std::move(fam), lower);
    if (j.contains("strength")) spec = spec.scaled(positive(j["strength"], join(path, "strength")));
    if (j.contains("truncation")) spec = truncate(spec, positive(j["truncation"], join(path, "truncation")));
    return spec;
  } catch (const PreconditionError& e) {
    fail(join(path, "truncation"), e.what());
  } catch (const ConfigurationError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    fail(family == "table" && j.contains("file") ? join(path, "file") : path, msg);
  }
}

RunConfig parse_config(const Json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) fail("$", "configuration must be a JSON object");
  only_keys(doc, "", {"problem", "manufactured", "solver", "output", "seed"});
  RunConfig c;
  c.resolved = doc;
  if (doc.contains("problem") && doc.contains("manufactured"))
    fail("problem", "give either problem or manufactured, not both");
  if (doc.contains("problem"))
    c.problem = parse_problem(doc["problem"], "problem", base_dir, c.resolved["problem"]);
  else if (doc.contains("manufactured"))
    c.manufactured = parse_manufactured(doc["manufactured"], "manufactured");
  else
    fail("problem", "is required (or give manufactured)");
  if (doc.contains("solver")) c.solver = parse_solver(doc["solver"], "solver");
  if (doc.contains("output")) c.output = parse_output(doc["output"], "output");
  if (doc.contains("seed")) c.seed = count(doc["seed"], "seed", 0);
  return c;
}

std::vector<std::size_t> default_manufactured_counts(const ManufacturedCase& mms) {
  return mms.domain.size() == 2 ? std::vector<std::size_t>{15, 15} : std::vector<std::size_t>{31};
}

Field sample_spatial(const Grid& g, const DataSpec& spec, const std::string& what) {
  if (spec.expression) {
    const Expression& e = *spec.expression;
    return sample(g, [&e](const Point& x) { return e(x[0], x[1], 0.0); });
  }
  return spatial_values(g, spec.values.front(), what);
}

SpaceTimeField sample_space_time(const Grid& g, const DataSpec& spec, const std::string& what) {
  if (spec.expression) {
    const Expression& e = *spec.expression;
    return sample(g, [&e](const Point& x, double t) { return e(x[0], x[1], t); });
  }
  if (spec.values.size() != g.time_steps() + 1)
    throw ConfigurationError(what + ": expected " + std::to_string(g.time_steps() + 1) +
                             " time slices, got " + std::to_string(spec.values.size()));
  std::vector<Field> slices;
  for (std::size_t m = 0; m < spec.values.size(); ++m)
    slices.push_back(spatial_values(g, spec.values[m], what + "[" + std::to_string(m) + "]"));
  return SpaceTimeField(std::move(slices));
}

BuiltProblem build_problem(const RunConfig& c) {
  if (c.manufactured) {
    const ManufacturedConfig& m = *c.manufactured;
    ManufacturedCase mms = build_manufactured(m.name, m.horizon);
    std::vector<std::size_t> counts =
        m.interior_counts.empty() ? default_manufactured_counts(mms) : m.interior_counts;
    if (counts.size() != mms.domain.size())
      throw ConfigurationError("manufactured.interior_counts: " + m.name + " needs " +
                               std::to_string(mms.domain.size()) + " entries");
    Problem p = mms.discretize(counts, m.time_steps);
    return {std::move(p), std::move(mms)};
  }
  const ProblemConfig& pc = *c.problem;
  const Grid g = Grid::build(pc.domain, pc.interior_counts, pc.horizon, pc.time_steps);
  Problem p{g, sample_space_time(g, pc.alpha, "problem.alpha"),
            sample_space_time(g, pc.forcing, "problem.forcing"),
            sample_spatial(g, pc.initial, "problem.initial"), pc.potential};
  p.validate();
  return {std::move(p), std::nullopt};
}

FixedPointOptions build_options(const RunConfig& c, const Grid& g) {
  const SolverConfig& s = c.solver;
  FixedPointOptions o;
  o.scheme = s.scheme;
  o.damping = s.damping;
  o.tol = s.tol;
  o.max_iter = s.max_iter;
  o.truncation = s.truncation;
  o.lin_tol = s.lin_tol;
  o.solver = s.linear_solver;
  o.apply_positivity_shift = s.positivity_shift;
  if (s.initial_guess) o.initial_guess = sample_spatial(g, *s.initial_guess, "solver.initial_guess");
  for (std::size_t i = 0; i < s.multi_start.size(); ++i)
    o.multi_start.push_back(
        sample_spatial(g, s.multi_start[i], "solver.multi_start[" + std::to_string(i) + "]"));
  return o;
}

}  // namespace nonlocal::cli
