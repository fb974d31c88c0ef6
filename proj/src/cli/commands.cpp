#include "nonlocal/cli/commands.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "nonlocal/cli/io.hpp"
#include "nonlocal/kernels.hpp"

namespace nonlocal::cli {

namespace fs = std::filesystem;

namespace {

// Maps library exceptions onto exit codes.
template <class Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigurationError& e) {
    log << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DimensionError& e) {
    log << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const StudyError& e) {
    log << "study failed: " << e.what() << '\n';
    return kExitVerdict;
  } catch (const SolverError& e) {
    log << "solver error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitSolver;
  } catch (const PreconditionError& e) {
    log << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const DomainError& e) {
    log << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const fs::filesystem_error& e) {
    log << "i/o error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

struct RunArtifacts {
  NonlocalSolution solution;
  Json report;
  bool verdicts_ok = true;
};

Json grid_json(const Grid& g) {
  Json domain = Json::array(), counts = Json::array();
  for (int a = 0; a < g.dimension(); ++a) {
    domain.push_back({g.extent(a).lo, g.extent(a).hi});
    counts.push_back(g.count(a));
  }
  return {{"domain", domain}, {"interior_counts", counts}, {"T", g.horizon()}, {"M", g.time_steps()}};
}

double fixed_point_defect(const Problem& working, const SpaceTimeField& u_bar, const Field& zeta) {
  const Grid& g = working.grid;
  const Field z = weighted_time_integral(g, working.alpha, u_bar);
  double gap = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) gap += std::abs(z[i] - zeta[i]);
  return gap * g.cell_volume() / std::max(norm_l1(g, zeta), kResidualFloor);
}

constexpr double kFixedPointDefectLimit = 1e-9;

std::optional<SelfMapAudit> maybe_self_map(const Problem& working, std::size_t samples,
                                           std::uint64_t seed, TimeScheme scheme, double lin_tol) {
  if (samples == 0 || !working.potential.is_bounded()) return std::nullopt;
  FrozenSolveOptions frozen;
  frozen.scheme = scheme;
  frozen.lin_tol = lin_tol;
  return self_map_audit(working, samples, seed, frozen);
}

// Solves one configuration and writes its artifacts to dir.
RunArtifacts run_and_write(const RunConfig& cfg, const fs::path& dir) {
  const BuiltProblem built = build_problem(cfg);
  const Problem& problem = built.problem;
  const Grid& g = problem.grid;
  const FixedPointOptions options = build_options(cfg, g);

  RunArtifacts art;
  art.solution = solve_nonlocal(problem, options);
  const NonlocalSolution& sol = art.solution;
  const SolveReport& rep = sol.report;

  const Problem working = working_problem(problem, rep.shift, rep.final_k);
  const SpaceTimeField u_bar = shift_solution(g, sol.u, rep.shift);

  Json report;
  report["solve"] = to_json(rep);
  report["seed"] = cfg.seed;
  report["tol"] = options.tol;
  report["grid"] = grid_json(g);
  report["potential"] = problem.potential.family_name();
  report["weak_residual"] = weak_residual(g, u_bar, sol.zeta, working);
  const double defect = fixed_point_defect(working, u_bar, sol.zeta);
  report["fixed_point_defect"] = defect;
  const bool audited = rep.shift > 0.0 || problem.potential.lower_bound() == 0.0;
  report["bound_audit_applicable"] = audited;

  art.verdicts_ok = rep.energy.satisfied && (!audited || rep.bound_audit.all_passed()) &&
                    defect <= kFixedPointDefectLimit;
  const auto smap = maybe_self_map(working, cfg.solver.self_map_samples, cfg.seed, options.scheme,
                                   options.lin_tol);
  if (smap) {
    report["self_map_audit"] = to_json(*smap);
    art.verdicts_ok = art.verdicts_ok && smap->passed;
  } else {
    report["self_map_audit"] = nullptr;
  }
  if (built.manufactured) {
    const ManufacturedCase& mms = *built.manufactured;
    const Field zeta_exact = sample(g, mms.zeta_exact);
    double zerr = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) zerr = std::max(zerr, std::abs(sol.zeta[i] - zeta_exact[i]));
    report["exact_error"] = {{"case", mms.name},
                             {"u_max_abs_error", max_abs_difference(sol.u, mms.sample_exact(g))},
                             {"zeta_max_abs_error", zerr}};
  }

  fs::create_directories(dir);
  if (cfg.output.u) write_space_time_csv(dir / "u", g, sol.u, "u");
  // zeta and the frozen coefficient are needed by the audit command.
  if (cfg.output.zeta || cfg.output.u) write_field_csv(dir / "zeta.csv", g, sol.zeta);
  if (cfg.output.coefficient) write_field_csv(dir / "coefficient.csv", g, sol.coefficient);
  if (cfg.output.residuals) write_residuals_csv(dir / "residuals.csv", rep.residual_history);
  if (cfg.output.report) write_json(dir / "report.json", report);
  Json resolved = cfg.resolved;
  resolved["seed"] = cfg.seed;
  write_json(dir / "config.json", resolved);
  art.report = std::move(report);
  return art;
}

void summarize(std::ostream& log, const SolveReport& r, const Json& report) {
  log << "converged: " << (r.converged ? "yes" : "no") << " after " << r.iterations
      << " iterations";
  if (!r.residual_history.empty()) log << ", residual " << r.residual_history.back();
  log << '\n';
  if (!std::isinf(r.final_k)) log << "truncation level: " << r.final_k << '\n';
  if (r.shift > 0.0) log << "positivity shift K = " << r.shift << '\n';
  log << "energy certificate: " << (r.energy.satisfied ? "holds" : "VIOLATED")
      << " (peak " << r.energy.running_energy_peak << " <= C1 " << r.energy.c1 << ")\n";
  if (report.value("bound_audit_applicable", true))
    log << "bound audit: " << (r.bound_audit.all_passed() ? "passed" : "FAILED") << '\n';
  if (!report["self_map_audit"].is_null())
    log << "self-map audit: " << (report["self_map_audit"]["passed"].get<bool>() ? "passed" : "FAILED")
        << " (worst ratio " << report["self_map_audit"]["worst_ratio"].get<double>() << ")\n";
  log << "weak residual: " << report["weak_residual"].get<double>() << '\n';
  if (report.contains("exact_error"))
    log << "max |u - u*|: " << report["exact_error"]["u_max_abs_error"].get<double>() << '\n';
  if (r.multi_start_runs > 0)
    log << "distinct fixed points: " << r.distinct_fixed_points << " from "
        << r.multi_start_runs + 1 << " starts\n";
}

Json load_document(const std::optional<fs::path>& config, fs::path& base) {
  if (!config) {
    base = fs::current_path();
    return Json::object();
  }
  base = fs::absolute(*config).parent_path();
  return read_json_file(*config);
}

}  // namespace

Problem working_problem(const Problem& problem, double shift, double final_k) {
  Problem w = shift > 0.0 ? positivity_shift(problem).problem : problem;
  if (!std::isinf(final_k)) w.potential = truncate(w.potential, final_k);
  return w;
}

int cmd_solve(const SolveArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    fs::path base;
    Json doc = load_document(args.config, base);
    if (args.manufactured) {
      if (doc.contains("problem"))
        throw ConfigurationError("--manufactured: the configuration already defines a problem block");
      if (doc.contains("manufactured") && doc["manufactured"].is_object())
        doc["manufactured"]["name"] = *args.manufactured;
      else
        doc["manufactured"] = *args.manufactured;
    }
    if (args.scheme) doc["solver"]["scheme"] = *args.scheme;
    if (args.seed) doc["seed"] = *args.seed;
    if (args.out) doc["output"]["directory"] = args.out->string();
    const RunConfig cfg = parse_config(doc, base);
    const fs::path dir = cfg.output.directory;

    const RunArtifacts art = run_and_write(cfg, dir);
    summarize(log, art.solution.report, art.report);
    log << "outputs written to " << dir.string() << '\n';
    if (!art.solution.report.converged) return static_cast<int>(kExitVerdict);
    return static_cast<int>(kExitOk);
  });
}

int cmd_audit(const AuditArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    const fs::path dir = args.directory;
    for (const char* f : {"config.json", "report.json", "zeta.csv"})
      if (!fs::exists(dir / f)) throw ConfigurationError((dir / f).string() + ": missing");
    if (!fs::exists(dir / "u" / "index.csv"))
      throw ConfigurationError((dir / "u" / "index.csv").string() + ": missing");

    const Json doc = read_json_file(dir / "config.json");
    const RunConfig cfg = parse_config(doc, dir);
    const BuiltProblem built = build_problem(cfg);
    const Problem& problem = built.problem;
    const Grid& g = problem.grid;
    const StoredReport stored = read_report(dir / "report.json");

    const SpaceTimeField u = read_space_time_csv(dir / "u", g);
    const Field zeta = read_field_csv(dir / "zeta.csv", g);
    const Problem working = working_problem(problem, stored.shift, stored.final_k);
    const SpaceTimeField u_bar = shift_solution(g, u, stored.shift);
    Field coefficient(g.size());
    if (fs::exists(dir / "coefficient.csv")) {
      coefficient = read_field_csv(dir / "coefficient.csv", g);
    } else {
      for (std::size_t i = 0; i < g.size(); ++i) coefficient[i] = working.potential(zeta[i]);
    }

    const EnergyReport energy =
        energy_report(g, u_bar, coefficient, working.forcing, working.initial, stored.scheme);
    const bool audited = stored.shift > 0.0 || problem.potential.lower_bound() == 0.0;
    const BoundAudit bounds = bound_audit(g, u_bar, zeta, working, stored.scheme);
    const double weak = weak_residual(g, u_bar, zeta, working);
    const double defect = fixed_point_defect(working, u_bar, zeta);
    const std::uint64_t seed = args.seed.value_or(stored.seed);
    const auto smap = maybe_self_map(working, cfg.solver.self_map_samples, seed, stored.scheme,
                                     cfg.solver.lin_tol);

    const bool fp_ok = defect <= kFixedPointDefectLimit;
    const bool ok = energy.satisfied && (!audited || bounds.all_passed()) && fp_ok &&
                    (!smap || smap->passed);
    Json out;
    out["energy"] = to_json(energy);
    out["bound_audit"] = to_json(bounds);
    out["bound_audit_applicable"] = audited;
    out["weak_residual"] = weak;
    out["fixed_point_defect"] = defect;
    out["fixed_point_consistent"] = fp_ok;
    out["self_map_audit"] = smap ? to_json(*smap) : Json(nullptr);
    out["seed"] = seed;
    out["all_verdicts_true"] = ok;
    write_json(dir / "audit.json", out);

    log << "energy certificate: " << (energy.satisfied ? "holds" : "VIOLATED") << " (peak "
        << energy.running_energy_peak << ", C1 " << energy.c1 << ")\n";
    if (audited) log << "bound audit: " << (bounds.all_passed() ? "passed" : "FAILED") << '\n';
    log << "fixed-point consistency: " << (fp_ok ? "holds" : "VIOLATED") << " (defect " << defect
        << ")\n";
    if (smap)
      log << "self-map audit: " << (smap->passed ? "passed" : "FAILED") << " (worst ratio "
          << smap->worst_ratio << ")\n";
    log << "weak residual: " << weak << '\n';
    log << (ok ? "all verdicts true" : "audit FAILED") << '\n';
    return static_cast<int>(ok ? kExitOk : kExitVerdict);
  });
}

namespace {

struct StudyPlan {
  std::string label;
  RefinementAxis axis;
  std::vector<RefinementLevel> levels;
  double target;
  double window;
};

std::vector<StudyPlan> plan_studies(const ManufacturedCase& mms, std::size_t n_levels,
                                    TimeScheme scheme) {
  const bool two_d = mms.domain.size() == 2;
  const bool ie = scheme == TimeScheme::implicit_euler;
  std::vector<StudyPlan> plans;

  StudyPlan space{"space", RefinementAxis::space, {}, 2.0, two_d ? 0.3 : 0.2};
  const std::size_t coarse = two_d ? 8 : 16;
  const std::size_t finest = coarse << (n_levels - 1);
  for (std::size_t l = 0; l < n_levels; ++l) {
    const std::size_t cells = coarse << l;
    // Implicit Euler: dt ~ h^2 keeps the temporal error at the spatial order.
    // Crank-Nicolson: one fixed dt well below the finest h.
    const auto steps = ie ? static_cast<std::size_t>(std::ceil(mms.horizon * cells * cells))
                          : static_cast<std::size_t>(std::ceil(4.0 * mms.horizon * finest));
    space.levels.push_back({std::vector<std::size_t>(mms.domain.size(), cells - 1), steps});
  }
  plans.push_back(space);

  if (!two_d) {
    StudyPlan time{"time", RefinementAxis::time, {}, ie ? 1.0 : 2.0, 0.2};
    const std::size_t m_finest = std::size_t{8} << (n_levels - 1);
    const std::size_t cells = 64 * m_finest;
    for (std::size_t l = 0; l < n_levels; ++l)
      time.levels.push_back({{cells - 1}, std::size_t{8} << l});
    plans.push_back(time);
  }
  return plans;
}

void write_rate_table(const fs::path& file, const RateTable& t) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error(file.string() + ": cannot write");
  out << "level,h,dt,error,rate\n";
  for (const RateRow& r : t.rows)
    out << r.level << ',' << format_number(r.h) << ',' << format_number(r.dt) << ','
        << format_number(r.error) << ',' << (std::isnan(r.rate) ? "" : format_number(r.rate)) << '\n';
}

}  // namespace

int cmd_mms(const MmsArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    if (args.levels < 3) throw ConfigurationError("--levels: must be >= 3");
    const TimeScheme scheme = parse_time_scheme(args.scheme);
    const ManufacturedCase mms = build_manufactured(args.case_name);
    FixedPointOptions o;
    o.scheme = scheme;
    o.damping = 1.0;
    o.tol = 1e-12;
    o.lin_tol = 1e-12;
    fs::create_directories(args.out);

    bool all_in = true;
    for (const StudyPlan& plan : plan_studies(mms, args.levels, scheme)) {
      const RateTable t = convergence_study(mms, plan.levels, plan.axis, o);
      const fs::path file = args.out / (mms.name + "_" + plan.label + "_" + to_string(scheme) + ".csv");
      write_rate_table(file, t);
      bool in = std::abs(t.fitted_rate - plan.target) <= plan.window;
      log << mms.name << ' ' << plan.label << " refinement (" << to_string(scheme) << ")\n";
      log << "  h            dt           error        rate\n";
      for (const RateRow& r : t.rows) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-12.5g %-12.5g %-12.5e %s\n", r.h, r.dt, r.error,
                      std::isnan(r.rate) ? "-" : std::to_string(r.rate).c_str());
        log << line;
      }
      log << "  fitted rate " << t.fitted_rate << ", target " << plan.target << " +- " << plan.window
          << (in ? "" : "  MISSED") << "\n  table: " << file.string() << '\n';
      all_in = all_in && in;
    }
    return static_cast<int>(all_in ? kExitOk : kExitVerdict);
  });
}

int cmd_sweep(const SweepArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    fs::path base;
    Json doc = load_document(args.config, base);
    const Json spec = read_json_file(args.sweep);
    if (!spec.is_object()) throw ConfigurationError("sweep: must be a JSON object");
    for (const auto& [k, v] : spec.items())
      if (k != "T" && k != "strength" && k != "multi_start")
        throw ConfigurationError("sweep." + k + ": unknown field");
    auto list = [&](const char* key) {
      std::vector<double> out;
      if (!spec.contains(key)) return std::vector<double>{std::numeric_limits<double>::quiet_NaN()};
      const Json& j = spec[key];
      if (!j.is_array() || j.empty()) throw ConfigurationError(std::string("sweep.") + key + ": must be a non-empty array");
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number() || !(j[i].get<double>() > 0.0))
          throw ConfigurationError(std::string("sweep.") + key + "[" + std::to_string(i) + "]: must be a number > 0");
        out.push_back(j[i].get<double>());
      }
      return out;
    };
    const std::vector<double> horizons = list("T"), strengths = list("strength");
    std::size_t starts = 0;
    if (spec.contains("multi_start")) {
      if (!spec["multi_start"].is_number_unsigned())
        throw ConfigurationError("sweep.multi_start: must be a non-negative integer");
      starts = spec["multi_start"].get<std::size_t>();
    }
    if (args.seed) doc["seed"] = *args.seed;
    if (!doc.contains("problem")) throw ConfigurationError("problem: the sweep needs a problem block");

    fs::path out = args.out.value_or(fs::path("sweep_out"));
    std::vector<RunConfig> runs;
    std::vector<std::pair<double, double>> params;
    const RunConfig probe = parse_config(doc, base);
    for (double T : horizons)
      for (double s : strengths) {
        Json d = doc;
        if (!std::isnan(T)) d["problem"]["T"] = T;
        if (!std::isnan(s)) {
          const double prior = d["problem"]["potential"].value("strength", 1.0);
          d["problem"]["potential"]["strength"] = prior * s;
        }
        RunConfig cfg = parse_config(d, base);
        // Seeded random initial guesses, amplitude growing with the index.
        const BuiltProblem bp = build_problem(cfg);
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (std::size_t k = 0; k < starts; ++k) {
          DataSpec ds;
          std::vector<double> v(bp.problem.grid.size());
          for (double& x : v) x = (1.0 + static_cast<double>(k)) * dist(rng);
          ds.values.push_back(std::move(v));
          cfg.solver.multi_start.push_back(std::move(ds));
        }
        runs.push_back(std::move(cfg));
        params.emplace_back(std::isnan(T) ? probe.problem->horizon : T, std::isnan(s) ? 1.0 : s);
      }

    struct Row {
      int status = kExitOk;
      std::string message;
      SolveReport report;
      double zeta_l1 = 0.0;
      double u_max = 0.0;
      bool verdicts = false;
    };
    std::vector<Row> rows(runs.size());
    const auto n = static_cast<std::ptrdiff_t>(runs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      const auto i = static_cast<std::size_t>(r);
      char name[32];
      std::snprintf(name, sizeof name, "run_%03zu", i);
      std::ostringstream sink;
      rows[i].status = guarded(sink, [&] {
        const RunArtifacts art = run_and_write(runs[i], out / name);
        rows[i].report = art.solution.report;
        const BuiltProblem bp = build_problem(runs[i]);
        rows[i].zeta_l1 = norm_l1(bp.problem.grid, art.solution.zeta);
        double m = 0.0;
        for (const Field& s : art.solution.u) m = std::max(m, norm_max(s));
        rows[i].u_max = m;
        rows[i].verdicts = art.verdicts_ok;
        return static_cast<int>(art.solution.report.converged ? kExitOk : kExitVerdict);
      });
      rows[i].message = sink.str();
    }

    fs::create_directories(out);
    std::ofstream csv(out / "summary.csv");
    csv << "run,T,strength,status,converged,iterations,final_k,multi_start_runs,multiplicity,"
           "zeta_l1,u_max,energy_satisfied,bound_audit_passed\n";
    int worst = kExitOk;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& row = rows[i];
      const SolveReport& r = row.report;
      csv << i << ',' << format_number(params[i].first) << ',' << format_number(params[i].second) << ','
          << row.status << ',' << r.converged << ',' << r.iterations << ','
          << (std::isinf(r.final_k) ? std::string("inf") : format_number(r.final_k)) << ','
          << r.multi_start_runs << ',' << r.distinct_fixed_points << ',' << format_number(row.zeta_l1)
          << ',' << format_number(row.u_max) << ',' << r.energy.satisfied << ','
          << r.bound_audit.all_passed() << '\n';
      log << "run " << i << ": T=" << params[i].first << " strength=" << params[i].second
          << (row.status == kExitOk ? " converged" : " status " + std::to_string(row.status))
          << ", multiplicity " << r.distinct_fixed_points << '\n';
      if (!row.message.empty() && row.status != kExitOk) log << "  " << row.message;
      if (row.status == kExitConfig) worst = kExitConfig;
      else if (row.status == kExitSolver && worst != kExitConfig) worst = kExitSolver;
      else if (row.status == kExitVerdict && worst == kExitOk) worst = kExitVerdict;
    }
    log << "summary written to " << (out / "summary.csv").string() << '\n';
    return worst;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  kernels::configure_from_environment();
  CLI::App app{"Solver and verification toolkit for nonlocal-in-time parabolic problems", "nonlocal"};
  app.require_subcommand(1);

  SolveArgs solve;
  std::string config, manufactured, scheme, outdir;
  std::uint64_t seed = 42;
  auto* s = app.add_subcommand("solve", "solve one problem and write its artifacts");
  s->add_option("--config", config, "JSON configuration file");
  s->add_option("--manufactured", manufactured, "use a built-in manufactured case (MMS-1, MMS-2, MMS-3, HEAT-1)");
  s->add_option("--scheme", scheme, "implicit_euler or crank_nicolson");
  auto* solve_seed = s->add_option("--seed", seed, "seed for the self-map audit sampling");
  s->add_option("--out", outdir, "output directory");

  MmsArgs mms;
  std::string mms_out;
  auto* m = app.add_subcommand("mms", "convergence study on a manufactured case");
  m->add_option("case", mms.case_name, "case name")->required();
  m->add_option("--levels", mms.levels, "number of refinement levels (>= 3)");
  m->add_option("--scheme", mms.scheme, "implicit_euler or crank_nicolson");
  m->add_option("--out", mms_out, "directory for the rate tables");

  AuditArgs audit;
  std::string audit_dir;
  std::uint64_t audit_seed = 42;
  auto* a = app.add_subcommand("audit", "re-check a previous run's outputs");
  a->add_option("directory", audit_dir, "output directory of a solve run")->required();
  auto* audit_seed_opt = a->add_option("--seed", audit_seed, "seed for the self-map audit");

  SweepArgs sweep;
  std::string sweep_config, sweep_spec, sweep_out;
  std::uint64_t sweep_seed = 42;
  auto* w = app.add_subcommand("sweep", "solve across a grid of horizons and potential strengths");
  w->add_option("--config", sweep_config, "base JSON configuration")->required();
  w->add_option("--sweep", sweep_spec, "JSON file listing the sweep values")->required();
  auto* sweep_seed_opt = w->add_option("--seed", sweep_seed, "seed for random initial guesses");
  w->add_option("--out", sweep_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(kExitConfig);
  }

  if (*s) {
    if (!config.empty()) solve.config = config;
    if (!manufactured.empty()) solve.manufactured = manufactured;
    if (!scheme.empty()) solve.scheme = scheme;
    if (*solve_seed) solve.seed = seed;
    if (!outdir.empty()) solve.out = outdir;
    if (!solve.config && !solve.manufactured) {
      err << "solve: give --config or --manufactured\n";
      return kExitConfig;
    }
    return cmd_solve(solve, err);
  }
  if (*m) {
    if (!mms_out.empty()) mms.out = mms_out;
    return cmd_mms(mms, err);
  }
  if (*a) {
    audit.directory = audit_dir;
    if (*audit_seed_opt) audit.seed = audit_seed;
    return cmd_audit(audit, err);
  }
  sweep.config = sweep_config;
  sweep.sweep = sweep_spec;
  if (*sweep_seed_opt) sweep.seed = sweep_seed;
  if (!sweep_out.empty()) sweep.out = sweep_out;
  return cmd_sweep(sweep, err);
}

}  // namespace nonlocal::cli
