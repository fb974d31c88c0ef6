#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "nonlocal/cli/config.hpp"

namespace nonlocal::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitSolver = 2,
  kExitVerdict = 3,
};

struct SolveArgs {
  std::optional<std::filesystem::path> config;
  std::optional<std::string> manufactured;
  std::optional<std::string> scheme;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
};

struct MmsArgs {
  std::string case_name;
  std::size_t levels = 3;
  std::string scheme = "implicit_euler";
  std::filesystem::path out = "mms_out";
};

struct AuditArgs {
  std::filesystem::path directory;
  std::optional<std::uint64_t> seed;
};

struct SweepArgs {
  std::filesystem::path config;
  std::filesystem::path sweep;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
};

int cmd_solve(const SolveArgs& args, std::ostream& log);
int cmd_mms(const MmsArgs& args, std::ostream& log);
int cmd_audit(const AuditArgs& args, std::ostream& log);
int cmd_sweep(const SweepArgs& args, std::ostream& log);

/// Parses the command line and dispatches. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Shifted (when the run shifted) and truncated problem the solver iterated on.
Problem working_problem(const Problem& problem, double shift, double final_k);

}  // namespace nonlocal::cli
