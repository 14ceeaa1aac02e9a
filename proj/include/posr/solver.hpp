#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "posr/cnf.hpp"

namespace posr {

/// POSR_SOLVER from the environment, else the solver found at configure
/// time, else empty.
std::string default_solver_command();

enum class RunFailure { none, no_solver, missing_executable, timeout, unparseable, launch_failed };

std::string to_string(RunFailure f);

struct SolverRun {
    SolverVerdict verdict;
    RunFailure failure = RunFailure::none;
    std::optional<int> exit_code;
    /// The DIMACS file handed to the solver; kept on disk after a timeout or
    /// when the caller asked for it.
    std::filesystem::path cnf_path;
    double seconds = 0;
};

struct RunOptions {
    /// Placeholder "{}" is replaced by the CNF path; otherwise the path is appended.
    std::string command;
    double timeout_seconds = 0;  // 0 = no limit
    /// Directory for the CNF file; the system temp directory when empty.
    std::filesystem::path work_dir;
    bool keep_file = false;
};

/// Writes the instance as DIMACS, runs the solver through /bin/sh, and
/// interprets its exit code and output. Never fabricates a verdict.
SolverRun run_external(const CnfInstance& instance, const RunOptions& options);

inline constexpr int kBruteSatVariableLimit = 24;

/// Exhaustive backtracking solver for tiny instances (≤ 24 variables);
/// throws SizeLimitError above that.
SolverVerdict brute_force_sat(const CnfInstance& instance);

} // namespace posr
