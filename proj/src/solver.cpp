#include "posr/solver.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include "posr/errors.hpp"

#ifndef POSR_DEFAULT_SOLVER
#define POSR_DEFAULT_SOLVER ""
#endif

namespace posr {

namespace {

std::filesystem::path fresh_cnf_path(const std::filesystem::path& dir) {
    std::random_device rd;
    const auto base = dir.empty() ? std::filesystem::temp_directory_path() : dir;
    std::filesystem::create_directories(base);
    for (;;) {
        auto p = base / ("posr-" + std::to_string(::getpid()) + "-" + std::to_string(rd()) + ".cnf");
        if (!std::filesystem::exists(p)) return p;
    }
}

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

struct ProcessResult {
    std::string output;
    int exit_code = -1;
    bool timed_out = false;
    bool launched = true;
};

ProcessResult run_shell(const std::string& command, double timeout_seconds) {
    ProcessResult result;
    int fds[2];
    if (::pipe(fds) != 0) {
        result.launched = false;
        return result;
    }
    const pid_t pid = ::fork();
    if (pid < 0) {
        ::close(fds[0]);
        ::close(fds[1]);
        result.launched = false;
        return result;
    }
    if (pid == 0) {
        ::setpgid(0, 0);
        ::dup2(fds[1], STDOUT_FILENO);
        ::close(fds[0]);
        ::close(fds[1]);
        const int devnull = ::open("/dev/null", O_WRONLY);
        if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
        ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }
    ::setpgid(pid, pid);
    ::close(fds[1]);

    const auto start = std::chrono::steady_clock::now();
    char buffer[65536];
    for (;;) {
        int wait_ms = -1;
        if (timeout_seconds > 0) {
            const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const double left = timeout_seconds - elapsed;
            if (left <= 0) {
                result.timed_out = true;
                break;
            }
            wait_ms = static_cast<int>(left * 1000) + 1;
        }
        pollfd p{fds[0], POLLIN, 0};
        const int ready = ::poll(&p, 1, wait_ms);
        if (ready < 0 && errno == EINTR) continue;
        if (ready == 0) continue;
        const auto n = ::read(fds[0], buffer, sizeof buffer);
        if (n <= 0) break;
        result.output.append(buffer, static_cast<std::size_t>(n));
    }
    ::close(fds[0]);
    if (result.timed_out) ::kill(-pid, SIGKILL);
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (!result.timed_out) {
        if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
        else if (WIFSIGNALED(status)) result.exit_code = 128 + WTERMSIG(status);
    }
    return result;
}

} // namespace

std::string default_solver_command() {
    if (const char* env = std::getenv("POSR_SOLVER"); env && *env) return env;
    return POSR_DEFAULT_SOLVER;
}

std::string to_string(RunFailure f) {
    switch (f) {
    case RunFailure::none: return "none";
    case RunFailure::no_solver: return "no solver configured";
    case RunFailure::missing_executable: return "solver executable not found";
    case RunFailure::timeout: return "timeout";
    case RunFailure::unparseable: return "unparseable solver output";
    case RunFailure::launch_failed: return "could not launch solver";
    }
    return "unknown";
}

SolverRun run_external(const CnfInstance& instance, const RunOptions& options) {
    SolverRun run;
    if (options.command.empty()) {
        run.failure = RunFailure::no_solver;
        run.verdict.diagnostics = "no solver command configured (set POSR_SOLVER or --solver-cmd)";
        return run;
    }
    run.cnf_path = fresh_cnf_path(options.work_dir);
    {
        std::ofstream out(run.cnf_path);
        if (!out) throw Error("cannot write " + run.cnf_path.string());
        write_dimacs(instance, out);
    }
    std::string command = options.command;
    const auto quoted = shell_quote(run.cnf_path.string());
    if (const auto at = command.find("{}"); at != std::string::npos) command.replace(at, 2, quoted);
    else command += " " + quoted;

    const auto start = std::chrono::steady_clock::now();
    const auto proc = run_shell(command, options.timeout_seconds);
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool keep = options.keep_file;
    if (!proc.launched) {
        run.failure = RunFailure::launch_failed;
        run.verdict.diagnostics = "fork/pipe failed";
    } else if (proc.timed_out) {
        run.failure = RunFailure::timeout;
        run.verdict.diagnostics = "solver timed out; instance kept at " + run.cnf_path.string();
        keep = true;
    } else {
        run.exit_code = proc.exit_code;
        if (proc.exit_code == 127) {
            run.failure = RunFailure::missing_executable;
            run.verdict.diagnostics = "solver executable not found: " + options.command;
        } else {
            run.verdict = read_solver_output(proc.output, instance.variable_count, proc.exit_code);
            if (run.verdict.status == SolverStatus::unknown) run.failure = RunFailure::unparseable;
            if (run.verdict.status == SolverStatus::sat && !satisfies(instance, *run.verdict.model)) {
                run.verdict = {SolverStatus::unknown, std::nullopt, "solver model violates a clause"};
                run.failure = RunFailure::unparseable;
            }
        }
    }
    if (!keep) std::filesystem::remove(run.cnf_path);
    return run;
}

SolverVerdict brute_force_sat(const CnfInstance& instance) {
    const int n = instance.variable_count;
    if (n > kBruteSatVariableLimit) throw SizeLimitError("built-in solver handles at most 24 variables");
    // Clauses grouped by their largest variable: once that variable is set,
    // the clause is fully assigned and can be checked.
    std::vector<std::vector<const Clause*>> by_last(static_cast<std::size_t>(n) + 1);
    for (const auto& clause : instance.clauses) {
        if (clause.empty()) return {SolverStatus::unsat, std::nullopt, ""};
        int last = 0;
        for (auto lit : clause) last = std::max(last, std::abs(lit));
        if (last > n) throw IntegrityError("clause references an undeclared variable");
        by_last[static_cast<std::size_t>(last)].push_back(&clause);
    }
    std::vector<bool> model(static_cast<std::size_t>(n) + 1, false);
    auto ok_at = [&](int v) {
        for (const auto* clause : by_last[static_cast<std::size_t>(v)]) {
            bool sat = false;
            for (auto lit : *clause) {
                if (model[static_cast<std::size_t>(std::abs(lit))] == (lit > 0)) {
                    sat = true;
                    break;
                }
            }
            if (!sat) return false;
        }
        return true;
    };
    auto search = [&](auto&& self, int v) -> bool {
        if (v > n) return true;
        for (bool value : {false, true}) {
            model[static_cast<std::size_t>(v)] = value;
            if (ok_at(v) && self(self, v + 1)) return true;
        }
        return false;
    };
    if (search(search, 1)) return {SolverStatus::sat, model, ""};
    return {SolverStatus::unsat, std::nullopt, ""};
}

} // namespace posr
