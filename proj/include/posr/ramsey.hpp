#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "posr/coloring.hpp"
#include "posr/embedding.hpp"

namespace posr {

struct VerifyResult {
    bool ok = true;
    int color = 0;  // the violated color when !ok
    std::optional<Copy> copy;
};

/// ok iff no color class i contains a copy of targets[i-1]. Throws
/// ArityError when c.t differs from the number of targets or the coloring
/// length does not match the host.
VerifyResult verify_coloring(const Coloring& c, const std::vector<Pograph>& targets, const SearchOptions& options = {});
VerifyResult verify_coloring(const HostPoset& host, const ChainIndex& chains, const Coloring& c,
                             const std::vector<Pograph>& targets, const SearchOptions& options = {});

enum class Method { brute, sat, automatic };
enum class Verdict { avoidable, forced, unknown };

std::string to_string(Method m);
Method parse_method(const std::string& text);
std::string to_string(Verdict v);

inline constexpr std::size_t kDefaultBruteCap = 40;
inline constexpr std::size_t kAutoBruteLimit = 24;

struct RamseyOptions {
    Method method = Method::automatic;
    /// Largest chain count the backtracking search accepts.
    std::size_t brute_cap = kDefaultBruteCap;
    /// Automatic mode uses backtracking up to this many chains, SAT above.
    std::size_t auto_brute_limit = kAutoBruteLimit;
    /// Empty means default_solver_command().
    std::string solver_command;
    double timeout_seconds = 0;
    std::size_t copy_cap = kDefaultCopyCap;
    int workers = 1;
    std::filesystem::path work_dir;
    bool keep_cnf = false;
};

struct Feasibility {
    Verdict verdict = Verdict::unknown;
    /// Verified avoiding coloring when avoidable.
    std::optional<Coloring> witness;
    /// "trivial", "brute", "sat" or "inferred".
    std::string method;
    std::string evidence;
    double seconds = 0;
    std::size_t chains = 0;
    std::vector<std::size_t> copies;
};

/// Complete backtracking over colorings of the host's k-chains in canonical
/// order, with copies indexed by chain for incremental conflict checks and
/// forced-color propagation. Throws SizeLimitError above options.brute_cap.
Feasibility brute_force_search(const HostPoset& host, int k, const std::vector<Pograph>& targets,
                               const RamseyOptions& options = {});

/// Same search over precomputed copy edge sets (one list per color).
std::optional<std::vector<std::uint8_t>> find_avoiding_coloring(
    std::size_t chain_count, const std::vector<std::vector<std::vector<std::uint32_t>>>& copies, int workers = 1);

/// Decides whether some t-coloring of the k-chains of P_n avoids every H_i in
/// color i. A target with no copy in P_n makes the answer trivially
/// avoidable (constant coloring in that color).
Feasibility feasible(HostFamily family, int n, int k, const std::vector<Pograph>& targets,
                     const RamseyOptions& options = {});

struct RamseyStep {
    int n = 0;
    Feasibility result;
    /// True when the verdict follows from a smaller forced host.
    bool inferred = false;
};

struct RamseyOutcome {
    std::optional<int> value;
    std::vector<RamseyStep> steps;
};

/// Scans n = n_min..n_max. The value is the least forced n, claimed only
/// when n − 1 is avoidable (or n = n_min = 1) and n is forced by exhaustive
/// search or an UNSAT verdict.
RamseyOutcome compute_ramsey(HostFamily family, int k, const std::vector<Pograph>& targets, int n_max,
                             const RamseyOptions& options = {}, int n_min = 1,
                             const std::function<void(const RamseyStep&)>& on_step = {});

nlohmann::ordered_json to_json(const Feasibility& f, bool include_witness = true);
nlohmann::ordered_json to_json(const RamseyOutcome& outcome, bool include_witnesses = false);

} // namespace posr
