#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "posr/coloring.hpp"
#include "posr/embedding.hpp"

namespace posr {

using Clause = std::vector<int>;

/// CNF for "some t-coloring of the host's k-chains avoids H_i in color i".
/// With t ≤ 2 there is one variable per chain (chain + 1), true meaning
/// color 1; with t = 1 a unit clause pins every variable true. With t ≥ 3
/// variable chain·t + color (1-based) means "chain has color", with one-hot
/// blocks.
struct CnfInstance {
    int variable_count = 0;
    std::vector<Clause> clauses;
    HostDescriptor host;
    int k = 1;
    int t = 2;
    std::size_t chain_count = 0;
    std::vector<std::string> targets;
    /// Copy clauses per target, before one-hot overhead.
    std::vector<std::size_t> copies_per_target;

    /// Variable that is true iff `chain` has `color` (t ≥ 3), or the chain's
    /// single variable (t ≤ 2).
    int var(std::size_t chain, int color) const;
};

/// Builds the instance from already enumerated copy edge sets, one list per color.
CnfInstance encode_copies(const HostDescriptor& host, int k, std::size_t chain_count,
                          const std::vector<std::string>& target_names,
                          const std::vector<std::vector<std::vector<std::uint32_t>>>& copies);
/// Fails with CopyCapExceeded when a target has too many copies.
CnfInstance encode(const HostPoset& host, int k, const std::vector<Pograph>& targets, const SearchOptions& options = {});

/// "p cnf V C" then one zero-terminated clause per line.
void write_dimacs(const CnfInstance& instance, std::ostream& out);
std::string to_dimacs(const CnfInstance& instance);
/// Parses the variable count and clauses of a DIMACS file (comments allowed).
CnfInstance read_dimacs(std::string_view text);

/// {"host", "k", "targets", "vars": [[chain, color, var], ...]}
nlohmann::ordered_json var_map_json(const CnfInstance& instance);
/// Rebuilds the decoding metadata (no clauses) from a sidecar map.
CnfInstance instance_from_var_map(const nlohmann::json& j);

enum class SolverStatus { sat, unsat, unknown };

struct SolverVerdict {
    SolverStatus status = SolverStatus::unknown;
    /// model[v] for v = 1..V (index 0 unused); present iff status is sat.
    std::optional<std::vector<bool>> model;
    std::string diagnostics;
};

std::string to_string(SolverStatus s);

/// Accepts "s SATISFIABLE"/"s UNSATISFIABLE"/"s UNKNOWN" with "v" lines, and
/// bare "SAT"/"UNSAT" first lines followed by literals. `exit_code` 10/20
/// confirms or stands in for the status line. Anything inconsistent yields
/// unknown with diagnostics.
SolverVerdict read_solver_output(std::string_view text, int variable_count, std::optional<int> exit_code = std::nullopt);

/// Model to coloring. Throws IntegrityError if a one-hot block is violated.
Coloring decode(const CnfInstance& instance, const std::vector<bool>& model);

/// True iff the assignment satisfies every clause.
bool satisfies(const CnfInstance& instance, const std::vector<bool>& model);

/// Assignment induced by a coloring (inverse of decode).
std::vector<bool> encode_coloring(const CnfInstance& instance, const Coloring& coloring);

} // namespace posr
