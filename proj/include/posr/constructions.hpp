#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "posr/coloring.hpp"

namespace posr {

/// 1-uniform coloring of B_{Σe − 1}: color i on e_i consecutive levels,
/// starting from the bottom.
Coloring layered_coloring(const std::vector<int>& e_values);

/// 1-uniform t-coloring of B_{2t}: levels {2i, 2i+1} get color i for i < t,
/// levels {0, 1, 2t} get color t.
Coloring butterfly_coloring(int t);

/// d-subsets of [2d] as bitmasks over bits 0..2d−1 (element j is bit j−1).
struct RdFamily {
    int d = 0;
    std::vector<std::uint64_t> members;
};

/// The explicit family for d = 3: {123,124,135,146,156,236,245,256,345,346}.
RdFamily builtin_R3();

struct RdCheck {
    bool ok = false;
    /// 1 when some complement pair is not split, 2 when some (d+1)-set holds
    /// d or more members, 0 when ok.
    int failed_property = 0;
    /// The offending d-set (property 1) or (d+1)-set (property 2).
    std::optional<std::uint64_t> certificate;
};

/// Throws DomainError when a member is not a d-subset of [2d].
RdCheck verify_rd_properties(const RdFamily& family, int d);

/// d = 3 enumerates all 2^10 complement choices. Larger d runs seeded local
/// search restarts (`max_iters` flips in total); `workers` > 1 runs restarts
/// in parallel. The result is the verified family from the lowest-numbered
/// successful restart, so it depends only on (d, seed, max_iters).
std::optional<RdFamily> search_rd(int d, std::uint64_t seed, std::uint64_t max_iters, int workers = 1);

/// 2-coloring of B_{2d}: color 1 on R and on levels 0..d−2 and d+1, color 2
/// elsewhere. Throws DomainError unless R passes verify_rd_properties.
Coloring rd_coloring(const RdFamily& family);

/// 2-uniform coloring of C_{2s+2}: pairs inside {1..s+1} or inside
/// {s+2..2s+2} get color 1, pairs across get color 2.
Coloring chain_split_coloring(int s);

nlohmann::ordered_json to_json(const RdFamily& family);
RdFamily rd_family_from_json(const nlohmann::json& j);

} // namespace posr
