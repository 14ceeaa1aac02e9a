#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "posr/chain_index.hpp"
#include "posr/host_poset.hpp"
#include "posr/pograph.hpp"

namespace posr {

inline constexpr std::size_t kDefaultCopyCap = 50'000'000;

/// A copy of a pattern in a host, identified by the set of host k-chain
/// indices its edges land on (sorted). `witness[v]` is the host element that
/// pattern vertex v maps to in one embedding producing this edge set.
struct Copy {
    std::vector<std::uint32_t> edges;
    std::vector<ElementId> witness;

    bool operator==(const Copy& other) const { return edges == other.edges; }
};

struct SearchOptions {
    std::size_t copy_cap = kDefaultCopyCap;
    /// 1 runs the serial reference path; > 1 runs the OpenMP kernel with that
    /// many threads. Output is identical either way.
    int workers = 1;
};

/// Restriction of the search to one color class of a coloring of the host's
/// k-chains (elements when k = 1).
struct ColorClass {
    std::span<const std::uint8_t> colors;
    int color = 1;
};

/// Every distinct copy of `pattern` in `host`, sorted by edge set. Throws
/// CopyCapExceeded when more than `copy_cap` distinct copies exist.
std::vector<Copy> enumerate_copies(const Pograph& pattern, const HostPoset& host, const ChainIndex& chains,
                                   const SearchOptions& options = {});
std::vector<Copy> enumerate_copies(const Pograph& pattern, const HostPoset& host, const SearchOptions& options = {});

/// Edge sets only (no witnesses), sorted; the form the encoder and the
/// brute-force search consume.
std::vector<std::vector<std::uint32_t>> copy_edge_sets(const Pograph& pattern, const HostPoset& host,
                                                       const ChainIndex& chains, const SearchOptions& options = {});

/// Number of weak embeddings before edge-set deduplication.
std::uint64_t count_embeddings(const Pograph& pattern, const HostPoset& host, const ChainIndex& chains,
                               const SearchOptions& options = {});

/// True iff no weak embedding of the pattern's poset lands inside `family`.
bool is_P_free(const Pograph& pattern, std::span<const ElementId> family, const HostPoset& host);

/// A copy whose edges all have `cls.color`, or nullopt.
std::optional<Copy> find_monochromatic_copy(const Pograph& pattern, const HostPoset& host, const ChainIndex& chains,
                                            const ColorClass& cls, const SearchOptions& options = {});

/// Re-checks a copy: the witness is injective and order preserving, and its
/// edge images are exactly `copy.edges`.
bool validate_copy(const Pograph& pattern, const HostPoset& host, const ChainIndex& chains, const Copy& copy);

/// {"host": "...", "pattern": "...", "k": k, "copies": [[chain ids...], ...]}
nlohmann::ordered_json copies_to_json(const HostPoset& host, const Pograph& pattern,
                                      const std::vector<std::vector<std::uint32_t>>& edge_sets);

} // namespace posr
