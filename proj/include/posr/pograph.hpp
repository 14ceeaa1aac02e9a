#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "posr/host_poset.hpp"

namespace posr {

using Vertex = std::uint32_t;

/// Small explicit poset with its own local indexing; stores the full
/// (transitively closed) strict order as bitset rows.
class Poset {
public:
    Poset() = default;
    /// Antichain on `size` elements.
    explicit Poset(std::size_t size);
    /// Reflexive/transitive closure of the given a ≤ b pairs. Throws ParseError
    /// on out-of-range ids or cycles.
    static Poset from_relations(std::size_t size, const std::vector<std::pair<Vertex, Vertex>>& leq_pairs);
    static Poset from_host(const HostPoset& host);

    std::size_t size() const { return up_.size(); }
    bool less(Vertex a, Vertex b) const { return up_[a].test(b); }
    bool leq(Vertex a, Vertex b) const { return a == b || less(a, b); }
    bool comparable(Vertex a, Vertex b) const { return leq(a, b) || leq(b, a); }
    const Bitset& strict_up(Vertex v) const { return up_[v]; }
    const Bitset& strict_down(Vertex v) const { return down_[v]; }

    int height() const;
    /// Vertices ordered so that a < b implies a precedes b.
    std::vector<Vertex> linear_extension() const;
    std::vector<std::pair<Vertex, Vertex>> strict_pairs() const;
    std::vector<std::pair<Vertex, Vertex>> cover_pairs() const;

    bool operator==(const Poset&) const = default;

private:
    std::vector<Bitset> up_;
    std::vector<Bitset> down_;
};

/// k-uniform partially ordered hypergraph: every edge is a k-chain of the
/// poset, stored bottom-to-top. Edges form a set (sorted, no duplicates).
struct Pograph {
    int k = 2;
    Poset poset;
    std::vector<std::vector<Vertex>> edges;
    std::string name;

    /// True when every edge is a k-chain of `poset` listed bottom-to-top.
    bool valid() const;
    /// Sorts each edge bottom-to-top and dedups the edge list.
    void normalize();
};

enum class CatalogKind { chain, boolean, cup, cap, diamond, butterfly, matching, crown };
enum class EdgeStyle { standard, hasse, comparability };

/// Named pographs. Textual forms: "chain:4", "boolean:2", "cup:3", "cap:3",
/// "diamond:2", "butterfly:2x3" (2 bottoms, 3 tops), "matching:3", "crown:4",
/// optionally suffixed ":hasse" or ":comparability" to override the default
/// edge style (diamond and chain default to Hasse, the rest to comparability).
struct CatalogName {
    CatalogKind kind = CatalogKind::chain;
    int a = 1;
    int b = 0;
    EdgeStyle style = EdgeStyle::standard;

    std::string to_string() const;
    static CatalogName parse(std::string_view text);
};

/// The poset underlying a catalog name.
Poset catalog_poset(const CatalogName& name);
/// 2-uniform catalog pograph.
Pograph make(const CatalogName& name);
/// Parses a catalog name and produces the k-uniform version: k = 1 demotes,
/// k = 2 is `make`, k ≥ 3 is only defined for matchings.
Pograph make_pograph(std::string_view name, int k);

Pograph comparability_graph(const Poset& poset);
Pograph hasse_diagram(const Poset& poset);
Pograph demote_to_1_uniform(const Pograph& g);
Pograph k_uniform_matching(int k, int m);

/// {"k": int, "elements": int, "leq_pairs": [[a,b],...], "edges": [[ids...],...]}
nlohmann::ordered_json to_json(const Pograph& g);
Pograph pograph_from_json(const nlohmann::json& j);

} // namespace posr
