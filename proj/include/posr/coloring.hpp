#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "posr/host_poset.hpp"

namespace posr {

/// Total t-coloring of a host's k-chains (of its elements when k = 1),
/// indexed by canonical chain index. Colors run 1..t.
struct Coloring {
    HostDescriptor host;
    int k = 1;
    int t = 2;
    std::vector<std::uint8_t> colors;

    static Coloring constant(const HostDescriptor& host, int k, int t, std::size_t chain_count, int color);
    /// Throws DomainError unless every entry lies in 1..t.
    void check() const;
    std::size_t count(int color) const;
};

/// {"host": "boolean:3", "k": 1, "t": 2, "colors": [...]}
nlohmann::ordered_json to_json(const Coloring& c);
Coloring coloring_from_json(const nlohmann::json& j);

/// The coloring induced on the k-chains of P_n for n ≤ c.host.n via the
/// family's nesting map.
Coloring restrict_coloring(const Coloring& c, int n);

} // namespace posr
