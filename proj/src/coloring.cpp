#include "posr/coloring.hpp"

#include <algorithm>

#include "posr/chain_index.hpp"
#include "posr/errors.hpp"

namespace posr {

Coloring Coloring::constant(const HostDescriptor& host, int k, int t, std::size_t chain_count, int color) {
    if (color < 1 || color > t) throw DomainError("color out of range");
    return {host, k, t, std::vector<std::uint8_t>(chain_count, static_cast<std::uint8_t>(color))};
}

void Coloring::check() const {
    if (t < 1 || t > 255) throw DomainError("number of colors must be in 1..255");
    if (k < 1) throw DomainError("uniformity must be positive");
    for (auto c : colors)
        if (c < 1 || c > t) throw DomainError("coloring uses a color outside 1..t");
}

std::size_t Coloring::count(int color) const {
    return static_cast<std::size_t>(std::count(colors.begin(), colors.end(), static_cast<std::uint8_t>(color)));
}

nlohmann::ordered_json to_json(const Coloring& c) {
    nlohmann::ordered_json j;
    j["host"] = c.host.to_string();
    j["k"] = c.k;
    j["t"] = c.t;
    j["colors"] = std::vector<int>(c.colors.begin(), c.colors.end());
    return j;
}

Coloring coloring_from_json(const nlohmann::json& j) {
    Coloring c;
    try {
        c.host = HostDescriptor::parse(j.at("host").get<std::string>());
        c.k = j.at("k").get<int>();
        c.t = j.at("t").get<int>();
        for (auto v : j.at("colors").get<std::vector<int>>()) {
            if (v < 1 || v > 255) throw ParseError("color value out of range");
            c.colors.push_back(static_cast<std::uint8_t>(v));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad coloring JSON: ") + e.what());
    }
    try {
        c.check();
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    return c;
}

Coloring restrict_coloring(const Coloring& c, int n) {
    if (n > c.host.n) throw DomainError("can only restrict to a smaller host");
    const auto large = HostPoset::build(c.host);
    const ChainIndex large_chains(large, c.k);
    if (large_chains.size() != c.colors.size()) throw ArityError("coloring length does not match the host");

    // Compose the one-step nesting maps down to P_n.
    std::vector<ElementId> map;
    auto current = HostPoset::build(c.host.family, n);
    const auto small = current;
    for (std::size_t e = 0; e < current.size(); ++e) map.push_back(static_cast<ElementId>(e));
    for (int m = n; m < c.host.n; ++m) {
        auto next = HostPoset::build(c.host.family, m + 1);
        const auto step = nesting_map(current, next);
        for (auto& x : map) x = step[x];
        current = std::move(next);
    }

    const ChainIndex small_chains(small, c.k);
    Coloring out{{c.host.family, n}, c.k, c.t, {}};
    out.colors.reserve(small_chains.size());
    std::vector<ElementId> image;
    for (std::size_t i = 0; i < small_chains.size(); ++i) {
        image.clear();
        for (auto e : small_chains.chain(i)) image.push_back(map[e]);
        std::sort(image.begin(), image.end());
        const auto idx = large_chains.find(image);
        if (!idx) throw IntegrityError("nesting map does not send chains to chains");
        out.colors.push_back(c.colors[*idx]);
    }
    return out;
}

} // namespace posr
