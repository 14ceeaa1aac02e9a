#pragma once
// Deliberately naive reference implementations used to cross-check the
// library. They share no code with src/ beyond the public data types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "posr/chain_index.hpp"
#include "posr/embedding.hpp"
#include "posr/host_poset.hpp"
#include "posr/pograph.hpp"

namespace oracle {

using Code = std::uint64_t;
using CodeTuple = std::vector<Code>;
using CopySet = std::set<CodeTuple>;  // edges of one copy, each as sorted codes

/// A host given by element codes and an order predicate taken straight from
/// the family definitions.
struct Poset {
    std::vector<Code> elements;
    std::vector<std::vector<bool>> leq;  // leq[i][j]: elements[i] <= elements[j]

    std::size_t size() const { return elements.size(); }
    bool less(std::size_t i, std::size_t j) const { return i != j && leq[i][j]; }
    bool comparable(std::size_t i, std::size_t j) const { return leq[i][j] || leq[j][i]; }
};

inline std::vector<int> digits(Code c, int radix, int count) {
    std::vector<int> d(static_cast<std::size_t>(count));
    for (auto& x : d) {
        x = static_cast<int>(c % static_cast<Code>(radix));
        c /= static_cast<Code>(radix);
    }
    return d;
}

inline Poset build(const posr::HostDescriptor& desc) {
    Poset p;
    const int n = desc.n;
    int radix = 0, count = 0;
    std::size_t total = 0;
    switch (desc.family.kind) {
    case posr::FamilyKind::boolean: total = std::size_t{1} << n; break;
    case posr::FamilyKind::chain: total = static_cast<std::size_t>(n); break;
    case posr::FamilyKind::butterfly: total = 2 * static_cast<std::size_t>(n); break;
    case posr::FamilyKind::grid_length:
        radix = desc.family.param;
        count = n;
        total = 1;
        for (int i = 0; i < count; ++i) total *= static_cast<std::size_t>(radix);
        break;
    case posr::FamilyKind::grid_dim:
        radix = n;
        count = desc.family.param;
        total = 1;
        for (int i = 0; i < count; ++i) total *= static_cast<std::size_t>(radix);
        break;
    default: throw std::runtime_error("oracle: unsupported family");
    }
    for (Code c = 0; c < total; ++c) p.elements.push_back(c);
    p.leq.assign(total, std::vector<bool>(total, false));
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j < total; ++j) {
            const Code a = p.elements[i], b = p.elements[j];
            bool r = false;
            switch (desc.family.kind) {
            case posr::FamilyKind::boolean: r = (a & ~b) == 0; break;
            case posr::FamilyKind::chain: r = a <= b; break;
            case posr::FamilyKind::butterfly: r = a == b || (a < Code(n) && b >= Code(n)); break;
            default: {
                const auto da = digits(a, radix, count), db = digits(b, radix, count);
                r = true;
                for (int t = 0; t < count; ++t) r = r && da[t] <= db[t];
            }
            }
            p.leq[i][j] = r;
        }
    }
    return p;
}

/// Position of each code, so tuples can be sorted bottom to top.
inline std::vector<std::size_t> order_by_down_count(const Poset& p) {
    std::vector<std::size_t> idx(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) idx[i] = i;
    auto below = [&](std::size_t i) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < p.size(); ++j) c += p.leq[j][i];
        return c;
    };
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return below(a) < below(b); });
    return idx;
}

/// All k-chains as code tuples sorted bottom to top.
inline std::set<CodeTuple> k_chains(const Poset& p, int k) {
    std::set<CodeTuple> out;
    const auto n = p.size();
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(pick.size()) == k) {
            auto sorted = pick;
            std::sort(sorted.begin(), sorted.end(), [&](auto a, auto b) { return p.less(a, b); });
            CodeTuple t;
            for (auto i : sorted) t.push_back(p.elements[i]);
            out.insert(t);
            return;
        }
        for (std::size_t i = from; i < n; ++i) {
            bool ok = true;
            for (auto j : pick) ok = ok && p.comparable(i, j);
            if (!ok) continue;
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// Every distinct copy (edge image set) of `g` in `p`, by trying all
/// injective order-preserving vertex maps.
inline std::set<CopySet> copies(const posr::Pograph& g, const Poset& p) {
    std::set<CopySet> out;
    const auto m = g.poset.size();
    std::vector<std::size_t> image(m);
    std::vector<bool> used(p.size(), false);
    auto rec = [&](auto&& self, std::size_t v) -> void {
        if (v == m) {
            CopySet cs;
            for (const auto& e : g.edges) {
                std::vector<std::size_t> imgs;
                for (auto u : e) imgs.push_back(image[u]);
                std::sort(imgs.begin(), imgs.end(), [&](auto a, auto b) { return p.less(a, b); });
                CodeTuple t;
                for (auto i : imgs) t.push_back(p.elements[i]);
                cs.insert(t);
            }
            out.insert(cs);
            return;
        }
        for (std::size_t x = 0; x < p.size(); ++x) {
            if (used[x]) continue;
            bool ok = true;
            for (std::size_t u = 0; u < v && ok; ++u) {
                if (g.poset.less(static_cast<posr::Vertex>(u), static_cast<posr::Vertex>(v)) && !p.leq[image[u]][x]) ok = false;
                if (g.poset.less(static_cast<posr::Vertex>(v), static_cast<posr::Vertex>(u)) && !p.leq[x][image[u]]) ok = false;
            }
            if (!ok) continue;
            used[x] = true;
            image[v] = x;
            self(self, v + 1);
            used[x] = false;
        }
    };
    rec(rec, 0);
    return out;
}

/// Library chain index -> code tuple.
inline CodeTuple chain_codes(const posr::HostPoset& host, const posr::ChainIndex& chains, std::uint32_t i) {
    CodeTuple t;
    for (auto e : chains.chain(i)) t.push_back(host.code(e));
    return t;
}

/// Library copy -> CopySet in code form.
inline CopySet copy_codes(const posr::HostPoset& host, const posr::ChainIndex& chains,
                          const std::vector<std::uint32_t>& edges) {
    CopySet cs;
    for (auto e : edges) cs.insert(chain_codes(host, chains, e));
    return cs;
}

/// Exhaustive scan of all t^m colorings of the chain list against copy lists
/// given as chain-position sets. Returns whether some coloring avoids every
/// target in its own color.
inline bool avoidable(std::size_t m, const std::vector<std::vector<std::vector<std::size_t>>>& copies_by_color) {
    const std::size_t t = copies_by_color.size();
    std::vector<int> col(m, 0);
    for (;;) {
        bool bad = false;
        for (std::size_t c = 0; c < t && !bad; ++c) {
            for (const auto& cp : copies_by_color[c]) {
                bool mono = true;
                for (auto e : cp) mono = mono && col[e] == static_cast<int>(c);
                if (mono) {
                    bad = true;
                    break;
                }
            }
        }
        if (!bad) return true;
        std::size_t i = 0;
        while (i < m && col[i] == static_cast<int>(t) - 1) col[i++] = 0;
        if (i == m) return false;
        ++col[i];
    }
}

/// Oracle verdict for "some t-coloring of the k-chains of the host avoids
/// targets[i] in color i". Chains are keyed by code tuple, independent of
/// the library's indexing.
inline bool avoidable(const posr::HostDescriptor& desc, int k, const std::vector<posr::Pograph>& targets) {
    const auto p = build(desc);
    const auto chains = k_chains(p, k);
    std::map<CodeTuple, std::size_t> pos;
    for (const auto& c : chains) pos.emplace(c, pos.size());
    std::vector<std::vector<std::vector<std::size_t>>> by_color;
    for (const auto& g : targets) {
        std::vector<std::vector<std::size_t>> lists;
        for (const auto& cs : copies(g, p)) {
            std::vector<std::size_t> e;
            for (const auto& t : cs) e.push_back(pos.at(t));
            lists.push_back(e);
        }
        by_color.push_back(lists);
    }
    return avoidable(chains.size(), by_color);
}

} // namespace oracle
