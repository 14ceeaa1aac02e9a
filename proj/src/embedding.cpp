#include "posr/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>
#include <omp.h>

#include "posr/errors.hpp"

namespace posr {

namespace {

using Key = std::vector<std::uint32_t>;
using KeyHash = boost::hash<Key>;

// f(order[p]) must lie strictly above (or below) f(order[position]); `colored`
// selects the color-class mask instead of the plain order.
struct Constraint {
    std::uint32_t position;
    bool above;
    bool colored;
};

/// Backtracking matcher for weak embeddings of a pattern poset into a host.
/// Immutable once built; per-thread mutable state lives in Matcher::State.
class Matcher {
public:
    struct State {
        explicit State(const Matcher& m)
            : image(m.pattern_size(), 0), used(m.host_size()), scratch(m.pattern_size(), Bitset(m.host_size())) {}
        std::vector<ElementId> image;  // indexed by pattern vertex
        Bitset used;
        std::vector<Bitset> scratch;
        std::vector<ElementId> edge_buffer;
    };

    Matcher(const Pograph& pattern, const HostPoset& host, const ChainIndex* chains, const ColorClass* cls,
            const Bitset* universe, bool poset_only)
        : pattern_(pattern), host_(host), chains_(chains), cls_(cls), poset_only_(poset_only) {
        if (!host.has_relation_bitsets()) {
            throw SizeLimitError("embedding search needs a host with at most " + std::to_string(kRelationBitsetLimit) +
                                 " elements");
        }
        if (!poset_only_ && chains_ && chains_->k() != pattern.k) {
            throw DomainError("pattern uniformity does not match the chain index");
        }
        const auto n = host.size();
        universe_ = universe ? *universe : Bitset(n).set();
        if (cls_ && !poset_only_ && pattern.k == 1) {
            if (cls_->colors.size() != n) throw ArityError("coloring length does not match the host");
            for (ElementId e = 0; e < n; ++e)
                if (cls_->colors[e] != cls_->color) universe_.reset(e);
        }
        colored_pairs_ = cls_ && !poset_only_ && pattern.k == 2;
        if (colored_pairs_) build_colored_masks();
        if (cls_ && !poset_only_ && pattern.k >= 2 && cls_->colors.size() != chains_->size()) {
            throw ArityError("coloring length does not match the host's k-chain count");
        }
        plan();
    }

    std::size_t pattern_size() const { return pattern_.poset.size(); }
    std::size_t host_size() const { return host_.size(); }
    const std::vector<Vertex>& order() const { return order_; }

    /// Host elements that can take the first vertex of the search order.
    std::vector<ElementId> first_candidates() const {
        std::vector<ElementId> out;
        if (order_.empty()) return out;
        const auto& e = eligible_[order_[0]];
        for (auto u = e.find_first(); u != Bitset::npos; u = e.find_next(u)) out.push_back(static_cast<ElementId>(u));
        return out;
    }

    /// Explores all embeddings with the first vertex mapped to `first`.
    /// `visit(image)` returns false to stop; explore then returns false.
    template <typename Visit>
    bool explore(State& st, ElementId first, Visit&& visit) const {
        const auto v = order_[0];
        st.image[v] = first;
        st.used.set(first);
        const bool go_on = edges_ok(st, 0) ? dfs(st, 1, visit) : true;
        st.used.reset(first);
        return go_on;
    }

    Key key_of(const std::vector<ElementId>& image, std::vector<ElementId>& buffer) const {
        Key key;
        key.reserve(pattern_.edges.size());
        for (const auto& edge : pattern_.edges) {
            buffer.clear();
            for (auto v : edge) buffer.push_back(image[v]);
            const auto idx = chains_->find(buffer);
            if (!idx) throw IntegrityError("embedded edge is not a host k-chain");
            key.push_back(*idx);
        }
        std::sort(key.begin(), key.end());
        return key;
    }

private:
    void build_colored_masks() {
        const auto n = host_.size();
        if (cls_->colors.size() != chains_->size()) {
            throw ArityError("coloring length does not match the host's k-chain count");
        }
        up_colored_.assign(n, Bitset(n));
        down_colored_.assign(n, Bitset(n));
        for (std::size_t i = 0; i < chains_->size(); ++i) {
            if (cls_->colors[i] != cls_->color) continue;
            const auto c = chains_->chain(i);
            up_colored_[c[0]].set(c[1]);
            down_colored_[c[1]].set(c[0]);
        }
    }

    void plan() {
        const auto& P = pattern_.poset;
        const auto size = P.size();
        const auto n = host_.size();

        // Sorted undirected keys of 2-uniform edges for colored lookups.
        if (colored_pairs_) {
            edge_pairs_.clear();
            for (const auto& e : pattern_.edges) edge_pairs_.emplace_back(std::min(e[0], e[1]), std::max(e[0], e[1]));
            std::sort(edge_pairs_.begin(), edge_pairs_.end());
        }
        auto has_edge = [&](Vertex a, Vertex b) {
            return std::binary_search(edge_pairs_.begin(), edge_pairs_.end(), std::pair{std::min(a, b), std::max(a, b)});
        };

        // Greedy most-constrained-first order.
        std::vector<bool> placed(size, false);
        std::vector<int> degree(size);
        for (Vertex v = 0; v < size; ++v)
            degree[v] = static_cast<int>(P.strict_up(v).count() + P.strict_down(v).count());
        for (std::size_t step = 0; step < size; ++step) {
            Vertex best = 0;
            int best_links = -1;
            int best_degree = -1;
            for (Vertex v = 0; v < size; ++v) {
                if (placed[v]) continue;
                int links = 0;
                for (auto w : order_)
                    if (P.comparable(v, w)) ++links;
                if (links > best_links || (links == best_links && degree[v] > best_degree)) {
                    best = v;
                    best_links = links;
                    best_degree = degree[v];
                }
            }
            placed[best] = true;
            order_.push_back(best);
        }
        std::vector<std::uint32_t> position(size);
        for (std::uint32_t p = 0; p < size; ++p) position[order_[p]] = p;

        constraints_.assign(size, {});
        for (std::uint32_t p = 0; p < size; ++p) {
            const auto v = order_[p];
            for (std::uint32_t q = 0; q < p; ++q) {
                const auto w = order_[q];
                if (!P.comparable(v, w)) continue;
                const bool above = P.less(w, v);
                const bool colored = colored_pairs_ && has_edge(v, w);
                constraints_[p].push_back({q, above, colored});
            }
        }

        // Edges of uniformity >= 3 are checked once their last vertex is placed.
        completing_.assign(size, {});
        if (!poset_only_ && pattern_.k >= 3 && cls_) {
            for (std::size_t ei = 0; ei < pattern_.edges.size(); ++ei) {
                std::uint32_t last = 0;
                for (auto v : pattern_.edges[ei]) last = std::max(last, position[v]);
                completing_[last].push_back(static_cast<std::uint32_t>(ei));
            }
        }

        // Cardinality filters: the image of v needs at least as many elements
        // above/below it (within the universe) as v has in the pattern.
        std::vector<std::size_t> host_up(n), host_down(n), col_up(n), col_down(n);
        for (ElementId u = 0; u < n; ++u) {
            host_up[u] = (host_.strict_up(u) & universe_).count();
            host_down[u] = (host_.strict_down(u) & universe_).count();
            if (colored_pairs_) {
                col_up[u] = up_colored_[u].count();
                col_down[u] = down_colored_[u].count();
            }
        }
        eligible_.assign(size, Bitset(n));
        for (Vertex v = 0; v < size; ++v) {
            const auto need_up = P.strict_up(v).count();
            const auto need_down = P.strict_down(v).count();
            std::size_t need_col_up = 0, need_col_down = 0;
            if (colored_pairs_) {
                for (const auto& [a, b] : edge_pairs_) {
                    const auto other = a == v ? b : (b == v ? a : v);
                    if (other == v) continue;
                    (P.less(v, other) ? need_col_up : need_col_down) += 1;
                }
            }
            for (auto u = universe_.find_first(); u != Bitset::npos; u = universe_.find_next(u)) {
                if (host_up[u] < need_up || host_down[u] < need_down) continue;
                if (colored_pairs_ && (col_up[u] < need_col_up || col_down[u] < need_col_down)) continue;
                eligible_[v].set(u);
            }
        }
    }

    const Bitset& relation_mask(ElementId anchor, const Constraint& c) const {
        if (c.colored) return c.above ? up_colored_[anchor] : down_colored_[anchor];
        return c.above ? host_.strict_up(anchor) : host_.strict_down(anchor);
    }

    bool edges_ok(State& st, std::size_t p) const {
        for (auto ei : completing_[p]) {
            st.edge_buffer.clear();
            for (auto v : pattern_.edges[ei]) st.edge_buffer.push_back(st.image[v]);
            const auto idx = chains_->find(st.edge_buffer);
            if (!idx || cls_->colors[*idx] != cls_->color) return false;
        }
        return true;
    }

    template <typename Visit>
    bool dfs(State& st, std::size_t p, Visit& visit) const {
        if (p == order_.size()) return visit(st.image);
        const auto v = order_[p];
        auto& cand = st.scratch[p];
        cand = eligible_[v];
        cand -= st.used;
        for (const auto& c : constraints_[p]) {
            cand &= relation_mask(st.image[order_[c.position]], c);
            if (cand.none()) return true;
        }
        for (auto u = cand.find_first(); u != Bitset::npos; u = cand.find_next(u)) {
            st.image[v] = static_cast<ElementId>(u);
            st.used.set(u);
            bool go_on = true;
            if (edges_ok(st, p)) go_on = dfs(st, p + 1, visit);
            st.used.reset(u);
            if (!go_on) return false;
        }
        return true;
    }

    const Pograph& pattern_;
    const HostPoset& host_;
    const ChainIndex* chains_;
    const ColorClass* cls_;
    bool poset_only_;
    bool colored_pairs_ = false;
    Bitset universe_;
    std::vector<Bitset> up_colored_, down_colored_;
    std::vector<std::pair<Vertex, Vertex>> edge_pairs_;
    std::vector<Vertex> order_;
    std::vector<std::vector<Constraint>> constraints_;
    std::vector<std::vector<std::uint32_t>> completing_;
    std::vector<Bitset> eligible_;
};

using CopyMap = std::unordered_map<Key, std::vector<ElementId>, KeyHash>;

void keep_min_witness(CopyMap& map, Key&& key, const std::vector<ElementId>& witness) {
    auto [it, inserted] = map.try_emplace(std::move(key), witness);
    if (!inserted && witness < it->second) it->second = witness;
}

// Serial reference path and OpenMP kernel producing the same deduped map.
CopyMap collect(const Matcher& m, const SearchOptions& options) {
    CopyMap result;
    if (m.pattern_size() == 0) {
        result.emplace(Key{}, std::vector<ElementId>{});
        return result;
    }
    const auto firsts = m.first_candidates();
    const auto cap = options.copy_cap;

    if (options.workers <= 1) {
        Matcher::State st(m);
        for (auto first : firsts) {
            m.explore(st, first, [&](const std::vector<ElementId>& image) {
                keep_min_witness(result, m.key_of(image, st.edge_buffer), image);
                if (result.size() > cap) throw CopyCapExceeded("more than " + std::to_string(cap) + " distinct copies");
                return true;
            });
        }
        return result;
    }

    std::atomic<bool> overflow{false};
    std::atomic<bool> failed{false};
    const auto count = static_cast<std::int64_t>(firsts.size());
#pragma omp parallel num_threads(options.workers)
    {
        Matcher::State st(m);
        CopyMap local;
#pragma omp for schedule(dynamic, 1) nowait
        for (std::int64_t i = 0; i < count; ++i) {
            if (overflow.load(std::memory_order_relaxed) || failed.load(std::memory_order_relaxed)) continue;
            try {
                m.explore(st, firsts[static_cast<std::size_t>(i)], [&](const std::vector<ElementId>& image) {
                    keep_min_witness(local, m.key_of(image, st.edge_buffer), image);
                    if (local.size() > cap) {
                        overflow = true;
                        return false;
                    }
                    return !overflow.load(std::memory_order_relaxed);
                });
            } catch (...) {
                failed = true;
            }
        }
#pragma omp critical(posr_copy_merge)
        {
            for (auto& [key, witness] : local) {
                auto copy_key = key;
                keep_min_witness(result, std::move(copy_key), witness);
            }
            if (result.size() > cap) overflow = true;
        }
    }
    if (failed) throw IntegrityError("copy enumeration failed inside a worker");
    if (overflow) throw CopyCapExceeded("more than " + std::to_string(cap) + " distinct copies");
    return result;
}

std::vector<Copy> to_sorted_copies(CopyMap&& map) {
    std::vector<Copy> copies;
    copies.reserve(map.size());
    for (auto& [key, witness] : map) copies.push_back({key, witness});
    std::sort(copies.begin(), copies.end(), [](const Copy& a, const Copy& b) { return a.edges < b.edges; });
    return copies;
}

} // namespace

std::vector<Copy> enumerate_copies(const Pograph& pattern, const HostPoset& host, const ChainIndex& chains,
                                   const SearchOptions& options) {
    Matcher m(pattern, host, &chains, nullptr, nullptr, false);
    return to_sorted_copies(collect(m, options));
}

std::vector<Copy> enumerate_copies(const Pograph& pattern, const HostPoset& host, const SearchOptions& options) {
    const ChainIndex chains(host, pattern.k);
    return enumerate_copies(pattern, host, chains, options);
}

std::vector<std::vector<std::uint32_t>> copy_edge_sets(const Pograph& pattern, const HostPoset& host,
                                                       const ChainIndex& chains, const SearchOptions& options) {
    Matcher m(pattern, host, &chains, nullptr, nullptr, false);
    auto map = collect(m, options);
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(map.size());
    for (auto& entry : map) out.push_back(entry.first);
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t count_embeddings(const Pograph& pattern, const HostPoset& host, const ChainIndex& chains,
                               const SearchOptions& options) {
    Matcher m(pattern, host, &chains, nullptr, nullptr, false);
    if (m.pattern_size() == 0) return 1;
    const auto firsts = m.first_candidates();
    std::uint64_t total = 0;
    if (options.workers <= 1) {
        Matcher::State st(m);
        for (auto first : firsts) m.explore(st, first, [&](const auto&) { return ++total, true; });
        return total;
    }
    const auto count = static_cast<std::int64_t>(firsts.size());
#pragma omp parallel num_threads(options.workers) reduction(+ : total)
    {
        Matcher::State st(m);
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < count; ++i)
            m.explore(st, firsts[static_cast<std::size_t>(i)], [&](const auto&) { return ++total, true; });
    }
    return total;
}

bool is_P_free(const Pograph& pattern, std::span<const ElementId> family, const HostPoset& host) {
    Bitset universe(host.size());
    for (auto e : family) {
        if (e >= host.size()) throw DomainError("family element outside the host");
        universe.set(e);
    }
    if (pattern.poset.size() > universe.count()) return true;
    Matcher m(pattern, host, nullptr, nullptr, &universe, true);
    if (m.pattern_size() == 0) return false;
    Matcher::State st(m);
    for (auto first : m.first_candidates()) {
        if (!m.explore(st, first, [](const auto&) { return false; })) return false;
    }
    return true;
}

std::optional<Copy> find_monochromatic_copy(const Pograph& pattern, const HostPoset& host, const ChainIndex& chains,
                                            const ColorClass& cls, const SearchOptions& options) {
    Matcher m(pattern, host, &chains, &cls, nullptr, false);
    if (m.pattern_size() == 0) return Copy{};
    const auto firsts = m.first_candidates();
    std::optional<Copy> found;

    if (options.workers <= 1) {
        Matcher::State st(m);
        for (auto first : firsts) {
            m.explore(st, first, [&](const std::vector<ElementId>& image) {
                found = Copy{m.key_of(image, st.edge_buffer), image};
                return false;
            });
            if (found) break;
        }
        return found;
    }

    // The copy reported is the one from the smallest first candidate, matching
    // the serial path; larger branches are cancelled once a smaller one hits.
    const auto count = static_cast<std::int64_t>(firsts.size());
    std::atomic<std::int64_t> best{std::numeric_limits<std::int64_t>::max()};
#pragma omp parallel num_threads(options.workers)
    {
        Matcher::State st(m);
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < count; ++i) {
            if (i > best.load(std::memory_order_relaxed)) continue;
            std::optional<Copy> local;
            m.explore(st, firsts[static_cast<std::size_t>(i)], [&](const std::vector<ElementId>& image) {
                local = Copy{m.key_of(image, st.edge_buffer), image};
                return false;
            });
            if (local) {
#pragma omp critical(posr_find_merge)
                {
                    if (i < best.load()) {
                        best = i;
                        found = std::move(local);
                    }
                }
            }
        }
    }
    return found;
}

bool validate_copy(const Pograph& pattern, const HostPoset& host, const ChainIndex& chains, const Copy& copy) {
    const auto& P = pattern.poset;
    if (copy.witness.size() != P.size()) return false;
    for (auto e : copy.witness)
        if (e >= host.size()) return false;
    auto sorted = copy.witness;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (Vertex a = 0; a < P.size(); ++a)
        for (Vertex b = 0; b < P.size(); ++b)
            if (P.less(a, b) && !host.leq(copy.witness[a], copy.witness[b])) return false;
    std::vector<std::uint32_t> edges;
    std::vector<ElementId> buffer;
    for (const auto& edge : pattern.edges) {
        buffer.clear();
        for (auto v : edge) buffer.push_back(copy.witness[v]);
        const auto idx = chains.find(buffer);
        if (!idx) return false;
        edges.push_back(*idx);
    }
    std::sort(edges.begin(), edges.end());
    return edges == copy.edges;
}

nlohmann::ordered_json copies_to_json(const HostPoset& host, const Pograph& pattern,
                                      const std::vector<std::vector<std::uint32_t>>& edge_sets) {
    nlohmann::ordered_json j;
    j["host"] = host.descriptor().to_string();
    j["pattern"] = pattern.name;
    j["k"] = pattern.k;
    j["count"] = edge_sets.size();
    auto& arr = j["copies"] = nlohmann::ordered_json::array();
    for (const auto& s : edge_sets) arr.push_back(s);
    return j;
}

} // namespace posr
