#include "posr/constructions.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <random>

#include "posr/chain_index.hpp"
#include "posr/errors.hpp"

namespace posr {

namespace {

constexpr int kMaxRdDimension = 10;
constexpr std::uint64_t kItersPerRestart = 20'000;

std::vector<std::uint64_t> subsets_of_size(int n, int size) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
        if (std::popcount(s) == size) out.push_back(s);
    return out;
}

Coloring level_coloring(int n, int t, const std::vector<int>& color_of_level) {
    const auto host = HostPoset::build(HostFamily::boolean(), n);
    Coloring c{host.descriptor(), 1, t, {}};
    c.colors.reserve(host.size());
    for (ElementId e = 0; e < host.size(); ++e)
        c.colors.push_back(static_cast<std::uint8_t>(color_of_level[static_cast<std::size_t>(host.rank(e))]));
    return c;
}

// Complement pairs {S, S^C} with S the member containing element 1, and the
// (d+1)-sets. chosen[p] = true puts the S side of pair p in the family.
struct RdInstance {
    int d;
    std::uint64_t full;
    std::vector<std::uint64_t> pair_rep;
    std::vector<std::uint64_t> big_sets;
    // For each pair, the (d+1)-sets containing its S side and its S^C side.
    std::vector<std::vector<std::uint32_t>> above_rep, above_comp;

    explicit RdInstance(int d_) : d(d_), full((std::uint64_t{1} << (2 * d_)) - 1) {
        for (auto s : subsets_of_size(2 * d, d))
            if (s & 1) pair_rep.push_back(s);
        big_sets = subsets_of_size(2 * d, d + 1);
        std::vector<std::uint32_t> big_index(std::size_t{1} << (2 * d), 0);
        for (std::uint32_t i = 0; i < big_sets.size(); ++i) big_index[big_sets[i]] = i;
        above_rep.resize(pair_rep.size());
        above_comp.resize(pair_rep.size());
        for (std::size_t p = 0; p < pair_rep.size(); ++p) {
            const auto s = pair_rep[p];
            const auto c = full & ~s;
            for (int j = 0; j < 2 * d; ++j) {
                const auto bit = std::uint64_t{1} << j;
                if (!(s & bit)) above_rep[p].push_back(big_index[s | bit]);
                if (!(c & bit)) above_comp[p].push_back(big_index[c | bit]);
            }
        }
    }

    RdFamily family(const std::vector<char>& chosen) const {
        RdFamily f{d, {}};
        for (std::size_t p = 0; p < pair_rep.size(); ++p) f.members.push_back(chosen[p] ? pair_rep[p] : full & ~pair_rep[p]);
        std::sort(f.members.begin(), f.members.end());
        return f;
    }

    std::vector<int> counts(const std::vector<char>& chosen) const {
        std::vector<int> cnt(big_sets.size(), 0);
        for (std::size_t p = 0; p < pair_rep.size(); ++p)
            for (auto b : chosen[p] ? above_rep[p] : above_comp[p]) ++cnt[b];
        return cnt;
    }

    int excess(int count) const { return std::max(0, count - (d - 1)); }

    // Change in total excess when pair p flips sides.
    int flip_delta(const std::vector<char>& chosen, const std::vector<int>& cnt, std::size_t p) const {
        const auto& leaving = chosen[p] ? above_rep[p] : above_comp[p];
        const auto& joining = chosen[p] ? above_comp[p] : above_rep[p];
        int delta = 0;
        for (auto b : leaving) delta += excess(cnt[b] - 1) - excess(cnt[b]);
        for (auto b : joining) delta += excess(cnt[b] + 1) - excess(cnt[b]);
        return delta;
    }

    void flip(std::vector<char>& chosen, std::vector<int>& cnt, std::size_t p) const {
        for (auto b : chosen[p] ? above_rep[p] : above_comp[p]) --cnt[b];
        chosen[p] = !chosen[p];
        for (auto b : chosen[p] ? above_rep[p] : above_comp[p]) ++cnt[b];
    }

    /// One restart: random start, then flips that never increase the excess.
    std::optional<RdFamily> restart(std::uint64_t seed, std::uint64_t iters) const {
        std::mt19937_64 rng(seed);
        std::vector<char> chosen(pair_rep.size());
        for (auto& c : chosen) c = static_cast<char>(rng() & 1);
        auto cnt = counts(chosen);
        int total = 0;
        for (auto c : cnt) total += excess(c);
        std::uniform_int_distribution<std::size_t> pick(0, pair_rep.size() - 1);
        for (std::uint64_t it = 0; it < iters && total > 0; ++it) {
            const auto p = pick(rng);
            const int delta = flip_delta(chosen, cnt, p);
            if (delta <= 0) {
                flip(chosen, cnt, p);
                total += delta;
            }
        }
        if (total > 0) return std::nullopt;
        return family(chosen);
    }
};

std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (std::uint64_t{out[0]} << 32) | out[1];
}

} // namespace

Coloring layered_coloring(const std::vector<int>& e_values) {
    if (e_values.empty()) throw DomainError("need at least one color");
    int total = 0;
    for (auto e : e_values) {
        if (e < 1) throw DomainError("e-values must be positive");
        total += e;
    }
    std::vector<int> color_of_level;
    for (std::size_t i = 0; i < e_values.size(); ++i)
        for (int j = 0; j < e_values[i]; ++j) color_of_level.push_back(static_cast<int>(i) + 1);
    return level_coloring(total - 1, static_cast<int>(e_values.size()), color_of_level);
}

Coloring butterfly_coloring(int t) {
    if (t < 1) throw DomainError("need t >= 1");
    const int n = 2 * t;
    std::vector<int> color_of_level(static_cast<std::size_t>(n + 1), t);
    for (int i = 1; i < t; ++i) {
        color_of_level[static_cast<std::size_t>(2 * i)] = i;
        color_of_level[static_cast<std::size_t>(2 * i + 1)] = i;
    }
    return level_coloring(n, t, color_of_level);
}

RdFamily builtin_R3() {
    const int labels[] = {123, 124, 135, 146, 156, 236, 245, 256, 345, 346};
    RdFamily f{3, {}};
    for (int label : labels) {
        std::uint64_t mask = 0;
        for (int x = label; x > 0; x /= 10) mask |= std::uint64_t{1} << (x % 10 - 1);
        f.members.push_back(mask);
    }
    std::sort(f.members.begin(), f.members.end());
    return f;
}

RdCheck verify_rd_properties(const RdFamily& family, int d) {
    if (d < 1 || d > kMaxRdDimension) throw DomainError("d out of range");
    const auto full = (std::uint64_t{1} << (2 * d)) - 1;
    std::vector<char> in(std::size_t{1} << (2 * d), 0);
    for (auto s : family.members) {
        if ((s & ~full) || std::popcount(s) != d) throw DomainError("R_d members must be d-subsets of [2d]");
        in[s] = 1;
    }
    for (auto s : subsets_of_size(2 * d, d)) {
        if (in[s] + in[full & ~s] != 1) return {false, 1, s};
    }
    for (auto big : subsets_of_size(2 * d, d + 1)) {
        int inside = 0;
        for (auto rest = big; rest; rest &= rest - 1) inside += in[big & ~(rest & -rest)];
        if (inside > d - 1) return {false, 2, big};
    }
    return {true, 0, std::nullopt};
}

std::optional<RdFamily> search_rd(int d, std::uint64_t seed, std::uint64_t max_iters, int workers) {
    if (d < 2 || d > kMaxRdDimension) throw DomainError("search_rd needs 2 <= d <= 10");
    const RdInstance inst(d);
    if (d <= 3) {
        const auto pairs = inst.pair_rep.size();
        std::vector<char> chosen(pairs);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
            for (std::size_t p = 0; p < pairs; ++p) chosen[p] = static_cast<char>(mask >> p & 1);
            auto f = inst.family(chosen);
            if (verify_rd_properties(f, d).ok) return f;
        }
        return std::nullopt;
    }
    const auto restarts = std::max<std::uint64_t>(1, (max_iters + kItersPerRestart - 1) / kItersPerRestart);
    const auto per = std::min(max_iters, kItersPerRestart);
    const auto w = static_cast<std::uint64_t>(std::max(1, workers));
    // Rounds of w restarts; the lowest successful index in the earliest round wins.
    for (std::uint64_t base = 0; base < restarts; base += w) {
        const auto round = std::min(w, restarts - base);
        std::vector<std::optional<RdFamily>> found(round);
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(w)) if (w > 1)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(round); ++i)
            found[static_cast<std::size_t>(i)] = inst.restart(restart_seed(seed, base + static_cast<std::uint64_t>(i)), per);
        for (auto& f : found) {
            if (f && verify_rd_properties(*f, d).ok) return f;
        }
    }
    return std::nullopt;
}

Coloring rd_coloring(const RdFamily& family) {
    const int d = family.d;
    if (!verify_rd_properties(family, d).ok) throw DomainError("R_d family fails its defining properties");
    const auto host = HostPoset::build(HostFamily::boolean(), 2 * d);
    std::vector<char> in(host.size(), 0);
    for (auto s : family.members) in[s] = 1;
    Coloring c{host.descriptor(), 1, 2, {}};
    c.colors.reserve(host.size());
    for (ElementId e = 0; e < host.size(); ++e) {
        const int r = host.rank(e);
        const bool one = in[host.code(e)] || r <= d - 2 || r == d + 1;
        c.colors.push_back(one ? 1 : 2);
    }
    return c;
}

Coloring chain_split_coloring(int s) {
    if (s < 2) throw DomainError("chain split coloring needs s >= 2");
    const auto host = HostPoset::build(HostFamily::chain(), 2 * s + 2);
    const ChainIndex chains(host, 2);
    Coloring c{host.descriptor(), 2, 2, {}};
    c.colors.reserve(chains.size());
    const auto split = static_cast<ElementId>(s + 1);
    for (std::size_t i = 0; i < chains.size(); ++i) {
        const auto pair = chains.chain(i);
        const bool same_side = (pair[0] < split) == (pair[1] < split);
        c.colors.push_back(same_side ? 1 : 2);
    }
    return c;
}

nlohmann::ordered_json to_json(const RdFamily& family) {
    nlohmann::ordered_json j;
    j["d"] = family.d;
    j["members"] = family.members;
    return j;
}

RdFamily rd_family_from_json(const nlohmann::json& j) {
    try {
        RdFamily f{j.at("d").get<int>(), j.at("members").get<std::vector<std::uint64_t>>()};
        std::sort(f.members.begin(), f.members.end());
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad R_d JSON: ") + e.what());
    }
}

} // namespace posr
