#include "posr/lubell.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "posr/embedding.hpp"
#include "posr/errors.hpp"

namespace posr {

namespace {

constexpr int kMaxChainEnumeration = 8;
constexpr int kMaxFamilyScan = 4;
constexpr int kMaxFamilyDimension = 26;

void check_dimension(int n) {
    if (n < 0) throw DomainError("Boolean lattice dimension must be non-negative");
    if (n > kMaxFamilyDimension) throw SizeLimitError("Boolean lattice dimension too large for explicit families");
}

std::uint64_t full_mask(int n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

Integer factorial(int n) {
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<std::uint8_t> membership(const Family& family) {
    std::vector<std::uint8_t> in(std::size_t{1} << family.n, 0);
    for (auto s : family.members) in[s] = 1;
    return in;
}

// Number of leading chain elements contained in S, and the least j with S ⊆ A_j.
std::pair<int, int> chain_position(std::uint64_t set, const std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    int lo = 0;
    while (lo < n && (set >> order[lo] & 1)) ++lo;
    int hi = 0;
    for (int i = 0; i < n; ++i)
        if (set >> order[i] & 1) hi = i + 1;
    return {lo, hi};
}

// S ∈ C_m(A) iff some i ∈ [0, n−m] has A_i ⊆ S ⊆ A_{i+m}.
bool in_interval_chain(std::uint64_t set, const std::vector<int>& order, int m) {
    const int n = static_cast<int>(order.size());
    const auto [lo, hi] = chain_position(set, order);
    return std::max(0, hi - m) <= std::min(lo, n - m);
}

Rational scan_families(const Pograph& pattern, int n, bool exclude_extremes, int workers) {
    if (n < 0) throw DomainError("Boolean lattice dimension must be non-negative");
    if (n > kMaxFamilyScan) throw SizeLimitError("exhaustive family scan is limited to n <= 4");
    const auto host = HostPoset::build(HostFamily::boolean(), n);
    const auto size = static_cast<int>(host.size());

    // Copies of the pattern's poset, as element-index masks.
    const auto poset_pattern = demote_to_1_uniform(pattern);
    std::vector<std::uint32_t> copies;
    for (const auto& edges : copy_edge_sets(poset_pattern, host, ChainIndex(host, 1))) {
        std::uint32_t mask = 0;
        for (auto e : edges) mask |= std::uint32_t{1} << e;
        copies.push_back(mask);
    }
    // Drop copies that contain another copy; they never decide freeness.
    std::sort(copies.begin(), copies.end(), [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });
    std::vector<std::uint32_t> minimal;
    for (auto c : copies) {
        if (std::none_of(minimal.begin(), minimal.end(), [&](auto m) { return (m & ~c) == 0; })) minimal.push_back(c);
    }

    // Integer weights over the common denominator lcm of the binomials.
    std::int64_t denom = 1;
    for (int i = 0; i <= n; ++i) denom = std::lcm(denom, binomial(n, i).convert_to<std::int64_t>());
    std::vector<std::int64_t> weight(static_cast<std::size_t>(size));
    for (int e = 0; e < size; ++e)
        weight[static_cast<std::size_t>(e)] = denom / binomial(n, host.rank(static_cast<ElementId>(e))).convert_to<std::int64_t>();

    std::uint32_t allowed = size == 32 ? ~0U : (1U << size) - 1;
    if (exclude_extremes) {
        allowed &= ~1U;
        allowed &= ~(1U << (size - 1));
    }
    const auto total = std::int64_t{1} << size;
    std::int64_t best = 0;
#pragma omp parallel for schedule(static) reduction(max : best) num_threads(std::max(1, workers)) if (workers > 1)
    for (std::int64_t f = 0; f < total; ++f) {
        const auto family = static_cast<std::uint32_t>(f);
        if (family & ~allowed) continue;
        bool free = true;
        for (auto c : minimal) {
            if ((c & ~family) == 0) {
                free = false;
                break;
            }
        }
        if (!free) continue;
        std::int64_t value = 0;
        for (auto bits = family; bits; bits &= bits - 1) value += weight[static_cast<std::size_t>(std::countr_zero(bits))];
        best = std::max(best, value);
    }
    return Rational(best, denom);
}

} // namespace

Family Family::from_members(int n, std::vector<std::uint64_t> members) {
    check_dimension(n);
    const auto top = full_mask(n);
    for (auto s : members)
        if (s & ~top) throw DomainError("family member is not a subset of [n]");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return {n, std::move(members)};
}

Family Family::whole(int n) {
    check_dimension(n);
    Family f{n, {}};
    f.members.resize(std::size_t{1} << n);
    std::iota(f.members.begin(), f.members.end(), std::uint64_t{0});
    return f;
}

Family Family::level(int n, int size) {
    check_dimension(n);
    Family f{n, {}};
    for (std::uint64_t s = 0; s <= full_mask(n); ++s)
        if (std::popcount(s) == size) f.members.push_back(s);
    return f;
}

bool Family::contains(std::uint64_t set) const { return std::binary_search(members.begin(), members.end(), set); }

FullChain FullChain::from_permutation(const std::vector<int>& order) {
    FullChain c;
    std::uint64_t acc = 0;
    c.sets.push_back(acc);
    for (auto e : order) {
        if (e < 0 || e >= static_cast<int>(order.size()) || (acc >> e & 1)) {
            throw DomainError("full chain order must be a permutation of 0..n-1");
        }
        acc |= std::uint64_t{1} << e;
        c.sets.push_back(acc);
    }
    return c;
}

Integer binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Integer r = 1;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Rational lubell(const Family& family) {
    Rational sum = 0;
    for (auto s : family.members) sum += Rational(1, binomial(family.n, std::popcount(s)));
    return sum;
}

Rational lubell_via_chains(const Family& family) {
    if (family.n > kMaxChainEnumeration) throw SizeLimitError("full chain enumeration is limited to n <= 8");
    const auto in = membership(family);
    std::vector<int> order(static_cast<std::size_t>(family.n));
    std::iota(order.begin(), order.end(), 0);
    std::uint64_t hits = 0;
    do {
        std::uint64_t acc = 0;
        hits += in[acc];
        for (auto e : order) {
            acc |= std::uint64_t{1} << e;
            hits += in[acc];
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return Rational(Integer(hits), factorial(family.n));
}

Family interval_chain(const FullChain& chain, int m) {
    const int n = chain.n();
    if (m < 1 || m > n) throw DomainError("interval chain needs 1 <= m <= n");
    std::vector<std::uint64_t> members;
    for (int i = 0; i + m <= n; ++i) {
        const auto base = chain.sets[static_cast<std::size_t>(i)];
        const auto free = chain.sets[static_cast<std::size_t>(i + m)] & ~base;
        // Every subset of `free`, added to the base.
        for (std::uint64_t sub = free;; sub = (sub - 1) & free) {
            members.push_back(base | sub);
            if (sub == 0) break;
        }
    }
    return Family::from_members(n, std::move(members));
}

std::uint64_t interval_chain_size(int n, int m) {
    if (m < 1 || m > n) throw DomainError("interval chain needs 1 <= m <= n");
    return static_cast<std::uint64_t>(n - m + 2) << (m - 1);
}

Rational interval_lubell(const Family& family, int m) {
    const int n = family.n;
    if (m < 1 || m > n) throw DomainError("interval Lubell needs 1 <= m <= n");
    if (n > kMaxChainEnumeration) throw SizeLimitError("exact interval Lubell is limited to n <= 8");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::uint64_t hits = 0;
    do {
        for (auto s : family.members) hits += in_interval_chain(s, order, m);
    } while (std::next_permutation(order.begin(), order.end()));
    return Rational(Integer(hits), factorial(n));
}

SampledValue interval_lubell_sampled(const Family& family, int m, std::uint64_t seed, std::uint64_t trials) {
    const int n = family.n;
    if (m < 1 || m > n) throw DomainError("interval Lubell needs 1 <= m <= n");
    if (trials == 0) throw DomainError("sampling needs at least one trial");
    std::mt19937_64 rng(seed);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::shuffle(order.begin(), order.end(), rng);
        for (auto s : family.members) hits += in_interval_chain(s, order, m);
    }
    return {static_cast<double>(hits) / static_cast<double>(trials), trials};
}

Rational exact_L(const Pograph& pattern, int n, int workers) { return scan_families(pattern, n, false, workers); }

Rational exact_Lprime(const Pograph& pattern, int n, int workers) { return scan_families(pattern, n, true, workers); }

Family middle_levels(int n, int m) {
    check_dimension(n);
    if (m < 1) throw DomainError("need at least one level");
    int first = (n - m + 1) / 2;
    if (n - m < 0) first = 0;
    const int last = std::min(n, first + m - 1);
    std::vector<std::uint64_t> members;
    for (std::uint64_t s = 0; s <= full_mask(n); ++s) {
        const int r = std::popcount(s);
        if (r >= first && r <= last) members.push_back(s);
    }
    return {n, std::move(members)};
}

int e_estimate(const Pograph& pattern, int n_max) {
    if (n_max < 1 || n_max > 10) throw DomainError("e_estimate needs 1 <= n_max <= 10");
    const auto poset_pattern = demote_to_1_uniform(pattern);
    std::vector<HostPoset> hosts;
    for (int n = 1; n <= n_max; ++n) hosts.push_back(HostPoset::build(HostFamily::boolean(), n));
    auto free_everywhere = [&](int m) {
        for (const auto& host : hosts) {
            const auto levels = middle_levels(host.n(), m);
            std::vector<ElementId> ids;
            for (auto s : levels.members) ids.push_back(*host.find(s));
            if (!is_P_free(poset_pattern, ids, host)) return false;
        }
        return true;
    };
    int m = 0;
    while (m <= n_max && free_everywhere(m + 1)) ++m;
    return m;
}

namespace known {

int e_diamond(int r) {
    if (r < 1) throw DomainError("diamond needs r >= 1");
    return static_cast<int>(std::bit_width(static_cast<unsigned>(r + 1)));
}

Rational L_diamond_upper(int r) {
    const int m = e_diamond(r);
    const auto middle = binomial(m, m / 2);
    const Integer upper_of_lower_range = (Integer(1) << m) - middle - 1;
    if (Integer(r) <= upper_of_lower_range) return Rational(m);
    return Rational(m + 1) - Rational((Integer(1) << m) - r - 1, middle);
}

} // namespace known

nlohmann::ordered_json to_json(const Family& family) {
    nlohmann::ordered_json j;
    j["n"] = family.n;
    j["members"] = family.members;
    return j;
}

Family family_from_json(const nlohmann::json& j) {
    try {
        return Family::from_members(j.at("n").get<int>(), j.at("members").get<std::vector<std::uint64_t>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad family JSON: ") + e.what());
    } catch (const DomainError& e) {
        throw ParseError(std::string("bad family JSON: ") + e.what());
    }
}

} // namespace posr
