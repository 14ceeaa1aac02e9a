#include "posr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "posr/errors.hpp"

namespace posr {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw DomainError(message);
}

std::int64_t cp_term(int r, int s) {
    const auto x = 1 + 8 * static_cast<std::uint64_t>(r - 1) * static_cast<std::uint64_t>(s - 1);
    return static_cast<std::int64_t>((isqrt(x) - 1) / 2);
}

std::int64_t cp_value(int r, int s) { return cp_term(r, s) + r + s; }

std::int64_t ceil_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (q * b < a) ++q;
    return q.convert_to<std::int64_t>();
}

} // namespace

BoundResult BoundResult::exactly(std::int64_t value, std::string source) {
    return {value, value, value, std::move(source)};
}

BoundResult BoundResult::between(std::optional<std::int64_t> lower, std::optional<std::int64_t> upper,
                                 std::string source) {
    BoundResult b{lower, upper, std::nullopt, std::move(source)};
    if (lower && upper && *lower == *upper) b.exact = *lower;
    return b;
}

bool BoundResult::contains(std::int64_t value) const {
    if (lower && value < *lower) return false;
    if (upper && value > *upper) return false;
    return true;
}

bool BoundResult::consistent() const {
    if (lower && upper && *lower > *upper) return false;
    if (exact && !contains(*exact)) return false;
    return true;
}

nlohmann::ordered_json to_json(const BoundResult& b) {
    nlohmann::ordered_json j;
    j["source"] = b.source;
    j["lower"] = b.lower ? nlohmann::ordered_json(*b.lower) : nlohmann::ordered_json();
    j["upper"] = b.upper ? nlohmann::ordered_json(*b.upper) : nlohmann::ordered_json();
    j["exact"] = b.exact ? nlohmann::ordered_json(*b.exact) : nlohmann::ordered_json();
    return j;
}

std::uint64_t isqrt(std::uint64_t x) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

int ceil_lg(std::uint64_t x) {
    require(x >= 1, "logarithm of zero");
    int n = 0;
    while (n < 64 && (std::uint64_t{1} << n) < x) ++n;
    return n;
}

int ceil_log_ratio(std::uint64_t p, std::uint64_t q, std::uint64_t x) {
    require(p > q && q >= 1, "logarithm base must exceed 1");
    require(x >= 1, "logarithm of zero");
    Integer lhs = 1;
    Integer rhs = x;
    int n = 0;
    while (lhs < rhs) {
        lhs *= p;
        rhs *= q;
        ++n;
    }
    return n;
}

std::int64_t ceil_scaled_root(std::uint64_t x, int m, std::uint64_t scale) {
    require(m >= 1, "root degree must be positive");
    const Integer target = boost::multiprecision::pow(Integer(scale), m) * x;
    std::int64_t n = 0;
    while (boost::multiprecision::pow(Integer(n), m) < target) ++n;
    return n;
}

BoundResult br1_general(const std::vector<int>& sizes, const std::vector<int>& e_values, int M) {
    require(sizes.size() == e_values.size(), "sizes and e-values must have the same length");
    require(!sizes.empty(), "need at least one poset");
    std::int64_t e_sum = 0, upper = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        require(sizes[i] >= 1 && e_values[i] >= 1, "sizes and e-values must be positive");
        e_sum += e_values[i];
        upper += sizes[i] - 1;
    }
    return BoundResult::between(std::max<std::int64_t>(M, e_sum), upper, "layered-levels");
}

BoundResult br1_boolchain(int n1, const std::vector<int>& chain_sizes) {
    require(n1 >= 0, "Boolean dimension must be non-negative");
    std::int64_t value = n1;
    for (auto c : chain_sizes) {
        require(c >= 1, "chain sizes must be positive");
        value += c - 1;
    }
    return BoundResult::exactly(value, "boolean-vs-chains");
}

bool br1_lubell_condition(const std::vector<Rational>& L_values, int n) {
    Rational sum = 0;
    for (const auto& v : L_values) sum += v;
    return sum < Rational(n + 1);
}

BoundResult br1_ulbounded(const std::vector<int>& e_values) {
    require(!e_values.empty(), "need at least one poset");
    return BoundResult::exactly(std::accumulate(e_values.begin(), e_values.end(), std::int64_t{0}),
                                "uniformly-lubell-bounded");
}

BoundResult br1_butterfly(int t) {
    require(t >= 1, "need at least one color");
    return BoundResult::exactly(2 * static_cast<std::int64_t>(t) + 1, "butterfly");
}

BoundResult br1_diamond(int t, int r) {
    require(t >= 1 && r >= 1, "need t >= 1 and r >= 1");
    const int m = known::e_diamond(r);
    const auto middle = binomial(m, m / 2);
    const Integer two_m = Integer(1) << m;
    const std::int64_t lower = static_cast<std::int64_t>(t) * m;
    if (Integer(r) <= two_m - middle - 1) return BoundResult::exactly(lower, "diamond-lubell");
    const auto upper = static_cast<std::int64_t>(t) * (m + 1) - ceil_div(Integer(t) * (two_m - r - 1), middle);
    return BoundResult::between(lower, upper, "diamond-lubell");
}

BoundResult br1_mlubell(const std::vector<int>& sizes, const std::vector<int>& heights) {
    require(sizes.size() == heights.size() && !sizes.empty(), "sizes and heights must align");
    std::int64_t S = 0, H = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        S += sizes[i] - 1;
        H += heights[i] - 1;
    }
    require(H >= 1, "interval Lubell bound needs H >= 1");
    require(S >= H, "interval Lubell bound needs S >= H");
    // Largest y with y ≤ (3H/2 + 1)(lg(S/H) + 1), i.e.
    // 2^{2y − (3H+2)} · H^{3H+2} ≤ S^{3H+2}.
    const auto e = static_cast<unsigned>(3 * H + 2);
    const Integer h_pow = boost::multiprecision::pow(Integer(H), e);
    const Integer s_pow = boost::multiprecision::pow(Integer(S), e);
    auto fits = [&](std::int64_t y) {
        const auto d = 2 * y - static_cast<std::int64_t>(e);
        if (d >= 0) return (h_pow << static_cast<unsigned>(d)) <= s_pow;
        return h_pow <= (s_pow << static_cast<unsigned>(-d));
    };
    std::int64_t y = 0;
    while (fits(y + 1)) ++y;
    return BoundResult::between(std::nullopt, y, "interval-lubell");
}

BoundResult br1_mlubell_boolean(int d, int t) {
    require(d >= 1 && t >= 1, "need d >= 1 and t >= 1");
    require(d < 31, "Boolean pattern too large");
    return br1_mlubell(std::vector<int>(static_cast<std::size_t>(t), 1 << d), std::vector<int>(static_cast<std::size_t>(t), d + 1));
}

BoundResult br1_boolean_quadratic(int d, int t) {
    require(d >= 1 && t >= 1, "need d >= 1 and t >= 1");
    return BoundResult::between(std::nullopt, 2 * static_cast<std::int64_t>(d) * d * t, "interval-lubell-quadratic");
}

BoundResult br1_mlubell_butterflies(const std::vector<std::pair<int, int>>& shapes) {
    std::vector<int> sizes, heights;
    for (auto [a, b] : shapes) {
        require(a >= 1 && b >= 1, "butterfly sides must be positive");
        sizes.push_back(a + b);
        heights.push_back(2);
    }
    return br1_mlubell(sizes, heights);
}

BoundResult br1_mlubell_cupcaps(const std::vector<int>& leaves) {
    std::vector<int> sizes, heights;
    for (auto r : leaves) {
        require(r >= 1, "cups need at least one leaf");
        sizes.push_back(r + 1);
        heights.push_back(2);
    }
    return br1_mlubell(sizes, heights);
}

BoundResult br1_mlubell_diamonds(const std::vector<int>& middles) {
    std::vector<int> sizes, heights;
    for (auto r : middles) {
        require(r >= 1, "diamonds need at least one middle element");
        sizes.push_back(r + 2);
        heights.push_back(3);
    }
    return br1_mlubell(sizes, heights);
}

BoundResult br1_axenovich_walzer(int r, int s) {
    require(r >= 1 && s >= 1, "need r, s >= 1");
    if (r < s) std::swap(r, s);
    std::int64_t upper = static_cast<std::int64_t>(r) * s + r + s;
    if (s == 2) upper = std::min<std::int64_t>(upper, 2 * r + 2);
    if (r == 3 && s == 3) upper = std::min<std::int64_t>(upper, 8);
    return BoundResult::between(r + s, upper, "axenovich-walzer");
}

BoundResult cr2_cupcap(int r, int s) {
    require(r >= 2 && s >= 2, "cup/cap chain formula needs r, s >= 2");
    return BoundResult::exactly(cp_value(r, s), "choudum-ponnusamy");
}

std::pair<int, int> multicupcap_reduce(const std::vector<int>& cups, const std::vector<int>& caps) {
    int R = 1, S = 1;
    for (auto r : cups) {
        require(r >= 1, "cup sizes must be positive");
        R += r - 1;
    }
    for (auto s : caps) {
        require(s >= 1, "cap sizes must be positive");
        S += s - 1;
    }
    return {R, S};
}

BoundResult br2_cupcap(int r, int s) {
    require(r >= 2 && s >= 2, "cup/cap bounds need r, s >= 2");
    return BoundResult::between(ceil_lg(static_cast<std::uint64_t>(cp_value(r, s))),
                                ceil_log_ratio(3, 2, static_cast<std::uint64_t>(r + s - 1)), "cup-cap-boolean");
}

BoundResult br2_samecup(const std::vector<int>& leaves) {
    require(!leaves.empty(), "need at least one cup");
    std::uint64_t x = 2;
    for (auto r : leaves) {
        require(r >= 1, "cup sizes must be positive");
        x += static_cast<std::uint64_t>(r - 1);
    }
    return BoundResult::exactly(ceil_lg(x), "same-direction-cups");
}

BoundResult br2_matching(int k, std::vector<int> sizes) {
    require(k >= 1, "uniformity must be positive");
    require(!sizes.empty(), "need at least one matching");
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    require(sizes.back() >= 1, "matching sizes must be positive");
    std::uint64_t low = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(sizes[0]);
    std::uint64_t up = 1 + static_cast<std::uint64_t>(sizes[0] - 1);
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        low += static_cast<std::uint64_t>(sizes[i] - 1);
        up += static_cast<std::uint64_t>(sizes[i] - 1);
    }
    return BoundResult::between(ceil_lg(low), ceil_lg(up) + k - 1, "matchings");
}

BoundResult br2_diamondcup(int s, int r) {
    require(r >= 2 && s >= 2, "diamond/cup bound needs r, s >= 2");
    return BoundResult::between(std::nullopt, ceil_log_ratio(3, 2, static_cast<std::uint64_t>(2 * r + s - 1)),
                                "diamond-cup-boolean");
}

DiamondBounds diamond_bounds(int r, int s) {
    require(r >= 2 && s >= 2, "diamond bounds need r, s >= 2");
    const int big = std::max(r, s);
    DiamondBounds d;
    d.cr_upper = 2 * cp_term(r, s) + 3 * (r + s) - 1;
    d.cr_lower = 2 * big + 3;
    d.br_cup_upper = ceil_log_ratio(3, 2, static_cast<std::uint64_t>(2 * r + s - 1));
    d.br_upper = 2 * ceil_log_ratio(3, 2, static_cast<std::uint64_t>(2 * r + 2 * s - 1));
    d.br_upper_refined = *br2_diamondcup(s, s + r - 1).upper + ceil_lg(static_cast<std::uint64_t>(2 * s + 2 * r));
    d.br_lower = ceil_lg(static_cast<std::uint64_t>(2 * big + 3));
    return d;
}

BoundResult br2_diamonds(int s, int r) {
    const auto d = diamond_bounds(r, s);
    return BoundResult::between(d.br_lower, std::min(d.br_upper, d.br_upper_refined), "diamonds-boolean");
}

BoundResult cr2_diamonds(int s, int r) {
    const auto d = diamond_bounds(r, s);
    return BoundResult::between(d.cr_lower, d.cr_upper, "diamonds-chain");
}

BoundResult chain_vs_boolean(std::int64_t cr_value) {
    require(cr_value >= 1, "chain Ramsey value must be positive");
    return BoundResult::between(ceil_lg(static_cast<std::uint64_t>(cr_value)), cr_value - 1, "chain-vs-boolean");
}

BoundResult totally_ordered_equalities(std::int64_t cr_value) {
    require(cr_value >= 1, "chain Ramsey value must be positive");
    return BoundResult::exactly(cr_value - 1, "totally-ordered");
}

BoundResult grid_bounds(HostFamily family, GridShape shape, int r, int s) {
    require(r >= 2 && s >= 2, "grid bounds need r, s >= 2");
    const auto ur = static_cast<std::uint64_t>(r);
    const auto us = static_cast<std::uint64_t>(s);
    if (family.kind == FamilyKind::grid_length) {
        const auto l = static_cast<std::uint64_t>(family.param);
        require(family.param >= 2, "grid side must be at least 2");
        switch (shape) {
        case GridShape::cupcap:
            return BoundResult::between(ceil_log_ratio(l, 1, static_cast<std::uint64_t>(cp_value(r, s))),
                                        ceil_log_ratio(l + 1, 2, ur + us - 1), "grid-dimension-cup-cap");
        case GridShape::diamondcup:
            return BoundResult::between(std::nullopt, ceil_log_ratio(l + 1, 2, 2 * ur + us - 1),
                                        "grid-dimension-diamond-cup");
        case GridShape::diamonddiamond:
            return BoundResult::between(std::nullopt, 2 * ceil_log_ratio(l + 1, 2, 2 * ur + 2 * us - 1),
                                        "grid-dimension-diamonds");
        }
    }
    if (family.kind == FamilyKind::grid_dim) {
        const int m = family.param;
        require(m >= 1, "grid dimension must be positive");
        switch (shape) {
        case GridShape::cupcap:
            return BoundResult::between(ceil_scaled_root(static_cast<std::uint64_t>(cp_value(r, s)), m),
                                        ceil_scaled_root(ur + us - 1, m, 2) - 1, "grid-side-cup-cap");
        case GridShape::diamondcup:
            return BoundResult::between(std::nullopt, ceil_scaled_root(2 * ur + us - 1, m, 2) - 1,
                                        "grid-side-diamond-cup");
        case GridShape::diamonddiamond:
            return BoundResult::between(std::nullopt, 3 * ceil_scaled_root(2 * ur + 2 * us - 1, m),
                                        "grid-side-diamonds");
        }
    }
    throw DomainError("grid bounds need a grid-length or grid-dim family");
}

BoundResult rooted_bipartite_cupcap(int s, int r) {
    require(r >= 1 && s >= 1, "need r, s >= 1");
    return BoundResult::exactly(static_cast<std::int64_t>(s) + r - 1, "rooted-bipartite");
}

BoundResult generic_family_bounds(HostFamily family, std::int64_t cr_value) {
    require(cr_value >= 1, "chain Ramsey value must be positive");
    const auto x = static_cast<std::uint64_t>(cr_value);
    return BoundResult::between(family_s(family, x), family_h(family, x), "size-height");
}

} // namespace posr
