#include <doctest.h>

#include <cmath>

#include "posr/bounds.hpp"
#include "posr/errors.hpp"

using namespace posr;

namespace {

// Slow references for the integer helpers.
int ref_ceil_log_ratio(std::uint64_t p, std::uint64_t q, std::uint64_t x) {
    Integer lhs = 1, rhs = x;
    int n = 0;
    while (lhs < rhs) {
        lhs *= p;
        rhs *= q;
        ++n;
    }
    return n;
}

std::int64_t ref_cr2_cupcap(int r, int s) {
    // ⌊(√(1+8(r−1)(s−1)) − 1)/2⌋ is the largest j with j(j+1)/2 ≤ (r−1)(s−1).
    std::int64_t j = 0;
    while ((j + 1) * (j + 2) / 2 <= static_cast<std::int64_t>(r - 1) * (s - 1)) ++j;
    return j + r + s;
}

} // namespace

TEST_CASE("integer helpers") {
    for (std::uint64_t x = 0; x < 5000; ++x) {
        const auto r = isqrt(x);
        CHECK(r * r <= x);
        CHECK((r + 1) * (r + 1) > x);
    }
    CHECK(isqrt(std::uint64_t{1} << 62) == std::uint64_t{1} << 31);
    for (std::uint64_t x = 1; x < 3000; ++x) {
        const int n = ceil_lg(x);
        CHECK((std::uint64_t{1} << n) >= x);
        if (n > 0) CHECK((std::uint64_t{1} << (n - 1)) < x);
    }
    CHECK(ceil_log_ratio(3, 2, 7) == 5);
    for (std::uint64_t x = 1; x < 200; ++x) {
        CHECK(ceil_log_ratio(3, 2, x) == ref_ceil_log_ratio(3, 2, x));
        CHECK(ceil_log_ratio(5, 2, x) == ref_ceil_log_ratio(5, 2, x));
        CHECK(ceil_log_ratio(2, 1, x) == ceil_lg(x));
    }
    CHECK(ceil_scaled_root(9, 2) == 3);
    CHECK(ceil_scaled_root(10, 2) == 4);
    CHECK(ceil_scaled_root(3, 2, 2) == 4);  // ⌈2√3⌉
    CHECK(ceil_scaled_root(8, 3, 2) == 4);
}

TEST_CASE("one-uniform general and boolean-chain") {
    const auto g = br1_general({4, 4}, {2, 2}, 2);
    CHECK(g.lower == 4);
    CHECK(g.upper == 6);
    for (int k = 2; k <= 6; ++k) {
        const auto c = br1_general({k}, {k - 1}, k - 1);
        CHECK(c.lower == k - 1);
        CHECK(c.upper == k - 1);
    }
    CHECK(br1_boolchain(2, {3}).exact == 4);
    CHECK(br1_boolchain(1, {2}).exact == 2);
    for (int n = 0; n <= 5; ++n) CHECK(br1_boolchain(n, {}).exact == n);
    // B_3 vs C_2 inside the general bracket: sizes 8 and 2, e(B_3) = 3, e(C_2) = 1, M = 3.
    const auto bc = br1_boolchain(3, {2});
    CHECK(br1_general({8, 2}, {3, 1}, 3).contains(*bc.exact));
    CHECK_THROWS_AS(br1_general({4}, {2, 2}, 2), DomainError);
}

TEST_CASE("lubell condition and uniformly bounded") {
    CHECK(br1_lubell_condition({Rational(3), Rational(3)}, 6));
    CHECK_FALSE(br1_lubell_condition({Rational(3), Rational(3)}, 5));
    CHECK(br1_lubell_condition({Rational(5, 2), Rational(5, 2)}, 5));
    CHECK(br1_ulbounded({2, 2, 2}).exact == 6);
    CHECK(br1_butterfly(2).exact == 5);
    for (int t = 1; t <= 6; ++t) CHECK(br1_butterfly(t).exact == 2 * t + 1);
    CHECK(br1_diamond(1, 3).exact == 3);
    const auto d = br1_diamond(2, 6);  // m = 3, outside the first range
    CHECK_FALSE(d.exact.has_value());
    CHECK(d.lower == 6);
    CHECK(d.upper == 7);
    CHECK(br1_diamond(2, 5).exact == 6);  // the bracket closes
    CHECK(d.consistent());
}

TEST_CASE("multi-color Lubell bounds") {
    CHECK(br1_mlubell({8, 8}, {4, 4}).upper == 22);
    CHECK(br1_boolean_quadratic(3, 2).upper == 36);
    const auto chains = br1_mlubell({4, 5}, {4, 5});  // S = H = 7
    CHECK(chains.upper == static_cast<std::int64_t>(std::floor(1.5 * 7 + 1)));
    CHECK_THROWS_AS(br1_mlubell({3}, {4}), DomainError);
    for (int t = 1; t <= 4; ++t)
        for (int d = 1; d <= 4; ++d) {
            const auto b = br1_mlubell_boolean(d, t);
            CHECK(b.upper <= br1_boolean_quadratic(d, t).upper);
            CHECK(b.consistent());
        }
    CHECK(br1_mlubell_butterflies({{2, 2}, {2, 2}}).upper >= 5);
    CHECK(br1_mlubell_cupcaps({2, 3}).consistent());
    CHECK(br1_mlubell_diamonds({2, 2}).consistent());
}

TEST_CASE("pairs of Boolean lattices") {
    CHECK(br1_axenovich_walzer(3, 3).upper == 8);
    CHECK(br1_axenovich_walzer(3, 3).lower == 6);
    CHECK(br1_axenovich_walzer(3, 3).contains(7));
    for (int r = 2; r <= 6; ++r) CHECK(br1_axenovich_walzer(r, 2).upper == 2 * r + 2);
    CHECK(br1_axenovich_walzer(5, 4).upper == 29);
    CHECK(br1_axenovich_walzer(2, 5).upper == br1_axenovich_walzer(5, 2).upper);
}

TEST_CASE("chain cup/cap formula") {
    CHECK(cr2_cupcap(2, 2).exact == 5);
    CHECK(cr2_cupcap(3, 3).exact == 8);
    for (int r = 2; r <= 30; ++r)
        for (int s = 2; s <= 30; ++s) {
            CHECK(cr2_cupcap(r, s).exact == ref_cr2_cupcap(r, s));
            CHECK(static_cast<double>(*cr2_cupcap(r, s).exact) <= (1 + std::sqrt(2.0)) * (r + s));
        }
    CHECK_THROWS_AS(cr2_cupcap(1, 3), DomainError);
    CHECK(multicupcap_reduce({2, 3}, {2}) == std::pair{4, 2});
    CHECK(multicupcap_reduce({2}, {3, 3, 2}) == std::pair{2, 6});
}

TEST_CASE("two-uniform Boolean bounds") {
    const auto b = br2_cupcap(2, 2);
    CHECK(b.lower == 3);
    CHECK(b.upper == 3);
    CHECK(b.exact == 3);
    CHECK(br2_samecup({2, 2}).exact == 2);
    const auto m = br2_matching(2, {2, 2});
    CHECK(m.lower == 3);
    CHECK(m.upper == 3);
    CHECK(m.exact == 3);
    CHECK(br2_matching(2, {2, 4}).lower == br2_matching(2, {4, 2}).lower);
    for (int r = 2; r <= 10; ++r)
        for (int s = 2; s <= 10; ++s) CHECK(br2_cupcap(r, s).consistent());
    CHECK(br2_diamondcup(2, 3).upper == ceil_log_ratio(3, 2, 2 * 3 + 2 - 1));
}

TEST_CASE("diamond bounds") {
    const auto d = diamond_bounds(2, 2);
    CHECK(d.cr_upper == 13);
    CHECK(d.br_upper == 10);
    CHECK(d.cr_lower == 7);
    CHECK(d.br_lower == 3);
    CHECK(d.br_upper_refined == 8);
    CHECK(br2_diamonds(2, 2).contains(5));
    CHECK(cr2_diamonds(2, 2).contains(11));
}

TEST_CASE("chain versus Boolean and totally ordered") {
    const auto b = chain_vs_boolean(5);
    CHECK(b.lower == 3);
    CHECK(b.upper == 4);
    CHECK(totally_ordered_equalities(4).exact == 3);
}

TEST_CASE("grid and rooted bipartite") {
    CHECK(grid_bounds(HostFamily::grid_length(3), GridShape::cupcap, 2, 2).upper == 2);
    CHECK(rooted_bipartite_cupcap(2, 2).exact == 3);
    for (int r = 2; r <= 4; ++r)
        for (int s = 2; s <= 4; ++s) {
            const auto h1 = grid_bounds(HostFamily::grid_dim(1), GridShape::cupcap, r, s);
            REQUIRE(h1.upper.has_value());
            CHECK(*h1.upper >= *cr2_cupcap(r, s).exact);
            CHECK(rooted_bipartite_cupcap(s, r).exact == s + r - 1);
        }
    for (auto shape : {GridShape::cupcap, GridShape::diamondcup, GridShape::diamonddiamond})
        for (int l = 2; l <= 4; ++l) CHECK(grid_bounds(HostFamily::grid_length(l), shape, 3, 2).consistent());
    CHECK(generic_family_bounds(HostFamily::boolean(), 5).lower == 3);
}

TEST_CASE("bound results serialize with all four fields") {
    const auto j = to_json(cr2_cupcap(2, 2));
    CHECK(j["exact"] == 5);
    CHECK(j.contains("source"));
    CHECK(j.contains("lower"));
    CHECK(j.contains("upper"));
    CHECK(j["source"] == "choudum-ponnusamy");
}
