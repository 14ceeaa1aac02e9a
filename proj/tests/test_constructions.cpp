#include <doctest.h>

#include <bit>

#include "posr/constructions.hpp"
#include "posr/errors.hpp"
#include "posr/ramsey.hpp"

using namespace posr;

namespace {

std::uint64_t set_of(std::initializer_list<int> elems) {
    std::uint64_t s = 0;
    for (int e : elems) s |= std::uint64_t{1} << (e - 1);
    return s;
}

// Direct check of both properties, written against the definitions.
bool naive_rd(const std::vector<std::uint64_t>& members, int d) {
    const std::uint64_t full = (std::uint64_t{1} << (2 * d)) - 1;
    auto in = [&](std::uint64_t s) { return std::find(members.begin(), members.end(), s) != members.end(); };
    for (std::uint64_t s = 0; s <= full; ++s) {
        if (std::popcount(s) == d && (in(s) == in(full & ~s))) return false;
        if (std::popcount(s) == d + 1) {
            int inside = 0;
            for (auto m : members) inside += (m & ~s) == 0;
            if (inside >= d) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("built-in R3") {
    const auto r3 = builtin_R3();
    CHECK(r3.d == 3);
    CHECK(r3.members.size() == 10);
    CHECK(std::find(r3.members.begin(), r3.members.end(), set_of({1, 2, 3})) != r3.members.end());
    CHECK(std::find(r3.members.begin(), r3.members.end(), set_of({3, 4, 6})) != r3.members.end());
    const auto chk = verify_rd_properties(r3, 3);
    CHECK(chk.ok);
    CHECK(chk.failed_property == 0);
    CHECK(naive_rd(r3.members, 3));
}

TEST_CASE("R_d property failures carry certificates") {
    auto r = builtin_R3();
    // Replacing 123 by its complement 456 leaves the pair {123, 456} one-sided.
    std::replace(r.members.begin(), r.members.end(), set_of({1, 2, 3}), set_of({4, 5, 6}));
    const auto chk = verify_rd_properties(r, 3);
    CHECK_FALSE(chk.ok);
    REQUIRE(chk.certificate.has_value());
    // 456 now sits with 345 and 346 inside 3456, and 123 has no partner; either failure is valid.
    CHECK(std::popcount(*chk.certificate) == (chk.failed_property == 1 ? 3 : 4));
    CHECK_FALSE(naive_rd(r.members, 3));

    auto missing = builtin_R3();
    missing.members.pop_back();
    CHECK(verify_rd_properties(missing, 3).failed_property == 1);

    RdFamily bad{3, {set_of({1, 2})}};
    CHECK_THROWS_AS(verify_rd_properties(bad, 3), DomainError);

    // Every single-member swap of R3 is rejected by both checks alike.
    const auto base = builtin_R3();
    for (std::size_t i = 0; i < base.members.size(); ++i) {
        auto swapped = base;
        swapped.members[i] = 63 & ~swapped.members[i];
        CHECK(verify_rd_properties(swapped, 3).ok == naive_rd(swapped.members, 3));
    }
}

TEST_CASE("R_d coloring of B_2d") {
    const auto c = rd_coloring(builtin_R3());
    CHECK(c.host.to_string() == "boolean:6");
    CHECK(c.k == 1);
    CHECK(c.colors.size() == 64);
    CHECK(c.count(1) == 32);
    CHECK(c.count(2) == 32);
    const auto host = HostPoset::build(c.host);
    // Complements get opposite colors.
    for (ElementId x = 0; x < host.size(); ++x) {
        const auto comp = host.find(63 & ~host.code(x));
        REQUIRE(comp.has_value());
        CHECK(c.colors[x] != c.colors[*comp]);
    }
    const auto b3 = make_pograph("boolean:3", 1);
    CHECK(verify_coloring(c, {b3, b3}).ok);
    auto broken = builtin_R3();
    broken.members.pop_back();
    CHECK_THROWS_AS(rd_coloring(broken), DomainError);
}

TEST_CASE("search for R_d") {
    const auto r3 = search_rd(3, 1, 10000);
    REQUIRE(r3.has_value());
    CHECK(verify_rd_properties(*r3, 3).ok);
    CHECK(naive_rd(r3->members, 3));
    CHECK_FALSE(search_rd(2, 1, 10000).has_value());

    const auto a = search_rd(4, 1, 1'000'000);
    REQUIRE(a.has_value());
    CHECK(verify_rd_properties(*a, 4).ok);
    CHECK(naive_rd(a->members, 4));
    const auto b = search_rd(4, 1, 1'000'000, 4);
    REQUIRE(b.has_value());
    CHECK(a->members == b->members);
    const auto c = rd_coloring(*a);
    const auto b4 = make_pograph("boolean:4", 1);
    CHECK(verify_coloring(c, {b4, b4}).ok);
}

TEST_CASE("layered, butterfly and chain-split colorings") {
    const auto lay = layered_coloring({2, 3});
    CHECK(lay.host.to_string() == "boolean:4");
    CHECK(lay.t == 2);
    const auto host = HostPoset::build(lay.host);
    for (ElementId x = 0; x < host.size(); ++x) CHECK(lay.colors[x] == (host.rank(x) < 2 ? 1 : 2));
    // Color i has height e_i, so it contains no chain of e_i + 1 elements.
    CHECK(verify_coloring(lay, {make_pograph("chain:3", 1), make_pograph("chain:4", 1)}).ok);
    CHECK_FALSE(verify_coloring(lay, {make_pograph("chain:2", 1), make_pograph("chain:4", 1)}).ok);

    for (int t = 1; t <= 3; ++t) {
        const auto bc = butterfly_coloring(t);
        CHECK(bc.host.n == 2 * t);
        CHECK(bc.t == t);
        const auto bf = make_pograph("butterfly:2x2", 1);
        CHECK(verify_coloring(bc, std::vector<Pograph>(static_cast<std::size_t>(t), bf)).ok);
    }

    for (int s = 2; s <= 4; ++s) {
        const auto cs = chain_split_coloring(s);
        CHECK(cs.host.n == 2 * s + 2);
        CHECK(cs.k == 2);
        const auto d = make_pograph("diamond:" + std::to_string(s), 2);
        CHECK(verify_coloring(cs, {d, d}).ok);
    }
}

TEST_CASE("R_d JSON") {
    const auto r3 = builtin_R3();
    const auto j = to_json(r3);
    CHECK(j["d"] == 3);
    CHECK(j["members"].size() == 10);
    const auto back = rd_family_from_json(nlohmann::json::parse(j.dump()));
    auto sorted = r3.members;
    std::sort(sorted.begin(), sorted.end());
    CHECK(back.members == sorted);
}
