#include <doctest.h>

#include "posr/errors.hpp"
#include "posr/pograph.hpp"

using namespace posr;

namespace {

std::vector<std::pair<Vertex, Vertex>> naive_covers(const Poset& p) {
    std::vector<std::pair<Vertex, Vertex>> out;
    const auto n = static_cast<Vertex>(p.size());
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b) {
            if (!p.less(a, b)) continue;
            bool cover = true;
            for (Vertex c = 0; c < n; ++c) cover = cover && !(p.less(a, c) && p.less(c, b));
            if (cover) out.emplace_back(a, b);
        }
    return out;
}

} // namespace

TEST_CASE("catalog examples") {
    const auto d2 = make_pograph("diamond:2", 2);
    CHECK(d2.poset.size() == 4);
    CHECK(d2.edges.size() == 4);
    const auto b2 = make_pograph("boolean:2", 2);
    CHECK(b2.poset.size() == 4);
    CHECK(b2.edges.size() == 5);
    const auto w3 = make_pograph("crown:3", 2);
    CHECK(w3.poset.size() == 6);
    CHECK(w3.edges.size() == 6);
    const auto m2 = make_pograph("matching:2", 2);
    CHECK(m2.poset.size() == 4);
    CHECK(m2.edges.size() == 2);
    CHECK(m2.edges[0][0] != m2.edges[1][0]);
    CHECK(m2.edges[0][1] != m2.edges[1][1]);
}

TEST_CASE("catalog edge counts and validity") {
    for (int r = 1; r <= 5; ++r) {
        CHECK(make_pograph("cup:" + std::to_string(r), 2).edges.size() == static_cast<std::size_t>(r));
        CHECK(make_pograph("cap:" + std::to_string(r), 2).edges.size() == static_cast<std::size_t>(r));
        CHECK(make_pograph("diamond:" + std::to_string(r), 2).edges.size() == static_cast<std::size_t>(2 * r));
        CHECK(make_pograph("matching:" + std::to_string(r), 2).edges.size() == static_cast<std::size_t>(r));
        CHECK(make_pograph("chain:" + std::to_string(r), 2).edges.size() == static_cast<std::size_t>(r - 1));
        for (int s = 1; s <= 4; ++s) {
            const auto b = make_pograph("butterfly:" + std::to_string(r) + "x" + std::to_string(s), 2);
            CHECK(b.edges.size() == static_cast<std::size_t>(r * s));
            CHECK(b.valid());
        }
    }
    for (int n = 3; n <= 6; ++n) CHECK(make_pograph("crown:" + std::to_string(n), 2).edges.size() == 2u * n);
    std::uint64_t p3 = 3, p2 = 2;
    for (int n = 1; n <= 5; ++n) {
        CHECK(make_pograph("boolean:" + std::to_string(n), 2).edges.size() == p3 - p2);
        p3 *= 3;
        p2 *= 2;
    }
    for (const char* name : {"chain:4", "boolean:3", "cup:3", "cap:2", "diamond:3", "butterfly:2x3", "matching:3",
                             "crown:4", "crown:1", "crown:2", "chain:3:comparability", "diamond:2:comparability"}) {
        CAPTURE(name);
        for (int k = 1; k <= 2; ++k) CHECK(make_pograph(name, k).valid());
    }
}

TEST_CASE("degenerate crowns normalize to edge sets") {
    const auto w1 = make_pograph("crown:1", 2);
    CHECK(w1.poset.size() == 2);
    CHECK(w1.edges.size() == 1);
    const auto w2 = make_pograph("crown:2", 2);
    const auto bf = make_pograph("butterfly:2x2", 2);
    CHECK(w2.edges.size() == bf.edges.size());
    CHECK(w2.poset.strict_pairs().size() == bf.poset.strict_pairs().size());
}

TEST_CASE("style flags") {
    CHECK(make_pograph("diamond:2:comparability", 2).edges.size() == 5);
    CHECK(make_pograph("chain:4:comparability", 2).edges.size() == 6);
    CHECK(make_pograph("boolean:2:hasse", 2).edges.size() == 4);
    CHECK(CatalogName::parse("butterfly:2x3").to_string() == "butterfly:2x3");
    CHECK(CatalogName::parse("diamond:2").to_string() == "diamond:2");
    CHECK_THROWS_AS(CatalogName::parse("pentagon:3"), ParseError);
    CHECK_THROWS_AS(CatalogName::parse("butterfly:2"), ParseError);
    CHECK_THROWS_AS(make_pograph("diamond:2", 3), DomainError);
    CHECK_THROWS_AS(CatalogName::parse("boolean:0"), ParseError);
}

TEST_CASE("hasse and comparability constructions") {
    const auto b2 = catalog_poset(CatalogName::parse("boolean:2"));
    CHECK(hasse_diagram(b2).edges.size() == 4);
    CHECK(comparability_graph(b2).edges.size() == 5);
    const auto c4 = catalog_poset(CatalogName::parse("chain:4"));
    CHECK(hasse_diagram(c4).edges.size() == 3);
    CHECK(comparability_graph(Poset(3)).edges.empty());
    for (const char* name : {"boolean:3", "diamond:3", "crown:5", "butterfly:3x2", "chain:5"}) {
        const auto p = catalog_poset(CatalogName::parse(name));
        auto covers = naive_covers(p);
        auto got = p.cover_pairs();
        std::sort(covers.begin(), covers.end());
        std::sort(got.begin(), got.end());
        CHECK(got == covers);
        CHECK(hasse_diagram(p).edges.size() == covers.size());
        const auto cg = comparability_graph(p);
        const auto again = comparability_graph(Poset::from_relations(p.size(), p.cover_pairs()));
        CHECK(cg.edges == again.edges);
    }
}

TEST_CASE("demotion and matchings") {
    const auto bf = demote_to_1_uniform(make_pograph("butterfly:2x2", 2));
    CHECK(bf.k == 1);
    CHECK(bf.poset.size() == 4);
    CHECK(bf.edges.size() == 4);
    CHECK(bf.poset.height() == 2);
    const auto c3 = demote_to_1_uniform(make_pograph("chain:3", 2));
    CHECK(c3.poset.height() == 3);
    CHECK(c3.poset.size() == 3);
    const auto m3 = k_uniform_matching(2, 3);
    CHECK(m3.poset.size() == 6);
    CHECK(m3.edges.size() == 3);
    const auto m32 = k_uniform_matching(3, 2);
    CHECK(m32.poset.size() == 6);
    CHECK(m32.edges.size() == 2);
    CHECK(m32.edges[0].size() == 3);
    for (int k = 1; k <= 4; ++k)
        for (int m = 1; m <= 3; ++m) {
            const auto g = k_uniform_matching(k, m);
            CHECK(g.valid());
            CHECK(g.poset.height() == k);
        }
    CHECK(make_pograph("matching:2", 3).edges.size() == 2);
}

TEST_CASE("pograph JSON round trip") {
    for (const char* name : {"diamond:2", "crown:4", "butterfly:2x3", "chain:3"}) {
        const auto g = make_pograph(name, 2);
        const auto back = pograph_from_json(nlohmann::json::parse(to_json(g).dump()));
        CHECK(back.k == g.k);
        CHECK(back.poset == g.poset);
        CHECK(back.edges == g.edges);
    }
    const auto j = nlohmann::json::parse(R"({"k":2,"elements":3,"leq_pairs":[[0,1],[1,2]],"edges":[[0,2]]})");
    const auto g = pograph_from_json(j);
    CHECK(g.poset.less(0, 2));
    CHECK(g.valid());
    CHECK_THROWS_AS(pograph_from_json(nlohmann::json::parse(R"({"k":2,"elements":2,"leq_pairs":[[0,1],[1,0]],"edges":[]})")),
                    ParseError);
    CHECK_THROWS_AS(pograph_from_json(nlohmann::json::parse(R"({"k":2,"elements":2,"leq_pairs":[],"edges":[[0,1]]})")),
                    ParseError);
}
