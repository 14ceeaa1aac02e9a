#include "posr/pograph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "posr/errors.hpp"

namespace posr {

Poset::Poset(std::size_t size) : up_(size, Bitset(size)), down_(size, Bitset(size)) {}

Poset Poset::from_relations(std::size_t size, const std::vector<std::pair<Vertex, Vertex>>& leq_pairs) {
    Poset p(size);
    for (const auto& [a, b] : leq_pairs) {
        if (a >= size || b >= size) throw ParseError("relation references a vertex out of range");
        if (a != b) p.up_[a].set(b);
    }
    // Warshall closure on rows.
    for (std::size_t k = 0; k < size; ++k) {
        for (std::size_t i = 0; i < size; ++i) {
            if (p.up_[i].test(k)) p.up_[i] |= p.up_[k];
        }
    }
    for (std::size_t i = 0; i < size; ++i) {
        if (p.up_[i].test(i)) throw ParseError("relation contains a cycle through vertex " + std::to_string(i));
        for (auto j = p.up_[i].find_first(); j != Bitset::npos; j = p.up_[i].find_next(j)) p.down_[j].set(i);
    }
    return p;
}

Poset Poset::from_host(const HostPoset& host) {
    Poset p(host.size());
    for (ElementId a = 0; a < host.size(); ++a) {
        for (ElementId b = a + 1; b < host.size(); ++b) {
            if (host.leq(a, b)) {
                p.up_[a].set(b);
                p.down_[b].set(a);
            }
        }
    }
    return p;
}

int Poset::height() const {
    const auto order = linear_extension();
    std::vector<int> best(size(), 1);
    int h = size() ? 1 : 0;
    for (auto v : order) {
        for (auto u = down_[v].find_first(); u != Bitset::npos; u = down_[v].find_next(u)) {
            best[v] = std::max(best[v], best[u] + 1);
        }
        h = std::max(h, best[v]);
    }
    return h;
}

std::vector<Vertex> Poset::linear_extension() const {
    std::vector<Vertex> order(size());
    std::iota(order.begin(), order.end(), Vertex{0});
    // Strict-down-set size strictly increases along any strict relation.
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return down_[a].count() < down_[b].count(); });
    return order;
}

std::vector<std::pair<Vertex, Vertex>> Poset::strict_pairs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex a = 0; a < size(); ++a)
        for (auto b = up_[a].find_first(); b != Bitset::npos; b = up_[a].find_next(b))
            out.emplace_back(a, static_cast<Vertex>(b));
    return out;
}

std::vector<std::pair<Vertex, Vertex>> Poset::cover_pairs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex a = 0; a < size(); ++a) {
        for (auto b = up_[a].find_first(); b != Bitset::npos; b = up_[a].find_next(b)) {
            // a < w < b for some w  <=>  up(a) ∩ down(b) nonempty
            if (!up_[a].intersects(down_[b])) out.emplace_back(a, static_cast<Vertex>(b));
        }
    }
    return out;
}

bool Pograph::valid() const {
    if (k < 1) return false;
    for (const auto& e : edges) {
        if (static_cast<int>(e.size()) != k) return false;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] >= poset.size()) return false;
            if (i > 0 && !poset.less(e[i - 1], e[i])) return false;
        }
    }
    return true;
}

void Pograph::normalize() {
    for (auto& e : edges) {
        std::sort(e.begin(), e.end(), [&](Vertex a, Vertex b) {
            if (poset.less(a, b)) return true;
            if (poset.less(b, a)) return false;
            return a < b;
        });
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

namespace {

int parse_param(std::string_view text, std::string_view whole) {
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || value < 1) {
        throw ParseError("bad pograph parameter '" + std::string(text) + "' in '" + std::string(whole) + "'");
    }
    return value;
}

Pograph from_pairs(const Poset& poset, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    Pograph g;
    g.k = 2;
    g.poset = poset;
    for (const auto& [a, b] : pairs) g.edges.push_back({a, b});
    g.normalize();
    return g;
}

} // namespace

std::string CatalogName::to_string() const {
    std::string out;
    switch (kind) {
    case CatalogKind::chain: out = "chain:" + std::to_string(a); break;
    case CatalogKind::boolean: out = "boolean:" + std::to_string(a); break;
    case CatalogKind::cup: out = "cup:" + std::to_string(a); break;
    case CatalogKind::cap: out = "cap:" + std::to_string(a); break;
    case CatalogKind::diamond: out = "diamond:" + std::to_string(a); break;
    case CatalogKind::butterfly: out = "butterfly:" + std::to_string(a) + "x" + std::to_string(b); break;
    case CatalogKind::matching: out = "matching:" + std::to_string(a); break;
    case CatalogKind::crown: out = "crown:" + std::to_string(a); break;
    }
    if (style == EdgeStyle::hasse) out += ":hasse";
    if (style == EdgeStyle::comparability) out += ":comparability";
    return out;
}

CatalogName CatalogName::parse(std::string_view text) {
    CatalogName name;
    auto rest = text;
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw ParseError("pograph name needs a parameter: '" + std::string(text) + "'");
    const auto head = rest.substr(0, colon);
    rest = rest.substr(colon + 1);
    std::string_view param = rest;
    if (const auto second = rest.find(':'); second != std::string_view::npos) {
        param = rest.substr(0, second);
        const auto style = rest.substr(second + 1);
        if (style == "hasse") name.style = EdgeStyle::hasse;
        else if (style == "comparability") name.style = EdgeStyle::comparability;
        else throw ParseError("unknown edge style '" + std::string(style) + "'");
    }
    if (head == "chain") name.kind = CatalogKind::chain;
    else if (head == "boolean") name.kind = CatalogKind::boolean;
    else if (head == "cup") name.kind = CatalogKind::cup;
    else if (head == "cap") name.kind = CatalogKind::cap;
    else if (head == "diamond") name.kind = CatalogKind::diamond;
    else if (head == "butterfly") name.kind = CatalogKind::butterfly;
    else if (head == "matching") name.kind = CatalogKind::matching;
    else if (head == "crown") name.kind = CatalogKind::crown;
    else throw ParseError("unknown pograph '" + std::string(head) + "'");

    if (name.kind == CatalogKind::butterfly) {
        const auto x = param.find('x');
        if (x == std::string_view::npos) throw ParseError("butterfly expects 'RxS', e.g. butterfly:2x3");
        name.a = parse_param(param.substr(0, x), text);
        name.b = parse_param(param.substr(x + 1), text);
    } else {
        name.a = parse_param(param, text);
        if (name.kind == CatalogKind::boolean && name.a > 12) throw SizeLimitError("boolean pattern too large");
    }
    return name;
}

Poset catalog_poset(const CatalogName& name) {
    const auto a = static_cast<Vertex>(name.a);
    const auto b = static_cast<Vertex>(name.b);
    std::vector<std::pair<Vertex, Vertex>> rel;
    std::size_t size = 0;
    switch (name.kind) {
    case CatalogKind::chain:
        size = a;
        for (Vertex i = 0; i + 1 < a; ++i) rel.emplace_back(i, i + 1);
        break;
    case CatalogKind::boolean:
        size = std::size_t{1} << a;
        for (Vertex x = 0; x < size; ++x)
            for (Vertex y = 0; y < size; ++y)
                if (x != y && (x & ~y) == 0) rel.emplace_back(x, y);
        break;
    case CatalogKind::cup:  // x = 0, y_i = 1..r
        size = a + 1;
        for (Vertex i = 1; i <= a; ++i) rel.emplace_back(0, i);
        break;
    case CatalogKind::cap:  // x_i = 0..r-1, y = r
        size = a + 1;
        for (Vertex i = 0; i < a; ++i) rel.emplace_back(i, a);
        break;
    case CatalogKind::diamond:  // x = 0, y_i = 1..r, z = r+1
        size = a + 2;
        for (Vertex i = 1; i <= a; ++i) {
            rel.emplace_back(0, i);
            rel.emplace_back(i, a + 1);
        }
        break;
    case CatalogKind::butterfly:  // bottoms 0..r-1, tops r..r+s-1
        size = a + b;
        for (Vertex i = 0; i < a; ++i)
            for (Vertex j = 0; j < b; ++j) rel.emplace_back(i, a + j);
        break;
    case CatalogKind::matching:  // x_i = i, y_i = n+i
        size = 2 * a;
        for (Vertex i = 0; i < a; ++i) rel.emplace_back(i, a + i);
        break;
    case CatalogKind::crown:  // x_i ≤ y_i, x_i ≤ y_{i+1 mod n}
        size = 2 * a;
        for (Vertex i = 0; i < a; ++i) {
            rel.emplace_back(i, a + i);
            rel.emplace_back(i, a + (i + 1) % a);
        }
        break;
    }
    return Poset::from_relations(size, rel);
}

Pograph make(const CatalogName& name) {
    const auto poset = catalog_poset(name);
    bool hasse = name.kind == CatalogKind::chain || name.kind == CatalogKind::diamond;
    if (name.style == EdgeStyle::hasse) hasse = true;
    if (name.style == EdgeStyle::comparability) hasse = false;
    auto g = hasse ? hasse_diagram(poset) : comparability_graph(poset);
    g.name = name.to_string();
    return g;
}

Pograph make_pograph(std::string_view text, int k) {
    const auto name = CatalogName::parse(text);
    if (k == 1) {
        auto g = demote_to_1_uniform(make(name));
        g.name = name.to_string();
        return g;
    }
    if (k == 2) return make(name);
    if (k >= 3 && name.kind == CatalogKind::matching) return k_uniform_matching(k, name.a);
    throw DomainError("only matchings have a catalog form for k >= 3 (got '" + std::string(text) + "', k=" +
                      std::to_string(k) + ")");
}

Pograph comparability_graph(const Poset& poset) {
    return from_pairs(poset, poset.strict_pairs());
}

Pograph hasse_diagram(const Poset& poset) {
    return from_pairs(poset, poset.cover_pairs());
}

Pograph demote_to_1_uniform(const Pograph& g) {
    Pograph out;
    out.k = 1;
    out.poset = g.poset;
    out.name = g.name;
    for (Vertex v = 0; v < g.poset.size(); ++v) out.edges.push_back({v});
    return out;
}

Pograph k_uniform_matching(int k, int m) {
    if (k < 1 || m < 1) throw DomainError("k_uniform_matching needs k >= 1 and m >= 1");
    const auto uk = static_cast<Vertex>(k);
    const auto um = static_cast<Vertex>(m);
    std::vector<std::pair<Vertex, Vertex>> rel;
    for (Vertex c = 0; c < um; ++c)
        for (Vertex i = 0; i + 1 < uk; ++i) rel.emplace_back(c * uk + i, c * uk + i + 1);
    Pograph g;
    g.k = k;
    g.poset = Poset::from_relations(static_cast<std::size_t>(uk * um), rel);
    for (Vertex c = 0; c < um; ++c) {
        std::vector<Vertex> edge;
        for (Vertex i = 0; i < uk; ++i) edge.push_back(c * uk + i);
        g.edges.push_back(std::move(edge));
    }
    g.name = k == 2 ? "matching:" + std::to_string(m) : "matching:" + std::to_string(m) + "@k" + std::to_string(k);
    return g;
}

nlohmann::ordered_json to_json(const Pograph& g) {
    nlohmann::ordered_json j;
    j["k"] = g.k;
    j["elements"] = g.poset.size();
    auto& pairs = j["leq_pairs"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : g.poset.cover_pairs()) pairs.push_back({a, b});
    auto& edges = j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : g.edges) edges.push_back(e);
    if (!g.name.empty()) j["name"] = g.name;
    return j;
}

Pograph pograph_from_json(const nlohmann::json& j) {
    try {
        Pograph g;
        g.k = j.at("k").get<int>();
        const auto count = j.at("elements").get<std::size_t>();
        std::vector<std::pair<Vertex, Vertex>> rel;
        for (const auto& p : j.at("leq_pairs")) rel.emplace_back(p.at(0).get<Vertex>(), p.at(1).get<Vertex>());
        g.poset = Poset::from_relations(count, rel);
        for (const auto& e : j.at("edges")) g.edges.push_back(e.get<std::vector<Vertex>>());
        if (j.contains("name")) g.name = j["name"].get<std::string>();
        g.normalize();
        if (!g.valid()) throw ParseError("pograph edges are not k-chains of the given order");
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed pograph JSON: ") + e.what());
    }
}

} // namespace posr
