#include "posr/host_poset.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>

#include "posr/errors.hpp"

namespace posr {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

int parse_int(std::string_view text, std::string_view context) {
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError("expected an integer in '" + std::string(context) + "', got '" + std::string(text) + "'");
    }
    return value;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, int exp) {
    std::uint64_t result = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
        result *= base;
    }
    return result;
}

// Least e ≥ 0 with base^e ≥ n.
int ceil_log(std::uint64_t base, std::uint64_t n) {
    int e = 0;
    std::uint64_t power = 1;
    while (power < n) {
        if (power > UINT64_MAX / base) return e + 1;
        power *= base;
        ++e;
    }
    return e;
}

} // namespace

std::string HostFamily::name() const {
    switch (kind) {
    case FamilyKind::chain: return "chain";
    case FamilyKind::boolean: return "boolean";
    case FamilyKind::grid_length: return "grid-length:" + std::to_string(param);
    case FamilyKind::grid_dim: return "grid-dim:" + std::to_string(param);
    case FamilyKind::butterfly: return "butterfly";
    case FamilyKind::explicit_relation: return "explicit";
    }
    return "?";
}

HostFamily HostFamily::parse(std::string_view text) {
    const auto parts = split(text, ':');
    const auto head = parts.front();
    if (parts.size() == 1) {
        if (head == "chain") return chain();
        if (head == "boolean") return boolean();
        if (head == "butterfly") return butterfly();
        if (head == "explicit") return {FamilyKind::explicit_relation, 0};
    } else if (parts.size() == 2) {
        if (head == "grid-length") return grid_length(parse_int(parts[1], text));
        if (head == "grid-dim") return grid_dim(parse_int(parts[1], text));
    }
    throw ParseError("unknown host family '" + std::string(text) + "'");
}

std::string HostDescriptor::to_string() const {
    return family.name() + ":" + std::to_string(n);
}

HostDescriptor HostDescriptor::parse(std::string_view text) {
    const auto pos = text.rfind(':');
    if (pos == std::string_view::npos) {
        throw ParseError("host descriptor needs a size, e.g. 'boolean:3' (got '" + std::string(text) + "')");
    }
    return {HostFamily::parse(text.substr(0, pos)), parse_int(text.substr(pos + 1), text)};
}

std::optional<std::uint64_t> family_size(HostFamily family, int n) {
    if (n < 0) return std::nullopt;
    switch (family.kind) {
    case FamilyKind::chain: return static_cast<std::uint64_t>(n);
    case FamilyKind::boolean: return checked_pow(2, n);
    case FamilyKind::grid_length: return checked_pow(static_cast<std::uint64_t>(family.param), n);
    case FamilyKind::grid_dim: return checked_pow(static_cast<std::uint64_t>(n), family.param);
    case FamilyKind::butterfly: return 2 * static_cast<std::uint64_t>(n);
    case FamilyKind::explicit_relation: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> family_height(HostFamily family, int n) {
    if (n < 0) return std::nullopt;
    const auto un = static_cast<std::uint64_t>(n);
    switch (family.kind) {
    case FamilyKind::chain: return un;
    case FamilyKind::boolean: return un + 1;
    case FamilyKind::grid_length:
        return un * static_cast<std::uint64_t>(std::max(family.param - 1, 0)) + 1;
    case FamilyKind::grid_dim:
        if (n == 0) return 0;
        return static_cast<std::uint64_t>(family.param) * (un - 1) + 1;
    case FamilyKind::butterfly: return n == 0 ? 0 : 2;
    case FamilyKind::explicit_relation: return std::nullopt;
    }
    return std::nullopt;
}

HostPoset HostPoset::build(HostFamily family, int n, std::size_t cap) {
    const int min_n = family.kind == FamilyKind::boolean ? 0 : 1;
    if (n < min_n) {
        throw DomainError("host size parameter must be >= " + std::to_string(min_n) + " for " + family.name());
    }
    if ((family.kind == FamilyKind::grid_length || family.kind == FamilyKind::grid_dim) && family.param < 1) {
        throw DomainError("grid parameter must be >= 1");
    }
    if (family.kind == FamilyKind::explicit_relation) {
        throw DomainError("explicit hosts are built with HostPoset::from_relation");
    }
    const auto count = family_size(family, n);
    if (!count || *count > cap) {
        throw SizeLimitError("host " + HostDescriptor{family, n}.to_string() + " exceeds the element cap of " +
                             std::to_string(cap));
    }

    HostPoset host;
    host.family_ = family;
    host.n_ = n;
    const auto size = static_cast<std::size_t>(*count);
    std::vector<std::pair<int, std::uint64_t>> keyed;  // (rank, code)
    keyed.reserve(size);

    switch (family.kind) {
    case FamilyKind::chain:
        for (std::uint64_t c = 0; c < size; ++c) keyed.emplace_back(static_cast<int>(c), c);
        break;
    case FamilyKind::boolean:
        host.digits_ = n;
        host.radix_ = 2;
        for (std::uint64_t c = 0; c < size; ++c) keyed.emplace_back(std::popcount(c), c);
        break;
    case FamilyKind::grid_length:
    case FamilyKind::grid_dim: {
        host.digits_ = family.kind == FamilyKind::grid_length ? n : family.param;
        host.radix_ = family.kind == FamilyKind::grid_length ? family.param : n;
        for (std::uint64_t c = 0; c < size; ++c) {
            int rank = 0;
            std::uint64_t rest = c;
            for (int d = 0; d < host.digits_; ++d) {
                rank += static_cast<int>(rest % static_cast<std::uint64_t>(host.radix_));
                rest /= static_cast<std::uint64_t>(host.radix_);
            }
            keyed.emplace_back(rank, c);
        }
        break;
    }
    case FamilyKind::butterfly:
        for (std::uint64_t c = 0; c < size; ++c) keyed.emplace_back(c < static_cast<std::uint64_t>(n) ? 0 : 1, c);
        break;
    case FamilyKind::explicit_relation: break;
    }

    std::sort(keyed.begin(), keyed.end());
    host.codes_.reserve(size);
    host.ranks_.reserve(size);
    host.index_of_code_.assign(size, 0);
    for (std::size_t i = 0; i < size; ++i) {
        host.ranks_.push_back(keyed[i].first);
        host.codes_.push_back(keyed[i].second);
        host.index_of_code_[keyed[i].second] = static_cast<ElementId>(i);
    }
    host.finish();
    return host;
}

HostPoset HostPoset::from_relation(std::size_t count,
                                   std::span<const std::pair<std::uint32_t, std::uint32_t>> leq_pairs) {
    if (count > kRelationBitsetLimit) {
        throw SizeLimitError("explicit hosts are limited to " + std::to_string(kRelationBitsetLimit) + " elements");
    }
    // Transitive closure over the caller's labels.
    std::vector<Bitset> up(count, Bitset(count));
    for (std::size_t i = 0; i < count; ++i) up[i].set(i);
    for (const auto& [a, b] : leq_pairs) {
        if (a >= count || b >= count) throw ParseError("relation references an element out of range");
        up[a].set(b);
    }
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t i = 0; i < count; ++i) {
            if (up[i].test(k)) up[i] |= up[k];
        }
    }
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = a + 1; b < count; ++b) {
            if (up[a].test(b) && up[b].test(a)) {
                throw ParseError("relation is not antisymmetric: " + std::to_string(a) + " and " + std::to_string(b));
            }
        }
    }
    // Rank = length of the longest chain ending at the element, minus one.
    std::vector<int> rank(count, -1);
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    // Sorting by number of strict predecessors gives a topological order.
    std::vector<std::size_t> below(count, 0);
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b)
            if (a != b && up[a].test(b)) ++below[b];
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return below[x] < below[y]; });
    for (auto b : order) {
        int r = 0;
        for (std::size_t a = 0; a < count; ++a)
            if (a != b && up[a].test(b)) r = std::max(r, rank[a] + 1);
        rank[b] = r;
    }
    std::vector<std::pair<int, std::uint64_t>> keyed;
    for (std::size_t i = 0; i < count; ++i) keyed.emplace_back(rank[i], i);
    std::sort(keyed.begin(), keyed.end());

    HostPoset host;
    host.family_ = {FamilyKind::explicit_relation, 0};
    host.n_ = static_cast<int>(count);
    host.index_of_code_.assign(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        host.ranks_.push_back(keyed[i].first);
        host.codes_.push_back(keyed[i].second);
        host.index_of_code_[keyed[i].second] = static_cast<ElementId>(i);
    }
    host.strict_up_.assign(count, Bitset(count));
    host.strict_down_.assign(count, Bitset(count));
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            if (i != j && up[host.codes_[i]].test(host.codes_[j])) {
                host.strict_up_[i].set(j);
                host.strict_down_[j].set(i);
            }
        }
    }
    host.height_ = longest_chain(host);
    return host;
}

void HostPoset::finish() {
    const auto size = codes_.size();
    if (size <= kRelationBitsetLimit) {
        strict_up_.assign(size, Bitset(size));
        strict_down_.assign(size, Bitset(size));
        for (ElementId a = 0; a < size; ++a) {
            for (ElementId b = a + 1; b < size; ++b) {
                if (leq(a, b)) {
                    strict_up_[a].set(b);
                    strict_down_[b].set(a);
                }
            }
        }
    }
    const auto h = family_height(family_, n_);
    height_ = static_cast<int>(*h);
}

std::optional<ElementId> HostPoset::find(std::uint64_t code) const {
    if (code >= index_of_code_.size()) return std::nullopt;
    return index_of_code_[code];
}

bool HostPoset::leq(ElementId a, ElementId b) const {
    if (a == b) return true;
    const auto ca = codes_[a];
    const auto cb = codes_[b];
    switch (family_.kind) {
    case FamilyKind::chain: return ca <= cb;
    case FamilyKind::boolean: return (ca & ~cb) == 0;
    case FamilyKind::grid_length:
    case FamilyKind::grid_dim: {
        auto x = ca;
        auto y = cb;
        const auto radix = static_cast<std::uint64_t>(radix_);
        for (int d = 0; d < digits_; ++d) {
            if (x % radix > y % radix) return false;
            x /= radix;
            y /= radix;
        }
        return true;
    }
    case FamilyKind::butterfly: {
        const auto half = static_cast<std::uint64_t>(n_);
        return ca < half && cb >= half;
    }
    case FamilyKind::explicit_relation: return strict_up_[a].test(b);
    }
    return false;
}

const Bitset& HostPoset::strict_up(ElementId e) const {
    if (strict_up_.empty()) throw SizeLimitError("host too large for relation bitsets");
    return strict_up_[e];
}

const Bitset& HostPoset::strict_down(ElementId e) const {
    if (strict_down_.empty()) throw SizeLimitError("host too large for relation bitsets");
    return strict_down_[e];
}

std::vector<ElementId> HostPoset::down_set(ElementId x) const {
    std::vector<ElementId> out;
    for (ElementId y = 0; y <= x; ++y)
        if (leq(y, x)) out.push_back(y);
    return out;
}

std::vector<ElementId> HostPoset::up_set(ElementId x) const {
    std::vector<ElementId> out;
    for (auto y = x; y < size(); ++y)
        if (leq(x, y)) out.push_back(y);
    return out;
}

int HostPoset::height() const { return height_; }

std::vector<ElementId> HostPoset::linear_extension() const {
    std::vector<ElementId> order(size());
    std::iota(order.begin(), order.end(), ElementId{0});
    return order;
}

std::vector<int> HostPoset::coordinates(ElementId e) const {
    std::vector<int> coords;
    if (digits_ == 0) {
        coords.push_back(static_cast<int>(codes_[e]));
        return coords;
    }
    auto rest = codes_[e];
    for (int d = 0; d < digits_; ++d) {
        coords.push_back(static_cast<int>(rest % static_cast<std::uint64_t>(radix_)));
        rest /= static_cast<std::uint64_t>(radix_);
    }
    return coords;
}

std::string HostPoset::label(ElementId e) const {
    const auto c = codes_[e];
    switch (family_.kind) {
    case FamilyKind::boolean: {
        std::string out = "{";
        bool first = true;
        for (int i = 0; i < n_; ++i) {
            if ((c >> i) & 1U) {
                if (!first) out += ',';
                out += std::to_string(i + 1);
                first = false;
            }
        }
        return out + "}";
    }
    case FamilyKind::grid_length:
    case FamilyKind::grid_dim: {
        std::string out = "(";
        const auto coords = coordinates(e);
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(coords[i]);
        }
        return out + ")";
    }
    case FamilyKind::butterfly:
        return c < static_cast<std::uint64_t>(n_) ? "b" + std::to_string(c) : "t" + std::to_string(c - n_);
    default: return std::to_string(c);
    }
}

int longest_chain(const HostPoset& host) {
    // Canonical order is a linear extension, so one forward pass suffices.
    std::vector<int> best(host.size(), 1);
    int height = host.size() ? 1 : 0;
    for (ElementId b = 0; b < host.size(); ++b) {
        for (ElementId a = 0; a < b; ++a) {
            if (host.leq(a, b)) best[b] = std::max(best[b], best[a] + 1);
        }
        height = std::max(height, best[b]);
    }
    return height;
}

int family_s(HostFamily family, std::uint64_t n) {
    if (n == 0) throw DomainError("family_s needs n >= 1");
    switch (family.kind) {
    case FamilyKind::chain: return static_cast<int>(n);
    case FamilyKind::boolean: return std::max(1, ceil_log(2, n));
    case FamilyKind::grid_length:
        if (family.param <= 1) {
            if (n == 1) return 1;
            throw DomainError("grid-length:1 never exceeds one element");
        }
        return std::max(1, ceil_log(static_cast<std::uint64_t>(family.param), n));
    case FamilyKind::grid_dim: {
        // least N with N^m ≥ n
        int lo = 1;
        while (true) {
            const auto size = checked_pow(static_cast<std::uint64_t>(lo), family.param);
            if (!size || *size >= n) return lo;
            ++lo;
        }
    }
    case FamilyKind::butterfly: return static_cast<int>((n + 1) / 2);
    case FamilyKind::explicit_relation: break;
    }
    throw DomainError("family_s undefined for " + family.name());
}

int family_h(HostFamily family, std::uint64_t n) {
    if (n == 0) throw DomainError("family_h needs n >= 1");
    switch (family.kind) {
    case FamilyKind::chain: return static_cast<int>(n);
    case FamilyKind::boolean: return static_cast<int>(std::max<std::uint64_t>(1, n - 1));
    case FamilyKind::grid_length: {
        if (n == 1) return 1;
        if (family.param <= 1) throw DomainError("grid-length:1 has unbounded-height failure: height is always 1");
        const auto step = static_cast<std::uint64_t>(family.param - 1);
        return static_cast<int>(std::max<std::uint64_t>(1, (n - 1 + step - 1) / step));
    }
    case FamilyKind::grid_dim: {
        if (n == 1) return 1;
        const auto m = static_cast<std::uint64_t>(family.param);
        return static_cast<int>(1 + (n - 1 + m - 1) / m);
    }
    case FamilyKind::butterfly:
        if (n <= 2) return 1;
        throw DomainError("unbounded height: the butterfly family has height 2 for every N");
    case FamilyKind::explicit_relation: break;
    }
    throw DomainError("family_h undefined for " + family.name());
}

std::vector<ElementId> nesting_map(const HostPoset& smaller, const HostPoset& larger) {
    if (smaller.family() != larger.family() || smaller.n() > larger.n()) {
        throw DomainError("nesting_map needs hosts of one family with smaller.n <= larger.n");
    }
    std::vector<ElementId> map(smaller.size());
    for (ElementId e = 0; e < smaller.size(); ++e) {
        std::uint64_t code = 0;
        switch (smaller.family().kind) {
        case FamilyKind::chain:
        case FamilyKind::boolean:
        case FamilyKind::grid_length:
            // Extra coordinates are appended in the most significant position.
            code = smaller.code(e);
            break;
        case FamilyKind::grid_dim: {
            const auto coords = smaller.coordinates(e);
            std::uint64_t scale = 1;
            for (int c : coords) {
                code += static_cast<std::uint64_t>(c) * scale;
                scale *= static_cast<std::uint64_t>(larger.n());
            }
            break;
        }
        case FamilyKind::butterfly: {
            const auto c = smaller.code(e);
            const auto half = static_cast<std::uint64_t>(smaller.n());
            code = c < half ? c : c - half + static_cast<std::uint64_t>(larger.n());
            break;
        }
        case FamilyKind::explicit_relation: throw DomainError("explicit hosts have no nesting");
        }
        map[e] = *larger.find(code);
    }
    return map;
}

nlohmann::ordered_json to_json(const HostPoset& host) {
    nlohmann::ordered_json j;
    j["family"] = host.family().name();
    j["n"] = host.n();
    auto& elements = j["elements"] = nlohmann::ordered_json::array();
    for (ElementId e = 0; e < host.size(); ++e) elements.push_back(host.code(e));
    return j;
}

} // namespace posr
