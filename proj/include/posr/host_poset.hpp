#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <nlohmann/json.hpp>

namespace posr {

/// Canonical element index inside a host. Indices are contiguous and their
/// numeric order is a linear extension of the host order.
using ElementId = std::uint32_t;
using Bitset = boost::dynamic_bitset<std::uint64_t>;

enum class FamilyKind { chain, boolean, grid_length, grid_dim, butterfly, explicit_relation };

/// A nested poset family P_1 ⊆ P_2 ⊆ ... . `param` is the side length ℓ for
/// grid_length ([ℓ]^n) and the dimension m for grid_dim ([n]^m).
struct HostFamily {
    FamilyKind kind = FamilyKind::boolean;
    int param = 0;

    static HostFamily chain() { return {FamilyKind::chain, 0}; }
    static HostFamily boolean() { return {FamilyKind::boolean, 0}; }
    static HostFamily grid_length(int side) { return {FamilyKind::grid_length, side}; }
    static HostFamily grid_dim(int dims) { return {FamilyKind::grid_dim, dims}; }
    static HostFamily butterfly() { return {FamilyKind::butterfly, 0}; }

    /// "chain", "boolean", "grid-length:3", "grid-dim:2", "butterfly", "explicit".
    std::string name() const;
    static HostFamily parse(std::string_view text);

    bool operator==(const HostFamily&) const = default;
};

/// Family plus size parameter; textual form "boolean:3", "grid-length:3:2"
/// (ℓ=3, n=2), "grid-dim:2:4" (m=2, n=4).
struct HostDescriptor {
    HostFamily family;
    int n = 0;

    std::string to_string() const;
    static HostDescriptor parse(std::string_view text);

    bool operator==(const HostDescriptor&) const = default;
};

inline constexpr std::size_t kDefaultHostCap = std::size_t{1} << 20;
/// Hosts up to this size carry precomputed strict up/down bitsets.
inline constexpr std::size_t kRelationBitsetLimit = 4096;

/// Element count of P_n, or nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> family_size(HostFamily family, int n);
/// Height of P_n by closed form; nullopt for the explicit family.
std::optional<std::uint64_t> family_height(HostFamily family, int n);

/// Immutable finite poset drawn from a host family.
class HostPoset {
public:
    /// Throws SizeLimitError when |P_n| > cap, DomainError on bad parameters.
    static HostPoset build(HostFamily family, int n, std::size_t cap = kDefaultHostCap);
    static HostPoset build(const HostDescriptor& desc, std::size_t cap = kDefaultHostCap) {
        return build(desc.family, desc.n, cap);
    }
    /// Escape hatch: a poset given by `count` elements and generating relations
    /// a ≤ b (reflexive/transitive closure is taken). Elements are re-indexed
    /// by rank so the canonical-order invariant holds; `code()` returns the
    /// caller's original label.
    static HostPoset from_relation(std::size_t count,
                                   std::span<const std::pair<std::uint32_t, std::uint32_t>> leq_pairs);

    const HostFamily& family() const { return family_; }
    int n() const { return n_; }
    HostDescriptor descriptor() const { return {family_, n_}; }
    std::size_t size() const { return codes_.size(); }

    /// Family-specific encoding: subset bitmask (boolean), position (chain),
    /// mixed-radix coordinates with coordinate 0 least significant (grids),
    /// bottom 0..n-1 / top n..2n-1 (butterfly), original label (explicit).
    std::uint64_t code(ElementId e) const { return codes_[e]; }
    std::optional<ElementId> find(std::uint64_t code) const;
    int rank(ElementId e) const { return ranks_[e]; }

    bool leq(ElementId a, ElementId b) const;
    bool less(ElementId a, ElementId b) const { return a != b && leq(a, b); }

    bool has_relation_bitsets() const { return !strict_up_.empty() || size() == 0; }
    /// Elements strictly above / below `e`. Requires has_relation_bitsets().
    const Bitset& strict_up(ElementId e) const;
    const Bitset& strict_down(ElementId e) const;

    std::vector<ElementId> down_set(ElementId x) const;
    std::vector<ElementId> up_set(ElementId x) const;
    int height() const;
    /// Identity permutation: canonical indices already form a linear extension.
    std::vector<ElementId> linear_extension() const;

    /// Grid coordinates (0-based); boolean masks expand to 0/1 coordinates.
    std::vector<int> coordinates(ElementId e) const;
    /// Human readable label: "{1,3}" for subsets, "(0,2)" for grids, "b0"/"t1" for butterflies.
    std::string label(ElementId e) const;

private:
    HostPoset() = default;
    void finish();

    HostFamily family_{};
    int n_ = 0;
    int digits_ = 0;  // number of coordinates for grid families
    int radix_ = 0;   // coordinate range for grid families
    std::vector<std::uint64_t> codes_;
    std::vector<int> ranks_;
    std::vector<ElementId> index_of_code_;
    std::vector<Bitset> strict_up_;
    std::vector<Bitset> strict_down_;
    int height_ = 0;
};

/// Longest chain by dynamic programming over the canonical order.
int longest_chain(const HostPoset& host);

/// min N ≥ 1 with |P_N| ≥ n. Throws DomainError when the family never reaches n.
int family_s(HostFamily family, std::uint64_t n);
/// min N ≥ 1 with h(P_N) ≥ n. Throws DomainError for bounded-height families.
int family_h(HostFamily family, std::uint64_t n);

/// Image of each element of `smaller` (= P_n) inside `larger` (= P_{n+1}) under
/// the family's natural inclusion.
std::vector<ElementId> nesting_map(const HostPoset& smaller, const HostPoset& larger);

nlohmann::ordered_json to_json(const HostPoset& host);

} // namespace posr
