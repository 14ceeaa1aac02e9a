#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "posr/host_poset.hpp"
#include "posr/lubell.hpp"

namespace posr {

/// A bracket on a Ramsey number. When `exact` is set, lower and upper are too.
struct BoundResult {
    std::optional<std::int64_t> lower;
    std::optional<std::int64_t> upper;
    std::optional<std::int64_t> exact;
    std::string source;

    static BoundResult exactly(std::int64_t value, std::string source);
    static BoundResult between(std::optional<std::int64_t> lower, std::optional<std::int64_t> upper,
                               std::string source);
    /// lower ≤ value ≤ upper for whichever ends are present.
    bool contains(std::int64_t value) const;
    bool consistent() const;
};

nlohmann::ordered_json to_json(const BoundResult& b);

// Exact integer helpers.
std::uint64_t isqrt(std::uint64_t x);
/// Least N ≥ 0 with 2^N ≥ x (x ≥ 1).
int ceil_lg(std::uint64_t x);
/// Least N ≥ 0 with p^N ≥ x·q^N, i.e. ⌈log_{p/q} x⌉ for p > q ≥ 1, x ≥ 1.
int ceil_log_ratio(std::uint64_t p, std::uint64_t q, std::uint64_t x);
/// Least N ≥ 0 with N^m ≥ scale^m · x, i.e. ⌈scale·x^{1/m}⌉.
std::int64_t ceil_scaled_root(std::uint64_t x, int m, std::uint64_t scale = 1);

// One-uniform Boolean bounds.
/// max{M, Σe_i} ≤ BR¹ ≤ Σ(|P_i| − 1)
BoundResult br1_general(const std::vector<int>& sizes, const std::vector<int>& e_values, int M);
/// BR¹(B_{n1}, C_{n2}, ..., C_{nt}) = n1 + Σ(n_i − 1)
BoundResult br1_boolchain(int n1, const std::vector<int>& chain_sizes);
/// Σ L_i < n + 1, which forces BR¹ ≤ n.
bool br1_lubell_condition(const std::vector<Rational>& L_values, int n);
BoundResult br1_ulbounded(const std::vector<int>& e_values);
/// BR¹_t(⋈) = 2t + 1
BoundResult br1_butterfly(int t);
BoundResult br1_diamond(int t, int r);
/// ⌊(3H/2 + 1)(lg(S/H) + 1)⌋ with S = Σ(|P_i| − 1), H = Σ(h(P_i) − 1).
BoundResult br1_mlubell(const std::vector<int>& sizes, const std::vector<int>& heights);
BoundResult br1_mlubell_boolean(int d, int t);
/// The coarser 2d²t form of the boolean preset.
BoundResult br1_boolean_quadratic(int d, int t);
/// (bottoms, tops) per color.
BoundResult br1_mlubell_butterflies(const std::vector<std::pair<int, int>>& shapes);
/// One entry per cup or cap, its number of leaves.
BoundResult br1_mlubell_cupcaps(const std::vector<int>& leaves);
BoundResult br1_mlubell_diamonds(const std::vector<int>& middles);
/// Upper bounds for BR¹(B_r, B_s), r ≥ s ≥ 1, with lower bound r + s.
BoundResult br1_axenovich_walzer(int r, int s);

// Two-uniform chain and Boolean bounds.
/// CR²(∨_r, ∧_s) = ⌊(√(1 + 8(r−1)(s−1)) − 1)/2⌋ + r + s, r, s ≥ 2.
BoundResult cr2_cupcap(int r, int s);
/// (R, S) with R = 1 + Σ(r_i − 1), S = 1 + Σ(s_i − 1).
std::pair<int, int> multicupcap_reduce(const std::vector<int>& cups, const std::vector<int>& caps);
/// ⌈lg CR²(∨_r, ∧_s)⌉ ≤ BR² ≤ ⌈log_{3/2}(r + s − 1)⌉
BoundResult br2_cupcap(int r, int s);
/// BR²(∨_{r1}, ..., ∨_{rt}) = ⌈lg(2 + Σ(r_i − 1))⌉ (also for all caps).
BoundResult br2_samecup(const std::vector<int>& leaves);
/// k-uniform matchings of sizes m_i.
BoundResult br2_matching(int k, std::vector<int> sizes);
/// BR²(⋄_s, ∨_r) ≤ ⌈log_{3/2}(2r + s − 1)⌉
BoundResult br2_diamondcup(int s, int r);

struct DiamondBounds {
    std::int64_t cr_upper = 0;          // chain host, both diamonds
    std::int64_t cr_lower = 0;          // 2·max(r, s) + 3
    std::int64_t br_cup_upper = 0;      // BR²(⋄_s, ∨_r) upper
    std::int64_t br_upper = 0;          // 2⌈log_{3/2}(2r + 2s − 1)⌉
    std::int64_t br_upper_refined = 0;  // BR²(⋄_s, ∨_{s+r−1}) upper + ⌈lg(2s + 2r)⌉
    std::int64_t br_lower = 0;          // ⌈lg(2·max(r, s) + 3)⌉
};
DiamondBounds diamond_bounds(int r, int s);
/// BR²(⋄_s, ⋄_r) bracket assembled from diamond_bounds.
BoundResult br2_diamonds(int s, int r);
BoundResult cr2_diamonds(int s, int r);

/// ⌈lg CR⌉ ≤ BR ≤ CR − 1
BoundResult chain_vs_boolean(std::int64_t cr_value);
/// BR = CR − 1 for totally ordered pographs.
BoundResult totally_ordered_equalities(std::int64_t cr_value);

enum class GridShape { cupcap, diamondcup, diamonddiamond };
/// Grid host families: grid_length(ℓ) grows the dimension, grid_dim(m) grows
/// the side. cupcap(r, s) brackets PR²(∨_r, ∧_s); diamondcup(r, s) and
/// diamonddiamond(r, s) give upper bounds for PR²(⋄_s, ∨_r) and PR²(⋄_s, ⋄_r).
BoundResult grid_bounds(HostFamily family, GridShape shape, int r, int s);
/// Rooted bipartite host: PR²(∧_s, ∨_r) = s + r − 1.
BoundResult rooted_bipartite_cupcap(int s, int r);
/// s_P(CR) ≤ PR ≤ h_P(CR) for a host family with unbounded height.
BoundResult generic_family_bounds(HostFamily family, std::int64_t cr_value);

} // namespace posr
