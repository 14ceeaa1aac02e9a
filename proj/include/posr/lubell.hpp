#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "posr/pograph.hpp"

namespace posr {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Subset of B_n; members are subset bitmasks, sorted and distinct.
struct Family {
    int n = 0;
    std::vector<std::uint64_t> members;

    static Family from_members(int n, std::vector<std::uint64_t> members);
    static Family whole(int n);
    static Family level(int n, int size);
    bool contains(std::uint64_t set) const;
};

/// A_0 ⊂ A_1 ⊂ ... ⊂ A_n with |A_i| = i, stored as bitmasks.
struct FullChain {
    std::vector<std::uint64_t> sets;

    /// The chain adding elements in the order given (0-based element ids).
    static FullChain from_permutation(const std::vector<int>& order);
    int n() const { return static_cast<int>(sets.size()) - 1; }
};

Integer binomial(int n, int k);

Rational lubell(const Family& family);
/// Average of |F ∩ chain| over all n! full chains. Throws SizeLimitError for n > 8.
Rational lubell_via_chains(const Family& family);

/// Union of the intervals [A_i, A_{i+m}], i = 0..n−m. Throws DomainError unless 1 ≤ m ≤ n.
Family interval_chain(const FullChain& chain, int m);
/// (n − m + 2)·2^{m−1}
std::uint64_t interval_chain_size(int n, int m);

/// Exact m-interval Lubell value, averaged over all n! full chains (n ≤ 8).
Rational interval_lubell(const Family& family, int m);

struct SampledValue {
    double mean = 0;
    std::uint64_t trials = 0;
};
/// Monte Carlo estimate over `trials` uniformly random full chains.
SampledValue interval_lubell_sampled(const Family& family, int m, std::uint64_t seed, std::uint64_t trials);

/// max lu_n(F) over P-free F ⊆ B_n (n ≤ 4). `workers` > 1 splits the family
/// scan across OpenMP threads; the result does not depend on it.
Rational exact_L(const Pograph& pattern, int n, int workers = 1);
/// As exact_L with ∅ and [n] excluded from the candidate families.
Rational exact_Lprime(const Pograph& pattern, int n, int workers = 1);

/// Levels ⌈(n−m)/2⌉ .. ⌈(n−m)/2⌉+m−1 of B_n, clamped to 0..n.
Family middle_levels(int n, int m);
/// Largest m such that the middle m levels of B_n are P-free for every
/// n ≤ n_max (n_max ≤ 10). An upper estimate of e(P).
int e_estimate(const Pograph& pattern, int n_max);

/// Values quoted from the literature.
namespace known {
inline constexpr int L_butterfly = 3;
inline constexpr int Lprime_butterfly = 2;
inline constexpr int e_butterfly = 2;
inline int e_chain(int k) { return k - 1; }
/// m = ⌈lg(r + 2)⌉
int e_diamond(int r);
/// Upper bound on L_n(⋄_r) valid for all n: m on the lower range of r,
/// m + 1 − (2^m − r − 1)/C(m, ⌊m/2⌋) on the upper range, with m = ⌈lg(r + 2)⌉.
Rational L_diamond_upper(int r);
} // namespace known

nlohmann::ordered_json to_json(const Family& family);
Family family_from_json(const nlohmann::json& j);

} // namespace posr
