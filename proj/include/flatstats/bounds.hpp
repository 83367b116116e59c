#pragma once

// Closed-form constants and bounds for lambda*(d,s), all exact rationals.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatstats/exact.hpp"

namespace flatstats {

/// 2-adic valuation; s >= 1.
int nu2(long long s);

/// prod_{i=1}^{d-1} (1 - (2^i - 1)/(2^d - 1)): nonsingularity probability of a
/// d x d matrix with independent nonzero columns.
Rational c_d(int d);

/// prod_{i=0}^{d-k-1} (1 - 2^(i-d)).
Rational c_dk(int d, int k);

/// 2^((d-k)(n-d)) q_binomial(n-d+k, k) / q_binomial(n, d): probability that a
/// uniform U in Gr(n,d) meets the kernel of a fixed surjection onto
/// F_2^(d-k) in exactly k dimensions.
Rational c_n_dk(int n, int d, int k);

/// 1 - (2^(d-k) - 1)/(2^(d+1) - 1), valid for every n >= d + 1; 0 <= k < d.
Rational upper_flat_even(int d, int k);

struct BootstrapValue {
    Rational partial;          // (1/2) sum_{m<M} prod_{i<m} c_i
    Rational certified_upper;  // partial + 2^-M
};

/// Truncated bootstrap series with c_i = 1/2 - (2^(d-k) - 1)/(2^(d+i+1) - 1).
BootstrapValue bootstrap_upper(int d, int k, int terms = 64);

/// 1 - q_binomial(n-1,d)/q_binomial(n,d); 1 < d <= n.
Rational upper_half_level(int n, int d);

/// 1/2 + 1/(2(2^(n-d+1) - 1)); 1 <= d < n.
Rational odd_upper(int n, int d);

struct OnePointRatios {
    std::optional<Rational> down;  // (s/(s-1))^(s-1), 2 <= s <= 2^d
    std::optional<Rational> up;    // ((2^d-s)/(2^d-s-1))^(2^d-s-1), 0 <= s <= 2^d - 2
};
OnePointRatios one_point_ratios(int d, long long s);

/// Rational strictly above e, used wherever a lower bound divides by e.
Rational e_upper();

/// (1 - 2^-k)/e for the largest k over the even neighbours s -/+ 1 of s_neighbor
/// (with 1 < neighbour < 2^d). Throws when no neighbour qualifies.
Rational corollary_lower(int d, long long s_neighbor);

/// 2^(n_proj - k + 1) - 1.
Integer bose_burton_min(int n_proj, int k);

struct BoundEntry {
    std::string name;
    std::string source;  // which statement the value comes from
    std::string scope;   // "limit" (lambda*(d,s)) or "finite_n" (lambda*(n,d,s))
    Rational value;
};

struct BoundReport {
    int d = 0;
    long long s = 0;
    int k = 0;          // nu2(s), 0 for s = 0
    long long j = 0;    // s / 2^k
    std::optional<int> n;
    int bootstrap_terms = 64;
    std::vector<BoundEntry> lower;
    std::vector<BoundEntry> upper;
    std::vector<std::pair<std::string, Rational>> constants;
    Rational best_lower;
    Rational best_upper;
    std::optional<Rational> finite_best_lower;
    std::optional<Rational> finite_best_upper;
    bool exact = false;
};

/// Every applicable bound for (d, s), plus finite-n bounds when n is given.
/// 0 <= s <= 2^d; throws std::logic_error if best_lower > best_upper.
BoundReport summary(int d, long long s, std::optional<int> n = std::nullopt, int bootstrap_terms = 64);

}  // namespace flatstats
