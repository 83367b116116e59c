#pragma once

// Blocking sets in PG(n,2), bad hyperplane directions of a point set in
// F_2^(d+1), and the coset-divisibility check.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flatstats/gf2.hpp"
#include "flatstats/grassmann.hpp"
#include "flatstats/point_set.hpp"

namespace flatstats {

/// Points of PG(n_proj, 2), i.e. nonzero vectors of F_2^(n_proj+1).
class ProjectivePointSet {
public:
    ProjectivePointSet() = default;
    ProjectivePointSet(int n_proj, std::vector<Word> points);
    static ProjectivePointSet all(int n_proj);
    static ProjectivePointSet from_bit_vectors(int n_proj, std::span<const BitVector> points);

    int n_proj() const { return n_proj_; }
    std::size_t size() const { return points_.size(); }
    std::span<const Word> points() const { return points_; }
    bool contains(Word p) const;

private:
    int n_proj_ = 0;
    std::vector<Word> points_;  // sorted, distinct, nonzero
};

struct BlockingResult {
    bool blocking = false;
    /// First projective k-subspace in canonical order that misses B.
    std::optional<LinearSubspace> witness;
};

BlockingResult is_blocking_set(const ProjectivePointSet& b, int k);

/// Smallest blocking set w.r.t. projective k-subspaces, by trying every
/// subset of PG(n_proj, 2) in order of size. n_proj <= 3.
std::size_t minimum_blocking_set_size(int n_proj, int k);

/// {xi != 0 : |S cap H_{xi,0}| != s} via hyperplane counts. Requires |S| = 2s.
std::vector<BitVector> bad_directions_by_counting(const PointSet& s_set, std::uint64_t s);
/// Same set via the nonzero support of the Walsh-Hadamard transform of 1_S.
std::vector<BitVector> bad_directions(const PointSet& s_set, std::uint64_t s);

struct DivisibilityReport {
    int t = 0;
    bool spectrum_vanishes = false;               // 1_S^ is zero on L \ {0}
    std::optional<BitVector> first_nonvanishing;  // smallest xi in L \ {0} with 1_S^(xi) != 0
    std::vector<std::uint64_t> coset_counts;      // |S cap (a + L^perp)| per coset, canonical-rep order
    bool counts_equal = false;
    /// False only if the spectrum vanishes but the coset counts differ.
    bool holds = true;
};

DivisibilityReport check_divisibility(const PointSet& s_set, const LinearSubspace& l);

}  // namespace flatstats
