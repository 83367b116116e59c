#pragma once

// Canonical linear subspaces, affine flats, and their deterministic
// enumeration over F_2^n.
//
// A subspace is identified by its reduced row-echelon basis: row i has its
// pivot (lowest set bit) at column p_i, p_0 < p_1 < ..., and every other row
// is zero at p_i. Enumeration walks pivot sets in lexicographic order and,
// within a pivot set, the free entries as a binary counter. Every subspace
// therefore has a stable 64-bit ordinal, which is what chunked workers use.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "flatstats/gf2.hpp"

namespace flatstats {

class LinearSubspace {
public:
    LinearSubspace() = default;

    /// Canonical form of span(vectors) inside F_2^n.
    static LinearSubspace span(int n, std::span<const Word> vectors);
    static LinearSubspace full(int n);
    static LinearSubspace zero(int n);

    int ambient_dim() const { return n_; }
    int dim() const { return d_; }
    std::span<const Word> basis() const { return {basis_.data(), static_cast<std::size_t>(d_)}; }
    Word pivot_mask() const { return pivots_; }
    std::vector<int> pivots() const;

    bool contains(Word x) const;
    /// All 2^d elements, sorted ascending.
    std::vector<Word> elements() const;

    friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
        return a.n_ == b.n_ && a.d_ == b.d_ && std::equal(a.basis().begin(), a.basis().end(), b.basis().begin());
    }

private:
    friend class SubspaceEnumerator;
    int n_ = 0;
    int d_ = 0;
    Word pivots_ = 0;
    std::array<Word, kMaxDim> basis_{};
};

/// U^perp = {x : <x,u> = 0 for all u in U}, canonical.
LinearSubspace orthogonal_complement(const LinearSubspace& u);

/// The coset representative of x + U with zeros in every pivot column.
Word canonical_rep(const LinearSubspace& u, Word x);
BitVector canonical_rep(const LinearSubspace& u, const BitVector& x);

struct Flat {
    LinearSubspace subspace;
    Word rep = 0;

    int dim() const { return subspace.dim(); }
    friend bool operator==(const Flat&, const Flat&) = default;
};

Flat make_flat(const LinearSubspace& u, Word x);

/// The 2^d points of F, sorted by integer encoding.
std::vector<BitVector> flat_points(const Flat& f);
/// Same as flat_points, as raw words.
std::vector<Word> flat_point_words(const Flat& f);

/// Scatters the low bits of `value` into the set bits of `mask`, lowest first.
Word deposit_bits(Word value, Word mask);
/// Inverse of deposit_bits on values supported in `mask`.
Word extract_bits(Word value, Word mask);

/// Half-open range of enumeration ordinals.
struct IndexRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
    std::uint64_t size() const { return end - begin; }
};

/// Splits [0, total) into `parts` contiguous ranges of near-equal size.
std::vector<IndexRange> split_range(std::uint64_t total, std::uint64_t parts);

/// Random-access enumeration of Gr(n,d). Total must fit in 63 bits.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(int n, int d);

    int ambient_dim() const { return n_; }
    int dim() const { return d_; }
    std::uint64_t size() const { return total_; }

    LinearSubspace at(std::uint64_t index) const;
    /// Calls fn(subspace, ordinal) for each ordinal in range, in order.
    void for_each(IndexRange range, const std::function<void(const LinearSubspace&, std::uint64_t)>& fn) const;
    void for_each(const std::function<void(const LinearSubspace&, std::uint64_t)>& fn) const {
        for_each({0, total_}, fn);
    }
    /// Ordinal of a canonical subspace (inverse of at()).
    std::uint64_t index_of(const LinearSubspace& u) const;

private:
    struct PivotSet {
        std::array<std::uint8_t, kMaxDim> cols{};
        std::array<Word, kMaxDim> free_masks{};  // free columns of each row
        int free_bits = 0;
        std::uint64_t offset = 0;
    };
    void fill(const PivotSet& ps, std::uint64_t counter, LinearSubspace& out) const;

    int n_ = 0;
    int d_ = 0;
    std::uint64_t total_ = 0;
    std::vector<PivotSet> pivot_sets_;
};

/// Materialized canonical enumeration of Gr(n,d).
std::vector<LinearSubspace> enumerate_subspaces(int n, int d);

/// Calls fn(flat, ordinal) for every d-flat; ordinal = subspace ordinal *
/// 2^(n-d) + index of the representative among pivot-free words.
void for_each_flat(int n, int d, const std::function<void(const Flat&, std::uint64_t)>& fn);
std::vector<Flat> enumerate_flats(int n, int d);

/// Projective k-subspaces of PG(n_proj, 2), i.e. Gr(n_proj + 1, k + 1).
std::vector<LinearSubspace> enumerate_projective_subspaces(int n_proj, int k);

}  // namespace flatstats
