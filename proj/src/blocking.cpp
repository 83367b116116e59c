#include "flatstats/blocking.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <functional>
#include <map>
#include <stdexcept>

#include "flatstats/transform.hpp"

namespace flatstats {

ProjectivePointSet::ProjectivePointSet(int n_proj, std::vector<Word> points)
    : n_proj_(n_proj), points_(std::move(points)) {
    if (n_proj < 0 || n_proj + 1 > kMaxDim) throw std::invalid_argument("ProjectivePointSet: bad dimension");
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    for (Word p : points_) {
        if (p == 0) throw std::invalid_argument("ProjectivePointSet: 0 is not a projective point");
        if ((p & ~low_mask(n_proj + 1)) != 0) throw std::invalid_argument("ProjectivePointSet: point outside F_2^(n+1)");
    }
}

ProjectivePointSet ProjectivePointSet::all(int n_proj) {
    std::vector<Word> pts;
    for (Word p = 1; p <= low_mask(n_proj + 1); ++p) pts.push_back(p);
    return ProjectivePointSet(n_proj, std::move(pts));
}

ProjectivePointSet ProjectivePointSet::from_bit_vectors(int n_proj, std::span<const BitVector> points) {
    std::vector<Word> pts;
    for (const auto& v : points) {
        if (v.dim() != n_proj + 1) throw std::invalid_argument("ProjectivePointSet: dimension mismatch");
        pts.push_back(v.bits());
    }
    return ProjectivePointSet(n_proj, std::move(pts));
}

bool ProjectivePointSet::contains(Word p) const { return std::binary_search(points_.begin(), points_.end(), p); }

namespace {

bool meets(const LinearSubspace& u, const PointSet& mask) {
    const auto basis = u.basis();
    const Word count = Word{1} << basis.size();
    // Gray-code walk over the nonzero elements.
    Word x = 0;
    for (Word i = 1; i < count; ++i) {
        x ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        if (mask.contains(x)) return true;
    }
    return false;
}

}  // namespace

BlockingResult is_blocking_set(const ProjectivePointSet& b, int k) {
    if (k < 0 || k > b.n_proj()) throw std::invalid_argument("is_blocking_set: need 0 <= k <= n_proj");
    const PointSet mask = PointSet::from_points(b.n_proj() + 1, b.points());
    BlockingResult out;
    out.blocking = true;
    const SubspaceEnumerator e(b.n_proj() + 1, k + 1);
    for (std::uint64_t i = 0; i < e.size(); ++i) {
        const LinearSubspace u = e.at(i);
        if (!meets(u, mask)) {
            out.blocking = false;
            out.witness = u;
            break;
        }
    }
    return out;
}

std::size_t minimum_blocking_set_size(int n_proj, int k) {
    if (n_proj < 0 || n_proj > 3) throw std::invalid_argument("minimum_blocking_set_size: need 0 <= n_proj <= 3");
    if (k < 0 || k > n_proj) throw std::invalid_argument("minimum_blocking_set_size: need 0 <= k <= n_proj");
    const int m = (1 << (n_proj + 1)) - 1;  // number of projective points
    const auto subspaces = enumerate_subspaces(n_proj + 1, k + 1);
    // Each subspace as a mask over projective points (point p -> bit p-1).
    std::vector<std::uint32_t> lines;
    for (const auto& u : subspaces) {
        std::uint32_t mask = 0;
        for (Word x : u.elements()) {
            if (x != 0) mask |= 1u << (x - 1);
        }
        lines.push_back(mask);
    }
    std::size_t best = static_cast<std::size_t>(m);
    for (std::uint32_t set = 0; set < (1u << m); ++set) {
        const auto size = static_cast<std::size_t>(std::popcount(set));
        if (size >= best) continue;
        if (std::all_of(lines.begin(), lines.end(), [&](std::uint32_t l) { return (l & set) != 0; })) best = size;
    }
    return best;
}

namespace {

void check_case_two(const PointSet& s_set, std::uint64_t s) {
    if (s_set.size() != 2 * s) {
        throw std::invalid_argument("bad_directions: |S| = " + std::to_string(s_set.size()) + " but 2s = " +
                                    std::to_string(2 * s) +
                                    "; when |S| != 2s at most one of the two parallel hyperplanes can carry s points");
    }
}

}  // namespace

std::vector<BitVector> bad_directions_by_counting(const PointSet& s_set, std::uint64_t s) {
    check_case_two(s_set, s);
    const int m = s_set.dim();
    const auto pts = s_set.points();
    std::vector<BitVector> out;
    for (Word xi = 1; xi <= low_mask(m); ++xi) {
        std::uint64_t even = 0;
        for (Word x : pts) even += dot_bits(xi, x) == 0 ? 1 : 0;
        if (even != s) out.emplace_back(m, xi);
    }
    return out;
}

std::vector<BitVector> bad_directions(const PointSet& s_set, std::uint64_t s) {
    check_case_two(s_set, s);
    const auto pts = s_set.points();
    std::vector<BitVector> out;
    for (const auto& xi : spectrum_support(ValueTable::indicator(s_set.dim(), pts))) {
        if (!xi.is_zero()) out.push_back(xi);
    }
#ifndef NDEBUG
    assert(out == bad_directions_by_counting(s_set, s));
#endif
    return out;
}

DivisibilityReport check_divisibility(const PointSet& s_set, const LinearSubspace& l) {
    if (l.ambient_dim() != s_set.dim()) throw std::invalid_argument("check_divisibility: dimension mismatch");
    DivisibilityReport r;
    r.t = l.dim();
    const auto pts = s_set.points();
    const ValueTable spectrum = wht(ValueTable::indicator(s_set.dim(), pts));
    r.spectrum_vanishes = true;
    for (Word xi : l.elements()) {
        if (xi != 0 && spectrum[xi] != 0) {
            r.spectrum_vanishes = false;
            r.first_nonvanishing = BitVector(s_set.dim(), xi);
            break;
        }
    }
    const LinearSubspace perp = orthogonal_complement(l);
    std::map<Word, std::uint64_t> counts;
    const Word free = low_mask(s_set.dim()) & ~perp.pivot_mask();
    for (Word r0 = 0; r0 < (Word{1} << r.t); ++r0) counts[deposit_bits(r0, free)] = 0;
    for (Word x : pts) ++counts.at(canonical_rep(perp, x));
    for (const auto& [rep, c] : counts) r.coset_counts.push_back(c);
    r.counts_equal = std::adjacent_find(r.coset_counts.begin(), r.coset_counts.end(), std::not_equal_to<>()) ==
                     r.coset_counts.end();
    if (r.spectrum_vanishes) {
        r.holds = r.counts_equal && (pts.size() % r.coset_counts.size() == 0);
    }
    return r;
}

}  // namespace flatstats
