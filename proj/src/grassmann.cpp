#include "flatstats/grassmann.hpp"

#include <stdexcept>
#include <string>

namespace flatstats {

LinearSubspace LinearSubspace::span(int n, std::span<const Word> vectors) {
    BitMatrix m(n);
    for (Word v : vectors) m.push_row(v);
    const RrefResult r = rref(m);
    LinearSubspace u;
    u.n_ = n;
    u.d_ = r.rank;
    for (int i = 0; i < r.rank; ++i) {
        u.basis_[static_cast<std::size_t>(i)] = r.reduced.row(i);
        u.pivots_ |= Word{1} << r.pivots[static_cast<std::size_t>(i)];
    }
    return u;
}

LinearSubspace LinearSubspace::full(int n) {
    std::vector<Word> e;
    for (int i = 0; i < n; ++i) e.push_back(Word{1} << i);
    return span(n, e);
}

LinearSubspace LinearSubspace::zero(int n) { return span(n, {}); }

std::vector<int> LinearSubspace::pivots() const {
    std::vector<int> out;
    for (Word b : basis()) out.push_back(std::countr_zero(b));
    return out;
}

bool LinearSubspace::contains(Word x) const {
    if ((x & ~low_mask(n_)) != 0) return false;
    return canonical_rep(*this, x) == 0;
}

std::vector<Word> LinearSubspace::elements() const {
    std::vector<Word> out;
    out.reserve(std::size_t{1} << d_);
    for (Word c = 0; c < (Word{1} << d_); ++c) {
        Word x = 0;
        for (int i = 0; i < d_; ++i) {
            if ((c >> i) & 1u) x ^= basis_[static_cast<std::size_t>(i)];
        }
        out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

LinearSubspace orthogonal_complement(const LinearSubspace& u) {
    BitMatrix m(u.ambient_dim());
    for (Word b : u.basis()) m.push_row(b);
    std::vector<Word> ker;
    for (const BitVector& v : kernel_basis(m)) ker.push_back(v.bits());
    return LinearSubspace::span(u.ambient_dim(), ker);
}

Word canonical_rep(const LinearSubspace& u, Word x) {
    // Rows are zero at every other row's pivot, so one pass clears all pivots.
    for (Word b : u.basis()) {
        if (x & (Word{1} << std::countr_zero(b))) x ^= b;
    }
    return x;
}

BitVector canonical_rep(const LinearSubspace& u, const BitVector& x) {
    if (x.dim() != u.ambient_dim()) throw std::invalid_argument("canonical_rep: dimension mismatch");
    return BitVector(x.dim(), canonical_rep(u, x.bits()));
}

Flat make_flat(const LinearSubspace& u, Word x) { return Flat{u, canonical_rep(u, x)}; }

std::vector<Word> flat_point_words(const Flat& f) {
    std::vector<Word> pts = f.subspace.elements();
    for (Word& p : pts) p ^= f.rep;
    std::sort(pts.begin(), pts.end());
    return pts;
}

std::vector<BitVector> flat_points(const Flat& f) {
    std::vector<BitVector> out;
    for (Word p : flat_point_words(f)) out.emplace_back(f.subspace.ambient_dim(), p);
    return out;
}

Word deposit_bits(Word value, Word mask) {
    Word out = 0;
    for (Word m = mask; m != 0; m &= m - 1) {
        if (value & 1u) out |= m & (~m + 1);
        value >>= 1;
    }
    return out;
}

Word extract_bits(Word value, Word mask) {
    Word out = 0;
    int k = 0;
    for (Word m = mask; m != 0; m &= m - 1, ++k) {
        if (value & m & (~m + 1)) out |= Word{1} << k;
    }
    return out;
}

std::vector<IndexRange> split_range(std::uint64_t total, std::uint64_t parts) {
    if (parts == 0) parts = 1;
    std::vector<IndexRange> out;
    const std::uint64_t base = total / parts, extra = total % parts;
    std::uint64_t at = 0;
    for (std::uint64_t i = 0; i < parts; ++i) {
        const std::uint64_t len = base + (i < extra ? 1 : 0);
        out.push_back({at, at + len});
        at += len;
    }
    return out;
}

SubspaceEnumerator::SubspaceEnumerator(int n, int d) : n_(n), d_(d) {
    check_dimension(n, "SubspaceEnumerator");
    if (d < 0 || d > n) {
        throw std::invalid_argument("SubspaceEnumerator: need 0 <= d <= n, got n=" + std::to_string(n) +
                                    " d=" + std::to_string(d));
    }
    if (q_binomial(n, d) > pow2(62)) {
        throw std::invalid_argument("SubspaceEnumerator: Gr(" + std::to_string(n) + "," + std::to_string(d) +
                                    ") too large to index");
    }
    std::array<int, kMaxDim> cols{};
    for (int i = 0; i < d; ++i) cols[static_cast<std::size_t>(i)] = i;
    std::uint64_t offset = 0;
    while (true) {
        PivotSet ps;
        Word pivot_mask = 0;
        for (int i = 0; i < d; ++i) pivot_mask |= Word{1} << cols[static_cast<std::size_t>(i)];
        for (int i = 0; i < d; ++i) {
            const int p = cols[static_cast<std::size_t>(i)];
            ps.cols[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(p);
            const Word above = low_mask(n) & ~low_mask(p + 1);
            ps.free_masks[static_cast<std::size_t>(i)] = above & ~pivot_mask;
            ps.free_bits += std::popcount(ps.free_masks[static_cast<std::size_t>(i)]);
        }
        ps.offset = offset;
        offset += std::uint64_t{1} << ps.free_bits;
        pivot_sets_.push_back(ps);

        // Next combination in lexicographic order.
        int i = d - 1;
        while (i >= 0 && cols[static_cast<std::size_t>(i)] == n - d + i) --i;
        if (i < 0) break;
        ++cols[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < d; ++j) cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j - 1)] + 1;
    }
    total_ = offset;
}

void SubspaceEnumerator::fill(const PivotSet& ps, std::uint64_t counter, LinearSubspace& out) const {
    out.n_ = n_;
    out.d_ = d_;
    out.pivots_ = 0;
    for (int i = 0; i < d_; ++i) {
        const Word fm = ps.free_masks[static_cast<std::size_t>(i)];
        const int width = std::popcount(fm);
        const Word slice = static_cast<Word>(counter & ((std::uint64_t{1} << width) - 1));
        counter >>= width;
        const Word pivot = Word{1} << ps.cols[static_cast<std::size_t>(i)];
        out.basis_[static_cast<std::size_t>(i)] = pivot | deposit_bits(slice, fm);
        out.pivots_ |= pivot;
    }
}

LinearSubspace SubspaceEnumerator::at(std::uint64_t index) const {
    if (index >= total_) throw std::out_of_range("SubspaceEnumerator::at: index out of range");
    auto it = std::upper_bound(pivot_sets_.begin(), pivot_sets_.end(), index,
                               [](std::uint64_t v, const PivotSet& ps) { return v < ps.offset; });
    --it;
    LinearSubspace u;
    fill(*it, index - it->offset, u);
    return u;
}

void SubspaceEnumerator::for_each(IndexRange range,
                                  const std::function<void(const LinearSubspace&, std::uint64_t)>& fn) const {
    if (range.end > total_ || range.begin > range.end) {
        throw std::out_of_range("SubspaceEnumerator::for_each: bad range");
    }
    if (range.begin == range.end) return;
    auto it = std::upper_bound(pivot_sets_.begin(), pivot_sets_.end(), range.begin,
                               [](std::uint64_t v, const PivotSet& ps) { return v < ps.offset; });
    --it;
    LinearSubspace u;
    std::uint64_t index = range.begin;
    for (; it != pivot_sets_.end() && index < range.end; ++it) {
        const std::uint64_t count = std::uint64_t{1} << it->free_bits;
        for (std::uint64_t c = index - it->offset; c < count && index < range.end; ++c, ++index) {
            fill(*it, c, u);
            fn(u, index);
        }
    }
}

std::uint64_t SubspaceEnumerator::index_of(const LinearSubspace& u) const {
    if (u.ambient_dim() != n_ || u.dim() != d_) throw std::invalid_argument("index_of: dimension mismatch");
    std::array<std::uint8_t, kMaxDim> cols{};
    for (int i = 0; i < d_; ++i) {
        cols[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(std::countr_zero(u.basis()[static_cast<std::size_t>(i)]));
    }
    auto it = std::lower_bound(pivot_sets_.begin(), pivot_sets_.end(), cols,
                               [this](const PivotSet& ps, const std::array<std::uint8_t, kMaxDim>& key) {
                                   return std::lexicographical_compare(ps.cols.begin(), ps.cols.begin() + d_,
                                                                       key.begin(), key.begin() + d_);
                               });
    if (it == pivot_sets_.end() || !std::equal(it->cols.begin(), it->cols.begin() + d_, cols.begin())) {
        throw std::invalid_argument("index_of: subspace is not canonical");
    }
    std::uint64_t counter = 0;
    int shift = 0;
    for (int i = 0; i < d_; ++i) {
        const Word fm = it->free_masks[static_cast<std::size_t>(i)];
        counter |= std::uint64_t{extract_bits(u.basis()[static_cast<std::size_t>(i)], fm)} << shift;
        shift += std::popcount(fm);
    }
    return it->offset + counter;
}

std::vector<LinearSubspace> enumerate_subspaces(int n, int d) {
    SubspaceEnumerator e(n, d);
    std::vector<LinearSubspace> out;
    out.reserve(e.size());
    e.for_each([&](const LinearSubspace& u, std::uint64_t) { out.push_back(u); });
    return out;
}

void for_each_flat(int n, int d, const std::function<void(const Flat&, std::uint64_t)>& fn) {
    SubspaceEnumerator e(n, d);
    const std::uint64_t cosets = std::uint64_t{1} << (n - d);
    e.for_each([&](const LinearSubspace& u, std::uint64_t ui) {
        const Word free = low_mask(n) & ~u.pivot_mask();
        Flat f{u, 0};
        for (std::uint64_t r = 0; r < cosets; ++r) {
            f.rep = deposit_bits(static_cast<Word>(r), free);
            fn(f, ui * cosets + r);
        }
    });
}

std::vector<Flat> enumerate_flats(int n, int d) {
    std::vector<Flat> out;
    for_each_flat(n, d, [&](const Flat& f, std::uint64_t) { out.push_back(f); });
    return out;
}

std::vector<LinearSubspace> enumerate_projective_subspaces(int n_proj, int k) {
    if (n_proj < 0 || k < 0 || k > n_proj) {
        throw std::invalid_argument("enumerate_projective_subspaces: need 0 <= k <= n_proj");
    }
    return enumerate_subspaces(n_proj + 1, k + 1);
}

}  // namespace flatstats
