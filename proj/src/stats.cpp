#include "flatstats/stats.hpp"

#include <bit>
#include <stdexcept>

#include "flatstats/errors.hpp"
#include "flatstats/grassmann.hpp"
#include "flatstats/parallel.hpp"
#include "flatstats/transform.hpp"

namespace flatstats {

std::string to_string(Family f) { return f == Family::flats ? "flats" : "subcubes"; }

Rational IntersectionProfile::fraction(int s) const {
    if (s < 0 || s > max_intersection()) {
        throw std::out_of_range("intersection size " + std::to_string(s) + " outside [0, " +
                                std::to_string(max_intersection()) + "]");
    }
    return Rational(counts[static_cast<std::size_t>(s)], total);
}

Rational IntersectionProfile::odd_fraction() const {
    Integer odd = 0;
    for (std::size_t s = 1; s < counts.size(); s += 2) odd += counts[s];
    return Rational(odd, total);
}

namespace {

void check_profile_dims(const PointSet& a, int d, const char* what) {
    if (d < 1 || d > a.dim()) {
        throw std::invalid_argument(std::string(what) + ": need 1 <= d <= n, got n=" + std::to_string(a.dim()) +
                                    " d=" + std::to_string(d));
    }
}

std::vector<std::uint32_t> indicator_table(const PointSet& a) {
    std::vector<std::uint32_t> t(a.universe(), 0);
    for (Word p : a.points()) t[p] = 1;
    return t;
}

IntersectionProfile merge(int n, int d, Family family, const std::vector<std::vector<std::uint64_t>>& parts) {
    IntersectionProfile prof;
    prof.n = n;
    prof.d = d;
    prof.family = family;
    prof.counts.assign((std::size_t{1} << d) + 1, Integer(0));
    for (const auto& h : parts) {
        for (std::size_t s = 0; s < h.size(); ++s) prof.counts[s] += h[s];
    }
    for (const auto& c : prof.counts) prof.total += c;
    return prof;
}

std::uint64_t binomial(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

}  // namespace

IntersectionProfile flat_profile(const PointSet& a, int d, const StatsOptions& opts) {
    check_profile_dims(a, d, "flat_profile");
    const int n = a.dim();
    const Integer work = q_binomial(n, d) * pow2(static_cast<unsigned>(n)) * (d + 1);
    if (work > Integer(static_cast<std::uint64_t>(opts.max_work))) {
        throw ResourceLimitError("flat_profile: n=" + std::to_string(n) + " d=" + std::to_string(d) +
                                 " needs " + work.str() + " table updates, cap is " +
                                 std::to_string(static_cast<std::uint64_t>(opts.max_work)));
    }
    const SubspaceEnumerator gr(n, d);
    const std::vector<std::uint32_t> base = indicator_table(a);
    const std::uint64_t cosets = std::uint64_t{1} << (n - d);
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(opts.threads), gr.size()));
    std::vector<std::vector<std::uint64_t>> parts(workers, std::vector<std::uint64_t>((std::size_t{1} << d) + 1, 0));

    parallel_chunks(gr.size(), workers, [&](IndexRange range, unsigned w) {
        std::vector<std::uint32_t> scratch(base.size());
        auto& hist = parts[w];
        gr.for_each(range, [&](const LinearSubspace& u, std::uint64_t) {
            scratch = base;
            for (Word b : u.basis()) fold_sum(std::span<std::uint32_t>(scratch), b);
            const Word free = low_mask(n) & ~u.pivot_mask();
            for (std::uint64_t r = 0; r < cosets; ++r) {
                ++hist[scratch[deposit_bits(static_cast<Word>(r), free)]];
            }
        });
    });
    return merge(n, d, Family::flats, parts);
}

IntersectionProfile flat_profile_bruteforce(const PointSet& a, int d, const StatsOptions& opts) {
    check_profile_dims(a, d, "flat_profile_bruteforce");
    const int n = a.dim();
    if (flat_count(n, d) > Integer(opts.max_bruteforce_flats)) {
        throw ResourceLimitError("flat_profile_bruteforce: " + flat_count(n, d).str() +
                                 " flats exceed the brute-force cap; use flat_profile");
    }
    std::vector<std::vector<std::uint64_t>> parts(1, std::vector<std::uint64_t>((std::size_t{1} << d) + 1, 0));
    for_each_flat(n, d, [&](const Flat& f, std::uint64_t) {
        std::size_t hits = 0;
        for (Word p : flat_point_words(f)) hits += a.contains(p) ? 1 : 0;
        ++parts[0][hits];
    });
    return merge(n, d, Family::flats, parts);
}

Rational lambda_star(const PointSet& a, int d, int s, const StatsOptions& opts) {
    if (d >= 1 && (s < 0 || s > (1 << d))) {
        throw std::out_of_range("lambda_star: s=" + std::to_string(s) + " outside [0, 2^d]");
    }
    return flat_profile(a, d, opts).fraction(s);
}

IntersectionProfile cube_profile(const PointSet& a, int d, const StatsOptions& opts) {
    check_profile_dims(a, d, "cube_profile");
    const int n = a.dim();
    const std::uint64_t subsets = binomial(n, d);
    std::vector<Word> coordinate_sets;
    coordinate_sets.reserve(subsets);
    for (Word m = 0; m < (Word{1} << n); ++m) {
        if (std::popcount(m) == d) coordinate_sets.push_back(m);
    }
    const std::vector<std::uint32_t> base = indicator_table(a);
    const std::uint64_t anchors = std::uint64_t{1} << (n - d);
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(opts.threads), subsets));
    std::vector<std::vector<std::uint64_t>> parts(workers, std::vector<std::uint64_t>((std::size_t{1} << d) + 1, 0));
    parallel_chunks(subsets, workers, [&](IndexRange range, unsigned w) {
        std::vector<std::uint32_t> scratch(base.size());
        for (std::uint64_t i = range.begin; i < range.end; ++i) {
            const Word free = coordinate_sets[i];
            scratch = base;
            for (Word m = free; m != 0; m &= m - 1) fold_sum(std::span<std::uint32_t>(scratch), m & (~m + 1));
            const Word fixed = low_mask(n) & ~free;
            for (std::uint64_t r = 0; r < anchors; ++r) {
                ++parts[w][scratch[deposit_bits(static_cast<Word>(r), fixed)]];
            }
        }
    });
    return merge(n, d, Family::subcubes, parts);
}

Rational odd_fraction(const PointSet& a, int d, const StatsOptions& opts) {
    if (d < 1 || d >= a.dim()) {
        throw std::invalid_argument("odd_fraction: need 1 <= d < n, got n=" + std::to_string(a.dim()) +
                                    " d=" + std::to_string(d));
    }
    return flat_profile(a, d, opts).odd_fraction();
}

MemberMasks MemberMasks::flats(int n, int d) {
    if (n < 1 || n > 6 || d < 1 || d > n) throw std::invalid_argument("MemberMasks::flats: need 1 <= d <= n <= 6");
    MemberMasks m;
    m.n_ = n;
    m.d_ = d;
    m.family_ = Family::flats;
    for_each_flat(n, d, [&](const Flat& f, std::uint64_t) {
        std::uint64_t mask = 0;
        for (Word p : flat_point_words(f)) mask |= std::uint64_t{1} << p;
        m.masks_.push_back(mask);
    });
    return m;
}

MemberMasks MemberMasks::subcubes(int n, int d) {
    if (n < 1 || n > 6 || d < 1 || d > n) throw std::invalid_argument("MemberMasks::subcubes: need 1 <= d <= n <= 6");
    MemberMasks m;
    m.n_ = n;
    m.d_ = d;
    m.family_ = Family::subcubes;
    for (Word free = 0; free < (Word{1} << n); ++free) {
        if (std::popcount(free) != d) continue;
        const Word fixed = low_mask(n) & ~free;
        for (Word r = 0; r < (Word{1} << (n - d)); ++r) {
            const Word anchor = deposit_bits(r, fixed);
            std::uint64_t mask = 0;
            for (Word u = 0; u < (Word{1} << d); ++u) mask |= std::uint64_t{1} << (anchor | deposit_bits(u, free));
            m.masks_.push_back(mask);
        }
    }
    return m;
}

void MemberMasks::histogram(std::uint64_t a, std::span<std::uint32_t> hist) const {
    std::fill(hist.begin(), hist.end(), 0);
    for (std::uint64_t m : masks_) ++hist[static_cast<std::size_t>(std::popcount(m & a))];
}

std::uint32_t MemberMasks::count_exact(std::uint64_t a, int s) const {
    std::uint32_t c = 0;
    for (std::uint64_t m : masks_) c += std::popcount(m & a) == s ? 1u : 0u;
    return c;
}

IntersectionProfile MemberMasks::profile(std::uint64_t a) const {
    std::vector<std::uint32_t> hist((std::size_t{1} << d_) + 1);
    histogram(a, hist);
    std::vector<std::vector<std::uint64_t>> parts(1, std::vector<std::uint64_t>(hist.begin(), hist.end()));
    return merge(n_, d_, family_, parts);
}

}  // namespace flatstats
