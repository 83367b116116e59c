#pragma once

// Exact intersection profiles of a point set against all d-flats or all
// axis-aligned d-subcubes.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flatstats/exact.hpp"
#include "flatstats/gf2.hpp"
#include "flatstats/point_set.hpp"

namespace flatstats {

enum class Family { flats, subcubes };

std::string to_string(Family f);

struct IntersectionProfile {
    int n = 0;
    int d = 0;
    Family family = Family::flats;
    std::vector<Integer> counts;  // counts[s] = #members meeting A in exactly s points
    Integer total = 0;

    /// counts[s] / total in lowest terms. Throws if s is outside [0, 2^d].
    Rational fraction(int s) const;
    /// Sum of counts[s] over odd s, divided by total.
    Rational odd_fraction() const;
    int max_intersection() const { return 1 << d; }

    friend bool operator==(const IntersectionProfile&, const IntersectionProfile&) = default;
};

struct StatsOptions {
    unsigned threads = 0;  // 0 = available parallelism
    /// Fast-path cap on |Gr(n,d)| * 2^n * (d + 1) table updates.
    double max_work = 1e11;
    /// Brute-force cap on the number of flats visited.
    std::uint64_t max_bruteforce_flats = 20'000'000;
};

/// Fast path: per subspace U, fold the indicator of A along U's basis and
/// histogram the values at the 2^(n-d) pivot-free coset representatives.
IntersectionProfile flat_profile(const PointSet& a, int d, const StatsOptions& opts = {});

/// Independent oracle: visits every flat and counts its points in A.
IntersectionProfile flat_profile_bruteforce(const PointSet& a, int d, const StatsOptions& opts = {});

Rational lambda_star(const PointSet& a, int d, int s, const StatsOptions& opts = {});

/// All C(n,d) 2^(n-d) axis-aligned subcubes: d free coordinates, the rest fixed.
IntersectionProfile cube_profile(const PointSet& a, int d, const StatsOptions& opts = {});

/// Fraction of d-flats meeting A in an odd number of points; requires 1 <= d < n.
Rational odd_fraction(const PointSet& a, int d, const StatsOptions& opts = {});

/// Every member of a family for n <= 6 as a 64-bit point mask, so a profile is
/// one popcount per member. Used by the exhaustive and annealing searches.
class MemberMasks {
public:
    static MemberMasks flats(int n, int d);
    static MemberMasks subcubes(int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    Family family() const { return family_; }
    std::span<const std::uint64_t> masks() const { return masks_; }

    /// hist must have 2^d + 1 entries; it is overwritten.
    void histogram(std::uint64_t a, std::span<std::uint32_t> hist) const;
    /// Number of members meeting `a` in exactly s points.
    std::uint32_t count_exact(std::uint64_t a, int s) const;
    IntersectionProfile profile(std::uint64_t a) const;

private:
    int n_ = 0;
    int d_ = 0;
    Family family_ = Family::flats;
    std::vector<std::uint64_t> masks_;
};

}  // namespace flatstats
