#include <doctest.h>

#include <cmath>

#include "flatstats/bounds.hpp"
#include "flatstats/gf2.hpp"
#include "flatstats/grassmann.hpp"
#include "support/oracles.hpp"

using namespace flatstats;

namespace {

// Fraction of U in Gr(n,d) with dim(U cap ker B) = k, B = projection onto the
// first d-k coordinates.
Rational census(int n, int d, int k) {
    const auto subs = oracle::subspaces(n, d);
    const Word low = low_mask(d - k);
    std::uint64_t hits = 0;
    for (const auto& u : subs) {
        std::size_t in_kernel = 0;
        for (Word p : u) in_kernel += (p & low) == 0 ? 1 : 0;
        if (in_kernel == (std::size_t{1} << k)) ++hits;
    }
    return Rational(hits, subs.size());
}

}  // namespace

TEST_CASE("nu2") {
    CHECK(nu2(12) == 2);
    CHECK(nu2(1) == 0);
    CHECK(nu2(1024) == 10);
    CHECK_THROWS_AS(nu2(0), std::invalid_argument);
    CHECK_THROWS_AS(nu2(-4), std::invalid_argument);
}

TEST_CASE("c_d and c(d,k)") {
    CHECK(c_d(1) == 1);
    CHECK(c_d(2) == Rational(2, 3));
    CHECK(c_d(10) > Rational(288, 1000));
    CHECK(c_d(10) < Rational(295, 1000));
    CHECK_THROWS_AS(c_d(0), std::invalid_argument);
    CHECK(c_dk(3, 1) == Rational(21, 32));
    for (int d = 0; d <= 20; ++d) {
        CHECK(c_dk(d, d) == 1);
        for (int k = 0; k < d; ++k) {
            const Rational union_bound = 1 - Rational(pow2(static_cast<unsigned>(d - k)) - 1, pow2(static_cast<unsigned>(d)));
            // One factor (d - k = 1) meets the union bound exactly.
            if (d - k == 1) CHECK(c_dk(d, k) == union_bound);
            else CHECK(c_dk(d, k) > union_bound);
        }
    }
    CHECK_THROWS_AS(c_dk(3, 4), std::invalid_argument);
}

TEST_CASE("c_n(d,k) equals the rank census") {
    CHECK(c_n_dk(4, 3, 1) == Rational(4, 5));
    CHECK(census(4, 3, 1) == Rational(4, 5));
    for (int n = 1; n <= 5; ++n) {
        for (int d = 0; d <= n; ++d) {
            for (int k = 0; k <= d; ++k) CHECK(c_n_dk(n, d, k) == census(n, d, k));
        }
    }
    for (int n = 1; n <= 12; ++n) {
        for (int d = 0; d <= n; ++d) CHECK(c_n_dk(n, d, d) == 1);
    }
    CHECK_THROWS_AS(c_n_dk(3, 4, 1), std::invalid_argument);
}

TEST_CASE("c_n(d,k) approaches c(d,k) monotonically") {
    for (int d = 1; d <= 4; ++d) {
        for (int k = 0; k <= d; ++k) {
            Rational prev = -1;
            for (int n = d; n <= 20; ++n) {
                Rational gap = c_n_dk(n, d, k) - c_dk(d, k);
                if (gap < 0) gap = -gap;
                if (n >= d + 6) CHECK(gap < Rational(1) / Rational(pow2(static_cast<unsigned>(n - d - 5))));
                if (prev >= 0) CHECK(gap <= prev);
                prev = gap;
            }
        }
    }
}

TEST_CASE("upper bounds") {
    CHECK(upper_flat_even(2, 1) == Rational(6, 7));
    CHECK(upper_flat_even(3, 0) == Rational(8, 15));
    CHECK(upper_flat_even(10, 9) == 1 - Rational(1, 2047));
    CHECK_THROWS_AS(upper_flat_even(3, 3), std::invalid_argument);

    CHECK(upper_half_level(3, 2) == Rational(6, 7));
    CHECK(upper_half_level(4, 2) == Rational(4, 5));
    Rational prev = 2;
    for (int n = 2; n <= 20; ++n) {
        const Rational v = upper_half_level(n, 2);
        CHECK(v <= prev);
        CHECK(v >= Rational(3, 4));
        prev = v;
    }
    CHECK_THROWS_AS(upper_half_level(4, 1), std::invalid_argument);

    CHECK(odd_upper(4, 2) == Rational(4, 7));
    for (int d = 1; d <= 10; ++d) CHECK(odd_upper(d + 1, d) == Rational(2, 3));
    CHECK(odd_upper(40, 2) - Rational(1, 2) < Rational(1, 1000000000));
    CHECK_THROWS_AS(odd_upper(3, 3), std::invalid_argument);
}

TEST_CASE("bootstrap series") {
    for (int d = 1; d <= 6; ++d) {
        for (int k = 0; k < d; ++k) {
            const auto b = bootstrap_upper(d, k, 1);
            CHECK(b.partial == Rational(1, 2));
            CHECK(b.certified_upper == 1);
        }
    }
    const auto b = bootstrap_upper(3, 1, 2);
    CHECK(b.partial == Rational(13, 20));
    CHECK(b.certified_upper == Rational(9, 10));

    for (int d = 2; d <= 6; ++d) {
        for (int k = 0; k < d; ++k) {
            Rational prev = 0;
            for (int m = 1; m <= 40; ++m) {
                const auto v = bootstrap_upper(d, k, m);
                CHECK(v.partial >= prev);
                CHECK(v.partial - prev <= Rational(1) / Rational(pow2(static_cast<unsigned>(m))));
                CHECK(v.certified_upper <= upper_flat_even(d, k) + Rational(1) / Rational(pow2(static_cast<unsigned>(m))));
                prev = v.partial;
            }
        }
    }
    CHECK_THROWS_AS(bootstrap_upper(3, 3, 4), std::invalid_argument);
    CHECK_THROWS_AS(bootstrap_upper(3, 1, 0), std::invalid_argument);
}

TEST_CASE("one-point ratios and the perturbation lower bound") {
    CHECK(*one_point_ratios(3, 2).down == 2);
    CHECK(*one_point_ratios(3, 4).down == Rational(64, 27));
    CHECK(*one_point_ratios(3, 6).up == 2);
    CHECK_FALSE(one_point_ratios(3, 1).down);
    CHECK_FALSE(one_point_ratios(3, 8).up);
    CHECK_THROWS_AS(one_point_ratios(1, 1), std::invalid_argument);
    const Rational e_bound(27182818285LL, 10000000000LL);
    for (int d = 1; d <= 7; ++d) {
        for (long long s = 0; s <= (1LL << d); ++s) {
            if (s < 2 && s > (1LL << d) - 2) continue;
            const auto r = one_point_ratios(d, s);
            if (r.down) CHECK(*r.down < e_bound);
            if (r.up) CHECK(*r.up < e_bound);
        }
    }
    CHECK(e_upper() > Rational(27182818284LL, 10000000000LL));
    CHECK(std::abs(to_double(corollary_lower(4, 7)) - 0.875 / std::exp(1.0)) < 1e-8);
    CHECK(corollary_lower(4, 7) < Rational(7, 8) / Rational(2718281828LL, 1000000000LL));
    CHECK(std::abs(to_double(corollary_lower(3, 1)) - 0.5 / std::exp(1.0)) < 1e-8);
    CHECK(std::abs(to_double(corollary_lower(3, 3)) - 0.75 / std::exp(1.0)) < 1e-8);
    CHECK_THROWS_AS(corollary_lower(3, 8), std::invalid_argument);
}

TEST_CASE("Bose-Burton numbers") {
    CHECK(bose_burton_min(2, 1) == 3);
    for (int d = 1; d <= 8; ++d) {
        for (int k = 0; k < d; ++k) CHECK(bose_burton_min(d, k + 1) == pow2(static_cast<unsigned>(d - k)) - 1);
    }
    for (int n = 0; n <= 8; ++n) CHECK(bose_burton_min(n, n) == 1);
    CHECK_THROWS_AS(bose_burton_min(2, 3), std::invalid_argument);
}

namespace {

bool has(const std::vector<BoundEntry>& es, const Rational& v) {
    return std::any_of(es.begin(), es.end(), [&](const BoundEntry& e) { return e.value == v; });
}

}  // namespace

TEST_CASE("summary") {
    const BoundReport half = summary(3, 4);
    CHECK(half.exact);
    CHECK(half.best_lower == Rational(7, 8));
    CHECK(half.best_upper == Rational(7, 8));

    const BoundReport two = summary(3, 2);
    CHECK(two.k == 1);
    CHECK(two.j == 1);
    CHECK(has(two.lower, Rational(21, 32)));
    CHECK(has(two.upper, Rational(4, 5)));
    CHECK(has(two.upper, bootstrap_upper(3, 1).certified_upper));

    const BoundReport odd = summary(3, 3);
    CHECK(has(odd.upper, Rational(1, 2)));
    CHECK(has(odd.lower, c_dk(3, 0)));
    CHECK(odd.best_upper <= Rational(1, 2));

    const BoundReport fin = summary(2, 2, 4);
    REQUIRE(fin.finite_best_upper);
    CHECK(*fin.finite_best_upper == Rational(4, 5));

    for (int d = 1; d <= 10; ++d) {
        for (long long s = 1; s < (1LL << d); ++s) {
            const BoundReport r = summary(d, s, std::nullopt, 24);
            CHECK(r.best_lower <= r.best_upper);
            for (const auto& e : r.upper) CHECK(r.best_upper <= e.value);
            for (const auto& e : r.lower) {
                if (e.scope == "limit") CHECK(r.best_lower >= e.value);
            }
        }
    }
    CHECK(summary(3, 0).best_lower == 1);
    CHECK(summary(3, 8).best_upper == 1);
    CHECK_THROWS_AS(summary(3, 9), std::invalid_argument);
    CHECK_THROWS_AS(summary(0, 0), std::invalid_argument);
}
