#include <doctest.h>

#include <random>

#include "flatstats/grassmann.hpp"
#include "flatstats/transform.hpp"
#include "support/oracles.hpp"

using namespace flatstats;

namespace {

ValueTable random_table(std::mt19937_64& rng, int n, int lo = -50, int hi = 50) {
    std::uniform_int_distribution<int> dist(lo, hi);
    std::vector<Integer> v(std::size_t{1} << n);
    for (auto& x : v) x = dist(rng);
    return ValueTable(n, v);
}

std::vector<Integer> as_vector(const ValueTable& t) { return {t.values().begin(), t.values().end()}; }

}  // namespace

TEST_CASE("value tables have exactly 2^n entries") {
    CHECK(ValueTable(3).size() == 8);
    CHECK_THROWS_AS(ValueTable(2, std::vector<Integer>(3)), std::invalid_argument);
}

TEST_CASE("wht examples") {
    const Word zero = 0;
    const ValueTable delta = ValueTable::indicator(3, std::span<const Word>(&zero, 1));
    const ValueTable dh = wht(delta);
    for (const auto& v : dh.values()) CHECK(v == 1);

    ValueTable ones(3, std::vector<Integer>(8, 1));
    const ValueTable f1 = wht(ones);
    CHECK(f1[0] == 8);
    for (std::size_t i = 1; i < 8; ++i) CHECK(f1[i] == 0);

    const std::vector<Word> pts{0b00, 0b11};
    CHECK(as_vector(wht(ValueTable::indicator(2, pts))) == std::vector<Integer>{2, 0, 0, 2});
    const auto support = spectrum_support(ValueTable::indicator(2, pts));
    REQUIRE(support.size() == 2);
    CHECK(support[0].bits() == 0b00);
    CHECK(support[1].bits() == 0b11);
    CHECK(spectrum_support(ValueTable(4)).empty());
}

TEST_CASE("wht agrees with the direct sum, inverts, and satisfies Parseval") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = static_cast<int>(rng() % 9);
        const ValueTable f = random_table(rng, n);
        const ValueTable fh = wht(f);
        CHECK(as_vector(fh) == oracle::wht(as_vector(f)));
        const ValueTable back = wht(fh);
        Integer lhs = 0, rhs = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            CHECK(back[i] == f[i] * pow2(static_cast<unsigned>(n)));
            lhs += fh[i] * fh[i];
            rhs += f[i] * f[i];
        }
        CHECK(lhs == pow2(static_cast<unsigned>(n)) * rhs);
    }
}

TEST_CASE("convolution: direct sum oracle and convolution theorem") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = static_cast<int>(rng() % 8);
        const ValueTable f = random_table(rng, n), g = random_table(rng, n);
        const ValueTable c = convolve(f, g);
        CHECK(as_vector(c) == oracle::convolve(as_vector(f), as_vector(g)));
        const ValueTable ch = wht(c), fh = wht(f), gh = wht(g);
        for (std::size_t i = 0; i < c.size(); ++i) CHECK(ch[i] == fh[i] * gh[i]);
    }
    CHECK_THROWS_AS(convolve(ValueTable(2), ValueTable(3)), std::invalid_argument);
}

TEST_CASE("convolution identities") {
    std::mt19937_64 rng(33);
    const Word zero = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const ValueTable f = random_table(rng, n);
        CHECK(convolve(f, ValueTable::indicator(n, std::span<const Word>(&zero, 1))) == f);

        std::vector<Word> gens;
        for (int i = 0; i < 3; ++i) gens.push_back(static_cast<Word>(rng()) & low_mask(n));
        const LinearSubspace u = LinearSubspace::span(n, gens);
        const auto elems = u.elements();
        const ValueTable ind = ValueTable::indicator(n, elems);
        const ValueTable sq = convolve(ind, ind);
        for (std::size_t x = 0; x < sq.size(); ++x) CHECK(sq[x] == ind[x] * pow2(static_cast<unsigned>(u.dim())));

        // h * 1_U at x is the coset sum of h over x + U.
        const ValueTable h = random_table(rng, n);
        const ValueTable hu = convolve(h, ind);
        for (Word x = 0; x < (Word{1} << n); ++x) {
            Integer direct = 0;
            for (Word e : elems) direct += h[x ^ e];
            CHECK(hu[x] == direct);
        }

        // Spectrum of a subspace indicator is the orthogonal complement.
        std::vector<Word> support;
        for (const auto& v : spectrum_support(ind)) support.push_back(v.bits());
        CHECK(support == orthogonal_complement(u).elements());
    }
}

TEST_CASE("plus-minus lift: h = 1 - 2*1_A has h^(0) = 2^n - 2|A|") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = static_cast<int>(rng() % 9);
        ValueTable h(n);
        Integer size = 0;
        for (std::size_t x = 0; x < h.size(); ++x) {
            const bool in = rng() & 1;
            h[x] = in ? -1 : 1;
            size += in ? 1 : 0;
        }
        CHECK(wht(h)[0] == pow2(static_cast<unsigned>(n)) - 2 * size);
    }
}

TEST_CASE("butterfly along a general direction matches its definition") {
    std::vector<long> t{1, 2, 3, 4, 5, 6, 7, 8};
    butterfly<long>(t, 0b110);
    // pairs {0,6},{1,7},{4,2},{5,3}; a sits where bit 1 (lowest of 110) is clear
    CHECK(t == std::vector<long>{1 + 7, 2 + 8, 5 - 3, 6 - 4, 5 + 3, 6 + 4, 1 - 7, 2 - 8});
    std::vector<long> s{1, 2, 3, 4};
    fold_sum<long>(s, 0b01);
    CHECK(s == std::vector<long>{3, 3, 7, 7});
}
