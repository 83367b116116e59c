#include <doctest.h>

#include <random>

#include "flatstats/gf2.hpp"
#include "support/oracles.hpp"

using namespace flatstats;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::vector<Word> r;
    for (int i = 0; i < rows; ++i) r.push_back(static_cast<Word>(rng()) & low_mask(cols));
    return BitMatrix(cols, r);
}

Word bv(const char* s) { return BitVector::from_string(s).bits(); }

}  // namespace

TEST_CASE("bit vectors use x_1 as the least significant bit") {
    const BitVector v = BitVector::from_string("011");
    CHECK(v.bits() == 3);
    CHECK(v.get(0));
    CHECK(v.get(1));
    CHECK_FALSE(v.get(2));
    CHECK(v.to_string() == "011");
    CHECK(v.weight() == 2);
    CHECK_THROWS_AS(BitVector(3, 8), std::invalid_argument);
    CHECK_THROWS_AS(BitVector(31, 0), std::invalid_argument);
    CHECK_THROWS_AS(BitVector::from_string("012"), std::invalid_argument);
}

TEST_CASE("dot product") {
    CHECK(dot(BitVector::from_string("110"), BitVector::from_string("011")) == 1);
    CHECK(dot(BitVector::from_string("111"), BitVector::from_string("111")) == 1);
    for (Word x = 0; x < 16; ++x) CHECK(dot(BitVector(4, x), BitVector(4, 0)) == 0);
    CHECK_THROWS_AS(dot(BitVector(3, 1), BitVector(4, 1)), std::invalid_argument);
}

TEST_CASE("rref examples") {
    const RrefResult id = rref(BitMatrix::identity(2));
    CHECK(id.reduced == BitMatrix::identity(2));
    CHECK(id.rank == 2);
    CHECK(id.pivots == std::vector<int>{0, 1});

    const BitMatrix m = BitMatrix::from_strings({"110", "011", "101"});
    CHECK(rref(m).rank == 2);

    const RrefResult z = rref(BitMatrix(4, {0, 0, 0}));
    CHECK(z.rank == 0);
    CHECK(z.pivots.empty());
    CHECK(z.reduced.rows() == 0);

    CHECK(rank(BitMatrix(5)) == 0);
}

TEST_CASE("rref structure, idempotence and row space on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const int cols = 1 + static_cast<int>(rng() % 10);
        const int rows = static_cast<int>(rng() % 8);
        const BitMatrix m = random_matrix(rng, rows, cols);
        const RrefResult r = rref(m);
        REQUIRE(r.rank == r.reduced.rows());
        CHECK(r.rank == oracle::rank({m.row_words().begin(), m.row_words().end()}));
        CHECK(oracle::span_points({m.row_words().begin(), m.row_words().end()}) ==
              oracle::span_points({r.reduced.row_words().begin(), r.reduced.row_words().end()}));
        for (int i = 0; i < r.rank; ++i) {
            const int p = r.pivots[static_cast<std::size_t>(i)];
            CHECK(std::countr_zero(r.reduced.row(i)) == p);
            if (i > 0) CHECK(p > r.pivots[static_cast<std::size_t>(i - 1)]);
            for (int o = 0; o < r.rank; ++o) {
                if (o != i) CHECK_FALSE(r.reduced.get(o, p));
            }
        }
        CHECK(rref(r.reduced).reduced == r.reduced);
    }
}

TEST_CASE("rank equals rank of the transpose") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const int cols = 1 + static_cast<int>(rng() % 16);
        const int rows = 1 + static_cast<int>(rng() % 16);
        const BitMatrix m = random_matrix(rng, rows, cols);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(BitMatrix::identity(4)).empty());
    const auto k = kernel_basis(BitMatrix::from_strings({"111"}));
    CHECK(k.size() == 2);
    CHECK(kernel_basis(BitMatrix(3, {0})).size() == 3);

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        const int cols = 1 + static_cast<int>(rng() % 12);
        const int rows = static_cast<int>(rng() % 10);
        const BitMatrix m = random_matrix(rng, rows, cols);
        const auto basis = kernel_basis(m);
        CHECK(static_cast<int>(basis.size()) + rank(m) == cols);
        std::vector<Word> words;
        for (const auto& v : basis) {
            CHECK(v.dim() == cols);
            CHECK(m.apply(v.bits()) == 0);
            words.push_back(v.bits());
        }
        CHECK(oracle::rank(words) == static_cast<int>(words.size()));
    }
}

TEST_CASE("matrix application") {
    const BitMatrix m = BitMatrix::from_strings({"011", "110"});
    CHECK(m.apply(bv("001")) == 0b01);
    CHECK(m.apply(bv("100")) == 0b10);
    CHECK(m.apply(bv("010")) == 0b11);
}

TEST_CASE("q-binomials and flat counts") {
    CHECK(q_binomial(3, 1) == 7);
    CHECK(q_binomial(4, 2) == 35);
    CHECK(flat_count(3, 1) == 28);
    CHECK(flat_count(4, 2) == 140);
    for (int n = 0; n <= 30; ++n) {
        CHECK(q_binomial(n, 0) == 1);
        CHECK(q_binomial(n, n) == 1);
        CHECK(flat_count(n, n) == 1);
        for (int d = 0; d <= n; ++d) {
            CHECK(q_binomial(n, d) == q_binomial(n, n - d));
            if (n <= 16) CHECK(q_binomial(n, d) == oracle::q_binomial(n, d));
            if (d >= 1) {
                CHECK(q_binomial(n, d) == q_binomial(n - 1, d - 1) + pow2(static_cast<unsigned>(d)) * (d <= n - 1 ? q_binomial(n - 1, d) : Integer(0)));
            }
        }
    }
    CHECK_THROWS_AS(q_binomial(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(q_binomial(-1, 0), std::invalid_argument);
    CHECK_THROWS_AS(flat_count(2, 3), std::invalid_argument);
}
