#pragma once

// Bit-packed linear algebra over F_2 for ambient dimension n <= 30.
//
// Encoding: coordinate x_1 is the least-significant bit, so a point of F_2^n
// is the integer sum x_i 2^(i-1). Column j of a matrix is bit j of each row.

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flatstats/exact.hpp"

namespace flatstats {

using Word = std::uint32_t;

inline constexpr int kMaxDim = 30;

void check_dimension(int n, const char* what);

inline Word low_mask(int n) { return n >= 32 ? ~Word{0} : (Word{1} << n) - 1; }

class BitVector {
public:
    BitVector() = default;
    BitVector(int n, Word bits);

    /// Parses x_n...x_1 (most significant coordinate first), e.g. "011" is the
    /// point with x_1 = x_2 = 1, integer 3.
    static BitVector from_string(const std::string& text);

    int dim() const { return n_; }
    Word bits() const { return bits_; }
    bool get(int i) const { return (bits_ >> i) & 1u; }
    int weight() const { return std::popcount(bits_); }
    bool is_zero() const { return bits_ == 0; }

    std::string to_string() const;

    BitVector operator^(const BitVector& o) const;
    BitVector& operator^=(const BitVector& o);
    friend bool operator==(const BitVector&, const BitVector&) = default;
    friend auto operator<=>(const BitVector&, const BitVector&) = default;

private:
    int n_ = 0;
    Word bits_ = 0;
};

/// <x, y> = sum x_i y_i mod 2. Throws on dimension mismatch.
int dot(const BitVector& x, const BitVector& y);

inline int dot_bits(Word x, Word y) { return std::popcount(x & y) & 1; }

class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(int cols) : cols_(cols) { check_dimension(cols, "BitMatrix columns"); }
    BitMatrix(int cols, std::vector<Word> rows);

    static BitMatrix identity(int n);
    static BitMatrix from_strings(const std::vector<std::string>& rows);

    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }
    Word row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
    std::span<const Word> row_words() const { return rows_; }
    bool get(int r, int c) const { return (rows_[static_cast<std::size_t>(r)] >> c) & 1u; }

    void push_row(Word w);
    BitMatrix transpose() const;
    /// M·x, one output bit per row.
    Word apply(Word x) const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    int cols_ = 0;
    std::vector<Word> rows_;
};

struct RrefResult {
    BitMatrix reduced;  // zero rows removed
    int rank = 0;
    std::vector<int> pivots;
};

/// Reduced row-echelon form with lowest-index columns preferred as pivots.
RrefResult rref(const BitMatrix& m);
int rank(const BitMatrix& m);

/// Basis of {v : M v = 0}; one vector per free column, n - rank vectors.
std::vector<BitVector> kernel_basis(const BitMatrix& m);

/// Number of d-dimensional linear subspaces of F_2^n.
Integer q_binomial(int n, int d);

/// |Aff(n,d)| = 2^(n-d) q_binomial(n,d).
Integer flat_count(int n, int d);

}  // namespace flatstats
