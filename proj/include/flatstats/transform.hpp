#pragma once

// Unnormalized Walsh-Hadamard transform over F_2^n and the folding
// primitives the statistics engine shares with it.

#include <bit>
#include <cstddef>
#include <span>
#include <vector>

#include "flatstats/exact.hpp"
#include "flatstats/gf2.hpp"

namespace flatstats {

/// Integer-valued function on F_2^n, index = point encoding.
class ValueTable {
public:
    ValueTable() = default;
    explicit ValueTable(int n);
    ValueTable(int n, std::vector<Integer> values);

    static ValueTable indicator(int n, std::span<const Word> points);

    int dim() const { return n_; }
    std::size_t size() const { return values_.size(); }
    const Integer& operator[](std::size_t i) const { return values_[i]; }
    Integer& operator[](std::size_t i) { return values_[i]; }
    std::span<const Integer> values() const { return values_; }
    std::span<Integer> values() { return values_; }

    friend bool operator==(const ValueTable&, const ValueTable&) = default;

private:
    int n_ = 0;
    std::vector<Integer> values_;
};

/// One butterfly stage along `direction`: (a, b) -> (a + b, a - b) on every
/// pair {x, x ^ direction}, where a sits at the member whose lowest set bit
/// of `direction` is clear.
template <typename T>
void butterfly(std::span<T> table, Word direction) {
    const Word low = direction & (~direction + 1);
    for (std::size_t x = 0; x < table.size(); ++x) {
        if (x & low) continue;
        T& a = table[x];
        T& b = table[x ^ direction];
        T sum = a + b;
        b = a - b;
        a = std::move(sum);
    }
}

/// Sum fold along `direction`: both members of every pair become a + b.
/// Folding along a basis b_1..b_d leaves, at each x, the sum over x + span.
template <typename T>
void fold_sum(std::span<T> table, Word direction) {
    const Word low = direction & (~direction + 1);
    for (std::size_t x = 0; x < table.size(); ++x) {
        if (x & low) continue;
        T& a = table[x];
        T& b = table[x ^ direction];
        a += b;
        b = a;
    }
}

template <typename T>
void wht_in_place(std::span<T> table) {
    for (std::size_t step = 1; step < table.size(); step <<= 1) {
        butterfly(table, static_cast<Word>(step));
    }
}

/// f^(xi) = sum_x f(x) (-1)^<xi,x>. Applying twice gives 2^n f.
ValueTable wht(const ValueTable& f);

/// (f * g)(x) = sum_y f(y) g(x - y). Throws on dimension mismatch.
ValueTable convolve(const ValueTable& f, const ValueTable& g);

/// {xi : f^(xi) != 0}, ascending.
std::vector<BitVector> spectrum_support(const ValueTable& f);

}  // namespace flatstats
