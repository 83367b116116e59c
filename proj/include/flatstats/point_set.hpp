#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flatstats/gf2.hpp"

namespace flatstats {

/// A subset of F_2^n stored as a 2^n-bit mask; bit p is set iff point p is in
/// the set. Bits past 2^n in the last word are always zero.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(int n);

    static PointSet full(int n);
    static PointSet from_points(int n, std::span<const Word> points);
    /// Hex number, bit i = point i ("0x03" is {0, 1}). Optional 0x prefix.
    static PointSet from_hex(int n, const std::string& hex);
    /// Comma-separated binary strings written x_n...x_1, e.g. "000,001".
    static PointSet from_binary_list(int n, const std::string& list);
    /// n <= 6 only: the whole mask as one word.
    static PointSet from_word(int n, std::uint64_t mask);

    int dim() const { return n_; }
    std::uint64_t universe() const { return std::uint64_t{1} << n_; }

    bool contains(Word p) const { return (words_[p >> 6] >> (p & 63)) & 1u; }
    void insert(Word p) { words_[p >> 6] |= std::uint64_t{1} << (p & 63); }
    void erase(Word p) { words_[p >> 6] &= ~(std::uint64_t{1} << (p & 63)); }
    void flip(Word p) { words_[p >> 6] ^= std::uint64_t{1} << (p & 63); }

    std::uint64_t size() const;
    bool empty() const { return size() == 0; }
    std::vector<Word> points() const;
    PointSet complement() const;
    /// {x ^ t : x in A}.
    PointSet translate(Word t) const;

    std::span<const std::uint64_t> words() const { return words_; }
    /// n <= 6 only.
    std::uint64_t word() const;

    /// Minimal-width hex, lowercase, "0x" prefix, at least one digit per 4 points.
    std::string to_hex() const;

    friend bool operator==(const PointSet&, const PointSet&) = default;
    friend auto operator<=>(const PointSet&, const PointSet&) = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace flatstats
