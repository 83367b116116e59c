#include "flatstats/point_set.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace flatstats {

namespace {

std::uint64_t tail_mask(int n) {
    return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
}

}  // namespace

PointSet::PointSet(int n) : n_(n) {
    check_dimension(n, "PointSet");
    words_.assign(n >= 6 ? (std::size_t{1} << (n - 6)) : 1, 0);
}

PointSet PointSet::full(int n) {
    PointSet a(n);
    for (auto& w : a.words_) w = ~std::uint64_t{0};
    a.words_.back() &= tail_mask(n);
    return a;
}

PointSet PointSet::from_points(int n, std::span<const Word> points) {
    PointSet a(n);
    for (Word p : points) {
        if (p >= a.universe()) {
            throw std::invalid_argument("PointSet: point " + std::to_string(p) + " outside F_2^" + std::to_string(n));
        }
        a.insert(p);
    }
    return a;
}

PointSet PointSet::from_hex(int n, const std::string& hex) {
    std::string digits = hex;
    if (digits.size() >= 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) digits = digits.substr(2);
    if (digits.empty()) throw std::invalid_argument("PointSet: empty hex mask");
    PointSet a(n);
    std::uint64_t bit = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it, bit += 4) {
        const char c = *it;
        unsigned v;
        if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
        else throw std::invalid_argument("PointSet: bad hex digit '" + std::string(1, c) + "'");
        for (unsigned b = 0; b < 4; ++b) {
            if (!((v >> b) & 1u)) continue;
            const std::uint64_t p = bit + b;
            if (p >= a.universe()) {
                throw std::invalid_argument("PointSet: hex mask has bits beyond 2^" + std::to_string(n) + " points");
            }
            a.insert(static_cast<Word>(p));
        }
    }
    return a;
}

PointSet PointSet::from_binary_list(int n, const std::string& list) {
    PointSet a(n);
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        const BitVector v = BitVector::from_string(item.substr(b, e - b + 1));
        if (v.dim() != n) {
            throw std::invalid_argument("PointSet: point '" + item + "' has " + std::to_string(v.dim()) +
                                        " coordinates, expected " + std::to_string(n));
        }
        a.insert(v.bits());
    }
    return a;
}

PointSet PointSet::from_word(int n, std::uint64_t mask) {
    if (n > 6) throw std::invalid_argument("PointSet::from_word: n must be <= 6");
    PointSet a(n);
    if ((mask & ~tail_mask(n)) != 0) throw std::invalid_argument("PointSet::from_word: bits beyond 2^n points");
    a.words_[0] = mask;
    return a;
}

std::uint64_t PointSet::size() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

std::vector<Word> PointSet::points() const {
    std::vector<Word> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        for (std::uint64_t w = words_[i]; w != 0; w &= w - 1) {
            out.push_back(static_cast<Word>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        }
    }
    return out;
}

PointSet PointSet::complement() const {
    PointSet a = *this;
    for (auto& w : a.words_) w = ~w;
    a.words_.back() &= tail_mask(n_);
    return a;
}

PointSet PointSet::translate(Word t) const {
    if (t >= universe()) throw std::invalid_argument("PointSet::translate: vector outside F_2^n");
    PointSet a(n_);
    for (Word p : points()) a.insert(p ^ t);
    return a;
}

std::uint64_t PointSet::word() const {
    if (n_ > 6) throw std::logic_error("PointSet::word: n must be <= 6");
    return words_[0];
}

std::string PointSet::to_hex() const {
    static const char* kDigits = "0123456789abcdef";
    const std::uint64_t ndigits = universe() < 4 ? 1 : universe() / 4;
    std::string out(ndigits, '0');
    for (Word p : points()) {
        const std::uint64_t digit = p / 4;
        const std::size_t pos = static_cast<std::size_t>(ndigits - 1 - digit);
        const unsigned v = static_cast<unsigned>(out[pos] >= 'a' ? out[pos] - 'a' + 10 : out[pos] - '0');
        out[pos] = kDigits[v | (1u << (p % 4))];
    }
    return "0x" + out;
}

}  // namespace flatstats
