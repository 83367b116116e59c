#include "flatstats/transform.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace flatstats {

ValueTable::ValueTable(int n) : n_(n) {
    check_dimension(n, "ValueTable");
    values_.assign(std::size_t{1} << n, Integer(0));
}

ValueTable::ValueTable(int n, std::vector<Integer> values) : n_(n), values_(std::move(values)) {
    check_dimension(n, "ValueTable");
    if (values_.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("ValueTable: expected " + std::to_string(std::size_t{1} << n) + " values, got " +
                                    std::to_string(values_.size()));
    }
}

ValueTable ValueTable::indicator(int n, std::span<const Word> points) {
    ValueTable t(n);
    for (Word p : points) {
        if (p >= t.size()) throw std::invalid_argument("ValueTable::indicator: point outside F_2^n");
        t[p] = 1;
    }
    return t;
}

ValueTable wht(const ValueTable& f) {
    ValueTable out = f;
    wht_in_place(out.values());
    return out;
}

ValueTable convolve(const ValueTable& f, const ValueTable& g) {
    if (f.dim() != g.dim()) {
        throw std::invalid_argument("convolve: dimension mismatch (" + std::to_string(f.dim()) + " vs " +
                                    std::to_string(g.dim()) + ")");
    }
    // Over F_2^n, x - y = x ^ y. Transform, multiply, invert and divide by 2^n.
    ValueTable fh = wht(f), gh = wht(g);
    for (std::size_t i = 0; i < fh.size(); ++i) fh[i] *= gh[i];
    wht_in_place(fh.values());
    const Integer scale = pow2(static_cast<unsigned>(f.dim()));
    for (std::size_t i = 0; i < fh.size(); ++i) fh[i] /= scale;
    return fh;
}

std::vector<BitVector> spectrum_support(const ValueTable& f) {
    const ValueTable fh = wht(f);
    std::vector<BitVector> out;
    for (std::size_t i = 0; i < fh.size(); ++i) {
        if (fh[i] != 0) out.emplace_back(f.dim(), static_cast<Word>(i));
    }
    return out;
}

}  // namespace flatstats
