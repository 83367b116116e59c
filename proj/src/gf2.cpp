#include "flatstats/gf2.hpp"

#include <stdexcept>
#include <utility>

namespace flatstats {

void check_dimension(int n, const char* what) {
    if (n < 0 || n > kMaxDim) {
        throw std::invalid_argument(std::string(what) + ": dimension " + std::to_string(n) +
                                    " outside [0, " + std::to_string(kMaxDim) + "]");
    }
}

BitVector::BitVector(int n, Word bits) : n_(n), bits_(bits) {
    check_dimension(n, "BitVector");
    if ((bits & ~low_mask(n)) != 0) {
        throw std::invalid_argument("BitVector: bits set above dimension " + std::to_string(n));
    }
}

BitVector BitVector::from_string(const std::string& text) {
    const int n = static_cast<int>(text.size());
    check_dimension(n, "BitVector string");
    Word bits = 0;
    for (int i = 0; i < n; ++i) {
        const char c = text[static_cast<std::size_t>(n - 1 - i)];
        if (c == '1') {
            bits |= Word{1} << i;
        } else if (c != '0') {
            throw std::invalid_argument("BitVector: not a binary string: '" + text + "'");
        }
    }
    return BitVector(n, bits);
}

std::string BitVector::to_string() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i) {
        if (get(i)) s[static_cast<std::size_t>(n_ - 1 - i)] = '1';
    }
    return s;
}

BitVector BitVector::operator^(const BitVector& o) const {
    BitVector r = *this;
    r ^= o;
    return r;
}

BitVector& BitVector::operator^=(const BitVector& o) {
    if (n_ != o.n_) throw std::invalid_argument("BitVector xor: dimension mismatch");
    bits_ ^= o.bits_;
    return *this;
}

int dot(const BitVector& x, const BitVector& y) {
    if (x.dim() != y.dim()) {
        throw std::invalid_argument("dot: dimension mismatch (" + std::to_string(x.dim()) + " vs " +
                                    std::to_string(y.dim()) + ")");
    }
    return dot_bits(x.bits(), y.bits());
}

BitMatrix::BitMatrix(int cols, std::vector<Word> rows) : cols_(cols), rows_(std::move(rows)) {
    check_dimension(cols, "BitMatrix columns");
    for (Word w : rows_) {
        if ((w & ~low_mask(cols)) != 0) throw std::invalid_argument("BitMatrix: row has bits beyond column count");
    }
}

BitMatrix BitMatrix::identity(int n) {
    std::vector<Word> rows;
    for (int i = 0; i < n; ++i) rows.push_back(Word{1} << i);
    return BitMatrix(n, std::move(rows));
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    if (rows.empty()) return BitMatrix(0);
    std::vector<Word> words;
    const int cols = static_cast<int>(rows.front().size());
    for (const auto& r : rows) {
        const BitVector v = BitVector::from_string(r);
        if (v.dim() != cols) throw std::invalid_argument("BitMatrix: ragged rows");
        words.push_back(v.bits());
    }
    return BitMatrix(cols, std::move(words));
}

void BitMatrix::push_row(Word w) {
    if ((w & ~low_mask(cols_)) != 0) throw std::invalid_argument("BitMatrix: row has bits beyond column count");
    rows_.push_back(w);
}

BitMatrix BitMatrix::transpose() const {
    check_dimension(rows(), "BitMatrix transpose");
    std::vector<Word> out(static_cast<std::size_t>(cols_), 0);
    for (int r = 0; r < rows(); ++r) {
        for (int c = 0; c < cols_; ++c) {
            if (get(r, c)) out[static_cast<std::size_t>(c)] |= Word{1} << r;
        }
    }
    return BitMatrix(rows(), std::move(out));
}

Word BitMatrix::apply(Word x) const {
    Word y = 0;
    for (int r = 0; r < rows(); ++r) {
        y |= static_cast<Word>(dot_bits(rows_[static_cast<std::size_t>(r)], x)) << r;
    }
    return y;
}

RrefResult rref(const BitMatrix& m) {
    std::vector<Word> rows(m.row_words().begin(), m.row_words().end());
    std::vector<int> pivots;
    std::size_t next = 0;
    for (int c = 0; c < m.cols() && next < rows.size(); ++c) {
        const Word bit = Word{1} << c;
        std::size_t p = next;
        while (p < rows.size() && !(rows[p] & bit)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[next]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != next && (rows[r] & bit)) rows[r] ^= rows[next];
        }
        pivots.push_back(c);
        ++next;
    }
    rows.resize(next);
    RrefResult out;
    out.rank = static_cast<int>(next);
    out.reduced = BitMatrix(m.cols(), std::move(rows));
    out.pivots = std::move(pivots);
    return out;
}

int rank(const BitMatrix& m) { return rref(m).rank; }

std::vector<BitVector> kernel_basis(const BitMatrix& m) {
    const RrefResult r = rref(m);
    Word pivot_mask = 0;
    for (int p : r.pivots) pivot_mask |= Word{1} << p;
    std::vector<BitVector> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (pivot_mask & (Word{1} << f)) continue;
        Word v = Word{1} << f;
        for (int i = 0; i < r.rank; ++i) {
            if (r.reduced.get(i, f)) v |= Word{1} << r.pivots[static_cast<std::size_t>(i)];
        }
        basis.emplace_back(m.cols(), v);
    }
    return basis;
}

namespace {

void check_nd(int n, int d, const char* what) {
    if (n < 0 || d < 0 || d > n) {
        throw std::invalid_argument(std::string(what) + ": need 0 <= d <= n, got n=" + std::to_string(n) +
                                    " d=" + std::to_string(d));
    }
}

}  // namespace

Integer q_binomial(int n, int d) {
    check_nd(n, d, "q_binomial");
    Integer num = 1, den = 1;
    for (int i = 0; i < d; ++i) {
        num *= pow2(static_cast<unsigned>(n - i)) - 1;
        den *= pow2(static_cast<unsigned>(d - i)) - 1;
    }
    return num / den;
}

Integer flat_count(int n, int d) {
    check_nd(n, d, "flat_count");
    return pow2(static_cast<unsigned>(n - d)) * q_binomial(n, d);
}

}  // namespace flatstats
