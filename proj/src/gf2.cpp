#include "qsrlab/gf2.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace qsrlab {

BitVector::BitVector(int len, std::uint32_t value) : len_(len), bits_(value) {
    if (len < 1 || len > kMaxBits) throw std::invalid_argument("BitVector: length must be in [1, 24]");
    if (len < 32 && (value >> len) != 0) throw std::invalid_argument("BitVector: value wider than length");
}

BitVector BitVector::from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("BitVector: empty string");
    std::uint32_t v = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("BitVector: expected '0'/'1'");
        v = (v << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return BitVector(static_cast<int>(s.size()), v);
}

void BitVector::set(int i, bool v) {
    std::uint32_t mask = 1u << (len_ - 1 - i);
    bits_ = v ? (bits_ | mask) : (bits_ & ~mask);
}

std::string BitVector::str() const {
    std::string s(static_cast<std::size_t>(len_), '0');
    for (int i = 0; i < len_; ++i)
        if (get(i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

BitVector BitVector::operator^(const BitVector& o) const {
    if (len_ != o.len_) throw std::invalid_argument("BitVector: xor length mismatch");
    return BitVector(len_, bits_ ^ o.bits_);
}

BitMatrix::BitMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_(static_cast<std::size_t>(rows), 0) {
    if (rows < 1 || rows > kMaxBits || cols < 1 || cols > kMaxBits)
        throw std::invalid_argument("BitMatrix: dimensions must be in [1, 24]");
}

void BitMatrix::set(int r, int c, bool v) {
    std::uint32_t mask = 1u << (cols_ - 1 - c);
    row_[r] = v ? (row_[r] | mask) : (row_[r] & ~mask);
}

void BitMatrix::store(std::ostream& out) const {
    out << rows_ << ' ' << cols_ << '\n';
    for (int r = 0; r < rows_; ++r) out << BitVector(cols_, row_[r]).str() << '\n';
}

BitMatrix BitMatrix::load(std::istream& in) {
    int rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw std::invalid_argument("BitMatrix: bad header");
    BitMatrix a(rows, cols);
    for (int r = 0; r < rows; ++r) {
        std::string line;
        if (!(in >> line) || static_cast<int>(line.size()) != cols)
            throw std::invalid_argument("BitMatrix: bad row");
        a.row_[r] = BitVector::from_string(line).value();
    }
    return a;
}

BitVector matvec(const BitMatrix& a, const BitVector& x) {
    if (x.len() != a.cols()) throw std::invalid_argument("matvec: dimension mismatch");
    std::uint32_t y = 0;
    for (int r = 0; r < a.rows(); ++r)
        y = (y << 1) | (static_cast<std::uint32_t>(std::popcount(a.row_bits(r) & x.value())) & 1u);
    return BitVector(a.rows(), y);
}

namespace {

/// Word-level elimination; basis[p] holds the unique vector pivoted at bit p.
struct Eliminator {
    std::uint32_t basis[kMaxBits] = {};
    int rank = 0;

    // Returns true if v was independent of the current span.
    bool insert(std::uint32_t v) {
        while (v != 0) {
            int p = std::bit_width(v) - 1;
            if (basis[p] == 0) {
                basis[p] = v;
                ++rank;
                return true;
            }
            v ^= basis[p];
        }
        return false;
    }
};

}  // namespace

int rank(std::span<const BitVector> vectors) {
    if (vectors.empty()) return 0;
    int len = vectors.front().len();
    Eliminator e;
    for (const BitVector& v : vectors) {
        if (v.len() != len) throw std::invalid_argument("rank: vectors must have equal length");
        e.insert(v.value());
    }
    return e.rank;
}

RankDistribution rank_distribution(int vec_len, int tuple_len) {
    if (vec_len < 1) throw std::invalid_argument("rank_distribution: vec_len must be >= 1");
    if (tuple_len < 0) throw std::invalid_argument("rank_distribution: tuple_len must be >= 0");
    RankDistribution rd{vec_len, tuple_len, std::vector<Dyadic>(static_cast<std::size_t>(tuple_len) + 1)};
    std::vector<Dyadic> cur(static_cast<std::size_t>(tuple_len) + 1);
    cur[0] = 1;
    for (int step = 0; step < tuple_len; ++step) {
        std::vector<Dyadic> next(cur.size());
        for (int d = 0; d <= step; ++d) {
            if (cur[d].is_zero()) continue;
            if (d >= vec_len) {
                next[d] += cur[d];  // span is everything; every draw is dependent
                continue;
            }
            Dyadic dep = Dyadic::pow2(d - vec_len);
            next[d] += cur[d] * dep;
            next[d + 1] += cur[d] * (Dyadic(1) - dep);
        }
        cur = std::move(next);
    }
    rd.probs = std::move(cur);
    return rd;
}

RankDistribution rank_distribution_bruteforce(int vec_len, int tuple_len) {
    if (vec_len < 1) throw std::invalid_argument("rank_distribution_bruteforce: vec_len must be >= 1");
    if (tuple_len < 0) throw std::invalid_argument("rank_distribution_bruteforce: tuple_len must be >= 0");
    long long total_bits = static_cast<long long>(vec_len) * tuple_len;
    if (total_bits > 24)
        throw std::invalid_argument("rank_distribution_bruteforce: vec_len * tuple_len <= 24 required");

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(tuple_len) + 1, 0);
    std::uint64_t tuples = 1ull << total_bits;
    std::uint32_t mask = (vec_len == 32) ? ~0u : ((1u << vec_len) - 1u);
    for (std::uint64_t code = 0; code < tuples; ++code) {
        Eliminator e;
        std::uint64_t rest = code;
        for (int i = 0; i < tuple_len; ++i) {
            e.insert(static_cast<std::uint32_t>(rest) & mask);
            rest >>= vec_len;
        }
        ++counts[static_cast<std::size_t>(e.rank)];
    }

    RankDistribution rd{vec_len, tuple_len, {}};
    rd.probs.reserve(counts.size());
    for (std::uint64_t c : counts)
        rd.probs.push_back(Dyadic::scaled(BigInt(c), static_cast<unsigned>(total_bits)));
    return rd;
}

}  // namespace qsrlab
