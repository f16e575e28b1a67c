#pragma once

#include "qsrlab/dyadic.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsrlab {

/// Global packing limit: vectors and matrix rows fit one machine word.
inline constexpr int kMaxBits = 24;

/// Vector over GF(2). Component 0 is the leftmost character of the string
/// form and the most significant bit of value(), so "101" has value 5.
class BitVector {
public:
    BitVector() = default;
    BitVector(int len, std::uint32_t value);
    static BitVector zero(int len) { return BitVector(len, 0); }
    static BitVector from_string(std::string_view s);

    int len() const { return len_; }
    std::uint32_t value() const { return bits_; }
    bool get(int i) const { return (bits_ >> (len_ - 1 - i)) & 1u; }
    void set(int i, bool v);
    std::string str() const;

    BitVector operator^(const BitVector& o) const;

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    int len_ = 0;
    std::uint32_t bits_ = 0;
};

/// Matrix over GF(2), each row packed into one word (cols <= kMaxBits).
class BitMatrix {
public:
    BitMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool get(int r, int c) const { return (row_[r] >> (cols_ - 1 - c)) & 1u; }
    void set(int r, int c, bool v);

    /// Row packed like a BitVector over the columns.
    std::uint32_t row_bits(int r) const { return row_[r]; }
    void set_row_bits(int r, std::uint32_t bits) { row_[r] = bits; }

    /// Text format: "rows cols" header, then one line of '0'/'1' per row.
    void store(std::ostream& out) const;
    static BitMatrix load(std::istream& in);

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint32_t> row_;
};

/// y = A x over GF(2); x.len() must equal a.cols().
BitVector matvec(const BitMatrix& a, const BitVector& x);

/// Rank of the span of the given vectors (all the same length). Empty input
/// has rank 0.
int rank(std::span<const BitVector> vectors);

/// Distribution of the rank of tuple_len vectors drawn uniformly from
/// {0,1}^vec_len; probs[d] is the probability of rank exactly d.
struct RankDistribution {
    int vec_len = 0;
    int tuple_len = 0;
    std::vector<Dyadic> probs;
};

/// Exact distribution by the rank Markov chain: from rank d the next vector
/// is dependent with probability 2^(d - vec_len).
RankDistribution rank_distribution(int vec_len, int tuple_len);

/// Exact distribution by enumerating all 2^(vec_len * tuple_len) tuples.
/// Refused when vec_len * tuple_len > 24.
RankDistribution rank_distribution_bruteforce(int vec_len, int tuple_len);

}  // namespace qsrlab
