#include "qsrlab/gf2.hpp"

#include "qsrlab/rng.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace qsrlab;

namespace {

// Per-bit reference for matvec.
BitVector matvec_naive(const BitMatrix& a, const BitVector& x) {
    BitVector y = BitVector::zero(a.rows());
    for (int r = 0; r < a.rows(); ++r) {
        bool bit = false;
        for (int c = 0; c < a.cols(); ++c) bit ^= a.get(r, c) && x.get(c);
        y.set(r, bit);
    }
    return y;
}

// Rank via the size of the enumerated span.
int rank_by_span(const std::vector<BitVector>& vs) {
    std::set<std::uint32_t> span;
    std::size_t subsets = std::size_t{1} << vs.size();
    for (std::size_t pick = 0; pick < subsets; ++pick) {
        std::uint32_t acc = 0;
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (pick & (std::size_t{1} << i)) acc ^= vs[i].value();
        span.insert(acc);
    }
    int r = 0;
    while ((std::size_t{1} << r) < span.size()) ++r;
    return r;
}

BitMatrix from_rows(int cols, std::initializer_list<std::uint32_t> rows) {
    BitMatrix a(static_cast<int>(rows.size()), cols);
    int r = 0;
    for (std::uint32_t bits : rows) a.set_row_bits(r++, bits);
    return a;
}

}  // namespace

TEST_CASE("bit vector value and string forms agree") {
    BitVector v = BitVector::from_string("101");
    CHECK(v.value() == 5);
    CHECK(v.len() == 3);
    CHECK(v.get(0));
    CHECK_FALSE(v.get(1));
    CHECK(v.str() == "101");
    CHECK((v ^ BitVector::from_string("011")).str() == "110");
    CHECK_THROWS_AS(v ^ BitVector::from_string("01"), std::invalid_argument);
    CHECK_THROWS_AS(BitVector(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(BitVector(25, 0), std::invalid_argument);
}

TEST_CASE("matvec basics") {
    CHECK(matvec(from_rows(2, {0b00, 0b00}), BitVector::from_string("11")) == BitVector::from_string("00"));
    CHECK(matvec(from_rows(2, {0b10, 0b01}), BitVector::from_string("10")) == BitVector::from_string("10"));
    // row 0 = (1,1), row 1 = (0,1)
    CHECK(matvec(from_rows(2, {0b11, 0b01}), BitVector::from_string("11")) == BitVector::from_string("01"));
    CHECK(matvec(from_rows(3, {0b101, 0b110}), BitVector::zero(3)) == BitVector::zero(2));
    CHECK_THROWS_AS(matvec(from_rows(3, {0b101}), BitVector::from_string("11")), std::invalid_argument);
}

TEST_CASE("matvec matches the per-bit loop on random inputs") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 1 + static_cast<int>(rng.next_below(8));
        int n = 1 + static_cast<int>(rng.next_below(8));
        BitMatrix a(m, n);
        for (int r = 0; r < m; ++r) a.set_row_bits(r, rng.next_bits(n));
        BitVector x(n, rng.next_bits(n));
        CHECK(matvec(a, x) == matvec_naive(a, x));
    }
}

TEST_CASE("rank basics") {
    CHECK(rank(std::vector<BitVector>{}) == 0);
    CHECK(rank(std::vector{BitVector::from_string("00")}) == 0);
    CHECK(rank(std::vector{BitVector::from_string("10"), BitVector::from_string("01")}) == 2);
    CHECK(rank(std::vector{BitVector::from_string("11"), BitVector::from_string("11"),
                           BitVector::from_string("00")}) == 1);
}

TEST_CASE("rank equals span enumeration and ignores order and duplicates") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng.next_below(6));
        int count = 1 + static_cast<int>(rng.next_below(6));
        std::vector<BitVector> vs;
        for (int i = 0; i < count; ++i) vs.emplace_back(n, rng.next_bits(n));
        int r = rank(vs);
        CHECK(r == rank_by_span(vs));

        std::vector<BitVector> shuffled = vs;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.next_below(i)]);
        shuffled.push_back(shuffled.front());  // duplicate
        CHECK(rank(shuffled) == r);
    }
}

TEST_CASE("rank distribution small cases") {
    RankDistribution d = rank_distribution(2, 2);
    CHECK(d.probs[0] == Dyadic::scaled(1, 4));
    CHECK(d.probs[1] == Dyadic::scaled(9, 4));
    CHECK(d.probs[2] == Dyadic::scaled(3, 3));

    CHECK(rank_distribution(3, 2).probs[2] == Dyadic::scaled(21, 5));
    CHECK(rank_distribution(5, 0).probs[0] == Dyadic(1));

    RankDistribution bf = rank_distribution_bruteforce(1, 1);
    CHECK(bf.probs[0] == Dyadic::pow2(-1));
    CHECK(bf.probs[1] == Dyadic::pow2(-1));
}

TEST_CASE("rank distribution recurrence matches enumeration") {
    for (auto [n, t] : {std::pair{2, 2}, {4, 4}, {3, 5}, {6, 2}, {1, 10}}) {
        CHECK(rank_distribution(n, t).probs == rank_distribution_bruteforce(n, t).probs);
    }
}

TEST_CASE("rank distribution invariants") {
    for (int n = 1; n <= 8; ++n) {
        for (int t = 0; t <= 8; ++t) {
            RankDistribution d = rank_distribution(n, t);
            Dyadic total;
            for (const Dyadic& p : d.probs) total += p;
            CHECK(total == Dyadic(1));
            for (int k = std::min(t, n) + 1; k <= t; ++k)
                CHECK(d.probs[static_cast<std::size_t>(k)].is_zero());
            if (t <= n) {
                // union bound on the defect of full rank
                CHECK(Dyadic(1) - d.probs[static_cast<std::size_t>(t)] <= Dyadic::pow2(t - n));
            }
        }
    }
}

TEST_CASE("brute force rank distribution guard") {
    CHECK_THROWS_WITH_AS(rank_distribution_bruteforce(5, 5),
                         "rank_distribution_bruteforce: vec_len * tuple_len <= 24 required",
                         std::invalid_argument);
}

TEST_CASE("bit matrix file format round trip") {
    BitMatrix a = from_rows(3, {0b101, 0b011});
    std::stringstream ss;
    a.store(ss);
    CHECK(ss.str() == "2 3\n101\n011\n");
    CHECK(BitMatrix::load(ss) == a);

    std::stringstream bad("2 3\n10\n011\n");
    CHECK_THROWS_AS(BitMatrix::load(bad), std::invalid_argument);
}
