#include "qsrlab/qstate.hpp"

#include "qsrlab/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace qsrlab;

namespace {

DiagonalState random_state(int bits, SplitMix64& rng) {
    // Random exact weights: distribute 2^12 mass units over a random support.
    constexpr unsigned kGrainBits = 12;
    std::uint64_t space = std::uint64_t{1} << bits;
    std::uint64_t units = std::uint64_t{1} << kGrainBits;
    std::vector<std::uint64_t> tally(space, 0);
    for (std::uint64_t u = 0; u < units; ++u) ++tally[rng.next_below(space)];
    std::vector<DiagonalState::Entry> w;
    for (std::uint64_t z = 0; z < space; ++z)
        if (tally[z]) w.emplace_back(z, Dyadic::scaled(BigInt(tally[z]), kGrainBits));
    return DiagonalState(bits, std::move(w));
}

CMatrix random_hermitian(int dim, SplitMix64& rng) {
    CMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        m(r, r) = rng.next_gaussian();
        for (int c = r + 1; c < dim; ++c) {
            m(r, c) = {rng.next_gaussian(), rng.next_gaussian()};
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

}  // namespace

TEST_CASE("diagonal state construction rules") {
    CHECK_THROWS_AS(DiagonalState(1, {{0, Dyadic::pow2(-1)}}), std::invalid_argument);  // mass 1/2
    CHECK_THROWS_AS(DiagonalState(1, {{0, Dyadic(2)}, {1, Dyadic(-1)}}), std::invalid_argument);
    CHECK_THROWS_AS(DiagonalState(1, {{5, Dyadic(1)}}), std::invalid_argument);  // key too wide
    // duplicates merge
    DiagonalState s(1, {{0, Dyadic::pow2(-2)}, {0, Dyadic::pow2(-2)}, {1, Dyadic::pow2(-1)}});
    CHECK(s.support_size() == 2);
    CHECK(s.weight(0) == Dyadic::pow2(-1));
    CHECK(s.weight(7) == Dyadic(0));
}

TEST_CASE("tensor of diagonal states") {
    DiagonalState p0 = DiagonalState::point_mass(1, 0);
    DiagonalState p1 = DiagonalState::point_mass(1, 1);
    CHECK(tensor_diag(p0, p1) == DiagonalState::point_mass(2, 0b01));
    CHECK(tensor_diag(DiagonalState::uniform(1), DiagonalState::uniform(1)) == DiagonalState::uniform(2));

    DiagonalState a(1, {{0, Dyadic::scaled(3, 2)}, {1, Dyadic::scaled(1, 2)}});
    DiagonalState b = DiagonalState::uniform(1);
    DiagonalState ab = tensor_diag(a, b);
    CHECK(ab.weight(0b00) == Dyadic::scaled(3, 3));
    CHECK(ab.weight(0b01) == Dyadic::scaled(3, 3));
    CHECK(ab.weight(0b10) == Dyadic::scaled(1, 3));
    CHECK(ab.weight(0b11) == Dyadic::scaled(1, 3));
}

TEST_CASE("l1 distance basics") {
    DiagonalState u2 = DiagonalState::uniform(2);
    CHECK(l1_distance(u2, u2).is_zero());
    CHECK(l1_distance(DiagonalState::point_mass(1, 0), DiagonalState::point_mass(1, 1)) == Dyadic(2));
    DiagonalState corr(2, {{0b00, Dyadic::pow2(-1)}, {0b11, Dyadic::pow2(-1)}});
    CHECK(l1_distance(u2, corr) == Dyadic(1));
    CHECK_THROWS_AS(l1_distance(u2, DiagonalState::uniform(3)), std::invalid_argument);
}

TEST_CASE("dense embedding agrees with exact l1 for commuting states") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int bits = 1 + static_cast<int>(rng.next_below(6));
        DiagonalState a = random_state(bits, rng);
        DiagonalState b = random_state(bits, rng);
        double exact = l1_distance(a, b).to_double();
        double dense = trace_distance(dense_embedding(a), dense_embedding(b));
        CHECK(std::abs(exact - dense) < 1e-10);
    }
}

TEST_CASE("trace distance on small dense states") {
    DensityOperator zero = DensityOperator::pure(std::vector<std::complex<double>>{1.0, 0.0});
    DensityOperator one = DensityOperator::pure(std::vector<std::complex<double>>{0.0, 1.0});
    CHECK(trace_distance(zero, zero) < 1e-12);
    CHECK(trace_distance(zero, one) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(trace_distance(zero, DensityOperator::fully_mixed(2)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(trace_distance(zero, DensityOperator::fully_mixed(4)), std::invalid_argument);
}

TEST_CASE("jacobi eigenvalues reproduce trace and frobenius norm") {
    SplitMix64 rng(23);
    for (int dim : {2, 3, 5, 8, 16}) {
        CMatrix m = random_hermitian(dim, rng);
        auto eig = hermitian_eigenvalues(m);
        double tr = 0.0, fro2 = 0.0;
        for (double v : eig) {
            tr += v;
            fro2 += v * v;
        }
        CHECK(std::abs(tr - m.trace().real()) < 1e-10);
        CHECK(std::abs(std::sqrt(fro2) - m.frobenius_norm()) < 1e-10);
    }
    CHECK_THROWS_AS(hermitian_eigenvalues([] {
                        CMatrix bad(2);
                        bad(0, 1) = 1.0;  // not Hermitian
                        return bad;
                    }()),
                    std::invalid_argument);
}

TEST_CASE("jacobi pins a known 2x2 spectrum") {
    CMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    m(0, 1) = {0.0, -2.0};
    m(1, 0) = {0.0, 2.0};
    auto eig = hermitian_eigenvalues(m);  // eigenvalues +-sqrt(5)
    CHECK(eig[0] == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-12));
    CHECK(eig[1] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("trace distance triangle inequality on random triples") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        int bits = 1 + static_cast<int>(rng.next_below(3));
        DensityOperator a = dense_embedding(random_state(bits, rng));
        DensityOperator b = dense_embedding(random_state(bits, rng));
        DensityOperator c = dense_embedding(random_state(bits, rng));
        CHECK(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-9);
    }
}

TEST_CASE("entropies") {
    CHECK(shannon_entropy_bits(DiagonalState::uniform(6)) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(von_neumann_entropy_bits(DensityOperator::pure(std::vector<std::complex<double>>{0.6, 0.8})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    DiagonalState biased(1, {{0, Dyadic::scaled(3, 2)}, {1, Dyadic::scaled(1, 2)}});
    CHECK(shannon_entropy_bits(biased) == doctest::Approx(2.0 - 0.75 * std::log2(3.0)).epsilon(1e-12));
    CHECK(entropy(biased).shannon_bits == doctest::Approx(0.8112781244591328).epsilon(1e-12));

    SplitMix64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        DiagonalState a = random_state(2, rng);
        DiagonalState b = random_state(3, rng);
        CHECK(std::abs(shannon_entropy_bits(tensor_diag(a, b)) -
                       (shannon_entropy_bits(a) + shannon_entropy_bits(b))) < 1e-12);
    }
}

TEST_CASE("fully mixed states") {
    DiagonalState bit = DiagonalState::uniform(1);
    CHECK(bit.weight(0) == Dyadic::pow2(-1));
    CHECK(bit.weight(1) == Dyadic::pow2(-1));
    CHECK(DiagonalState::uniform(3).support_size() == 8);
    DensityOperator mixed = DensityOperator::fully_mixed(2);
    CHECK(mixed.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(0));
    CHECK(von_neumann_entropy_bits(mixed) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("density operator validation") {
    CMatrix bad(2);
    bad(0, 0) = 1.0;
    bad(0, 1) = 0.5;  // not Hermitian
    CHECK_THROWS_AS(DensityOperator{bad}, std::invalid_argument);

    CMatrix trace_off = CMatrix::identity(2);
    CHECK_THROWS_AS(DensityOperator{trace_off}, std::invalid_argument);

    CMatrix negative(2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityOperator{negative}, std::invalid_argument);
}

TEST_CASE("serialization round trips") {
    DiagonalState s(3, {{0b001, Dyadic::scaled(3, 2)}, {0b110, Dyadic::scaled(1, 2)}});
    std::stringstream ss;
    s.store(ss);
    CHECK(ss.str() == "001 3/2^2\n110 1/2^2\n");
    CHECK(DiagonalState::load(ss) == s);

    SplitMix64 rng(3);
    CMatrix m = random_hermitian(3, rng);
    m(0, 0) = m(0, 0).real() + 10.0;  // make it dominant-diagonal positive
    m(1, 1) = m(1, 1).real() + 10.0;
    m(2, 2) = m(2, 2).real() + 10.0;
    double tr = m.trace().real();
    m *= 1.0 / tr;
    DensityOperator rho(m);
    std::stringstream ds;
    rho.store(ds);
    DensityOperator back = DensityOperator::load(ds);
    CHECK(trace_distance(rho, back) < 1e-14);
}
