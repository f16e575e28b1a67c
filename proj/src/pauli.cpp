#include "qsrlab/pauli.hpp"

#include "qsrlab/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsrlab {

namespace {

constexpr int kMaxQubits = 3;  // dim <= 8 keeps dense work trivial

void check_qubits(int qubits) {
    if (qubits < 1 || qubits > kMaxQubits)
        throw std::invalid_argument("pauli: qubits must be in [1, 3]");
}

int parity(std::uint32_t v) { return std::popcount(v) & 1; }

}  // namespace

PauliKey PauliKey::from_bits(std::uint64_t bits, int qubits) {
    check_qubits(qubits);
    std::uint32_t mask = (1u << qubits) - 1u;
    return PauliKey{BitVector(qubits, static_cast<std::uint32_t>(bits >> qubits) & mask),
                    BitVector(qubits, static_cast<std::uint32_t>(bits) & mask)};
}

std::uint64_t PauliKey::to_bits() const {
    return (static_cast<std::uint64_t>(x_mask.value()) << z_mask.len()) | z_mask.value();
}

std::string PauliKey::wire() const {
    auto hex = [](std::uint32_t v) {
        std::string out;
        do {
            out.insert(out.begin(), "0123456789abcdef"[v & 0xf]);
            v >>= 4;
        } while (v != 0);
        return out;
    };
    return hex(x_mask.value()) + " " + hex(z_mask.value()) + " " + std::to_string(x_mask.len());
}

PauliKey PauliKey::from_wire(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string a_hex, b_hex;
    int q = 0;
    if (!(in >> a_hex >> b_hex >> q)) throw std::invalid_argument("PauliKey: bad wire format");
    auto parse = [](const std::string& s) {
        std::uint32_t v = 0;
        for (char c : s) {
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
            else throw std::invalid_argument("PauliKey: bad hex digit");
            v = (v << 4) | static_cast<std::uint32_t>(d);
        }
        return v;
    };
    check_qubits(q);
    return PauliKey{BitVector(q, parse(a_hex)), BitVector(q, parse(b_hex))};
}

CMatrix pauli_conjugate(const PauliKey& key, const CMatrix& m) {
    int q = key.x_mask.len();
    int dim = 1 << q;
    if (m.dim() != dim) throw std::invalid_argument("pauli_conjugate: dimension mismatch");
    std::uint32_t a = key.x_mask.value();
    std::uint32_t b = key.z_mask.value();
    CMatrix out(dim);
    // (X^a Z^b M Z^b X^a)(u, v) = (-1)^{b.(u ^ v)} M(u ^ a, v ^ a)
    for (int u = 0; u < dim; ++u)
        for (int v = 0; v < dim; ++v) {
            double sign = parity(b & (static_cast<std::uint32_t>(u) ^ static_cast<std::uint32_t>(v))) ? -1.0 : 1.0;
            out(u, v) = sign * m(u ^ static_cast<int>(a), v ^ static_cast<int>(a));
        }
    return out;
}

DensityOperator apply_pauli(const PauliKey& key, const DensityOperator& rho) {
    return DensityOperator(pauli_conjugate(key, rho.matrix()));
}

DensityOperator randomize_full(const DensityOperator& rho, int qubits) {
    check_qubits(qubits);
    int dim = 1 << qubits;
    if (rho.dim() != dim) throw std::invalid_argument("randomize_full: dimension mismatch");
    CMatrix acc(dim);
    std::uint64_t key_count = std::uint64_t{1} << (2 * qubits);
    for (std::uint64_t bits = 0; bits < key_count; ++bits)
        acc += pauli_conjugate(PauliKey::from_bits(bits, qubits), rho.matrix());
    acc *= 1.0 / static_cast<double>(key_count);
    return DensityOperator(std::move(acc));
}

SubsampledScheme::SubsampledScheme(int qubits_, std::vector<PauliKey> keys_)
    : qubits(qubits_), keys(std::move(keys_)) {
    check_qubits(qubits);
    if (keys.empty()) throw std::invalid_argument("SubsampledScheme: at least one key required");
    std::vector<std::uint64_t> codes;
    codes.reserve(keys.size());
    for (const PauliKey& k : keys) {
        if (k.x_mask.len() != qubits || k.z_mask.len() != qubits)
            throw std::invalid_argument("SubsampledScheme: key width mismatch");
        codes.push_back(k.to_bits());
    }
    std::sort(codes.begin(), codes.end());
    if (std::adjacent_find(codes.begin(), codes.end()) != codes.end())
        throw std::invalid_argument("SubsampledScheme: keys must be distinct");
}

SubsampledScheme SubsampledScheme::full_pad(int qubits) {
    check_qubits(qubits);
    std::vector<PauliKey> keys;
    keys.reserve(std::size_t{1} << (2 * qubits));
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (2 * qubits)); ++bits)
        keys.push_back(PauliKey::from_bits(bits, qubits));
    return SubsampledScheme(qubits, std::move(keys));
}

bool SubsampledScheme::is_full_pad() const {
    return keys.size() == (std::size_t{1} << (2 * qubits));
}

double randomization_epsilon_estimate(const SubsampledScheme& scheme, int trials, SplitMix64& rng) {
    if (trials < 1) throw std::invalid_argument("randomization_epsilon_estimate: trials must be >= 1");
    int dim = 1 << scheme.qubits;
    CMatrix target = CMatrix::identity(dim);
    target *= 1.0 / dim;

    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        DensityOperator probe = random_pure_state(dim, rng);
        CMatrix mixed(dim);
        for (const PauliKey& k : scheme.keys) mixed += pauli_conjugate(k, probe.matrix());
        mixed *= 1.0 / static_cast<double>(scheme.keys.size());
        worst = std::max(worst, trace_norm_hermitian(mixed - target));
    }
    return worst;
}

DensityOperator random_pure_state(int dim, SplitMix64& rng) {
    std::vector<std::complex<double>> amp(static_cast<std::size_t>(dim));
    double norm2 = 0.0;
    for (auto& z : amp) {
        z = {rng.next_gaussian(), rng.next_gaussian()};
        norm2 += std::norm(z);
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : amp) z *= inv;
    return DensityOperator::pure(amp);
}

DensityOperator random_mixed_state(int dim, SplitMix64& rng) {
    // G G^dag / tr for a square complex Gaussian G: full rank almost surely.
    std::vector<std::complex<double>> g(static_cast<std::size_t>(dim) * dim);
    for (auto& z : g) z = {rng.next_gaussian(), rng.next_gaussian()};
    CMatrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            std::complex<double> acc = 0.0;
            for (int k = 0; k < dim; ++k)
                acc += g[static_cast<std::size_t>(r) * dim + k] * std::conj(g[static_cast<std::size_t>(c) * dim + k]);
            m(r, c) = acc;
        }
    double tr = m.trace().real();
    m *= 1.0 / tr;
    // Symmetrize away the last-bit rounding so construction checks pass.
    for (int r = 0; r < dim; ++r)
        for (int c = r + 1; c < dim; ++c) {
            auto avg = 0.5 * (m(r, c) + std::conj(m(c, r)));
            m(r, c) = avg;
            m(c, r) = std::conj(avg);
        }
    for (int r = 0; r < dim; ++r) m(r, r) = m(r, r).real();
    return DensityOperator(std::move(m));
}

}  // namespace qsrlab
