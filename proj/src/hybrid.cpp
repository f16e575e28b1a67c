#include "qsrlab/hybrid.hpp"

#include "qsrlab/rng.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qsrlab {

namespace {

int qubits_for_dim(int dim) {
    int q = 0;
    while ((1 << q) < dim) ++q;
    if ((1 << q) != dim) throw std::invalid_argument("hybrid: message dimension must be a power of two");
    return q;
}

void check_pad_matches(int message_bits, int qubits) {
    if (message_bits != 2 * qubits)
        throw std::invalid_argument("hybrid: message_bits must equal 2 * qubits (one X and one Z mask per qubit)");
}

}  // namespace

void HybridCipher::store(std::ostream& out) const {
    out << classical.wire() << '\n';
    quantum.store(out);
}

HybridCipher HybridCipher::load(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("HybridCipher: missing classical line");
    return HybridCipher{CipherInstance::from_wire(line), DensityOperator::load(in)};
}

HybridCipher hybrid_encrypt(const BitMatrix& key, const DensityOperator& message, SplitMix64& rng) {
    int q = qubits_for_dim(message.dim());
    check_pad_matches(key.rows(), q);
    std::uint64_t pad_bits = rng.next_bits(2 * q);
    PauliKey pad = PauliKey::from_bits(pad_bits, q);
    KeyInstance inst = sample_key_instance(key, rng);
    return HybridCipher{encrypt_instance(inst, BitVector(2 * q, static_cast<std::uint32_t>(pad_bits))),
                        apply_pauli(pad, message)};
}

DensityOperator hybrid_decrypt(const BitMatrix& key, const HybridCipher& cipher) {
    BitVector pad_bits = decrypt(key, cipher.classical);
    int q = qubits_for_dim(cipher.quantum.dim());
    check_pad_matches(pad_bits.len(), q);
    return apply_pauli(PauliKey::from_bits(pad_bits.value(), q), cipher.quantum);
}

double BlockState::total_trace() const {
    double t = 0.0;
    for (const auto& [z, block] : blocks) t += block.trace().real();
    return t;
}

CMatrix BlockState::quantum_marginal() const {
    CMatrix acc(block_dim);
    for (const auto& [z, block] : blocks) acc += block;
    return acc;
}

BlockState hybrid_cipher_state(const BitMatrix& key, const DensityOperator& message,
                               const SubsampledScheme& pad) {
    int q = pad.qubits;
    check_pad_matches(key.rows(), q);
    if (message.dim() != (1 << q)) throw std::invalid_argument("hybrid_cipher_state: dimension mismatch");
    int m = key.rows(), n = key.cols();

    BlockState out;
    out.classical_bits = m + n;
    out.block_dim = 1 << q;
    double key_prob = 1.0 / static_cast<double>(pad.keys.size());
    double nonce_prob = std::ldexp(1.0, -n);

    for (const PauliKey& s : pad.keys) {
        CMatrix padded = pauli_conjugate(s, message.matrix());
        padded *= key_prob * nonce_prob;
        std::uint32_t s_bits = static_cast<std::uint32_t>(s.to_bits());
        for (std::uint32_t x = 0; x < (1u << n); ++x) {
            std::uint32_t y = matvec(key, BitVector(n, x)).value() ^ s_bits;
            std::uint64_t z = (static_cast<std::uint64_t>(y) << n) | x;
            auto [it, inserted] = out.blocks.try_emplace(z, CMatrix(out.block_dim));
            it->second += padded;
        }
    }
    return out;
}

BlockState hybrid_cipher_state_averaged(int security_bits, const DensityOperator& message,
                                        const SubsampledScheme& pad) {
    int q = pad.qubits;
    int m = 2 * q, n = security_bits;
    if ((std::uint64_t{1} << (static_cast<unsigned>(m) * n)) > (1u << 20))
        throw std::invalid_argument("hybrid_cipher_state_averaged: key space too large");
    BlockState out;
    out.classical_bits = m + n;
    out.block_dim = 1 << q;
    double key_prob = std::ldexp(1.0, -m * n);

    std::uint64_t key_count = std::uint64_t{1} << (m * n);
    for (std::uint64_t code = 0; code < key_count; ++code) {
        BitMatrix a(m, n);
        std::uint64_t rest = code;
        for (int r = 0; r < m; ++r) {
            a.set_row_bits(r, static_cast<std::uint32_t>(rest) & ((1u << n) - 1u));
            rest >>= n;
        }
        BlockState one = hybrid_cipher_state(a, message, pad);
        for (auto& [z, block] : one.blocks) {
            block *= key_prob;
            auto [it, inserted] = out.blocks.try_emplace(z, CMatrix(out.block_dim));
            it->second += block;
        }
    }
    return out;
}

double hybrid_randomization_distance(const SchemeParams& params, const SubsampledScheme& pad,
                                     std::span<const DensityOperator> messages, int used_copies) {
    params.require_exact_enumeration();
    int q = pad.qubits;
    int m = params.message_bits, n = params.security_bits, t = params.key_copies;
    check_pad_matches(m, q);
    if (used_copies < 0 || used_copies > t)
        throw std::invalid_argument("hybrid_randomization_distance: used_copies must be in [0, t]");
    if (static_cast<int>(messages.size()) != used_copies)
        throw std::invalid_argument("hybrid_randomization_distance: need one message per used copy");
    for (const DensityOperator& s : messages)
        if (s.dim() != (1 << q)) throw std::invalid_argument("hybrid_randomization_distance: dimension mismatch");

    std::size_t key_count = static_cast<std::size_t>(pad.keys.size());
    int block_dim = 1;
    for (int i = 0; i < used_copies; ++i) block_dim *= 1 << q;
    if (block_dim > 64) throw std::invalid_argument("hybrid_randomization_distance: quantum block too large");

    // Pad-key membership and index over the classical message space.
    std::vector<int> key_index(std::size_t{1} << m, -1);
    for (std::size_t k = 0; k < key_count; ++k)
        key_index[pad.keys[k].to_bits()] = static_cast<int>(k);

    // Q[tuple] = F_{s_1}(sigma_1) (x) ... (x) F_{s_t1}(sigma_t1), indexed by
    // base-K digits with register 1 as the most significant digit.
    std::size_t tuple_count = 1;
    for (int i = 0; i < used_copies; ++i) tuple_count *= key_count;
    std::vector<CMatrix> padded_blocks(tuple_count);
    for (std::size_t tuple = 0; tuple < tuple_count; ++tuple) {
        CMatrix acc(1);
        acc(0, 0) = 1.0;
        std::size_t rest = tuple;
        std::size_t scale = tuple_count;
        for (int i = 0; i < used_copies; ++i) {
            scale /= key_count;
            std::size_t ki = rest / scale;
            rest %= scale;
            acc = pauli_conjugate(pad.keys[ki], messages[static_cast<std::size_t>(i)].matrix()).kron_from_left(acc);
        }
        padded_blocks[tuple] = std::move(acc);
    }

    // Per-key matvec tables.
    std::size_t mat_count = std::size_t{1} << params.key_bits();
    std::vector<std::uint32_t> ax(mat_count << n);
    for (std::size_t code = 0; code < mat_count; ++code) {
        BitMatrix a(m, n);
        std::size_t rest = code;
        for (int r = 0; r < m; ++r) {
            a.set_row_bits(r, static_cast<std::uint32_t>(rest) & ((1u << n) - 1u));
            rest >>= n;
        }
        for (std::uint32_t x = 0; x < (1u << n); ++x)
            ax[(code << n) | x] = matvec(a, BitVector(n, x)).value();
    }

    // Stream over classical strings; per string accumulate matched decryption
    // keys by pad-key tuple, then take the block trace norm of the deviation
    // from the fully mixed target.
    int total_bits = params.total_bits();
    double tau_weight = std::ldexp(1.0, -total_bits);
    double weight = std::ldexp(1.0, -params.key_bits() - t * n) / std::pow(static_cast<double>(key_count), used_copies);
    std::uint32_t reg_mask = (1u << (m + n)) - 1u;
    std::uint32_t nonce_mask = (1u << n) - 1u;

    std::vector<std::uint32_t> tuple_hits(tuple_count);
    std::vector<std::size_t> seen;
    CMatrix diff(block_dim);
    double total = 0.0;

    for (std::uint64_t z = 0; z < (std::uint64_t{1} << total_bits); ++z) {
        seen.clear();
        for (std::size_t code = 0; code < mat_count; ++code) {
            std::size_t tuple = 0;
            bool ok = true;
            for (int i = 0; i < t; ++i) {
                std::uint32_t reg = static_cast<std::uint32_t>(z >> ((t - 1 - i) * (m + n))) & reg_mask;
                std::uint32_t y = reg >> n;
                std::uint32_t image = ax[(code << n) | (reg & nonce_mask)];
                if (i < used_copies) {
                    int ki = key_index[y ^ image];
                    if (ki < 0) {
                        ok = false;
                        break;
                    }
                    tuple = tuple * key_count + static_cast<std::size_t>(ki);
                } else if (y != image) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            if (tuple_hits[tuple]++ == 0) seen.push_back(tuple);
        }

        if (seen.empty()) {
            // Zero block versus tau: trace norm is the tau block's trace.
            total += tau_weight;
            continue;
        }
        diff = CMatrix(block_dim);
        for (std::size_t tuple : seen) {
            CMatrix part = padded_blocks[tuple];
            part *= weight * static_cast<double>(tuple_hits[tuple]);
            diff += part;
            tuple_hits[tuple] = 0;
        }
        double unit = tau_weight / block_dim;
        for (int i = 0; i < block_dim; ++i) diff(i, i) -= unit;
        total += trace_norm_hermitian(diff);
    }
    return total;
}

KeyBudget key_budget(int copies, std::uint64_t dim, double eps1, double eps2) {
    if (copies < 1) throw std::invalid_argument("key_budget: copies must be >= 1");
    if (dim < 2) throw std::invalid_argument("key_budget: dim must be >= 2");
    if (!(eps1 > 0.0 && eps1 <= 1.0) || !(eps2 > 0.0 && eps2 <= 1.0))
        throw std::invalid_argument("key_budget: eps1 and eps2 must be in (0, 1]");

    double log_d = std::log2(static_cast<double>(dim));
    double t = static_cast<double>(copies);
    KeyBudget b;
    b.copies = copies;
    b.dim = dim;
    b.eps1 = eps1;
    b.eps2 = eps2;
    b.entropy_bits = (t + std::log2(1.0 / eps1) + 1.0) * (log_d + std::log2(1.0 / eps2) + 4.0);
    b.pauli_entropy_bits = (t + std::log2(1.0 / eps1) + 1.0) * (2.0 * log_d);
    double eps = eps1 + t * eps2;
    b.lower_bound_bits = (1.0 - 8.0 * eps) * t * log_d - 2.0;
    b.ratio = b.entropy_bits / (t * log_d);
    return b;
}

}  // namespace qsrlab
