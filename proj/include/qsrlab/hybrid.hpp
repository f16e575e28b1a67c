#pragma once

#include "qsrlab/pauli.hpp"
#include "qsrlab/qsr.hpp"
#include "qsrlab/qstate.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>

namespace qsrlab {

/// Cipher of a quantum message: the Pauli-padded state plus the matrix-scheme
/// cipher of the pad key. Decrypting the classical part with the decryption
/// key recovers the pad key that generated the quantum part.
struct HybridCipher {
    CipherInstance classical;
    DensityOperator quantum;

    void store(std::ostream& out) const;
    static HybridCipher load(std::istream& in);
};

/// Draw a pad key s uniformly on {0,1}^m, Pauli-pad the message with s, and
/// encrypt s under the matrix scheme. Requires m == 2 * qubits.
HybridCipher hybrid_encrypt(const BitMatrix& key, const DensityOperator& message, SplitMix64& rng);

DensityOperator hybrid_decrypt(const BitMatrix& key, const HybridCipher& cipher);

/// Classical-quantum state stored block-diagonally: one quantum block per
/// classical basis string; the trace of a block is its classical weight.
struct BlockState {
    int classical_bits = 0;
    int block_dim = 1;
    std::map<std::uint64_t, CMatrix> blocks;

    double total_trace() const;
    /// Marginal quantum state: sum of all blocks.
    CMatrix quantum_marginal() const;
};

/// Exact single-use hybrid cipher state for a fixed decryption key,
/// averaged over the pad key choice.
BlockState hybrid_cipher_state(const BitMatrix& key, const DensityOperator& message,
                               const SubsampledScheme& pad);

/// Same, additionally averaged over all decryption keys.
BlockState hybrid_cipher_state_averaged(int security_bits, const DensityOperator& message,
                                        const SubsampledScheme& pad);

/// Exact trace distance between the eavesdropper's state for the hybrid
/// scheme (used_copies padded ciphers plus the unused key copies, averaged
/// over decryption and pad keys) and the product of fully mixed states.
/// The state is block-diagonal over the classical registers, so the trace
/// norm is the sum of per-block trace norms.
double hybrid_randomization_distance(const SchemeParams& params, const SubsampledScheme& pad,
                                     std::span<const DensityOperator> messages, int used_copies);

/// Key-entropy accounting for the composed scheme.
struct KeyBudget {
    int copies = 0;
    std::uint64_t dim = 2;
    double eps1 = 0.0;
    double eps2 = 0.0;
    double entropy_bits = 0.0;        // (t + log2(1/e1) + 1)(log2 d + log2(1/e2) + 4)
    double pauli_entropy_bits = 0.0;  // (t + log2(1/e1) + 1) * 2 log2 d, the exact-pad alternative
    double lower_bound_bits = 0.0;    // (1 - 8 eps) t log2 d - 2 with eps = e1 + t e2
    double ratio = 0.0;               // entropy_bits / (t log2 d)
};

KeyBudget key_budget(int copies, std::uint64_t dim, double eps1, double eps2);

}  // namespace qsrlab
