#pragma once

#include "qsrlab/gf2.hpp"
#include "qsrlab/qstate.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qsrlab {

class SplitMix64;

/// Pauli mask pair over q qubits. As a classical string the key reads
/// (x_mask || z_mask), 2q bits with the X part in the high bits.
struct PauliKey {
    BitVector x_mask;
    BitVector z_mask;

    static PauliKey from_bits(std::uint64_t bits, int qubits);
    std::uint64_t to_bits() const;

    /// "x_hex z_hex qubits"
    std::string wire() const;
    static PauliKey from_wire(std::string_view text);

    friend bool operator==(const PauliKey&, const PauliKey&) = default;
};

/// X^a Z^b  M  Z^b X^a on raw matrix entries; involutive at this level.
CMatrix pauli_conjugate(const PauliKey& key, const CMatrix& m);

DensityOperator apply_pauli(const PauliKey& key, const DensityOperator& rho);

/// Average over all 4^q Pauli keys: exactly the fully mixed state.
DensityOperator randomize_full(const DensityOperator& rho, int qubits);

/// Pad restricted to an explicit key list (keys distinct, chosen uniformly).
struct SubsampledScheme {
    int qubits = 1;
    std::vector<PauliKey> keys;

    SubsampledScheme(int qubits, std::vector<PauliKey> keys);
    static SubsampledScheme full_pad(int qubits);
    bool is_full_pad() const;
};

/// Empirical randomization distance of the pad: max over sampled pure states
/// of the trace distance between the key-averaged output and the fully mixed
/// state. A lower estimate of the true worst case, never a certified bound.
double randomization_epsilon_estimate(const SubsampledScheme& scheme, int trials, SplitMix64& rng);

/// Haar-random pure state / random full-rank mixed state.
DensityOperator random_pure_state(int dim, SplitMix64& rng);
DensityOperator random_mixed_state(int dim, SplitMix64& rng);

}  // namespace qsrlab
