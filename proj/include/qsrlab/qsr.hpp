#pragma once

#include "qsrlab/gf2.hpp"
#include "qsrlab/qstate.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qsrlab {

class SplitMix64;

/// One scheme instance: message length, security parameter, and the number
/// of key copies released. The decryption key is a uniformly random
/// message_bits x security_bits matrix over GF(2).
struct SchemeParams {
    int message_bits = 1;   // m
    int security_bits = 1;  // n
    int key_copies = 0;     // t
    std::optional<double> delta;

    SchemeParams(int message_bits, int security_bits, int key_copies);

    /// key_copies = floor((1 - delta) * security_bits), delta in (0, 1).
    static SchemeParams from_delta(int message_bits, int security_bits, double delta);

    int cipher_bits() const { return message_bits + security_bits; }
    int total_bits() const { return key_copies * cipher_bits(); }
    int key_bits() const { return message_bits * security_bits; }  // log2 of the key count

    /// Exact enumeration walks all keys and nonce tuples; refuse when the
    /// state space exceeds the desk-scale guards.
    void require_exact_enumeration() const;
};

/// Uniformly random decryption key.
BitMatrix keygen(int message_bits, int security_bits, SplitMix64& rng);

/// The shareable key state: uniform weight 2^-n on the strings (Ax || x).
DiagonalState encryption_key_state(const BitMatrix& key);

/// Cipher of a fixed message: uniform weight 2^-n on ((Ax ^ s) || x).
DiagonalState cipher_state(const BitMatrix& key, const BitVector& message);

/// One operational sample of the key state: pad = A * nonce.
struct KeyInstance {
    BitVector pad;    // A x
    BitVector nonce;  // x, sent in clear with the cipher
};

struct CipherInstance {
    BitVector masked;  // (A x) ^ s
    BitVector nonce;   // x

    /// "masked_hex nonce_hex message_bits security_bits"
    std::string wire() const;
    static CipherInstance from_wire(std::string_view text);

    friend bool operator==(const CipherInstance&, const CipherInstance&) = default;
};

KeyInstance sample_key_instance(const BitMatrix& key, SplitMix64& rng);
CipherInstance encrypt_instance(const KeyInstance& key, const BitVector& message);
BitVector decrypt(const BitMatrix& key, const CipherInstance& cipher);

/// Ciphers of the message tuple averaged over all keys, as exact weights.
/// The basis string concatenates the cipher registers first to last, each
/// register ordered (masked || nonce).
DiagonalState averaged_cipher(const SchemeParams& params, std::span<const BitVector> messages);

/// Same state at fixed weight grain: counts[z] * 2^-(mn + tn) is the weight
/// of basis string z. This is the raw form used by the large exact sweeps.
std::vector<std::uint32_t> averaged_cipher_counts(const SchemeParams& params,
                                                  std::span<const BitVector> messages);

/// What an eavesdropper holds when used_copies ciphers were produced and the
/// remaining key copies leaked: for each key, the cipher registers followed
/// by the unused key-state registers, mixed uniformly over keys.
DiagonalState adversary_state(const SchemeParams& params, int used_copies,
                              std::span<const BitVector> messages);

}  // namespace qsrlab
