#include "qsrlab/qsr.hpp"

#include "qsrlab/rng.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsrlab {

namespace {

std::uint32_t parse_hex(std::string_view s) {
    std::uint32_t v = 0;
    if (s.empty()) throw std::invalid_argument("empty hex field");
    for (char c : s) {
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        else throw std::invalid_argument("bad hex digit");
        v = (v << 4) | static_cast<std::uint32_t>(digit);
    }
    return v;
}

std::string to_hex(std::uint32_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    do {
        out.insert(out.begin(), digits[v & 0xf]);
        v >>= 4;
    } while (v != 0);
    return out;
}

/// Table of A * x for every nonce x, packed as (m + n)-bit strings (Ax || x).
std::vector<std::uint32_t> key_instance_table(const BitMatrix& key) {
    int n = key.cols();
    std::vector<std::uint32_t> table(std::size_t{1} << n);
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
        std::uint32_t y = matvec(key, BitVector(n, x)).value();
        table[x] = (y << n) | x;
    }
    return table;
}

BitMatrix key_from_code(std::uint64_t code, int m, int n) {
    BitMatrix a(m, n);
    std::uint32_t mask = (1u << n) - 1u;
    for (int r = 0; r < m; ++r) {
        a.set_row_bits(r, static_cast<std::uint32_t>(code) & mask);
        code >>= n;
    }
    return a;
}

}  // namespace

SchemeParams::SchemeParams(int message_bits_, int security_bits_, int key_copies_)
    : message_bits(message_bits_), security_bits(security_bits_), key_copies(key_copies_) {
    if (message_bits < 1 || message_bits > 8) throw std::invalid_argument("SchemeParams: message_bits must be in [1, 8]");
    if (security_bits < 1 || security_bits > 8) throw std::invalid_argument("SchemeParams: security_bits must be in [1, 8]");
    if (key_copies < 0) throw std::invalid_argument("SchemeParams: key_copies must be >= 0");
}

SchemeParams SchemeParams::from_delta(int message_bits, int security_bits, double d) {
    if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("SchemeParams: delta must be in (0, 1)");
    SchemeParams p(message_bits, security_bits, static_cast<int>(std::floor((1.0 - d) * security_bits)));
    p.delta = d;
    return p;
}

void SchemeParams::require_exact_enumeration() const {
    if (total_bits() > 24)
        throw std::invalid_argument("exact enumeration requires t(m+n) <= 24");
    if (key_bits() > 24)
        throw std::invalid_argument("exact enumeration requires mn <= 24");
}

BitMatrix keygen(int message_bits, int security_bits, SplitMix64& rng) {
    SchemeParams guard(message_bits, security_bits, 0);
    BitMatrix a(message_bits, security_bits);
    for (int r = 0; r < message_bits; ++r)
        a.set_row_bits(r, rng.next_bits(security_bits));
    return a;
}

DiagonalState encryption_key_state(const BitMatrix& key) {
    int n = key.cols();
    std::vector<DiagonalState::Entry> w;
    w.reserve(std::size_t{1} << n);
    Dyadic p = Dyadic::pow2(-n);
    for (std::uint32_t s : key_instance_table(key)) w.emplace_back(s, p);
    return DiagonalState(key.rows() + n, std::move(w));
}

DiagonalState cipher_state(const BitMatrix& key, const BitVector& message) {
    if (message.len() != key.rows()) throw std::invalid_argument("cipher_state: message length mismatch");
    int n = key.cols();
    std::uint32_t mask = static_cast<std::uint32_t>(message.value()) << n;
    std::vector<DiagonalState::Entry> w;
    w.reserve(std::size_t{1} << n);
    Dyadic p = Dyadic::pow2(-n);
    for (std::uint32_t s : key_instance_table(key)) w.emplace_back(s ^ mask, p);
    return DiagonalState(key.rows() + n, std::move(w));
}

std::string CipherInstance::wire() const {
    return to_hex(masked.value()) + " " + to_hex(nonce.value()) + " " +
           std::to_string(masked.len()) + " " + std::to_string(nonce.len());
}

CipherInstance CipherInstance::from_wire(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string y_hex, x_hex;
    int m = 0, n = 0;
    if (!(in >> y_hex >> x_hex >> m >> n)) throw std::invalid_argument("CipherInstance: bad wire format");
    return CipherInstance{BitVector(m, parse_hex(y_hex)), BitVector(n, parse_hex(x_hex))};
}

KeyInstance sample_key_instance(const BitMatrix& key, SplitMix64& rng) {
    BitVector x(key.cols(), rng.next_bits(key.cols()));
    return KeyInstance{matvec(key, x), x};
}

CipherInstance encrypt_instance(const KeyInstance& key, const BitVector& message) {
    if (message.len() != key.pad.len()) throw std::invalid_argument("encrypt_instance: message length mismatch");
    return CipherInstance{key.pad ^ message, key.nonce};
}

BitVector decrypt(const BitMatrix& key, const CipherInstance& cipher) {
    return cipher.masked ^ matvec(key, cipher.nonce);
}

std::vector<std::uint32_t> averaged_cipher_counts(const SchemeParams& params,
                                                  std::span<const BitVector> messages) {
    params.require_exact_enumeration();
    if (static_cast<int>(messages.size()) != params.key_copies)
        throw std::invalid_argument("averaged_cipher: need one message per key copy");
    int m = params.message_bits, n = params.security_bits, t = params.key_copies;
    for (const BitVector& s : messages)
        if (s.len() != m) throw std::invalid_argument("averaged_cipher: message length mismatch");

    std::vector<std::uint32_t> counts(std::size_t{1} << params.total_bits(), 0);
    std::uint64_t key_count = std::uint64_t{1} << params.key_bits();
    std::uint64_t nonce_tuples = std::uint64_t{1} << (static_cast<std::uint64_t>(t) * n);
    std::uint32_t nonce_mask = (1u << n) - 1u;

    std::vector<std::uint32_t> table;
    for (std::uint64_t code = 0; code < key_count; ++code) {
        BitMatrix a = key_from_code(code, m, n);
        table = key_instance_table(a);
        // Shift each (Ax || x) entry by the fixed message of its register.
        for (std::uint64_t xs = 0; xs < nonce_tuples; ++xs) {
            std::uint64_t z = 0;
            std::uint64_t rest = xs;
            for (int i = t - 1; i >= 0; --i) {
                std::uint32_t x = static_cast<std::uint32_t>(rest) & nonce_mask;
                rest >>= n;
                std::uint32_t reg = table[x] ^ (static_cast<std::uint32_t>(messages[static_cast<std::size_t>(i)].value()) << n);
                z |= static_cast<std::uint64_t>(reg) << ((t - 1 - i) * (m + n));
            }
            ++counts[z];
        }
    }
    return counts;
}

DiagonalState averaged_cipher(const SchemeParams& params, std::span<const BitVector> messages) {
    auto counts = averaged_cipher_counts(params, messages);
    int grain = params.key_bits() + params.key_copies * params.security_bits;
    std::vector<DiagonalState::Entry> w;
    for (std::uint64_t z = 0; z < counts.size(); ++z)
        if (counts[z] != 0)
            w.emplace_back(z, Dyadic::scaled(BigInt(counts[z]), static_cast<unsigned>(grain)));
    return DiagonalState(params.total_bits(), std::move(w));
}

DiagonalState adversary_state(const SchemeParams& params, int used_copies,
                              std::span<const BitVector> messages) {
    params.require_exact_enumeration();
    int t = params.key_copies;
    if (used_copies < 0 || used_copies > t)
        throw std::invalid_argument("adversary_state: used_copies must be in [0, t]");
    if (static_cast<int>(messages.size()) != used_copies)
        throw std::invalid_argument("adversary_state: need one message per used copy");

    // Mix, over all keys, the tensor product of the cipher states of the used
    // copies with the raw key states of the unused ones. Every entry weight
    // is 2^-tn by construction, which the accumulation verifies, so the mix
    // can be tallied in integer counts at grain 2^-(mn + tn).
    int grain_tensor = t * params.security_bits;
    int grain = params.key_bits() + grain_tensor;
    Dyadic expected = Dyadic::pow2(-grain_tensor);
    std::uint64_t key_count = std::uint64_t{1} << params.key_bits();
    std::vector<std::uint32_t> counts(std::size_t{1} << params.total_bits(), 0);

    for (std::uint64_t code = 0; code < key_count; ++code) {
        BitMatrix a = key_from_code(code, params.message_bits, params.security_bits);
        DiagonalState acc = DiagonalState::point_mass(0, 0);
        for (int i = 0; i < t; ++i) {
            DiagonalState reg = (i < used_copies)
                                    ? cipher_state(a, messages[static_cast<std::size_t>(i)])
                                    : encryption_key_state(a);
            acc = tensor_diag(acc, reg);
        }
        for (const auto& [basis, weight] : acc.entries()) {
            if (weight != expected)
                throw std::logic_error("adversary_state: unexpected non-uniform tensor weight");
            ++counts[basis];
        }
    }

    std::vector<DiagonalState::Entry> w;
    for (std::uint64_t z = 0; z < counts.size(); ++z)
        if (counts[z] != 0)
            w.emplace_back(z, Dyadic::scaled(BigInt(counts[z]), static_cast<unsigned>(grain)));
    return DiagonalState(params.total_bits(), std::move(w));
}

}  // namespace qsrlab
