#pragma once

#include "qsrlab/gf2.hpp"
#include "qsrlab/qsr.hpp"
#include "qsrlab/qstate.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace qsrlab {

/// Exact machinery built on the key-averaged cipher of the all-zero message
/// tuple. Every tuple's averaged cipher is the same table with the message
/// bits XORed into the masked fields, so distances for arbitrary tuples
/// reduce to scans of one count table.
class AveragedCipherTable {
public:
    explicit AveragedCipherTable(const SchemeParams& params);

    const SchemeParams& params() const { return params_; }
    const std::vector<std::uint32_t>& counts() const { return counts_; }
    int grain() const { return grain_; }

    /// Mask that turns the zero-tuple table into the table of this tuple;
    /// tuple packs the messages first to last, message_bits each.
    std::uint64_t tuple_mask(std::uint64_t tuple) const;

    /// || averaged_cipher(tuple) - fully mixed ||, exact.
    Dyadic distance_to_uniform(std::uint64_t tuple = 0) const;

    /// || averaged_cipher(a) - averaged_cipher(b) ||, exact.
    Dyadic pair_distance(std::uint64_t tuple_a, std::uint64_t tuple_b) const;

    /// Measured nonzero weights with multiplicities, descending weight.
    std::vector<std::pair<Dyadic, BigInt>> spectrum() const;

private:
    SchemeParams params_;
    std::vector<std::uint32_t> counts_;
    int grain_ = 0;
};

/// epsilon* = 2 sum_d P(d) (1 - 2^-(t-d)m) from the rank distribution of the
/// nonce tuple. One of the two independent routes to the exact distance.
Dyadic randomization_distance_closed_form(const SchemeParams& params);

/// Predicted spectrum of the zero-tuple averaged cipher: weight 2^-(dm+tn)
/// with multiplicity 2^tn P(d) 2^dm for each reachable rank d.
std::vector<std::pair<Dyadic, BigInt>> cipher_spectrum_predicted(const SchemeParams& params);

struct SecurityReport {
    SchemeParams params;
    Dyadic epsilon_exact;  // both routes agree exactly or construction throws
    Dyadic bound;          // 2^(t - n + 1)
    std::vector<std::pair<Dyadic, BigInt>> spectrum;
    bool holds = false;    // epsilon_exact <= bound
};

SecurityReport randomization_distance_exact(const SchemeParams& params);
SecurityReport randomization_distance_exact(const AveragedCipherTable& table);

/// Probability distribution over message tuples; a tuple packs the messages
/// first to last, message_bits each.
struct TupleDistribution {
    int message_bits = 1;
    int copies = 0;
    std::vector<std::pair<std::uint64_t, Dyadic>> probs;

    static TupleDistribution uniform(int message_bits, int copies);
    static TupleDistribution point(int message_bits, int copies, std::uint64_t tuple);
    static TupleDistribution two_point(int message_bits, int copies, std::uint64_t a, std::uint64_t b);

    void validate() const;  // weights positive, sum exactly one
    double entropy_bits() const;
};

/// Joint-versus-product distance of the message/cipher state for the matrix
/// scheme under the given tuple distribution; block-diagonality in the
/// message register reduces it to sum_s P(s) || C_s - C_avg ||.
Dyadic secure_epsilon(const SchemeParams& params, const TupleDistribution& dist);

/// A generic invertible classical-message scheme: key distribution plus the
/// cipher state of each (key, message) pair. Used to exercise the key-size
/// bound on schemes other than the matrix one.
struct SchemeDescription {
    int message_bits = 1;
    int cipher_bits = 1;
    std::vector<Dyadic> key_probs;
    std::function<DiagonalState(std::size_t key_index, std::uint64_t message)> cipher;

    static SchemeDescription matrix_scheme(const SchemeParams& params);
};

/// Throws unless every positive-probability key has pairwise disjoint cipher
/// supports across messages.
void check_invertible(const SchemeDescription& scheme);

struct BoundReport {
    double lhs = 0.0;  // measured joint-versus-product distance
    double rhs = 0.0;  // (H(messages) - H(key) - 2) / (4 t log2 |S|)
    double h_messages_bits = 0.0;
    double h_key_bits = 0.0;
    bool satisfied = false;  // lhs >= rhs - 1e-10
};

/// Key-entropy lower bound on the secrecy distance for invertible schemes.
BoundReport key_entropy_bound_check(const SchemeDescription& scheme, const TupleDistribution& dist);

/// Continuity of conditional entropy in trace distance (Alicki-Fannes), on
/// classical states diagonal over (prefix register A || remainder B):
/// |S(rho|B) - S(sigma|B)| <= 4 delta log2 dA + 2 h(delta).
struct EntropyContinuityReport {
    double gap = 0.0;        // |S(rho|B) - S(sigma|B)|
    double allowance = 0.0;  // 4 delta log2 dA + 2 h(delta)
    double delta = 0.0;
    bool satisfied = false;
};

EntropyContinuityReport alicki_fannes_gap(const DiagonalState& rho, const DiagonalState& sigma,
                                          int prefix_bits);

/// Necessary key entropy for a randomizing or indistinguishable scheme:
/// (1 - 8 eps) t log2 d - 2, clamped to zero when vacuous.
struct MinEntropyBound {
    double bits = 0.0;
    bool clamped = false;
};

MinEntropyBound min_key_entropy_bits(int copies, std::uint64_t dim, double eps);

/// Factor-two equivalence of the randomization and secrecy definitions,
/// evaluated on the worst-case family of two-point tuple distributions plus
/// the uniform and point distributions.
struct EquivalenceReport {
    Dyadic eps_randomizing;  // distance to fully mixed
    Dyadic eps_secure;       // max secrecy distance over the battery
    Dyadic worst_pair;       // max || gamma_a - gamma_b || over tuple pairs
    bool secure_within = false;       // eps_secure <= 2 eps_randomizing
    bool randomizing_within = false;  // eps_randomizing <= 2 eps_secure
};

EquivalenceReport security_equivalence_check(const SchemeParams& params);
EquivalenceReport security_equivalence_check(const AveragedCipherTable& table);

}  // namespace qsrlab
