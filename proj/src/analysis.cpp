#include "qsrlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qsrlab {

namespace {

double binary_entropy_bits(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

BitVector tuple_component(std::uint64_t tuple, int index, int message_bits, int copies) {
    std::uint32_t mask = (1u << message_bits) - 1u;
    return BitVector(message_bits,
                     static_cast<std::uint32_t>(tuple >> ((copies - 1 - index) * message_bits)) & mask);
}

std::vector<BitVector> unpack_tuple(std::uint64_t tuple, int message_bits, int copies) {
    std::vector<BitVector> out;
    out.reserve(static_cast<std::size_t>(copies));
    for (int i = 0; i < copies; ++i) out.push_back(tuple_component(tuple, i, message_bits, copies));
    return out;
}

/// l1 distance where small's support is tiny compared to big's.
Dyadic l1_against(const DiagonalState& small, const DiagonalState& big) {
    Dyadic covered;   // big's mass on small's support
    Dyadic on_support;
    for (const auto& [z, w] : small.entries()) {
        Dyadic bw = big.weight(z);
        covered += bw;
        on_support += (w - bw).abs();
    }
    return on_support + (Dyadic(1) - covered);
}

DiagonalState mix(int num_bits, const std::vector<std::pair<Dyadic, const DiagonalState*>>& parts) {
    std::map<std::uint64_t, Dyadic> acc;
    for (const auto& [p, state] : parts)
        for (const auto& [z, w] : state->entries()) acc[z] += p * w;
    std::vector<DiagonalState::Entry> entries(acc.begin(), acc.end());
    return DiagonalState(num_bits, std::move(entries));
}

}  // namespace

AveragedCipherTable::AveragedCipherTable(const SchemeParams& params) : params_(params) {
    std::vector<BitVector> zeros(static_cast<std::size_t>(params.key_copies),
                                 BitVector::zero(params.message_bits));
    counts_ = averaged_cipher_counts(params, zeros);
    grain_ = params.key_bits() + params.key_copies * params.security_bits;
}

std::uint64_t AveragedCipherTable::tuple_mask(std::uint64_t tuple) const {
    int m = params_.message_bits, n = params_.security_bits, t = params_.key_copies;
    std::uint64_t mask = 0;
    std::uint64_t mmask = (std::uint64_t{1} << m) - 1;
    for (int i = 0; i < t; ++i) {
        std::uint64_t s = (tuple >> ((t - 1 - i) * m)) & mmask;
        mask |= s << ((t - 1 - i) * (m + n) + n);
    }
    return mask;
}

Dyadic AveragedCipherTable::distance_to_uniform(std::uint64_t tuple) const {
    int total_bits = params_.total_bits();
    int common = std::max(grain_, total_bits);
    int count_shift = common - grain_;
    std::int64_t tau_num = std::int64_t{1} << (common - total_bits);
    std::uint64_t mask = tuple_mask(tuple);
    std::int64_t sum = 0;
    for (std::uint64_t z = 0; z < counts_.size(); ++z) {
        std::int64_t w = static_cast<std::int64_t>(counts_[z ^ mask]) << count_shift;
        sum += std::abs(w - tau_num);
    }
    return Dyadic::scaled(BigInt(sum), static_cast<unsigned>(common));
}

Dyadic AveragedCipherTable::pair_distance(std::uint64_t tuple_a, std::uint64_t tuple_b) const {
    std::uint64_t mask = tuple_mask(tuple_a) ^ tuple_mask(tuple_b);
    if (mask == 0) return Dyadic(0);
    std::int64_t sum = 0;
    for (std::uint64_t z = 0; z < counts_.size(); ++z) {
        std::int64_t d = static_cast<std::int64_t>(counts_[z]) - static_cast<std::int64_t>(counts_[z ^ mask]);
        sum += std::abs(d);
    }
    return Dyadic::scaled(BigInt(sum), static_cast<unsigned>(grain_));
}

std::vector<std::pair<Dyadic, BigInt>> AveragedCipherTable::spectrum() const {
    std::map<std::uint32_t, std::uint64_t> hist;
    for (std::uint32_t c : counts_)
        if (c != 0) ++hist[c];
    std::vector<std::pair<Dyadic, BigInt>> out;
    out.reserve(hist.size());
    for (auto it = hist.rbegin(); it != hist.rend(); ++it)
        out.emplace_back(Dyadic::scaled(BigInt(it->first), static_cast<unsigned>(grain_)), BigInt(it->second));
    return out;
}

Dyadic randomization_distance_closed_form(const SchemeParams& params) {
    RankDistribution rd = rank_distribution(params.security_bits, params.key_copies);
    Dyadic sum;
    for (int d = 0; d <= params.key_copies; ++d) {
        if (rd.probs[static_cast<std::size_t>(d)].is_zero()) continue;
        Dyadic shortfall = Dyadic(1) - Dyadic::pow2(-(params.key_copies - d) * params.message_bits);
        sum += rd.probs[static_cast<std::size_t>(d)] * shortfall;
    }
    return Dyadic(2) * sum;
}

std::vector<std::pair<Dyadic, BigInt>> cipher_spectrum_predicted(const SchemeParams& params) {
    int m = params.message_bits, n = params.security_bits, t = params.key_copies;
    RankDistribution rd = rank_distribution(n, t);
    std::vector<std::pair<Dyadic, BigInt>> out;
    for (int d = 0; d <= std::min(t, n); ++d) {
        const Dyadic& p = rd.probs[static_cast<std::size_t>(d)];
        if (p.is_zero()) continue;
        unsigned tn = static_cast<unsigned>(t) * static_cast<unsigned>(n);
        if (p.exponent() > tn) throw std::logic_error("rank distribution denominator exceeds 2^tn");
        BigInt multiplicity = (p.numerator() << (tn - p.exponent())) << (d * m);
        out.emplace_back(Dyadic::pow2(-(d * m + t * n)), std::move(multiplicity));
    }
    // Ascending d gives descending weight already.
    return out;
}

SecurityReport randomization_distance_exact(const SchemeParams& params) {
    return randomization_distance_exact(AveragedCipherTable(params));
}

SecurityReport randomization_distance_exact(const AveragedCipherTable& table) {
    const SchemeParams& p = table.params();
    Dyadic closed = randomization_distance_closed_form(p);
    Dyadic enumerated = table.distance_to_uniform(0);
    if (closed != enumerated)
        throw std::logic_error("randomization distance: closed form and enumeration disagree");
    SecurityReport report{p, closed, Dyadic::pow2(p.key_copies - p.security_bits + 1), table.spectrum(), false};
    report.holds = report.epsilon_exact <= report.bound;
    return report;
}

TupleDistribution TupleDistribution::uniform(int message_bits, int copies) {
    TupleDistribution d{message_bits, copies, {}};
    int bits = message_bits * copies;
    if (bits > 24) throw std::invalid_argument("TupleDistribution: uniform support too large");
    Dyadic p = Dyadic::pow2(-bits);
    d.probs.reserve(std::size_t{1} << bits);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << bits); ++s) d.probs.emplace_back(s, p);
    return d;
}

TupleDistribution TupleDistribution::point(int message_bits, int copies, std::uint64_t tuple) {
    return TupleDistribution{message_bits, copies, {{tuple, Dyadic(1)}}};
}

TupleDistribution TupleDistribution::two_point(int message_bits, int copies, std::uint64_t a, std::uint64_t b) {
    if (a == b) throw std::invalid_argument("TupleDistribution: two_point needs distinct tuples");
    return TupleDistribution{message_bits, copies, {{a, Dyadic::pow2(-1)}, {b, Dyadic::pow2(-1)}}};
}

void TupleDistribution::validate() const {
    if (message_bits < 1 || copies < 0) throw std::invalid_argument("TupleDistribution: bad shape");
    Dyadic total;
    for (const auto& [tuple, p] : probs) {
        if (copies * message_bits < 64 && (tuple >> (copies * message_bits)) != 0)
            throw std::invalid_argument("TupleDistribution: tuple wider than copies * message_bits");
        if (p.sign() <= 0) throw std::invalid_argument("TupleDistribution: weights must be positive");
        total += p;
    }
    if (total != Dyadic(1)) throw std::invalid_argument("TupleDistribution: weights must sum to 1");
}

Dyadic secure_epsilon(const SchemeParams& params, const TupleDistribution& dist) {
    dist.validate();
    if (dist.message_bits != params.message_bits || dist.copies != params.key_copies)
        throw std::invalid_argument("secure_epsilon: distribution shape mismatch");

    AveragedCipherTable table(params);
    const auto& counts = table.counts();
    int grain = table.grain();

    // Common exponent for the tuple probabilities.
    unsigned prob_exp = 0;
    for (const auto& [tuple, p] : dist.probs) prob_exp = std::max(prob_exp, p.exponent());
    if (static_cast<int>(prob_exp) + grain > 62)
        throw std::invalid_argument("secure_epsilon: probability resolution too fine for exact scan");
    if (dist.probs.size() * counts.size() > (std::size_t{1} << 28))
        throw std::invalid_argument("secure_epsilon: support too large for exact evaluation");

    std::vector<std::pair<std::uint64_t, std::int64_t>> scaled;  // (mask, numerator at prob_exp)
    scaled.reserve(dist.probs.size());
    for (const auto& [tuple, p] : dist.probs)
        scaled.emplace_back(table.tuple_mask(tuple),
                            (p.numerator() << (prob_exp - p.exponent())).convert_to<std::int64_t>());

    // Average cipher under the distribution, as numerators at grain + prob_exp.
    std::vector<std::int64_t> avg(counts.size(), 0);
    for (const auto& [mask, pnum] : scaled)
        for (std::uint64_t z = 0; z < counts.size(); ++z)
            avg[z] += pnum * static_cast<std::int64_t>(counts[z ^ mask]);

    Dyadic lhs;
    std::size_t idx = 0;
    for (const auto& [tuple, p] : dist.probs) {
        std::uint64_t mask = scaled[idx++].first;
        std::int64_t sum = 0;
        for (std::uint64_t z = 0; z < counts.size(); ++z) {
            std::int64_t w = static_cast<std::int64_t>(counts[z ^ mask]) << prob_exp;
            sum += std::abs(w - avg[z]);
        }
        lhs += p * Dyadic::scaled(BigInt(sum), static_cast<unsigned>(grain) + prob_exp);
    }
    return lhs;
}

SchemeDescription SchemeDescription::matrix_scheme(const SchemeParams& params) {
    params.require_exact_enumeration();
    int m = params.message_bits, n = params.security_bits;
    SchemeDescription scheme;
    scheme.message_bits = m;
    scheme.cipher_bits = m + n;
    scheme.key_probs.assign(std::size_t{1} << params.key_bits(), Dyadic::pow2(-params.key_bits()));
    scheme.cipher = [m, n](std::size_t key_index, std::uint64_t message) {
        BitMatrix a(m, n);
        std::size_t rest = key_index;
        for (int r = 0; r < m; ++r) {
            a.set_row_bits(r, static_cast<std::uint32_t>(rest) & ((1u << n) - 1u));
            rest >>= n;
        }
        return cipher_state(a, BitVector(m, static_cast<std::uint32_t>(message)));
    };
    return scheme;
}

void check_invertible(const SchemeDescription& scheme) {
    Dyadic total;
    for (const Dyadic& p : scheme.key_probs) {
        if (p.sign() < 0) throw std::invalid_argument("scheme: negative key probability");
        total += p;
    }
    if (total != Dyadic(1)) throw std::invalid_argument("scheme: key probabilities must sum to 1");

    std::vector<bool> used(std::size_t{1} << scheme.cipher_bits);
    for (std::size_t k = 0; k < scheme.key_probs.size(); ++k) {
        if (scheme.key_probs[k].is_zero()) continue;
        std::fill(used.begin(), used.end(), false);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << scheme.message_bits); ++s) {
            DiagonalState c = scheme.cipher(k, s);
            if (c.num_bits() != scheme.cipher_bits)
                throw std::invalid_argument("scheme: cipher register width mismatch");
            for (const auto& [z, w] : c.entries()) {
                if (used[z])
                    throw std::invalid_argument("scheme is not invertible: cipher supports overlap");
                used[z] = true;
            }
        }
    }
}

BoundReport key_entropy_bound_check(const SchemeDescription& scheme, const TupleDistribution& dist) {
    dist.validate();
    if (dist.message_bits != scheme.message_bits)
        throw std::invalid_argument("key_entropy_bound_check: message width mismatch");
    if (dist.copies < 1) throw std::invalid_argument("key_entropy_bound_check: need at least one copy");
    check_invertible(scheme);

    int t = dist.copies;
    int joint_bits = scheme.cipher_bits * t;
    if (joint_bits > 24) throw std::invalid_argument("key_entropy_bound_check: joint cipher register too wide");

    // Per-tuple key-averaged cipher states.
    std::vector<DiagonalState> per_tuple;
    per_tuple.reserve(dist.probs.size());
    for (const auto& [tuple, p] : dist.probs) {
        std::vector<std::pair<Dyadic, const DiagonalState*>> parts;
        std::vector<DiagonalState> keep;
        keep.reserve(scheme.key_probs.size());
        for (std::size_t k = 0; k < scheme.key_probs.size(); ++k) {
            if (scheme.key_probs[k].is_zero()) continue;
            DiagonalState acc = DiagonalState::point_mass(0, 0);
            for (int i = 0; i < t; ++i) {
                std::uint64_t s = (tuple >> ((t - 1 - i) * scheme.message_bits)) &
                                  ((std::uint64_t{1} << scheme.message_bits) - 1);
                acc = tensor_diag(acc, scheme.cipher(k, s));
            }
            keep.push_back(std::move(acc));
            parts.emplace_back(scheme.key_probs[k], &keep.back());
        }
        per_tuple.push_back(mix(joint_bits, parts));
    }

    std::vector<std::pair<Dyadic, const DiagonalState*>> weighted;
    weighted.reserve(per_tuple.size());
    for (std::size_t i = 0; i < per_tuple.size(); ++i)
        weighted.emplace_back(dist.probs[i].second, &per_tuple[i]);
    DiagonalState average = mix(joint_bits, weighted);

    Dyadic lhs;
    for (std::size_t i = 0; i < per_tuple.size(); ++i)
        lhs += dist.probs[i].second * l1_against(per_tuple[i], average);

    double h_key = 0.0;
    for (const Dyadic& p : scheme.key_probs) {
        double v = p.to_double();
        if (v > 0.0) h_key -= v * std::log2(v);
    }

    BoundReport report;
    report.lhs = lhs.to_double();
    report.h_messages_bits = dist.entropy_bits();
    report.h_key_bits = h_key;
    report.rhs = (report.h_messages_bits - report.h_key_bits - 2.0) /
                 (4.0 * static_cast<double>(t) * static_cast<double>(scheme.message_bits));
    report.satisfied = report.lhs >= report.rhs - 1e-10;
    return report;
}

double TupleDistribution::entropy_bits() const {
    double h = 0.0;
    for (const auto& [tuple, p] : probs) {
        double v = p.to_double();
        if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
}

EntropyContinuityReport alicki_fannes_gap(const DiagonalState& rho, const DiagonalState& sigma,
                                          int prefix_bits) {
    if (rho.num_bits() != sigma.num_bits())
        throw std::invalid_argument("alicki_fannes_gap: register size mismatch");
    if (prefix_bits < 0 || prefix_bits > rho.num_bits())
        throw std::invalid_argument("alicki_fannes_gap: bad prefix width");

    double delta = l1_distance(rho, sigma).to_double();
    if (delta > 1.0) throw std::invalid_argument("alicki_fannes_gap: hypothesis needs distance <= 1");

    int suffix_bits = rho.num_bits() - prefix_bits;
    std::uint64_t suffix_mask = (suffix_bits >= 64) ? ~std::uint64_t{0}
                                                    : ((std::uint64_t{1} << suffix_bits) - 1);
    auto conditional_entropy = [&](const DiagonalState& s) {
        std::map<std::uint64_t, Dyadic> marginal;
        for (const auto& [z, w] : s.entries()) marginal[z & suffix_mask] += w;
        double h_marginal = 0.0;
        for (const auto& [z, w] : marginal) {
            double v = w.to_double();
            if (v > 0.0) h_marginal -= v * std::log2(v);
        }
        return shannon_entropy_bits(s) - h_marginal;
    };

    EntropyContinuityReport report;
    report.delta = delta;
    report.gap = std::abs(conditional_entropy(rho) - conditional_entropy(sigma));
    report.allowance = 4.0 * delta * static_cast<double>(prefix_bits) + 2.0 * binary_entropy_bits(delta);
    report.satisfied = report.gap <= report.allowance + 1e-9;
    return report;
}

MinEntropyBound min_key_entropy_bits(int copies, std::uint64_t dim, double eps) {
    if (eps < 0.0) throw std::invalid_argument("min_key_entropy_bits: eps must be >= 0");
    double bits = (1.0 - 8.0 * eps) * static_cast<double>(copies) * std::log2(static_cast<double>(dim)) - 2.0;
    if (bits < 0.0) return {0.0, true};
    return {bits, false};
}

EquivalenceReport security_equivalence_check(const SchemeParams& params) {
    return security_equivalence_check(AveragedCipherTable(params));
}

EquivalenceReport security_equivalence_check(const AveragedCipherTable& table) {
    const SchemeParams& p = table.params();
    EquivalenceReport report;
    report.eps_randomizing = randomization_distance_exact(table).epsilon_exact;

    // Worst two-point distribution: distances depend only on the XOR class of
    // the tuple pair, so sweeping one side against the zero tuple covers all
    // pairs.
    std::uint64_t tuples = std::uint64_t{1} << (p.key_copies * p.message_bits);
    for (std::uint64_t diff = 1; diff < tuples; ++diff) {
        Dyadic d = table.pair_distance(diff, 0);
        if (report.worst_pair < d) report.worst_pair = d;
    }

    // Battery: two-point value is half the pair distance; the uniform value
    // equals the randomization distance because the uniform tuple average of
    // the cipher is exactly the fully mixed state (masked field = Ax ^ s is
    // uniform in s) and the per-tuple distances coincide under the XOR
    // relabeling; point masses contribute zero.
    report.eps_secure = Dyadic::pow2(-1) * report.worst_pair;
    if (report.eps_secure < report.eps_randomizing) report.eps_secure = report.eps_randomizing;

    report.secure_within = report.eps_secure <= Dyadic(2) * report.eps_randomizing;
    report.randomizing_within = report.eps_randomizing <= Dyadic(2) * report.eps_secure;
    return report;
}

}  // namespace qsrlab
