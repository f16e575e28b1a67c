#include "qsrlab/verify.hpp"

#include "qsrlab/analysis.hpp"
#include "qsrlab/hybrid.hpp"
#include "qsrlab/pauli.hpp"
#include "qsrlab/qsr.hpp"
#include "qsrlab/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <sstream>

namespace qsrlab::verify {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<SchemeParams> acceptance_grid() {
    std::vector<SchemeParams> grid;
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 4; ++n)
            for (int t = 0; t <= 3; ++t) grid.emplace_back(m, n, t);
    return grid;
}

using TableCache = std::map<std::tuple<int, int, int>, AveragedCipherTable>;

const AveragedCipherTable& table_for(TableCache& cache, const SchemeParams& p) {
    auto key = std::make_tuple(p.message_bits, p.security_bits, p.key_copies);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, AveragedCipherTable(p)).first;
    return it->second;
}

struct Runner {
    std::ostream* progress;
    std::vector<CriterionResult> results;
    TableCache tables;

    void run(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
        auto start = Clock::now();
        CriterionResult r;
        r.id = id;
        r.name = name;
        try {
            auto [pass, detail] = body();
            r.pass = pass;
            r.detail = detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (progress) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2fs", r.seconds);
            *progress << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << " — "
                      << r.detail << " (" << buf << ")\n"
                      << std::flush;
        }
        results.push_back(std::move(r));
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream* progress) {
    Runner runner{progress, {}, {}};
    auto suite_start = Clock::now();
    const auto grid = acceptance_grid();

    runner.run(1, "spectrum law on the grid", [&] {
        int points = 0;
        for (const SchemeParams& p : grid) {
            const auto& table = table_for(runner.tables, p);
            if (table.spectrum() != cipher_spectrum_predicted(p))
                return std::pair{false, "spectrum mismatch at (" + std::to_string(p.message_bits) + "," +
                                            std::to_string(p.security_bits) + "," +
                                            std::to_string(p.key_copies) + ")"};
            ++points;
        }
        return std::pair{true, std::to_string(points) + " grid points, exact weight/multiplicity match"};
    });

    runner.run(2, "randomization distance value and bound", [&] {
        SecurityReport pinned = randomization_distance_exact(table_for(runner.tables, SchemeParams(1, 2, 2)));
        if (pinned.epsilon_exact != Dyadic::scaled(21, 5))
            return std::pair{false, "eps*(1,2,2) = " + pinned.epsilon_exact.to_fraction() + ", expected 21/32"};
        for (const SchemeParams& p : grid) {
            SecurityReport r = randomization_distance_exact(table_for(runner.tables, p));
            if (!r.holds)
                return std::pair{false, "bound violated at (" + std::to_string(p.message_bits) + "," +
                                            std::to_string(p.security_bits) + "," +
                                            std::to_string(p.key_copies) + ")"};
        }
        Dyadic half = Dyadic::pow2(-1);
        for (int m = 1; m <= 3; ++m) {
            SchemeParams p = SchemeParams::from_delta(m, 4, 0.5);  // n = 4, t = 2
            SecurityReport r = randomization_distance_exact(table_for(runner.tables, p));
            if (!(r.epsilon_exact <= half))
                return std::pair{false, "eps* > 1/2 at delta = 1/2, n = 4, m = " + std::to_string(m)};
        }
        return std::pair{true, std::string("eps*(1,2,2) = 21/32 both routes; bound holds on the grid; ") +
                                   "eps* <= 1/2 at n=4, t=2"};
    });

    runner.run(3, "rank distribution oracle", [&] {
        int pairs = 0;
        for (int n = 1; n <= 16; ++n) {
            for (int t = 0; n * t <= 16; ++t) {
                RankDistribution fast = rank_distribution(n, t);
                RankDistribution slow = rank_distribution_bruteforce(n, t);
                if (fast.probs != slow.probs)
                    return std::pair{false, "recurrence != enumeration at n=" + std::to_string(n) +
                                                ", t=" + std::to_string(t)};
                if (t <= n) {
                    Dyadic product(1);
                    for (int i = 0; i < t; ++i) product *= Dyadic(1) - Dyadic::pow2(i - n);
                    if (fast.probs[static_cast<std::size_t>(t)] != product)
                        return std::pair{false, "full-rank probability != product formula at n=" +
                                                    std::to_string(n) + ", t=" + std::to_string(t)};
                }
                ++pairs;
            }
        }
        return std::pair{true, std::to_string(pairs) + " (n,t) pairs, exact equality"};
    });

    runner.run(4, "invertibility of the matrix scheme", [&] {
        for (int m = 1; m <= 3; ++m)
            for (int n = 1; n <= 3; ++n) {
                for (std::uint64_t code = 0; code < (std::uint64_t{1} << (m * n)); ++code) {
                    BitMatrix a(m, n);
                    std::uint64_t rest = code;
                    for (int r = 0; r < m; ++r) {
                        a.set_row_bits(r, static_cast<std::uint32_t>(rest) & ((1u << n) - 1u));
                        rest >>= n;
                    }
                    std::vector<bool> used(std::size_t{1} << (m + n), false);
                    for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
                        DiagonalState c = cipher_state(a, BitVector(m, static_cast<std::uint32_t>(s)));
                        for (const auto& [z, w] : c.entries()) {
                            if (used[z]) return std::pair{false, std::string("overlapping cipher supports")};
                            used[z] = true;
                        }
                    }
                }
            }
        return std::pair{true, std::string("cipher supports disjoint for all keys, m,n <= 3")};
    });

    runner.run(5, "key-state identity and zero padding", [&] {
        for (int m = 1; m <= 3; ++m)
            for (int n = 1; n <= 4; ++n)
                for (std::uint64_t code = 0; code < (std::uint64_t{1} << (m * n)); ++code) {
                    BitMatrix a(m, n);
                    std::uint64_t rest = code;
                    for (int r = 0; r < m; ++r) {
                        a.set_row_bits(r, static_cast<std::uint32_t>(rest) & ((1u << n) - 1u));
                        rest >>= n;
                    }
                    if (!(cipher_state(a, BitVector::zero(m)) == encryption_key_state(a)))
                        return std::pair{false, std::string("cipher of zero != key state")};
                }
        for (const SchemeParams& p : grid) {
            if (p.key_copies == 0) continue;
            std::vector<BitVector> tuple;
            for (int i = 0; i < p.key_copies; ++i)
                tuple.emplace_back(p.message_bits,
                                   static_cast<std::uint32_t>((i + 1) & ((1u << p.message_bits) - 1u)));
            for (int used = 0; used <= p.key_copies; ++used) {
                std::span<const BitVector> msgs(tuple.data(), static_cast<std::size_t>(used));
                std::vector<BitVector> padded(tuple.begin(), tuple.begin() + used);
                padded.resize(static_cast<std::size_t>(p.key_copies), BitVector::zero(p.message_bits));
                if (!(adversary_state(p, used, msgs) == averaged_cipher(p, padded)))
                    return std::pair{false, "padding identity failed at (" + std::to_string(p.message_bits) +
                                                "," + std::to_string(p.security_bits) + "," +
                                                std::to_string(p.key_copies) + "), t1=" + std::to_string(used)};
            }
        }
        return std::pair{true, std::string("key state = zero cipher for all keys; ") +
                                   "adversary state = zero-padded averaged cipher, all t1 on the grid"};
    });

    runner.run(6, "randomizing/secure factor-two sandwich", [&] {
        for (const SchemeParams& p : grid) {
            EquivalenceReport r = security_equivalence_check(table_for(runner.tables, p));
            if (!r.secure_within || !r.randomizing_within)
                return std::pair{false, "sandwich failed at (" + std::to_string(p.message_bits) + "," +
                                            std::to_string(p.security_bits) + "," +
                                            std::to_string(p.key_copies) + ")"};
        }
        return std::pair{true, std::string("eps_s <= 2 eps_r and eps_r <= 2 eps_s exactly on the grid")};
    });

    runner.run(7, "key-entropy lower bound", [&] {
        // The one non-vacuous pinned instance: m=4, n=1, t=3, uniform tuples.
        SchemeParams big(4, 1, 3);
        BoundReport pinned = key_entropy_bound_check(SchemeDescription::matrix_scheme(big),
                                                     TupleDistribution::uniform(4, 3));
        if (!(pinned.lhs >= 0.125 - 1e-10) || !pinned.satisfied)
            return std::pair{false, "lhs = " + fmt(pinned.lhs) + " < 1/8 at m=4, n=1, t=3"};
        // Grid: uniform, worst two-point, and point distributions, using the
        // exact battery values.
        for (const SchemeParams& p : grid) {
            if (p.key_copies == 0) continue;
            const auto& table = table_for(runner.tables, p);
            EquivalenceReport eq = security_equivalence_check(table);
            double denom = 4.0 * p.key_copies * p.message_bits;
            double h_key = p.key_bits();
            int tm = p.key_copies * p.message_bits;
            struct Case {
                double lhs, h_messages;
            };
            std::vector<Case> cases = {
                {eq.eps_randomizing.to_double(), static_cast<double>(tm)},      // uniform
                {(Dyadic::pow2(-1) * eq.worst_pair).to_double(), 1.0},          // worst two-point
                {0.0, 0.0},                                                     // point mass
            };
            for (const Case& c : cases) {
                double rhs = (c.h_messages - h_key - 2.0) / denom;
                if (!(c.lhs >= rhs - 1e-10))
                    return std::pair{false, "bound failed at (" + std::to_string(p.message_bits) + "," +
                                                std::to_string(p.security_bits) + "," +
                                                std::to_string(p.key_copies) + ")"};
            }
        }
        // A non-uniform-key toy scheme: shift pad with biased keys.
        SchemeDescription toy;
        toy.message_bits = 2;
        toy.cipher_bits = 2;
        toy.key_probs = {Dyadic::pow2(-1), Dyadic::pow2(-2), Dyadic::pow2(-3), Dyadic::pow2(-3)};
        toy.cipher = [](std::size_t k, std::uint64_t s) {
            return DiagonalState::point_mass(2, s ^ static_cast<std::uint64_t>(k));
        };
        for (const TupleDistribution& dist :
             {TupleDistribution::uniform(2, 2), TupleDistribution::two_point(2, 2, 0b0000, 0b1101)}) {
            BoundReport r = key_entropy_bound_check(toy, dist);
            if (!r.satisfied) return std::pair{false, std::string("bound failed on the biased-key toy scheme")};
        }
        return std::pair{true, "lhs = " + fmt(pinned.lhs) + " >= 1/8 at (4,1,3); grid and toy cases hold"};
    });

    runner.run(8, "pauli pad perfection", [&] {
        SplitMix64 rng(0x9A11u);
        double worst = 0.0;
        for (int q = 1; q <= 2; ++q) {
            DensityOperator target = DensityOperator::fully_mixed(1 << q);
            for (int trial = 0; trial < 100; ++trial) {
                DensityOperator rho = (trial % 2 == 0) ? random_pure_state(1 << q, rng)
                                                       : random_mixed_state(1 << q, rng);
                worst = std::max(worst, trace_distance(randomize_full(rho, q), target));
            }
        }
        if (worst > 1e-11) return std::pair{false, "worst distance " + fmt(worst) + " > 1e-11"};
        return std::pair{true, "100 states per q in {1,2}, worst distance " + fmt(worst)};
    });

    runner.run(9, "hybrid composition bound", [&] {
        SubsampledScheme full = SubsampledScheme::full_pad(1);
        SubsampledScheme sub(1, {PauliKey::from_bits(0b00, 1), PauliKey::from_bits(0b10, 1)});
        SplitMix64 est_rng(0xE511u);
        double eps2_est = randomization_epsilon_estimate(sub, 2000, est_rng);

        double worst_gap = 0.0;
        for (int n = 1; n <= 4; ++n) {
            for (int t = 1; t <= 3; ++t) {
                SchemeParams p(2, n, t);
                double eps1 = randomization_distance_closed_form(p).to_double();
                for (int used = 0; used <= t; ++used) {
                    SplitMix64 state_rng(0x51E0u + static_cast<std::uint64_t>((n * 8 + t) * 16 + used));
                    std::vector<DensityOperator> msgs;
                    for (int i = 0; i < used; ++i) msgs.push_back(random_pure_state(2, state_rng));

                    double hd = hybrid_randomization_distance(p, full, msgs, used);
                    if (hd > eps1 + 1e-9)
                        return std::pair{false, "exact-pad distance " + fmt(hd) + " > eps1 = " + fmt(eps1)};
                    if (used == 0 && std::abs(hd - eps1) > 1e-11)
                        return std::pair{false, "classical-only mismatch " + fmt(std::abs(hd - eps1))};

                    double hd_sub = hybrid_randomization_distance(p, sub, msgs, used);
                    double allowance = eps1 + used * eps2_est + 1e-9;
                    if (hd_sub > allowance)
                        return std::pair{false, "subsampled distance " + fmt(hd_sub) + " > " + fmt(allowance)};
                    worst_gap = std::max(worst_gap, hd_sub - eps1 - used * eps2_est);
                }
            }
        }
        return std::pair{true, "bound holds on the grid (eps2_est = " + fmt(eps2_est) +
                                   ", worst margin " + fmt(-worst_gap) + ")"};
    });

    runner.run(10, "key budget accounting", [&] {
        KeyBudget pinned = key_budget(2, 4, 0.125, 0.0625);
        if (pinned.entropy_bits != 60.0)
            return std::pair{false, "entropy = " + fmt(pinned.entropy_bits) + ", expected 60"};
        // Asymptotic ratio at t = 16, d = 2^10 with eps1 = 2^-(4 t), eps2 = d^-16.
        double delta1 = 4.0, delta2 = 16.0;
        KeyBudget asym = key_budget(16, std::uint64_t{1} << 10, std::pow(2.0, -delta1 * 16.0),
                                    std::pow(2.0, -10.0 * delta2));
        double target = (1.0 + delta1) * (1.0 + delta2);
        if (std::abs(asym.ratio - target) > 0.05 * target)
            return std::pair{false, "ratio " + fmt(asym.ratio) + " not within 5% of " + fmt(target)};
        // Feasibility: the lower bound never exceeds the construction.
        for (int t = 1; t <= 16; ++t)
            for (int logd = 1; logd <= 10; ++logd) {
                KeyBudget b = key_budget(t, std::uint64_t{1} << logd, 0.125, 0.0625);
                if (b.lower_bound_bits > b.entropy_bits)
                    return std::pair{false, std::string("lower bound above entropy in the sweep")};
            }
        return std::pair{true, "entropy(2,4,2^-3,2^-4) = 60; ratio " + fmt(asym.ratio) + " vs " +
                                   fmt(target) + "; sweep feasible"};
    });

    double elapsed = std::chrono::duration<double>(Clock::now() - suite_start).count();
    bool others = all_pass(runner.results);
    runner.run(11, "full suite runtime", [&] {
        bool ok = others && elapsed < 120.0;
        return std::pair{ok, fmt(elapsed) + "s elapsed, limit 120s" +
                                 (others ? "" : " (earlier criterion failed)")};
    });

    return runner.results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace qsrlab::verify
