// Command-line front end: key lifecycle, encryption, analysis sweeps, and
// the verification suite. Exit codes: 0 success, 1 usage error, 2 a checked
// bound failed.

#include "qsrlab/analysis.hpp"
#include "qsrlab/hybrid.hpp"
#include "qsrlab/pauli.hpp"
#include "qsrlab/qsr.hpp"
#include "qsrlab/rng.hpp"
#include "qsrlab/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using json = nlohmann::json;

namespace {

constexpr const char* kSchema = "qsrlab/1";

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QSRLAB_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 1;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

qsrlab::BitMatrix load_key(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open key file: " + path);
    return qsrlab::BitMatrix::load(in);
}

qsrlab::DensityOperator load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open state file: " + path);
    return qsrlab::DensityOperator::load(in);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    return file;
}

std::uint64_t parse_tuple_bits(const std::string& bits, int width) {
    if (static_cast<int>(bits.size()) != width)
        throw std::invalid_argument("tuple must have exactly t*m bits, got " + std::to_string(bits.size()));
    std::uint64_t v = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("tuple must be a bit string");
        v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

qsrlab::TupleDistribution parse_dist(const std::string& spec, int message_bits, int copies) {
    int width = message_bits * copies;
    if (spec == "uniform") return qsrlab::TupleDistribution::uniform(message_bits, copies);
    if (spec.rfind("point:", 0) == 0)
        return qsrlab::TupleDistribution::point(message_bits, copies, parse_tuple_bits(spec.substr(6), width));
    if (spec.rfind("pair:", 0) == 0) {
        std::string rest = spec.substr(5);
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("pair: needs two comma-separated tuples");
        return qsrlab::TupleDistribution::two_point(message_bits, copies,
                                                    parse_tuple_bits(rest.substr(0, comma), width),
                                                    parse_tuple_bits(rest.substr(comma + 1), width));
    }
    throw std::invalid_argument("unknown distribution: " + spec + " (use uniform, point:BITS, pair:BITS,BITS)");
}

qsrlab::SubsampledScheme parse_pad(const std::string& spec, int qubits) {
    if (spec.empty() || spec == "full") return qsrlab::SubsampledScheme::full_pad(qubits);
    std::vector<qsrlab::PauliKey> keys;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        keys.push_back(qsrlab::PauliKey::from_bits(std::strtoull(item.c_str(), nullptr, 0), qubits));
    return qsrlab::SubsampledScheme(qubits, std::move(keys));
}

json params_json(const qsrlab::SchemeParams& p) {
    json j{{"m", p.message_bits}, {"n", p.security_bits}, {"t", p.key_copies}};
    if (p.delta) j["delta"] = *p.delta;
    return j;
}

json report_json(const qsrlab::SecurityReport& r) {
    json spectrum = json::array();
    for (const auto& [weight, mult] : r.spectrum)
        spectrum.push_back(json::array({weight.to_fraction(), mult.str()}));
    return json{{"schema", kSchema},
                {"params", params_json(r.params)},
                {"epsilon_exact", r.epsilon_exact.to_fraction()},
                {"epsilon", r.epsilon_exact.to_double()},
                {"bound", r.bound.to_fraction()},
                {"spectrum", spectrum},
                {"holds", r.holds}};
}

struct GridSpec {
    int max_m = 3, max_n = 4, max_t = 3;
};

GridSpec parse_grid(const std::string& spec) {
    if (spec == "default") return {};
    GridSpec g;
    if (std::sscanf(spec.c_str(), "%dx%dx%d", &g.max_m, &g.max_n, &g.max_t) != 3)
        throw std::invalid_argument("grid must be 'default' or MxNxT, e.g. 3x4x3");
    return g;
}

int cmd_sweep(const GridSpec& grid, std::optional<double> delta, std::ostream& out) {
    out << "m,n,t,delta,epsilon_exact,epsilon,bound,key_entropy_bits,min_key_entropy_bits,holds\n";
    bool all_hold = true;
    for (int m = 1; m <= grid.max_m; ++m) {
        for (int n = 1; n <= grid.max_n; ++n) {
            std::vector<qsrlab::SchemeParams> rows;
            if (delta) {
                rows.push_back(qsrlab::SchemeParams::from_delta(m, n, *delta));
            } else {
                for (int t = 0; t <= grid.max_t; ++t) rows.emplace_back(m, n, t);
            }
            for (const qsrlab::SchemeParams& p : rows) {
                if (p.total_bits() > 24 || p.key_bits() > 24) continue;
                qsrlab::SecurityReport r = qsrlab::randomization_distance_exact(p);
                auto floor = qsrlab::min_key_entropy_bits(p.key_copies, std::uint64_t{1} << p.message_bits,
                                                          r.epsilon_exact.to_double());
                all_hold = all_hold && r.holds;
                out << p.message_bits << ',' << p.security_bits << ',' << p.key_copies << ','
                    << (p.delta ? fmt17(*p.delta) : "") << ',' << r.epsilon_exact.to_fraction() << ','
                    << fmt17(r.epsilon_exact.to_double()) << ',' << r.bound.to_fraction() << ','
                    << p.key_bits() << ',' << fmt17(floor.bits) << ',' << (r.holds ? "true" : "false")
                    << '\n';
            }
        }
    }
    return all_hold ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qsrlab: quantum state randomization laboratory with shareable keys"};
    app.require_subcommand(1);

    std::uint64_t seed = default_seed();
    app.add_option("--seed", seed, "RNG seed (default: QSRLAB_SEED env or 1)");

    int m = 1, n = 2, t = 1, t1 = -1, qubits = 1, eps2_trials = 1000, copies = 2;
    std::uint64_t dim = 2;
    double delta_flag = 0.0, eps1 = 0.125, eps2 = 0.0625;
    bool has_delta = false;
    std::string key_path, message_bits, output_path, format = "json", dist_spec = "uniform";
    std::string state_path, input_path, cipher_wire, grid_spec = "default", pad_spec = "full";

    auto* keygen = app.add_subcommand("keygen", "generate a decryption key");
    keygen->add_option("--m", m, "message bits")->required();
    keygen->add_option("--n", n, "security parameter bits")->required();
    keygen->add_option("--output,-o", output_path, "output file (default stdout)");

    auto* encrypt = app.add_subcommand("encrypt", "encrypt a classical message");
    encrypt->add_option("--key", key_path, "key file")->required();
    encrypt->add_option("--message", message_bits, "message bit string")->required();
    encrypt->add_option("--output,-o", output_path, "output file (default stdout)");

    auto* decrypt_cmd = app.add_subcommand("decrypt", "decrypt a cipher instance");
    decrypt_cmd->add_option("--key", key_path, "key file")->required();
    decrypt_cmd->add_option("--cipher", cipher_wire, "cipher wire line");
    decrypt_cmd->add_option("--input,-i", input_path, "file with the cipher wire line");
    decrypt_cmd->add_option("--output,-o", output_path, "output file (default stdout)");

    auto* henc = app.add_subcommand("hybrid-encrypt", "encrypt a quantum state");
    henc->add_option("--key", key_path, "key file")->required();
    henc->add_option("--state", state_path, "density operator file")->required();
    henc->add_option("--output,-o", output_path, "output file (default stdout)");

    auto* hdec = app.add_subcommand("hybrid-decrypt", "decrypt a hybrid cipher");
    hdec->add_option("--key", key_path, "key file")->required();
    hdec->add_option("--input,-i", input_path, "hybrid cipher file")->required();
    hdec->add_option("--output,-o", output_path, "output file (default stdout)");

    auto* analyze = app.add_subcommand("analyze", "evaluate one security quantity");
    std::string mode;
    analyze->add_option("mode", mode,
                        "randomization | secure | equivalence | entropy-bound | keysize | pauli | hybrid")
        ->required();
    analyze->add_option("--m", m, "message bits");
    analyze->add_option("--n", n, "security parameter bits");
    analyze->add_option("--t", t, "key copies");
    analyze->add_option("--delta", delta_flag, "derive t = floor((1-delta) n)")->each([&](const std::string&) {
        has_delta = true;
    });
    analyze->add_option("--t1", t1, "used key copies (default t)");
    analyze->add_option("--dist", dist_spec, "uniform | point:BITS | pair:BITS,BITS");
    analyze->add_option("--q", qubits, "qubits of the quantum message");
    analyze->add_option("--pad-keys", pad_spec, "pad keys: 'full' or comma-separated key codes");
    analyze->add_option("--eps2-trials", eps2_trials, "trials for the pad epsilon estimate");
    analyze->add_option("--d", dim, "message dimension (keysize)");
    analyze->add_option("--eps1", eps1, "classical-scheme epsilon (keysize)");
    analyze->add_option("--eps2", eps2, "pad epsilon (keysize)");
    analyze->add_option("--copies", copies, "key copies t (keysize)");
    analyze->add_option("--format", format, "json | text");
    analyze->add_option("--output,-o", output_path, "output file (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "CSV table of exact distances over a grid");
    sweep->add_option("--grid", grid_spec, "'default' (3x4x3) or MxNxT");
    sweep->add_option("--delta", delta_flag, "one row per (m,n) with t = floor((1-delta) n)")
        ->each([&](const std::string&) { has_delta = true; });
    sweep->add_option("--output,-o", output_path, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "run the full verification suite");
    verify->add_option("--grid", grid_spec, "suite grid (only 'default' is defined)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        std::ofstream file;
        if (keygen->parsed()) {
            qsrlab::SplitMix64 rng(seed);
            qsrlab::BitMatrix key = qsrlab::keygen(m, n, rng);
            key.store(open_output(file, output_path));
            return 0;
        }
        if (encrypt->parsed()) {
            qsrlab::BitMatrix key = load_key(key_path);
            qsrlab::BitVector msg = qsrlab::BitVector::from_string(message_bits);
            qsrlab::SplitMix64 rng(seed);
            qsrlab::CipherInstance c = qsrlab::encrypt_instance(qsrlab::sample_key_instance(key, rng), msg);
            open_output(file, output_path) << c.wire() << '\n';
            return 0;
        }
        if (decrypt_cmd->parsed()) {
            qsrlab::BitMatrix key = load_key(key_path);
            std::string wire = cipher_wire;
            if (wire.empty()) {
                if (input_path.empty()) throw std::invalid_argument("decrypt needs --cipher or --input");
                std::ifstream in(input_path);
                if (!in || !std::getline(in, wire)) throw std::invalid_argument("cannot read cipher file");
            }
            qsrlab::BitVector msg = qsrlab::decrypt(key, qsrlab::CipherInstance::from_wire(wire));
            open_output(file, output_path) << msg.str() << '\n';
            return 0;
        }
        if (henc->parsed()) {
            qsrlab::BitMatrix key = load_key(key_path);
            qsrlab::DensityOperator sigma = load_state(state_path);
            qsrlab::SplitMix64 rng(seed);
            qsrlab::hybrid_encrypt(key, sigma, rng).store(open_output(file, output_path));
            return 0;
        }
        if (hdec->parsed()) {
            qsrlab::BitMatrix key = load_key(key_path);
            std::ifstream in(input_path);
            if (!in) throw std::invalid_argument("cannot open cipher file: " + input_path);
            qsrlab::HybridCipher cipher = qsrlab::HybridCipher::load(in);
            qsrlab::hybrid_decrypt(key, cipher).store(open_output(file, output_path));
            return 0;
        }
        if (sweep->parsed()) {
            return cmd_sweep(parse_grid(grid_spec),
                             has_delta ? std::optional<double>(delta_flag) : std::nullopt,
                             open_output(file, output_path));
        }
        if (verify->parsed()) {
            if (grid_spec != "default")
                throw std::invalid_argument("verify: only --grid default is defined");
            auto results = qsrlab::verify::run_acceptance(&std::cout);
            return qsrlab::verify::all_pass(results) ? 0 : 2;
        }

        // analyze
        std::ostream& out = open_output(file, output_path);
        qsrlab::SchemeParams params = has_delta ? qsrlab::SchemeParams::from_delta(m, n, delta_flag)
                                                : qsrlab::SchemeParams(m, n, t);
        if (mode == "randomization") {
            qsrlab::SecurityReport r = qsrlab::randomization_distance_exact(params);
            if (format == "json") {
                out << report_json(r).dump(2) << '\n';
            } else {
                out << "epsilon_exact = " << r.epsilon_exact.to_fraction() << " = "
                    << fmt17(r.epsilon_exact.to_double()) << "\nbound = " << r.bound.to_fraction()
                    << "\nholds = " << (r.holds ? "true" : "false") << '\n';
            }
            return r.holds ? 0 : 2;
        }
        if (mode == "secure") {
            qsrlab::TupleDistribution dist = parse_dist(dist_spec, params.message_bits, params.key_copies);
            qsrlab::Dyadic eps = qsrlab::secure_epsilon(params, dist);
            json j{{"schema", kSchema},
                   {"params", params_json(params)},
                   {"dist", dist_spec},
                   {"secure_epsilon", eps.to_fraction()},
                   {"secure_epsilon_value", eps.to_double()}};
            out << (format == "json" ? j.dump(2) : "secure_epsilon = " + eps.to_fraction()) << '\n';
            return 0;
        }
        if (mode == "equivalence") {
            qsrlab::EquivalenceReport r = qsrlab::security_equivalence_check(params);
            bool ok = r.secure_within && r.randomizing_within;
            json j{{"schema", kSchema},
                   {"params", params_json(params)},
                   {"eps_randomizing", r.eps_randomizing.to_fraction()},
                   {"eps_secure", r.eps_secure.to_fraction()},
                   {"worst_pair", r.worst_pair.to_fraction()},
                   {"secure_within_2x", r.secure_within},
                   {"randomizing_within_2x", r.randomizing_within}};
            out << (format == "json" ? j.dump(2)
                                     : "eps_r = " + r.eps_randomizing.to_fraction() +
                                           ", eps_s = " + r.eps_secure.to_fraction() +
                                           (ok ? " (sandwich holds)" : " (sandwich FAILED)"))
                << '\n';
            return ok ? 0 : 2;
        }
        if (mode == "entropy-bound") {
            qsrlab::TupleDistribution dist = parse_dist(dist_spec, params.message_bits, params.key_copies);
            qsrlab::BoundReport r =
                qsrlab::key_entropy_bound_check(qsrlab::SchemeDescription::matrix_scheme(params), dist);
            json j{{"schema", kSchema},
                   {"params", params_json(params)},
                   {"dist", dist_spec},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"h_messages_bits", r.h_messages_bits},
                   {"h_key_bits", r.h_key_bits},
                   {"satisfied", r.satisfied}};
            out << (format == "json" ? j.dump(2)
                                     : "lhs = " + fmt17(r.lhs) + ", rhs = " + fmt17(r.rhs) +
                                           (r.satisfied ? " (holds)" : " (FAILED)"))
                << '\n';
            return r.satisfied ? 0 : 2;
        }
        if (mode == "keysize") {
            qsrlab::KeyBudget b = qsrlab::key_budget(copies, dim, eps1, eps2);
            json j{{"schema", kSchema},
                   {"t", b.copies},
                   {"d", b.dim},
                   {"eps1", b.eps1},
                   {"eps2", b.eps2},
                   {"entropy_bits", b.entropy_bits},
                   {"pauli_pad_entropy_bits", b.pauli_entropy_bits},
                   {"lower_bound_bits", b.lower_bound_bits},
                   {"ratio", b.ratio}};
            out << (format == "json" ? j.dump(2) : "entropy_bits = " + fmt17(b.entropy_bits)) << '\n';
            return 0;
        }
        if (mode == "pauli") {
            qsrlab::SubsampledScheme pad = parse_pad(pad_spec, qubits);
            qsrlab::SplitMix64 rng(seed);
            double est = qsrlab::randomization_epsilon_estimate(pad, eps2_trials, rng);
            json j{{"schema", kSchema},
                   {"q", qubits},
                   {"keys", pad.keys.size()},
                   {"trials", eps2_trials},
                   {"epsilon_estimate", est},
                   {"certified", false},
                   {"note", "empirical lower estimate over sampled pure states"}};
            out << (format == "json" ? j.dump(2) : "epsilon_estimate = " + fmt17(est) + " (estimate)") << '\n';
            return 0;
        }
        if (mode == "hybrid") {
            if (params.message_bits != 2 * qubits)
                throw std::invalid_argument("hybrid analysis fixes m = 2q; pass --m " + std::to_string(2 * qubits));
            qsrlab::SubsampledScheme pad = parse_pad(pad_spec, qubits);
            int used = (t1 < 0) ? params.key_copies : t1;
            qsrlab::SplitMix64 rng(seed);
            std::vector<qsrlab::DensityOperator> msgs;
            for (int i = 0; i < used; ++i) msgs.push_back(qsrlab::random_pure_state(1 << qubits, rng));
            double hd = qsrlab::hybrid_randomization_distance(params, pad, msgs, used);
            double e1 = qsrlab::randomization_distance_closed_form(params).to_double();
            double e2 = 0.0;
            if (!pad.is_full_pad()) {
                qsrlab::SplitMix64 est_rng(seed ^ 0xE5717A7Eull);
                e2 = qsrlab::randomization_epsilon_estimate(pad, eps2_trials, est_rng);
            }
            double bound = e1 + used * e2;
            bool holds = hd <= bound + 1e-9;
            json j{{"schema", kSchema},
                   {"params", params_json(params)},
                   {"q", qubits},
                   {"t1", used},
                   {"pad_keys", pad.keys.size()},
                   {"distance", hd},
                   {"eps1", e1},
                   {"eps2", e2},
                   {"eps2_certified", pad.is_full_pad()},
                   {"bound", bound},
                   {"holds", holds}};
            out << (format == "json" ? j.dump(2)
                                     : "distance = " + fmt17(hd) + " vs bound " + fmt17(bound) +
                                           (holds ? " (holds)" : " (FAILED)"))
                << '\n';
            return holds ? 0 : 2;
        }
        throw std::invalid_argument("unknown analyze mode: " + mode);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
