#pragma once

// Command-line front end. `run` is separate from main so the tests can drive
// it with in-memory streams.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glmy/glmy.hpp"

namespace glmy::cli {

enum ExitCode : int { kOk = 0, kDisagreement = 1, kInputError = 2 };

struct RunConfig {
    std::string command;
    std::string input = "-";
    std::optional<int> degree;
    std::optional<int> max_dim;
    std::uint64_t shots = 1000;
    std::string phase_bits = "exact";
    std::uint64_t seed = 0;
    bool emit_matrices = false;
    bool verify = false;
    bool no_rescale = false;
    std::string format = "json";
    std::uint64_t max_regular_paths = kDefaultRegularPathCap;
    std::string hamiltonian = "projected-dirac";
    std::optional<std::size_t> n;
    std::optional<std::size_t> d;
    std::vector<std::string> paths;
};

namespace detail {

inline std::string read_all(std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline Digraph load_graph(const RunConfig& cfg, std::istream& in) {
    std::string text;
    if (cfg.input == "-") {
        text = read_all(in);
    } else {
        std::ifstream f(cfg.input, std::ios::binary);
        if (!f) throw InvalidArgument("cannot open " + cfg.input);
        text = read_all(f);
    }
    return parse_digraph(text);
}

inline ComplexOptions complex_options(const RunConfig& cfg) {
    ComplexOptions opts;
    opts.max_degree = cfg.max_dim;
    opts.path_cap = cfg.max_regular_paths;
    return opts;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline std::string fraction(const Rational& q) { return to_fraction_string(q); }

inline int analyze(const RunConfig& cfg, std::istream& in, std::ostream& out) {
    const Digraph g = load_graph(cfg, in);
    const ChainComplex cx(g, complex_options(cfg));
    const HomologyReport rep = betti_numbers(cx);

    std::vector<qsim::ComplexityReport> costs;
    for (int k = 0; k <= cx.top_degree(); ++k) {
        if (!regular_path_count(cx.vertex_count(), k)) break;
        costs.push_back(qsim::complexity_report(cx, k));
    }

    bool ok = true;
    Json checks = Json::array();
    if (cfg.verify) {
        const auto omega = oracle::betti_omega(g, cx.top_degree());
        for (int k = 0; k <= cx.top_degree(); ++k) {
            const auto uk = static_cast<std::size_t>(k);
            const auto dual = verify_dual_commutation(cx, k);
            bool hodge = true;
            try {
                hodge_decomposition_check(cx, k);
            } catch (const DecompositionError&) {
                hodge = false;
            }
            const bool oracle_eq = omega[uk] == rep.degrees[uk].betti;
            ok = ok && hodge && oracle_eq && dual.holds;
            checks.push_back(Json{{"k", k},
                                  {"hodge", hodge},
                                  {"dual_commutation", dual.holds},
                                  {"betti_omega", omega[uk]},
                                  {"oracle_agrees", oracle_eq}});
        }
    }

    if (cfg.format == "text") {
        out << "vertices " << g.vertex_count() << ", edges " << g.edge_count() << ", max path length "
            << cx.longest_path_length() << '\n';
        out << "k\tgamma\tbetti\tzeta\n";
        for (const auto& d : rep.degrees) {
            const auto uk = static_cast<std::size_t>(d.degree);
            out << d.degree << '\t' << d.gamma_dim << '\t' << d.betti << '\t'
                << (uk < costs.size() ? fraction(costs[uk].zeta) : std::string("-")) << '\n';
        }
        out << "betti";
        for (auto b : rep.betti()) out << ' ' << b;
        out << "\neuler " << rep.euler << '\n';
        if (cfg.emit_matrices)
            for (int k = 0; k <= cx.top_degree(); ++k)
                out << "laplacian_gamma[" << k << "]\n" << cx.laplacian_gamma(k);
        if (cfg.verify) out << "verify " << (ok ? "ok" : "FAILED") << '\n';
    } else {
        Json j = homology_json(cx, rep, cfg.emit_matrices);
        Json zeta = Json::array();
        for (const auto& c : costs) zeta.push_back(fraction(c.zeta));
        j["zeta"] = std::move(zeta);
        if (cfg.verify) j["verify"] = Json{{"ok", ok}, {"degrees", std::move(checks)}};
        emit(out, j);
    }
    return ok ? kOk : kDisagreement;
}

inline qsim::Hamiltonian parse_hamiltonian(const std::string& s) {
    if (s == "projected-dirac") return qsim::Hamiltonian::ProjectedDirac;
    if (s == "projected-total") return qsim::Hamiltonian::ProjectedTotal;
    throw InvalidArgument("unknown hamiltonian '" + s + "'");
}

inline int run_qsim(const RunConfig& cfg, std::istream& in, std::ostream& out) {
    if (!cfg.degree) throw InvalidArgument("qsim needs --degree");
    const Digraph g = load_graph(cfg, in);
    const int longest = static_cast<int>(max_allowed_path_length(g));
    if (*cfg.degree < 0 || *cfg.degree > longest)
        throw InvalidArgument("degree " + std::to_string(*cfg.degree) + " exceeds the longest path length " +
                              std::to_string(longest));
    ComplexOptions opts = complex_options(cfg);
    opts.max_degree = *cfg.degree;
    const ChainComplex cx(g, opts);

    qsim::PhaseEstimationConfig pe;
    pe.degree = *cfg.degree;
    pe.shots = cfg.shots;
    pe.seed = cfg.seed;
    pe.rescale = !cfg.no_rescale;
    pe.hamiltonian = parse_hamiltonian(cfg.hamiltonian);
    if (cfg.phase_bits != "exact") {
        std::size_t used = 0;
        int t = 0;
        try {
            t = std::stoi(cfg.phase_bits, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != cfg.phase_bits.size() || t < 1) throw InvalidArgument("--phase-bits must be a positive integer or 'exact'");
        pe.phase_bits = static_cast<unsigned>(t);
    }

    const qsim::EstimateReport rep = qsim::run_phase_estimation(cx, pe);
    const qsim::ComplexityReport cost = qsim::complexity_report(cx, pe.degree);

    bool ok = true;
    std::optional<Json> verify;
    std::size_t betti_exact = 0;
    double expected_mass = 0;
    if (cfg.verify) {
        betti_exact = betti_numbers(cx).degrees[static_cast<std::size_t>(pe.degree)].betti;
        expected_mass = rep.gamma_dim ? static_cast<double>(betti_exact) / static_cast<double>(rep.gamma_dim) : 0.0;
        const bool mass_ok = std::abs(rep.exact_zero_mass - expected_mass) < 1e-9;
        const bool betti_ok = rep.betti_hat == betti_exact;
        ok = mass_ok && betti_ok;
        verify = Json{{"betti_exact", betti_exact},
                      {"expected_zero_mass", expected_mass},
                      {"mass_agrees", mass_ok},
                      {"betti_agrees", betti_ok},
                      {"ok", ok}};
    }

    if (cfg.format == "text") {
        out << "k " << pe.degree << ", shots " << pe.shots << ", seed " << pe.seed << ", hamiltonian "
            << qsim::to_string(pe.hamiltonian) << '\n';
        out << "gamma " << rep.gamma_dim << ", lambda " << rep.lambda_dim << ", zeta " << fraction(cost.zeta)
            << ", qubits " << cost.qubits << '\n';
        out << std::setprecision(12);
        for (const auto& line : rep.spectrum)
            out << "lambda " << line.lambda << "\tmult " << line.multiplicity << "\tprob " << line.probability
                << "\tcount " << line.count << (line.zero ? "\tzero" : "") << '\n';
        out << "c_hat " << rep.c_hat << ", betti_hat " << rep.betti_hat << '\n';
        if (verify)
            out << "exact betti " << betti_exact << ", zero mass " << rep.exact_zero_mass << " (expected "
                << expected_mass << ") " << (ok ? "ok" : "DISAGREES") << '\n';
    } else {
        Json j = estimate_json(rep, cost);
        if (verify) j["verify"] = *verify;
        emit(out, j);
    }
    return ok ? kOk : kDisagreement;
}

// "024" splits per character; "10.11.3" splits on dots.
inline std::vector<std::string> split_path(const std::string& s) {
    std::vector<std::string> parts;
    if (s.find('.') == std::string::npos) {
        for (char c : s) parts.emplace_back(1, c);
        return parts;
    }
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    return parts;
}

inline int encode(const RunConfig& cfg, std::istream& in, std::ostream& out) {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::string> labels;
    std::vector<ElementaryPath> paths;

    if (cfg.n) {
        n = *cfg.n;
        if (n == 0) throw InvalidArgument("empty graph");
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
        d = cfg.d.value_or(n - 1);
        if (cfg.paths.empty()) throw InvalidArgument("encode with --n needs at least one --path");
        for (const auto& s : cfg.paths) {
            std::vector<Vertex> vs;
            for (const auto& part : split_path(s)) {
                if (part.empty() || !glmy::detail::is_decimal(part)) throw InvalidArgument("bad vertex '" + part + "' in path " + s);
                const unsigned long v = std::stoul(part);
                if (v >= n) throw EncodingError("vertex " + part + " out of range in path " + s);
                vs.push_back(static_cast<Vertex>(v));
            }
            paths.emplace_back(std::move(vs));
        }
    } else {
        const Digraph g = load_graph(cfg, in);
        n = g.vertex_count();
        labels = g.labels();
        d = cfg.d.value_or(max_allowed_path_length(g));
        if (cfg.paths.empty()) {
            for (std::size_t k = 0; k <= d; ++k)
                for (auto& p : enumerate_allowed(g, static_cast<int>(k)).paths()) paths.push_back(p);
        } else {
            for (const auto& s : cfg.paths) {
                std::vector<Vertex> vs;
                for (const auto& part : split_path(s)) {
                    const auto v = g.index_of(part);
                    if (!v) throw EncodingError("unknown vertex '" + part + "' in path " + s);
                    vs.push_back(*v);
                }
                paths.emplace_back(std::move(vs));
            }
        }
    }

    const qsim::QubitEncoding enc(n, d);
    Json rows = Json::array();
    std::ostringstream text;
    for (const auto& p : paths) {
        const qsim::EncodedPath e = qsim::encode_path(enc, p);
        const std::string name = p.to_string(labels);
        text << name << '\t' << e.spaced() << '\t' << e.bitstring() << '\n';
        rows.push_back(Json{{"path", name}, {"registers", e.registers}, {"bitstring", e.bitstring()}});
    }
    if (cfg.format == "text") {
        out << text.str();
    } else {
        emit(out, Json{{"n", n}, {"d", d}, {"register_bits", enc.bits}, {"qubits", enc.total_qubits()},
                       {"paths", std::move(rows)}});
    }
    return kOk;
}

inline int oracle_check(const RunConfig& cfg, std::istream& in, std::ostream& out) {
    const Digraph g = load_graph(cfg, in);
    const ChainComplex cx(g, complex_options(cfg));
    const auto embedded = betti_numbers(cx).betti();
    const auto omega = oracle::betti_omega(g, cx.top_degree());
    bool agree = embedded == omega;
    bool closed = true;
    for (int k = 1; k <= cx.top_degree(); ++k) closed = closed && oracle::boundary_stays_in_omega(g, k);
    agree = agree && closed;

    if (cfg.format == "text") {
        out << "k\tembedded\tomega\tequal\n";
        for (std::size_t k = 0; k < embedded.size(); ++k)
            out << k << '\t' << embedded[k] << '\t' << omega[k] << '\t' << (embedded[k] == omega[k] ? "yes" : "NO")
                << '\n';
        out << "boundary preserves omega: " << (closed ? "yes" : "NO") << '\n';
        out << (agree ? "all degrees agree" : "DISAGREEMENT") << '\n';
    } else {
        Json rows = Json::array();
        for (std::size_t k = 0; k < embedded.size(); ++k)
            rows.push_back(Json{{"k", k}, {"embedded", embedded[k]}, {"omega", omega[k]}, {"equal", embedded[k] == omega[k]}});
        emit(out, Json{{"degrees", std::move(rows)}, {"boundary_preserves_omega", closed}, {"agree", agree}});
    }
    return agree ? kOk : kDisagreement;
}

}  // namespace detail

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Path homology of acyclic digraphs and a simulated quantum Betti estimator", "glmy"};
    app.require_subcommand(1);

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "edge list or JSON digraph file, '-' for stdin");
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--max-regular-paths", cfg.max_regular_paths, "cap on enumerated regular paths");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "exact Betti numbers of the embedded complex");
    add_input(analyze);
    analyze->add_option("--max-dim", cfg.max_dim, "highest degree to report");
    analyze->add_flag("--emit-matrices", cfg.emit_matrices, "include Γ-coordinate matrices");
    analyze->add_flag("--verify", cfg.verify, "check Hodge decomposition, adjoint identity and the Ω oracle");

    CLI::App* qsim = app.add_subcommand("qsim", "sample the phase-estimation Betti estimator");
    add_input(qsim);
    qsim->add_option("--degree", cfg.degree, "path degree k")->required();
    qsim->add_option("--shots", cfg.shots, "number of samples")->check(CLI::PositiveNumber);
    qsim->add_option("--phase-bits", cfg.phase_bits, "phase register width, or 'exact'");
    qsim->add_option("--seed", cfg.seed, "sampler seed (default 0)");
    qsim->add_option("--hamiltonian", cfg.hamiltonian, "projected-dirac or projected-total");
    qsim->add_flag("--no-rescale", cfg.no_rescale, "do not divide eigenvalues by the largest one");
    qsim->add_flag("--verify", cfg.verify, "compare against the exact Betti number");
    qsim->add_option("--max-dim", cfg.max_dim, "ignored; the complex is built up to --degree");

    CLI::App* enc = app.add_subcommand("encode", "path-to-qubit register encoding");
    add_input(enc);
    enc->add_option("--n", cfg.n, "vertex count (vertices are 0..n-1)");
    enc->add_option("--d", cfg.d, "maximum path length fixing the register width");
    enc->add_option("--degree", cfg.d, "alias for --d");
    enc->add_option("--path", cfg.paths, "path such as 024 or 10.11.3; repeatable");

    CLI::App* oc = app.add_subcommand("oracle-check", "compare against the Ω-complex Betti numbers");
    add_input(oc);
    oc->add_option("--max-dim", cfg.max_dim, "highest degree to compare");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (analyze->parsed()) return detail::analyze(cfg, in, out);
        if (qsim->parsed()) return detail::run_qsim(cfg, in, out);
        if (enc->parsed()) return detail::encode(cfg, in, out);
        return detail::oracle_check(cfg, in, out);
    } catch (const ConsistencyError& e) {
        err << "error: internal consistency check failed: " << e.what() << '\n';
        return kDisagreement;
    } catch (const DecompositionError& e) {
        err << "error: " << e.what() << '\n';
        return kDisagreement;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace glmy::cli
