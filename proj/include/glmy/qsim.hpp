#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "glmy/chain_complex.hpp"
#include "glmy/errors.hpp"
#include "glmy/paths.hpp"

// Classical simulation of the quantum Betti-number estimator: the
// order-register path code, the encoded boundary, the Dirac operator and
// spectral-level phase estimation.
namespace glmy::qsim {

/// Bits per vertex register: enough to hold order values 0..d+1.
inline unsigned register_width(std::size_t d) { return static_cast<unsigned>(std::bit_width(d + 1)); }

/// One register per vertex; register v holds 1 + (position of v on the
/// path), or 0 when v is not on the path.
struct QubitEncoding {
    std::size_t n = 0;
    std::size_t d = 0;
    unsigned bits = 1;

    QubitEncoding(std::size_t vertices, std::size_t max_length)
        : n(vertices), d(max_length), bits(register_width(max_length)) {}

    std::size_t total_qubits() const noexcept { return n * bits; }
};

struct EncodedPath {
    std::vector<std::uint32_t> registers;
    unsigned bits = 1;

    /// Register v rendered MSB first.
    std::string register_string(std::size_t v) const {
        std::string s(bits, '0');
        for (unsigned b = 0; b < bits; ++b)
            if (registers[v] >> b & 1u) s[bits - 1 - b] = '1';
        return s;
    }

    /// Registers in ascending vertex order, concatenated.
    std::string bitstring() const {
        std::string s;
        for (std::size_t v = 0; v < registers.size(); ++v) s += register_string(v);
        return s;
    }

    /// Registers separated by spaces, e.g. "001 000 010".
    std::string spaced() const {
        std::string s;
        for (std::size_t v = 0; v < registers.size(); ++v) s += (v ? " " : "") + register_string(v);
        return s;
    }

    friend bool operator==(const EncodedPath&, const EncodedPath&) = default;
};

inline EncodedPath encode_path(const QubitEncoding& enc, const ElementaryPath& p) {
    if (p.size() == 0) throw EncodingError("empty path");
    if (!p.is_regular()) throw EncodingError("irregular path");
    if (static_cast<std::size_t>(p.degree()) > enc.d)
        throw EncodingError("path of length " + std::to_string(p.degree()) + " exceeds d = " + std::to_string(enc.d));
    if (!p.is_simple()) throw EncodingError("path revisits a vertex; the register code holds one position per vertex");
    EncodedPath e{std::vector<std::uint32_t>(enc.n, 0), enc.bits};
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] >= enc.n) throw EncodingError("vertex index out of range");
        e.registers[p[i]] = static_cast<std::uint32_t>(i + 1);
    }
    return e;
}

/// Inverse of encode_path. Rejects codes whose nonzero register values are
/// not exactly {1, ..., m} for some m >= 1.
inline std::optional<ElementaryPath> decode_path(const QubitEncoding& enc, const EncodedPath& e) {
    if (e.registers.size() != enc.n) return std::nullopt;
    const std::uint32_t limit = 1u << enc.bits;
    std::vector<std::optional<Vertex>> at;
    for (std::size_t v = 0; v < e.registers.size(); ++v) {
        const std::uint32_t r = e.registers[v];
        if (r == 0) continue;
        if (r >= limit) return std::nullopt;
        if (at.size() < r) at.resize(r);
        if (at[r - 1]) return std::nullopt;
        at[r - 1] = static_cast<Vertex>(v);
    }
    if (at.empty()) return std::nullopt;
    std::vector<Vertex> path;
    for (const auto& slot : at) {
        if (!slot) return std::nullopt;
        path.push_back(*slot);
    }
    return ElementaryPath(std::move(path));
}

inline std::optional<ElementaryPath> decode_bits(const QubitEncoding& enc, std::string_view bits) {
    if (bits.size() != enc.total_qubits()) return std::nullopt;
    EncodedPath e{std::vector<std::uint32_t>(enc.n, 0), enc.bits};
    for (std::size_t v = 0; v < enc.n; ++v)
        for (unsigned b = 0; b < enc.bits; ++b) {
            const char c = bits[v * enc.bits + b];
            if (c != '0' && c != '1') return std::nullopt;
            e.registers[v] = (e.registers[v] << 1) | static_cast<std::uint32_t>(c == '1');
        }
    return decode_path(enc, e);
}

struct SignedState {
    int sign = 1;
    EncodedPath state;
};

/**
 * Boundary acting directly on register values. Term i clears the register
 * of the i-th vertex and decrements every register whose order value is
 * larger, i.e. the vertices that come after position i along the path.
 */
inline std::vector<SignedState> encoded_boundary_action(const QubitEncoding& enc, const ElementaryPath& p) {
    const EncodedPath e = encode_path(enc, p);
    std::vector<SignedState> out;
    if (p.degree() < 1) return out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto removed = static_cast<std::uint32_t>(i + 1);
        EncodedPath t = e;
        for (auto& r : t.registers) {
            if (r == removed) r = 0;
            else if (r > removed) --r;
        }
        const auto decoded = decode_path(enc, t);
        if (!decoded || !decoded->is_regular()) continue;
        out.push_back({i % 2 == 0 ? 1 : -1, std::move(t)});
    }
    return out;
}

/// B = ∂ + ∂^T over Λ_0 ⊕ ... ⊕ Λ_top, block offsets in lexicographic path
/// order. (B^2)_{kk} = Δ_k holds for k < top; the top block lacks the
/// D_{top+1} D_{top+1}^T term.
struct DiracOperator {
    std::size_t n = 0;
    int top = 0;
    std::vector<std::size_t> offsets;  ///< offsets[k] = start of Λ_k; back() = total
    Eigen::SparseMatrix<long long> matrix;

    std::size_t dimension() const { return offsets.back(); }

    RationalMatrix square_block(int k) const {
        const Eigen::SparseMatrix<long long> sq = matrix * matrix;
        const std::size_t lo = offsets[static_cast<std::size_t>(k)];
        const std::size_t hi = offsets[static_cast<std::size_t>(k) + 1];
        RationalMatrix block(hi - lo, hi - lo);
        for (int c = 0; c < sq.outerSize(); ++c)
            for (Eigen::SparseMatrix<long long>::InnerIterator it(sq, c); it; ++it) {
                const auto r = static_cast<std::size_t>(it.row());
                const auto cc = static_cast<std::size_t>(it.col());
                if (r >= lo && r < hi && cc >= lo && cc < hi) block(r - lo, cc - lo) = Rational(static_cast<long>(it.value()));
            }
        return block;
    }

    /// B^2 has no entries between different degrees.
    bool square_is_block_diagonal() const {
        const Eigen::SparseMatrix<long long> sq = matrix * matrix;
        auto degree_of = [&](std::size_t i) {
            return std::upper_bound(offsets.begin(), offsets.end(), i) - offsets.begin();
        };
        for (int c = 0; c < sq.outerSize(); ++c)
            for (Eigen::SparseMatrix<long long>::InnerIterator it(sq, c); it; ++it)
                if (it.value() != 0 && degree_of(static_cast<std::size_t>(it.row())) != degree_of(static_cast<std::size_t>(it.col())))
                    return false;
        return true;
    }
};

inline DiracOperator dirac_operator(std::size_t n, int top, std::uint64_t cap = kDefaultRegularPathCap) {
    DiracOperator b;
    b.n = n;
    b.top = top;
    std::uint64_t total = 0;
    b.offsets.push_back(0);
    for (int k = 0; k <= top; ++k) {
        require_regular_count(n, k, cap);
        total += *regular_path_count(n, k);
        if (total > cap) throw SizeLimitError("Dirac operator dimension exceeds the cap");
        b.offsets.push_back(total);
    }
    std::vector<Eigen::Triplet<long long>> entries;
    for (int k = 1; k <= top; ++k) {
        const PathBasis cols = enumerate_regular(n, k, cap);
        const auto col0 = static_cast<long long>(b.offsets[static_cast<std::size_t>(k)]);
        const auto row0 = static_cast<long long>(b.offsets[static_cast<std::size_t>(k) - 1]);
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [f, c] : boundary(cols[j]).terms()) {
                const long long r = row0 + static_cast<long long>(regular_index(n, f));
                const long long cc = col0 + static_cast<long long>(j);
                const long long v = c.get_num().get_si();
                entries.emplace_back(r, cc, v);
                entries.emplace_back(cc, r, v);
            }
    }
    b.matrix.resize(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
    b.matrix.setFromTriplets(entries.begin(), entries.end());
    return b;
}

struct SparsityReport {
    std::size_t max_column_nonzeros = 0;
    std::size_t bound = 0;  ///< n * register_width(d)
    bool within_bound() const { return max_column_nonzeros <= bound; }
};

/// Column sparsity of B restricted to the encodable space: simple regular
/// paths of length 0..d.
inline SparsityReport encoded_column_sparsity(std::size_t n, std::size_t d) {
    SparsityReport rep;
    rep.bound = n * register_width(d);
    for (int k = 0; k <= static_cast<int>(d); ++k) {
        for (const auto& p : enumerate_regular(n, k).paths()) {
            if (!p.is_simple()) continue;
            std::size_t count = 0;
            for (const auto& t : boundary(p).terms()) count += t.first.is_simple();
            if (k + 1 <= static_cast<int>(d))
                for (const auto& t : coboundary(Chain::of(p), n).terms()) count += t.first.is_simple();
            rep.max_column_nonzeros = std::max(rep.max_column_nonzeros, count);
        }
    }
    return rep;
}

enum class Hamiltonian {
    /// P B P B P restricted to degree k; its kernel inside Γ_k is ker Δ_k^Γ.
    ProjectedDirac,
    /// P_k Δ_k P_k with the total Laplacian on Λ_k.
    ProjectedTotal,
};

inline const char* to_string(Hamiltonian h) {
    return h == Hamiltonian::ProjectedDirac ? "projected-dirac" : "projected-total";
}

struct PhaseEstimationConfig {
    int degree = 0;
    std::uint64_t shots = 1000;
    /// Phase register size; nullopt means exact (unquantized) eigenvalues.
    std::optional<unsigned> phase_bits;
    std::uint64_t seed = 0;
    /// Divide eigenvalues by λ_max before phase readout.
    bool rescale = true;
    Hamiltonian hamiltonian = Hamiltonian::ProjectedDirac;
    /// Largest λ_k for which the dense eigenproblem is attempted.
    std::size_t max_dense_dim = 4096;
};

/// Eigenvalues below this (after rescaling) count as zero in exact mode.
inline constexpr double kZeroTolerance = 1e-8;

struct SpectrumLine {
    double lambda = 0;           ///< eigenvalue (cluster mean; exactly 0 for the zero cluster)
    double phase = 0;            ///< readout phase in [0, 1]
    std::size_t multiplicity = 0;
    double probability = 0;      ///< Σ ⟨v|u_k|v⟩ over the cluster
    std::uint64_t count = 0;     ///< samples that landed here
    bool zero = false;
};

struct EstimateReport {
    PhaseEstimationConfig config;
    std::size_t gamma_dim = 0;
    std::size_t lambda_dim = 0;
    bool degenerate = false;  ///< γ_k = 0; nothing was sampled
    double lambda_max = 0;
    double lambda_min_nonzero = 0;
    std::vector<SpectrumLine> spectrum;
    std::vector<std::uint32_t> samples;  ///< spectrum line index of each shot
    std::size_t zero_eigenspace_dim = 0;
    double exact_zero_mass = 0;
    std::uint64_t zero_count = 0;
    double c_hat = 0;
    std::size_t betti_hat = 0;
};

/// Counter-based uniform in [0, 1): splitmix64 of (seed, shot).
inline double shot_uniform(std::uint64_t seed, std::uint64_t shot) {
    std::uint64_t z = seed + (shot + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

/// Γ-coordinate matrix X of the chosen Hamiltonian restricted to Γ_k.
inline RationalMatrix hamiltonian_coordinates(const ChainComplex& cx, int k, Hamiltonian h) {
    return h == Hamiltonian::ProjectedDirac ? projected_dirac_laplacian(cx, k) : projected_total_laplacian(cx, k);
}

/**
 * Spectral-level phase estimation on degree k.
 *
 * Forms the Hamiltonian H = E X N^{-1} E^T on Λ_k (X its Γ-coordinate
 * matrix), diagonalizes it, weights each eigenvector by ⟨v|u_k|v⟩ with
 * u_k = P_k / γ_k, and draws `shots` readouts. The zero frequency times γ_k
 * estimates β_k.
 */
inline EstimateReport run_phase_estimation(const ChainComplex& cx, const PhaseEstimationConfig& cfg) {
    const int k = cfg.degree;
    if (k < 0 || k > cx.top_degree())
        throw InvalidArgument("degree " + std::to_string(k) + " outside 0.." + std::to_string(cx.top_degree()));
    if (cfg.shots == 0) throw InvalidArgument("shots must be at least 1");
    if (cfg.phase_bits && (*cfg.phase_bits == 0 || *cfg.phase_bits > 52))
        throw InvalidArgument("phase bits must lie in 1..52");

    EstimateReport rep;
    rep.config = cfg;
    const std::size_t n = cx.vertex_count();
    const GammaBasis gb = cx.gamma(k);
    rep.gamma_dim = gb.dim();
    const auto lambda = regular_path_count(n, k);
    if (!lambda || *lambda > cfg.max_dense_dim)
        throw SizeLimitError("Λ_" + std::to_string(k) + " is too large for the dense eigenproblem");
    rep.lambda_dim = static_cast<std::size_t>(*lambda);
    if (rep.gamma_dim == 0) {
        rep.degenerate = true;
        return rep;
    }

    const RationalMatrix s = hamiltonian_coordinates(cx, k, cfg.hamiltonian) * gb.norm_inverse;
    const auto L = static_cast<Eigen::Index>(rep.lambda_dim);
    const auto G = static_cast<Eigen::Index>(rep.gamma_dim);
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(L, G);
    for (std::size_t j = 0; j < gb.dim(); ++j)
        for (const auto& [p, c] : gb.column(j).terms())
            e(static_cast<Eigen::Index>(regular_index(n, p)), static_cast<Eigen::Index>(j)) = to_double(c);
    Eigen::MatrixXd sd(G, G), ninv(G, G);
    for (Eigen::Index i = 0; i < G; ++i)
        for (Eigen::Index j = 0; j < G; ++j) {
            sd(i, j) = to_double(s(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
            ninv(i, j) = to_double(gb.norm_inverse(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        }
    Eigen::MatrixXd h = e * sd * e.transpose();
    h = 0.5 * (h + h.transpose());
    const Eigen::MatrixXd proj = e * ninv * e.transpose();

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw ConsistencyError("eigendecomposition failed");
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const Eigen::MatrixXd& evecs = solver.eigenvectors();

    rep.lambda_max = std::max(0.0, evals(L - 1));
    const double scale = (cfg.rescale && rep.lambda_max > 0) ? rep.lambda_max : 1.0;
    auto phase_of = [&](double lam) {
        if (cfg.rescale) return std::clamp(lam / scale, 0.0, 1.0);
        double t = std::fmod(lam / (2 * std::numbers::pi), 1.0);
        return t < 0 ? t + 1.0 : t;
    };
    auto is_zero = [&](double lam) {
        if (!cfg.phase_bits) return std::abs(lam / scale) < kZeroTolerance;
        const double bins = std::ldexp(1.0, static_cast<int>(*cfg.phase_bits));
        const double bin = std::min(std::round(phase_of(lam) * bins), bins - 1);
        return bin == 0;
    };

    // Cluster sorted eigenvalues; every zero-classified eigenvalue joins one
    // line.
    const double merge_tol = 1e-9 * std::max(1.0, rep.lambda_max);
    SpectrumLine zero_line;
    zero_line.zero = true;
    std::vector<SpectrumLine> lines;
    double cluster_sum = 0;
    for (Eigen::Index i = 0; i < L; ++i) {
        const double lam = evals(i);
        const double prob = evecs.col(i).dot(proj * evecs.col(i)) / static_cast<double>(rep.gamma_dim);
        if (is_zero(lam)) {
            ++zero_line.multiplicity;
            zero_line.probability += prob;
            ++rep.zero_eigenspace_dim;
            continue;
        }
        if (!lines.empty() && std::abs(lam - lines.back().lambda) <= merge_tol && !lines.back().zero) {
            auto& back = lines.back();
            cluster_sum += lam;
            ++back.multiplicity;
            back.probability += prob;
            back.lambda = cluster_sum / static_cast<double>(back.multiplicity);
        } else {
            cluster_sum = lam;
            lines.push_back({lam, 0, 1, prob, 0, false});
        }
        if (lam > 0 && (rep.lambda_min_nonzero == 0 || lam < rep.lambda_min_nonzero)) rep.lambda_min_nonzero = lam;
    }
    if (zero_line.multiplicity > 0) lines.insert(lines.begin(), zero_line);
    for (auto& line : lines) {
        line.probability = std::max(0.0, line.probability);
        line.phase = line.zero ? 0.0 : phase_of(line.lambda);
        if (line.zero) rep.exact_zero_mass = line.probability;
    }

    std::vector<double> cumulative;
    double acc = 0;
    for (const auto& line : lines) cumulative.push_back(acc += line.probability);
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (lines[i].probability > 0) last_nonzero = i;

    rep.samples.reserve(cfg.shots);
    for (std::uint64_t shot = 0; shot < cfg.shots; ++shot) {
        const double u = shot_uniform(cfg.seed, shot) * acc;
        auto idx = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        idx = std::min(idx, last_nonzero);
        ++lines[idx].count;
        rep.samples.push_back(static_cast<std::uint32_t>(idx));
        if (lines[idx].zero) ++rep.zero_count;
    }
    rep.spectrum = std::move(lines);
    rep.c_hat = static_cast<double>(rep.zero_count) / static_cast<double>(cfg.shots);
    rep.betti_hat = static_cast<std::size_t>(std::llround(rep.c_hat * static_cast<double>(rep.gamma_dim)));
    return rep;
}

struct ComplexityReport {
    int degree = 0;
    std::size_t gamma_dim = 0;
    std::uint64_t lambda_dim = 0;
    Rational zeta = 0;                   ///< γ_k / λ_k
    std::uint64_t grover_steps = 0;      ///< ⌈ζ_k^{-1/2}⌉
    double amplitude_encoding_steps = 0; ///< ⌈γ_k² (n log2 n)²⌉
    std::size_t qubits = 0;              ///< n · register width
};

inline ComplexityReport complexity_report(const ChainComplex& cx, int k) {
    ComplexityReport rep;
    rep.degree = k;
    const std::size_t n = cx.vertex_count();
    rep.gamma_dim = cx.gamma_dim(k);
    const auto lambda = regular_path_count(n, k);
    if (!lambda) throw SizeLimitError("λ_k overflows");
    rep.lambda_dim = *lambda;
    rep.qubits = n * register_width(static_cast<std::size_t>(cx.longest_path_length()));
    if (rep.gamma_dim > 0 && rep.lambda_dim > 0) {
        rep.zeta = Rational(Integer(static_cast<unsigned long>(rep.gamma_dim)), Integer(static_cast<unsigned long>(rep.lambda_dim)));
        rep.zeta.canonicalize();
        // Smallest s with s^2 γ >= λ.
        const Integer lam(static_cast<unsigned long>(rep.lambda_dim));
        const Integer gam(static_cast<unsigned long>(rep.gamma_dim));
        Integer q = (lam + gam - 1) / gam;
        Integer s = sqrt(q);
        while (s * s * gam < lam) ++s;
        while (s > 1 && (s - 1) * (s - 1) * gam >= lam) --s;
        rep.grover_steps = s.get_ui();
    }
    const double nlogn = n > 1 ? static_cast<double>(n) * std::log2(static_cast<double>(n)) : 0.0;
    const double g = static_cast<double>(rep.gamma_dim);
    rep.amplitude_encoding_steps = std::ceil(g * g * nlogn * nlogn);
    return rep;
}

}  // namespace glmy::qsim
