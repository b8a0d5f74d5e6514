#include <catch_amalgamated.hpp>

#include <set>

#include "glmy/qsim.hpp"
#include "glmy/spectral.hpp"
#include "support/corpus.hpp"

using namespace glmy;
using namespace glmy::qsim;

namespace {

std::vector<ElementaryPath> simple_paths(std::size_t n, int k) {
    std::vector<ElementaryPath> out;
    for (const auto& p : enumerate_regular(n, k).paths())
        if (p.is_simple()) out.push_back(p);
    return out;
}

Chain decoded_chain(const QubitEncoding& enc, const std::vector<SignedState>& states, int degree) {
    Chain c(degree);
    for (const auto& s : states) {
        const auto p = decode_path(enc, s.state);
        REQUIRE(p.has_value());
        c.add(*p, s.sign);
    }
    return c;
}

}  // namespace

TEST_CASE("register width", "[qsim]") {
    CHECK(register_width(0) == 1);
    CHECK(register_width(1) == 2);
    CHECK(register_width(2) == 2);
    CHECK(register_width(3) == 3);
    CHECK(register_width(6) == 3);
    CHECK(register_width(7) == 4);
    CHECK(QubitEncoding(6, 6).total_qubits() == 18);
}

TEST_CASE("golden register encodings", "[qsim]") {
    const QubitEncoding enc(6, 6);
    CHECK(encode_path(enc, ElementaryPath{0, 2, 4}).spaced() == "001 000 010 000 011 000");
    CHECK(encode_path(enc, ElementaryPath{3, 2, 0, 1, 4, 5}).spaced() == "011 100 010 001 101 110");
    CHECK(encode_path(enc, ElementaryPath{3}).spaced() == "000 000 000 001 000 000");
    CHECK(encode_path(enc, ElementaryPath{0, 2, 4}).bitstring() == "001000010000011000");
}

TEST_CASE("encoding rejects what it cannot represent", "[qsim]") {
    const QubitEncoding enc(6, 2);
    CHECK_THROWS_AS(encode_path(enc, ElementaryPath{0, 0}), EncodingError);
    CHECK_THROWS_AS(encode_path(enc, ElementaryPath{0, 1, 2, 3}), EncodingError);
    CHECK_THROWS_AS(encode_path(enc, ElementaryPath{0, 1, 0}), EncodingError);
    CHECK_THROWS_AS(encode_path(enc, ElementaryPath{0, 9}), EncodingError);
    CHECK_THROWS_AS(encode_path(enc, ElementaryPath{}), EncodingError);
}

TEST_CASE("decoding inverts encoding and rejects non-path states", "[qsim]") {
    const QubitEncoding enc(6, 6);
    CHECK(decode_bits(enc, "001000010000011000") == ElementaryPath{0, 2, 4});
    CHECK_FALSE(decode_bits(enc, std::string(18, '0')).has_value());
    CHECK_FALSE(decode_bits(enc, "001001000000000000").has_value());
    CHECK_FALSE(decode_bits(enc, "010000000000000000").has_value());  // order values must start at 1
    CHECK_FALSE(decode_bits(enc, "001").has_value());
    CHECK_FALSE(decode_bits(enc, "00100001000001100x").has_value());
}

TEST_CASE("encoding is injective and round-trips, n <= 5, d <= 4", "[qsim]") {
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t d = 0; d <= 4; ++d) {
            const QubitEncoding enc(n, d);
            std::set<std::string> seen;
            std::size_t count = 0;
            for (int k = 0; k <= static_cast<int>(std::min(d, n - 1)); ++k)
                for (const auto& p : simple_paths(n, k)) {
                    const EncodedPath e = encode_path(enc, p);
                    CHECK(decode_path(enc, e) == p);
                    seen.insert(e.bitstring());
                    ++count;
                }
            CHECK(seen.size() == count);
        }
}

TEST_CASE("encoded boundary action", "[qsim]") {
    const QubitEncoding enc(6, 6);
    const auto terms = encoded_boundary_action(enc, ElementaryPath{0, 2, 4});
    REQUIRE(terms.size() == 3);
    CHECK(terms[0].sign == 1);
    CHECK(terms[0].state == encode_path(enc, ElementaryPath{2, 4}));
    CHECK(terms[1].sign == -1);
    CHECK(terms[1].state == encode_path(enc, ElementaryPath{0, 4}));
    CHECK(terms[2].sign == 1);
    CHECK(terms[2].state == encode_path(enc, ElementaryPath{0, 2}));

    const auto edge = encoded_boundary_action(enc, ElementaryPath{5, 1});
    REQUIRE(edge.size() == 2);
    CHECK(decoded_chain(enc, edge, 0) == Chain(0, {{{1}, 1}, {{5}, -1}}));
}

TEST_CASE("encoded boundary matches the path boundary, n <= 5, k <= 3", "[qsim]") {
    for (std::size_t n = 2; n <= 5; ++n) {
        const QubitEncoding enc(n, 3);
        for (int k = 1; k <= std::min(3, static_cast<int>(n) - 1); ++k)
            for (const auto& p : simple_paths(n, k)) CHECK(decoded_chain(enc, encoded_boundary_action(enc, p), k - 1) == boundary(p));
    }
}

TEST_CASE("Dirac operator squares to the Hodge Laplacians", "[qsim]") {
    for (std::size_t n = 2; n <= 4; ++n) {
        const int top = 3;
        const DiracOperator b = dirac_operator(n, top);
        const Eigen::SparseMatrix<long long> bt = b.matrix.transpose();
        CHECK((b.matrix - bt).norm() == 0);
        CHECK(b.square_is_block_diagonal());
        for (int k = 0; k < top; ++k) CHECK(b.square_block(k) == hodge_laplacian_total(n, k));
        const RationalMatrix dtop = boundary_matrix_total(n, top);
        CHECK(b.square_block(top) == dtop.transpose() * dtop);
    }
}

TEST_CASE("column sparsity of B on encodable paths", "[qsim]") {
    // A simple k-path has k+1 faces and (n-k-1)(k+2) simple cofaces.
    for (std::size_t n = 2; n <= 5; ++n)
        for (std::size_t d = 1; d <= 4; ++d) {
            std::size_t expected = 0;
            for (std::size_t k = 0; k <= std::min(d, n - 1); ++k) {
                std::size_t c = k + 1;
                if (k + 1 <= d && k + 1 < n) c += (n - k - 1) * (k + 2);
                if (k == 0) c -= 1;
                expected = std::max(expected, c);
            }
            const SparsityReport r = encoded_column_sparsity(n, d);
            CHECK(r.max_column_nonzeros == expected);
            CHECK(r.bound == n * register_width(d));
        }
    // The n·width bound is an observation, not a law: it fails here.
    CHECK_FALSE(encoded_column_sparsity(5, 2).within_bound());
}

TEST_CASE("estimator on the second example", "[qsim]") {
    const ChainComplex cx(testing::example2());
    PhaseEstimationConfig cfg;
    cfg.degree = 1;
    cfg.shots = 10000;
    cfg.seed = 3;
    const EstimateReport r = run_phase_estimation(cx, cfg);
    CHECK(r.gamma_dim == 10);
    CHECK(r.lambda_dim == 30);
    CHECK(r.exact_zero_mass == Catch::Approx(0.1).margin(1e-9));
    CHECK(r.zero_eigenspace_dim == 1 + (30 - 10));
    CHECK(r.betti_hat == 1);
    CHECK(std::abs(r.c_hat - 0.1) < 0.012);
    double total = 0;
    for (const auto& line : r.spectrum) total += line.probability;
    CHECK(total == Catch::Approx(1.0).margin(1e-12));
    std::size_t counted = 0;
    for (const auto& line : r.spectrum) counted += line.count;
    CHECK(counted == cfg.shots);
}

TEST_CASE("estimator with a full-rank Laplacian never reports zero", "[qsim]") {
    const ChainComplex cx(testing::example1());
    for (int k = 1; k <= 2; ++k)
        for (std::uint64_t shots : {1u, 10u, 1000u}) {
            PhaseEstimationConfig cfg;
            cfg.degree = k;
            cfg.shots = shots;
            const EstimateReport r = run_phase_estimation(cx, cfg);
            CHECK(r.exact_zero_mass == Catch::Approx(0.0).margin(1e-12));
            CHECK(r.zero_count == 0);
            CHECK(r.betti_hat == 0);
        }
}

TEST_CASE("single zero mode gives a single zero sample", "[qsim]") {
    const ChainComplex cx(parse_edge_list("v\n"));
    PhaseEstimationConfig cfg;
    cfg.shots = 1;
    const EstimateReport r = run_phase_estimation(cx, cfg);
    CHECK(r.gamma_dim == 1);
    CHECK(r.zero_count == 1);
    CHECK(r.betti_hat == 1);
}

TEST_CASE("quantized phases keep the zero bin", "[qsim]") {
    const ChainComplex cx(testing::example2());
    for (unsigned t : {3u, 5u, 8u}) {
        PhaseEstimationConfig cfg;
        cfg.degree = 1;
        cfg.phase_bits = t;
        const EstimateReport r = run_phase_estimation(cx, cfg);
        CHECK(r.exact_zero_mass == Catch::Approx(0.1).margin(1e-9));
    }
    // With one bit the smallest nonzero phase 1/6 rounds into bin 0.
    PhaseEstimationConfig coarse;
    coarse.degree = 1;
    coarse.phase_bits = 1;
    CHECK(run_phase_estimation(cx, coarse).exact_zero_mass > 0.1 + 1e-9);
}

TEST_CASE("sampling is reproducible per seed", "[qsim]") {
    const ChainComplex cx(testing::example2());
    PhaseEstimationConfig cfg;
    cfg.degree = 1;
    cfg.shots = 500;
    cfg.seed = 42;
    const EstimateReport a = run_phase_estimation(cx, cfg);
    const EstimateReport b = run_phase_estimation(cx, cfg);
    CHECK(a.samples == b.samples);
    cfg.seed = 43;
    CHECK_FALSE(run_phase_estimation(cx, cfg).samples == a.samples);
    CHECK(shot_uniform(1, 2) == shot_uniform(1, 2));
    CHECK(shot_uniform(1, 2) != shot_uniform(1, 3));
}

TEST_CASE("invalid estimator requests", "[qsim]") {
    const ChainComplex cx(testing::example2());
    PhaseEstimationConfig cfg;
    cfg.degree = 3;
    CHECK_THROWS_AS(run_phase_estimation(cx, cfg), InvalidArgument);
    cfg.degree = 1;
    cfg.shots = 0;
    CHECK_THROWS_AS(run_phase_estimation(cx, cfg), InvalidArgument);
    cfg.shots = 1;
    cfg.phase_bits = 0u;
    CHECK_THROWS_AS(run_phase_estimation(cx, cfg), InvalidArgument);
}

TEST_CASE("exact zero mass equals β/γ on the corpus", "[qsim]") {
    for (const Digraph& g : testing::corpus()) {
        const ChainComplex cx(g);
        const HomologyReport h = betti_numbers(cx);
        for (int k = 0; k <= cx.top_degree(); ++k) {
            const auto lambda = regular_path_count(g.vertex_count(), k);
            if (!lambda || *lambda > 800) continue;
            PhaseEstimationConfig cfg;
            cfg.degree = k;
            cfg.shots = 1;
            const EstimateReport r = run_phase_estimation(cx, cfg);
            const auto& d = h.degrees[static_cast<std::size_t>(k)];
            CHECK(r.exact_zero_mass ==
                  Catch::Approx(static_cast<double>(d.betti) / static_cast<double>(d.gamma_dim)).margin(1e-9));
            CHECK(r.zero_eigenspace_dim == d.betti + (r.lambda_dim - r.gamma_dim));
        }
    }
}

TEST_CASE("complexity accounting", "[qsim]") {
    const ComplexityReport c2 = complexity_report(ChainComplex(testing::example2()), 1);
    CHECK(c2.zeta == Rational(1, 3));
    CHECK(c2.grover_steps == 2);
    CHECK(c2.qubits == 6 * 2);
    const ComplexityReport c1 = complexity_report(ChainComplex(testing::example1()), 3);
    CHECK(c1.zeta == Rational(1, 108));
    CHECK(c1.grover_steps == 11);
    const ComplexityReport full = complexity_report(ChainComplex(testing::example1()), 0);
    CHECK(full.zeta == 1);
    CHECK(full.grover_steps == 1);
    // ⌈γ² (n log2 n)²⌉ with γ = 4, n = 4.
    CHECK(full.amplitude_encoding_steps == 1024.0);
}
