#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "glmy/chain_complex.hpp"
#include "glmy/digraph.hpp"
#include "glmy/matrix.hpp"
#include "glmy/paths.hpp"
#include "glmy/qsim.hpp"
#include "glmy/spectral.hpp"

namespace glmy {

using Json = nlohmann::ordered_json;

/// Integer-valued rationals become JSON integers when they fit in 64 bits;
/// everything else is a fraction string.
inline Json rational_json(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return to_fraction_string(q);
}

inline Json matrix_json(const RationalMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_fraction_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// {"degree":k,"terms":[{"path":[v0,...],"coeff":"p/q"}]} with vertex indices.
inline Json chain_json(const Chain& c) {
    Json terms = Json::array();
    for (const auto& [p, coeff] : c.terms())
        terms.push_back(Json{{"path", p.vertices()}, {"coeff", to_fraction_string(coeff)}});
    return Json{{"degree", c.degree()}, {"terms", std::move(terms)}};
}

inline Chain chain_from_json(const Json& j) {
    try {
        Chain c(j.at("degree").get<int>());
        for (const auto& t : j.at("terms")) {
            ElementaryPath p(t.at("path").get<std::vector<Vertex>>());
            if (p.degree() != c.degree()) throw InvalidArgument("chain term has the wrong degree");
            if (!p.is_regular()) throw InvalidArgument("chain term is irregular");
            c.add(p, parse_fraction(t.at("coeff").get<std::string>()));
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed chain JSON: ") + e.what());
    }
}

/// Chain with vertex labels instead of indices, for reports.
inline Json labelled_chain_json(const Chain& c, const std::vector<std::string>& labels) {
    Json terms = Json::array();
    for (const auto& [p, coeff] : c.terms())
        terms.push_back(Json{{"path", p.to_string(labels)}, {"coeff", to_fraction_string(coeff)}});
    return terms;
}

/// {"betti":[...], "gamma_dims":[...], "kernels":[[...]], "euler":c} plus
/// the per-degree basis description. Matrices only when requested.
inline Json homology_json(const ChainComplex& cx, const HomologyReport& rep, bool emit_matrices) {
    const auto& labels = cx.digraph().labels();
    Json kernels = Json::array();
    for (const auto& d : rep.degrees) {
        Json per = Json::array();
        for (const auto& v : d.kernel_basis) {
            Json vec = Json::array();
            for (const auto& q : v) vec.push_back(rational_json(q));
            per.push_back(std::move(vec));
        }
        kernels.push_back(std::move(per));
    }
    Json degrees = Json::array();
    for (const auto& d : rep.degrees) {
        const GammaBasis gb = cx.gamma(d.degree);
        Json allowed = Json::array();
        for (const auto& p : gb.allowed.paths()) allowed.push_back(p.to_string(labels));
        Json completion = Json::array();
        for (const auto& c : gb.completion) completion.push_back(labelled_chain_json(c, labels));
        Json entry{{"k", d.degree},
                   {"gamma_dim", d.gamma_dim},
                   {"betti", d.betti},
                   {"rank_boundary", d.rank_boundary},
                   {"allowed", std::move(allowed)},
                   {"completion", std::move(completion)}};
        if (emit_matrices) {
            entry["boundary_gamma"] = matrix_json(cx.boundary_gamma(d.degree));
            entry["norm"] = matrix_json(gb.norm);
            entry["laplacian_gamma"] = matrix_json(cx.laplacian_gamma(d.degree));
        }
        degrees.push_back(std::move(entry));
    }
    return Json{{"vertices", labels},
                {"edges", cx.digraph().edge_count()},
                {"duplicate_edges", cx.digraph().duplicate_edges()},
                {"max_path_length", cx.longest_path_length()},
                {"betti", rep.betti()},
                {"gamma_dims", rep.gamma_dims()},
                {"kernels", std::move(kernels)},
                {"euler", rep.euler},
                {"degrees", std::move(degrees)}};
}

inline Json estimate_json(const qsim::EstimateReport& rep, const qsim::ComplexityReport& cost) {
    Json spectrum = Json::array();
    for (const auto& line : rep.spectrum)
        spectrum.push_back(Json{{"lambda", line.lambda},
                                {"phase", line.phase},
                                {"multiplicity", line.multiplicity},
                                {"prob", line.probability},
                                {"count", line.count},
                                {"zero", line.zero}});
    Json phase_bits = rep.config.phase_bits ? Json(*rep.config.phase_bits) : Json("exact");
    return Json{{"k", rep.config.degree},
                {"shots", rep.config.shots},
                {"seed", rep.config.seed},
                {"phase_bits", std::move(phase_bits)},
                {"hamiltonian", qsim::to_string(rep.config.hamiltonian)},
                {"rescale", rep.config.rescale},
                {"gamma_dim", rep.gamma_dim},
                {"lambda_dim", rep.lambda_dim},
                {"degenerate", rep.degenerate},
                {"lambda_max", rep.lambda_max},
                {"condition_ratio", rep.lambda_max > 0 ? rep.lambda_min_nonzero / rep.lambda_max : 0.0},
                {"spectrum", std::move(spectrum)},
                {"exact_zero_mass", rep.exact_zero_mass},
                {"zero_count", rep.zero_count},
                {"c_hat", rep.c_hat},
                {"betti_hat", rep.betti_hat},
                {"zeta", to_double(cost.zeta)},
                {"zeta_exact", to_fraction_string(cost.zeta)},
                {"grover_steps", cost.grover_steps},
                {"amplitude_encoding_steps", cost.amplitude_encoding_steps},
                {"qubits", cost.qubits}};
}

}  // namespace glmy
