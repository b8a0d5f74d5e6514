#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "glmy/chain_complex.hpp"
#include "glmy/errors.hpp"
#include "glmy/matrix.hpp"

namespace glmy {

struct DegreeHomology {
    int degree = 0;
    std::size_t gamma_dim = 0;
    std::size_t betti = 0;
    std::size_t rank_boundary = 0;  ///< rank D_k^Γ
    /// Basis of ker Δ_k^Γ in Γ_k coordinates, normalized integer vectors.
    std::vector<RationalVector> kernel_basis;
};

struct HomologyReport {
    std::vector<DegreeHomology> degrees;
    /// Σ (-1)^k β_k over the reported degrees.
    long long euler = 0;
    /// Σ (-1)^k γ_k over the reported degrees; equals `euler` when the
    /// complex is complete.
    long long euler_gamma = 0;

    std::vector<std::size_t> betti() const {
        std::vector<std::size_t> b;
        for (const auto& d : degrees) b.push_back(d.betti);
        return b;
    }

    std::vector<std::size_t> gamma_dims() const {
        std::vector<std::size_t> g;
        for (const auto& d : degrees) g.push_back(d.gamma_dim);
        return g;
    }
};

/**
 * Exact Betti numbers of the embedded complex.
 *
 * β_k comes from rank-nullity on the boundary matrices and is cross-checked
 * against dim ker Δ_k^Γ; a mismatch throws ConsistencyError.
 */
inline HomologyReport betti_numbers(const ChainComplex& cx) {
    HomologyReport rep;
    std::size_t rank_below = 0;
    for (int k = 0; k <= cx.top_degree(); ++k) {
        DegreeHomology d;
        d.degree = k;
        d.gamma_dim = cx.gamma_dim(k);
        d.rank_boundary = k == 0 ? 0 : rank_below;
        const std::size_t rank_above = rank(cx.boundary_gamma(k + 1));
        d.betti = d.gamma_dim - d.rank_boundary - rank_above;
        d.kernel_basis = kernel_basis(cx.laplacian_gamma(k));
        if (d.kernel_basis.size() != d.betti)
            throw ConsistencyError("degree " + std::to_string(k) + ": rank-nullity gives " + std::to_string(d.betti) +
                                   " but the Laplacian kernel has dimension " + std::to_string(d.kernel_basis.size()));
        const long long sign = (k % 2 == 0) ? 1 : -1;
        rep.euler += sign * static_cast<long long>(d.betti);
        rep.euler_gamma += sign * static_cast<long long>(d.gamma_dim);
        rep.degrees.push_back(std::move(d));
        rank_below = rank_above;
    }
    return rep;
}

struct HodgeReport {
    int degree = 0;
    std::size_t gamma_dim = 0;
    std::size_t harmonic_dim = 0;  ///< dim ker Δ_k^Γ
    std::size_t exact_dim = 0;     ///< rank D_{k+1}^Γ
    std::size_t coexact_dim = 0;   ///< rank D_k^{Γ,*}
    bool orthogonal = false;
    bool spanning = false;
};

/**
 * Verifies Γ_k = ker Δ_k^Γ ⊕ im D_{k+1}^Γ ⊕ im D_k^{Γ,*}: dimensions add up,
 * the summands are pairwise orthogonal for ⟨x, y⟩ = x^T N_k y, and together
 * they span Γ_k. Throws DecompositionError otherwise.
 */
inline HodgeReport hodge_decomposition_check(const ChainComplex& cx, int k) {
    HodgeReport rep;
    rep.degree = k;
    const GammaBasis gb = cx.gamma(k);
    rep.gamma_dim = gb.dim();
    const auto harmonic = kernel_basis(cx.laplacian_gamma(k));
    const RationalMatrix kernel = RationalMatrix::from_columns(harmonic, gb.dim());
    const RationalMatrix exact = cx.boundary_gamma(k + 1);
    const RationalMatrix coexact = cx.dual_gamma(k);
    rep.harmonic_dim = harmonic.size();
    rep.exact_dim = rank(exact);
    rep.coexact_dim = rank(coexact);

    rep.orthogonal = (kernel.transpose() * gb.norm * exact).is_zero() &&
                     (kernel.transpose() * gb.norm * coexact).is_zero() &&
                     (exact.transpose() * gb.norm * coexact).is_zero();
    rep.spanning = rank(hstack(hstack(kernel, exact), coexact)) == gb.dim();

    if (!rep.orthogonal || !rep.spanning ||
        rep.harmonic_dim + rep.exact_dim + rep.coexact_dim != rep.gamma_dim)
        throw DecompositionError("degree " + std::to_string(k) + ": " + std::to_string(rep.gamma_dim) +
                                 " != " + std::to_string(rep.harmonic_dim) + " + " + std::to_string(rep.exact_dim) +
                                 " + " + std::to_string(rep.coexact_dim) +
                                 (rep.orthogonal ? "" : " (summands not orthogonal)"));
    return rep;
}

}  // namespace glmy
