#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "glmy/digraph.hpp"
#include "glmy/errors.hpp"
#include "glmy/matrix.hpp"
#include "glmy/paths.hpp"
#include "glmy/rational.hpp"

namespace glmy {

/**
 * Basis (A_k, L_k) of the embedded chain group Γ_k = A_k + ∂A_{k+1} inside
 * Λ_k.
 *
 * The allowed paths A_k come first and are orthonormal. Every completion
 * vector in L_k is supported on non-allowed paths only, so it is orthogonal
 * to A_k. L_k is the reduced row echelon basis of the non-allowed residuals
 * of ∂A_{k+1}; each vector has coefficient +1 on its pivot path. The
 * embedding E_k has these chains as columns, and N_k = E_k^T E_k.
 */
struct GammaBasis {
    int degree = 0;
    PathBasis allowed;
    std::vector<Chain> completion;
    RationalMatrix norm;
    RationalMatrix norm_inverse;

    std::size_t dim() const noexcept { return allowed.size() + completion.size(); }

    /// j-th basis vector of Γ_k as a chain in Λ_k (column j of E_k).
    Chain column(std::size_t j) const {
        if (j < allowed.size()) return Chain::of(allowed[j]);
        return completion.at(j - allowed.size());
    }

    /// E_k^T y.
    RationalVector inner_products(const Chain& y) const {
        RationalVector v(dim());
        for (std::size_t i = 0; i < allowed.size(); ++i) v[i] = y.coefficient(allowed[i]);
        for (std::size_t i = 0; i < completion.size(); ++i) v[allowed.size() + i] = completion[i].dot(y);
        return v;
    }

    /// E_k x.
    Chain embed(const RationalVector& x) const {
        Chain c(degree);
        for (std::size_t j = 0; j < dim(); ++j)
            if (x[j] != 0) c.add_scaled(column(j), x[j]);
        return c;
    }

    /// Γ-coordinates of the orthogonal projection of y onto Γ_k:
    /// N_k^{-1} E_k^T y.
    RationalVector projection_coordinates(const Chain& y) const { return norm_inverse.apply(inner_products(y)); }

    /// p_k(y) = E_k N_k^{-1} E_k^T y.
    Chain project(const Chain& y) const { return embed(projection_coordinates(y)); }

    /// Dense E_k (λ_k x γ_k) over n vertices.
    RationalMatrix embedding_matrix(std::size_t n, std::uint64_t cap = kDefaultRegularPathCap) const {
        require_regular_count(n, degree, cap);
        RationalMatrix e(*regular_path_count(n, degree), dim());
        for (std::size_t j = 0; j < dim(); ++j)
            for (const auto& [p, c] : column(j).terms()) e(regular_index(n, p), j) = c;
        return e;
    }
};

/// Γ_k for one degree. Degrees with no allowed paths give an empty basis.
inline GammaBasis build_gamma(const Digraph& g, int k) {
    GammaBasis gb;
    gb.degree = k;
    gb.allowed = enumerate_allowed(g, k);

    std::vector<Chain> residuals;
    std::set<ElementaryPath> support;
    for (const auto& q : enumerate_allowed(g, k + 1).paths()) {
        Chain r(k);
        for (const auto& [p, c] : boundary(q).terms())
            if (!gb.allowed.contains(p)) r.add(p, c);
        if (r.is_zero()) continue;
        for (const auto& t : r.terms()) support.insert(t.first);
        residuals.push_back(std::move(r));
    }

    if (!residuals.empty()) {
        const PathBasis coords(k, std::vector<ElementaryPath>(support.begin(), support.end()));
        RationalMatrix m(residuals.size(), coords.size());
        for (std::size_t i = 0; i < residuals.size(); ++i) {
            const RationalVector v = coords.coordinates(residuals[i]);
            for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[j];
        }
        const EchelonForm ef = reduced_row_echelon(std::move(m));
        for (std::size_t r = 0; r < ef.pivots.size(); ++r) gb.completion.push_back(coords.combination(ef.reduced.row(r)));
    }

    const std::size_t a = gb.allowed.size();
    gb.norm = RationalMatrix::identity(gb.dim());
    for (std::size_t i = 0; i < gb.completion.size(); ++i)
        for (std::size_t j = 0; j < gb.completion.size(); ++j)
            gb.norm(a + i, a + j) = gb.completion[i].dot(gb.completion[j]);
    gb.norm_inverse = gb.completion.empty() ? gb.norm : inverse(gb.norm);
    return gb;
}

struct ComplexOptions {
    /// Highest degree reported; defaults to the longest allowed path length.
    std::optional<int> max_degree;
    std::uint64_t path_cap = kDefaultRegularPathCap;
};

/**
 * Embedded chain complex Γ_0 <- Γ_1 <- ... of an acyclic digraph, with the
 * exact boundary matrices D_k^Γ and their adjoints D_k^{Γ,*} for the
 * induced inner products.
 *
 * Degrees 0..top are reported; Γ_{top+1} is also built so that the top
 * Laplacian is correct when the degree is capped below the longest path.
 * Degrees past the longest path are zero spaces.
 */
class ChainComplex {
public:
    explicit ChainComplex(const Digraph& g, ComplexOptions opts = {})
        : graph_(g), longest_(static_cast<int>(max_allowed_path_length(g))), cap_(opts.path_cap) {
        top_ = opts.max_degree ? std::min(*opts.max_degree, longest_) : longest_;
        if (top_ < 0) throw InvalidArgument("max degree must be non-negative");
        for (int k = 0; k <= top_ + 1; ++k) gammas_.push_back(build_gamma(graph_, k));
        boundaries_.push_back(RationalMatrix(0, gammas_[0].dim()));
        duals_.push_back(RationalMatrix(gammas_[0].dim(), 0));
        for (int k = 1; k <= top_ + 1; ++k) {
            boundaries_.push_back(compute_boundary(k));
            duals_.push_back(compute_dual(k));
        }
    }

    const Digraph& digraph() const noexcept { return graph_; }
    std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
    int top_degree() const noexcept { return top_; }
    int longest_path_length() const noexcept { return longest_; }
    /// True when no degree was cut off (top equals the longest path length).
    bool is_complete() const noexcept { return top_ == longest_; }
    std::uint64_t path_cap() const noexcept { return cap_; }

    /// Γ_k; an empty basis for degrees beyond the stored range.
    GammaBasis gamma(int k) const {
        if (k >= 0 && k <= top_ + 1) return gammas_[static_cast<std::size_t>(k)];
        require_known(k);
        GammaBasis empty;
        empty.degree = k;
        empty.allowed = PathBasis(k, {});
        return empty;
    }

    const GammaBasis& gamma_ref(int k) const { return gammas_.at(static_cast<std::size_t>(k)); }

    std::size_t gamma_dim(int k) const { return (k >= 0 && k <= top_ + 1) ? gammas_[static_cast<std::size_t>(k)].dim() : 0; }

    /// D_k^Γ (γ_{k-1} x γ_k).
    RationalMatrix boundary_gamma(int k) const {
        if (k >= 0 && k <= top_ + 1) return boundaries_[static_cast<std::size_t>(k)];
        require_known(k);
        return RationalMatrix(gamma_dim(k - 1), 0);
    }

    /// D_k^{Γ,*} (γ_k x γ_{k-1}).
    RationalMatrix dual_gamma(int k) const {
        if (k >= 0 && k <= top_ + 1) return duals_[static_cast<std::size_t>(k)];
        require_known(k);
        return RationalMatrix(0, gamma_dim(k - 1));
    }

    /// Δ_k^Γ = D_k^{Γ,*} D_k^Γ + D_{k+1}^Γ D_{k+1}^{Γ,*}.
    RationalMatrix laplacian_gamma(int k) const {
        if (k < 0 || k > top_) {
            require_known(k);
            return RationalMatrix(0, 0);
        }
        return dual_gamma(k) * boundary_gamma(k) + boundary_gamma(k + 1) * dual_gamma(k + 1);
    }

private:
    // Degrees above the top are only known to vanish when nothing was cut.
    void require_known(int k) const {
        if (k < 0) throw InvalidArgument("negative degree");
        if (!is_complete() && k > top_ + 1)
            throw InvalidArgument("degree " + std::to_string(k) + " lies beyond the capped complex");
    }

    // N_{k-1}^{-1} E_{k-1}^T D_k E_k, checked against E_{k-1} D^Γ = D_k E_k.
    RationalMatrix compute_boundary(int k) const {
        const GammaBasis& src = gammas_[static_cast<std::size_t>(k)];
        const GammaBasis& dst = gammas_[static_cast<std::size_t>(k - 1)];
        RationalMatrix d(dst.dim(), src.dim());
        for (std::size_t j = 0; j < src.dim(); ++j) {
            const Chain image = boundary(src.column(j));
            const RationalVector x = dst.projection_coordinates(image);
            if (!(dst.embed(x) == image))
                throw ConsistencyError("boundary of a Γ_" + std::to_string(k) + " basis vector leaves Γ_" +
                                       std::to_string(k - 1));
            for (std::size_t i = 0; i < x.size(); ++i) d(i, j) = x[i];
        }
        return d;
    }

    // N_k^{-1} E_k^T D_k^T E_{k-1}.
    RationalMatrix compute_dual(int k) const {
        const GammaBasis& src = gammas_[static_cast<std::size_t>(k - 1)];
        const GammaBasis& dst = gammas_[static_cast<std::size_t>(k)];
        RationalMatrix d(dst.dim(), src.dim());
        if (dst.dim() == 0) return d;
        for (std::size_t j = 0; j < src.dim(); ++j) {
            const RationalVector x = dst.projection_coordinates(coboundary(src.column(j), graph_.vertex_count()));
            for (std::size_t i = 0; i < x.size(); ++i) d(i, j) = x[i];
        }
        return d;
    }

    Digraph graph_;
    int longest_;
    int top_ = 0;
    std::uint64_t cap_;
    std::vector<GammaBasis> gammas_;
    std::vector<RationalMatrix> boundaries_;
    std::vector<RationalMatrix> duals_;
};

inline RationalMatrix boundary_matrix_gamma(const ChainComplex& cx, int k) { return cx.boundary_gamma(k); }
inline RationalMatrix dual_matrix_gamma(const ChainComplex& cx, int k) { return cx.dual_gamma(k); }
inline RationalMatrix hodge_laplacian_gamma(const ChainComplex& cx, int k) { return cx.laplacian_gamma(k); }

/// Dense P_k = E_k N_k^{-1} E_k^T on Λ_k (λ_k x λ_k).
inline RationalMatrix projection_matrix(const ChainComplex& cx, int k) {
    const std::size_t n = cx.vertex_count();
    require_regular_count(n, k, cx.path_cap());
    const auto lambda = *regular_path_count(n, k);
    if (lambda > 0 && lambda > cx.path_cap() / lambda) throw SizeLimitError("dense projection matrix exceeds the cap");
    const GammaBasis gb = cx.gamma(k);
    const RationalMatrix e = gb.embedding_matrix(n, cx.path_cap());
    return e * gb.norm_inverse * e.transpose();
}

struct DualCommutationReport {
    int degree = 0;
    bool holds = true;
    Rational max_deviation = 0;
};

/**
 * Checks E_k D_k^{Γ,*} = P_k D_k^T E_{k-1} exactly, column by column.
 *
 * The left side uses the adjoint characterisation N_k^{-1} (D_k^Γ)^T N_{k-1};
 * the right side projects the coboundary of each Γ_{k-1} basis vector.
 */
inline DualCommutationReport verify_dual_commutation(const ChainComplex& cx, int k) {
    DualCommutationReport rep;
    rep.degree = k;
    if (k <= 0) return rep;
    const GammaBasis gk = cx.gamma(k);
    const GammaBasis gk1 = cx.gamma(k - 1);
    const RationalMatrix adjoint = gk.norm_inverse * cx.boundary_gamma(k).transpose() * gk1.norm;
    for (std::size_t j = 0; j < gk1.dim(); ++j) {
        const Chain lhs = gk.embed(adjoint.column(j));
        const Chain rhs = gk.project(coboundary(gk1.column(j), cx.vertex_count()));
        const Rational dev = (lhs - rhs).max_abs();
        if (dev > rep.max_deviation) rep.max_deviation = dev;
    }
    rep.holds = rep.max_deviation == 0;
    return rep;
}

/// Γ-coordinate matrix of p_k ∘ Δ_k restricted to Γ_k, where Δ_k is the
/// total Laplacian on Λ_k: N_k^{-1} E_k^T Δ_k E_k.
inline RationalMatrix projected_total_laplacian(const ChainComplex& cx, int k) {
    const GammaBasis gb = cx.gamma(k);
    const std::size_t n = cx.vertex_count();
    RationalMatrix m(gb.dim(), gb.dim());
    for (std::size_t j = 0; j < gb.dim(); ++j) {
        const Chain e = gb.column(j);
        Chain delta = coboundary(boundary(e), n);
        if (k == 0) delta = Chain(0);
        delta += boundary(coboundary(e, n));
        const RationalVector x = gb.projection_coordinates(delta);
        for (std::size_t i = 0; i < x.size(); ++i) m(i, j) = x[i];
    }
    return m;
}

/// Γ-coordinate matrix of p_k (∂^*∂ + ∂ p_{k+1} ∂^*) restricted to Γ_k,
/// i.e. the degree-k block of PBPBP with B = ∂ + ∂^*. Equals Δ_k^Γ.
inline RationalMatrix projected_dirac_laplacian(const ChainComplex& cx, int k) {
    const GammaBasis gb = cx.gamma(k);
    const GammaBasis up = cx.gamma(k + 1);
    const std::size_t n = cx.vertex_count();
    RationalMatrix m(gb.dim(), gb.dim());
    for (std::size_t j = 0; j < gb.dim(); ++j) {
        const Chain e = gb.column(j);
        Chain delta = k == 0 ? Chain(0) : coboundary(boundary(e), n);
        if (up.dim() > 0) delta += boundary(up.project(coboundary(e, n)));
        const RationalVector x = gb.projection_coordinates(delta);
        for (std::size_t i = 0; i < x.size(); ++i) m(i, j) = x[i];
    }
    return m;
}

}  // namespace glmy
