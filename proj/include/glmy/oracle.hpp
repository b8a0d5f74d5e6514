#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "glmy/digraph.hpp"
#include "glmy/paths.hpp"
#include "glmy/rational.hpp"

// Reference GLMY homology through the classical Ω-complex. Shares only the
// path enumeration and boundary map with the embedded pipeline; all linear
// algebra here is integer and fraction-free.
namespace glmy::oracle {

using IntegerVector = std::vector<Integer>;

/// Dense integer matrix, row-major.
class IntegerMatrix {
public:
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

private:
    std::size_t rows_, cols_;
    std::vector<Integer> a_;
};

/// Bareiss fraction-free forward elimination in place. Returns the pivot
/// columns; rows beyond their count are zero afterwards.
inline std::vector<std::size_t> bareiss_echelon(IntegerMatrix& m) {
    std::vector<std::size_t> pivots;
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) swap(m(p, j), m(r, j));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            for (std::size_t j = c + 1; j < m.cols(); ++j) {
                m(i, j) = m(r, c) * m(i, j) - m(i, c) * m(r, j);
                mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            m(i, c) = 0;
        }
        prev = m(r, c);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t integer_rank(IntegerMatrix m) { return bareiss_echelon(m).size(); }

/// Primitive integer basis of the right nullspace, by back substitution on
/// the Bareiss echelon form.
inline std::vector<IntegerVector> integer_nullspace(IntegerMatrix m) {
    const auto pivots = bareiss_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<IntegerVector> out;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> x(m.cols());
        x[free] = 1;
        for (std::size_t r = pivots.size(); r-- > 0;) {
            Rational s = 0;
            for (std::size_t j = pivots[r] + 1; j < m.cols(); ++j)
                if (m(r, j) != 0 && x[j] != 0) s += Rational(m(r, j)) * x[j];
            x[pivots[r]] = -s / Rational(m(r, pivots[r]));
        }
        Integer den = 1;
        for (const auto& q : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        IntegerVector v(m.cols());
        Integer g = 0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            v[j] = Rational(x[j] * den).get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[j].get_mpz_t());
        }
        for (auto& z : v) z /= g;
        out.push_back(std::move(v));
    }
    return out;
}

/// Ω_k = {x ∈ A_k : ∂x ∈ A_{k-1}} as integer vectors over the A_k basis.
struct OmegaBasis {
    int degree = 0;
    PathBasis allowed;
    std::vector<IntegerVector> basis;

    std::size_t dim() const { return basis.size(); }

    Chain chain(std::size_t i) const {
        Chain c(degree);
        for (std::size_t j = 0; j < allowed.size(); ++j)
            if (basis[i][j] != 0) c.add(allowed[j], Rational(basis[i][j]));
        return c;
    }
};

inline OmegaBasis omega_basis(const Digraph& g, int k) {
    OmegaBasis ob;
    ob.degree = k;
    ob.allowed = enumerate_allowed(g, k);
    const std::size_t a = ob.allowed.size();
    if (k == 0) {
        for (std::size_t i = 0; i < a; ++i) {
            IntegerVector v(a);
            v[i] = 1;
            ob.basis.push_back(std::move(v));
        }
        return ob;
    }
    if (a == 0) return ob;
    const PathBasis below = enumerate_allowed(g, k - 1);
    // Rows: non-allowed (k-1)-paths reached by some boundary.
    std::vector<ElementaryPath> outside;
    std::vector<Chain> images;
    for (const auto& p : ob.allowed.paths()) {
        images.push_back(boundary(p));
        for (const auto& [f, c] : images.back().terms())
            if (!below.contains(f)) outside.push_back(f);
    }
    std::sort(outside.begin(), outside.end());
    outside.erase(std::unique(outside.begin(), outside.end()), outside.end());
    const PathBasis rows(k - 1, outside);
    IntegerMatrix m(rows.size(), a);
    for (std::size_t j = 0; j < a; ++j)
        for (const auto& [f, c] : images[j].terms())
            if (const auto i = rows.index_of(f)) m(*i, j) = c.get_num();
    ob.basis = integer_nullspace(std::move(m));
    return ob;
}

/// rank of ∂ : Ω_k -> A_{k-1}.
inline std::size_t omega_boundary_rank(const OmegaBasis& ob, const PathBasis& below) {
    if (ob.degree == 0 || ob.dim() == 0) return 0;
    IntegerMatrix m(below.size(), ob.dim());
    for (std::size_t j = 0; j < ob.dim(); ++j)
        for (const auto& [f, c] : boundary(ob.chain(j)).terms()) {
            const auto i = below.index_of(f);
            if (!i) throw ConsistencyError("Ω boundary left the allowed paths");
            m(*i, j) = c.get_num();
        }
    return integer_rank(std::move(m));
}

/// β_k = dim Ω_k - rank ∂_k|Ω - rank ∂_{k+1}|Ω for k = 0..top (default:
/// the longest allowed path length).
inline std::vector<std::size_t> betti_omega(const Digraph& g, std::optional<int> max_degree = {}) {
    const int longest = static_cast<int>(max_allowed_path_length(g));
    const int top = max_degree ? std::min(*max_degree, longest) : longest;
    std::vector<OmegaBasis> omegas;
    for (int k = 0; k <= top + 1; ++k) omegas.push_back(omega_basis(g, k));
    std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 2, 0);
    for (int k = 1; k <= top + 1; ++k)
        ranks[static_cast<std::size_t>(k)] =
            omega_boundary_rank(omegas[static_cast<std::size_t>(k)], omegas[static_cast<std::size_t>(k - 1)].allowed);
    std::vector<std::size_t> betti;
    for (int k = 0; k <= top; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        betti.push_back(omegas[uk].dim() - ranks[uk] - ranks[uk + 1]);
    }
    return betti;
}

/// ∂(Ω_k) ⊆ Ω_{k-1}: every boundary lies in the span of the Ω_{k-1} basis.
inline bool boundary_stays_in_omega(const Digraph& g, int k) {
    if (k <= 0) return true;
    const OmegaBasis upper = omega_basis(g, k);
    const OmegaBasis lower = omega_basis(g, k - 1);
    const std::size_t a = lower.allowed.size();
    IntegerMatrix base(a, lower.dim());
    for (std::size_t j = 0; j < lower.dim(); ++j)
        for (std::size_t i = 0; i < a; ++i) base(i, j) = lower.basis[j][i];
    const std::size_t r = integer_rank(base);
    for (std::size_t t = 0; t < upper.dim(); ++t) {
        IntegerMatrix ext(a, lower.dim() + 1);
        for (std::size_t j = 0; j < lower.dim(); ++j)
            for (std::size_t i = 0; i < a; ++i) ext(i, j) = base(i, j);
        for (const auto& [f, c] : boundary(upper.chain(t)).terms()) {
            const auto i = lower.allowed.index_of(f);
            if (!i) return false;
            ext(*i, lower.dim()) = c.get_num();
        }
        if (integer_rank(std::move(ext)) != r) return false;
    }
    return true;
}

}  // namespace glmy::oracle
