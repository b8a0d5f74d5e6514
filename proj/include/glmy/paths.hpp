#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "glmy/digraph.hpp"
#include "glmy/errors.hpp"
#include "glmy/matrix.hpp"
#include "glmy/rational.hpp"

namespace glmy {

/// Default cap on the number of regular paths any single enumeration may
/// produce.
inline constexpr std::uint64_t kDefaultRegularPathCap = 10'000'000;

/// Ordered vertex sequence v0..vk; a k-path has k+1 vertices.
class ElementaryPath {
public:
    ElementaryPath() = default;
    explicit ElementaryPath(std::vector<Vertex> vertices) : v_(std::move(vertices)) {}
    ElementaryPath(std::initializer_list<Vertex> vertices) : v_(vertices) {}

    const std::vector<Vertex>& vertices() const noexcept { return v_; }
    std::size_t size() const noexcept { return v_.size(); }
    /// Path length k (edge count); the empty path has degree -1.
    int degree() const noexcept { return static_cast<int>(v_.size()) - 1; }
    Vertex operator[](std::size_t i) const { return v_[i]; }

    bool is_regular() const {
        for (std::size_t i = 1; i < v_.size(); ++i)
            if (v_[i] == v_[i - 1]) return false;
        return true;
    }

    /// No vertex repeats anywhere on the path.
    bool is_simple() const {
        std::vector<Vertex> s = v_;
        std::sort(s.begin(), s.end());
        return std::adjacent_find(s.begin(), s.end()) == s.end();
    }

    /// Path with the i-th vertex removed.
    ElementaryPath face(std::size_t i) const {
        std::vector<Vertex> f;
        f.reserve(v_.size() - 1);
        for (std::size_t j = 0; j < v_.size(); ++j)
            if (j != i) f.push_back(v_[j]);
        return ElementaryPath(std::move(f));
    }

    ElementaryPath inserted(std::size_t pos, Vertex v) const {
        std::vector<Vertex> p = v_;
        p.insert(p.begin() + static_cast<std::ptrdiff_t>(pos), v);
        return ElementaryPath(std::move(p));
    }

    /// Concatenated labels, or dot-separated when any label is longer than
    /// one character.
    std::string to_string(const std::vector<std::string>& labels) const {
        const bool compact = std::all_of(v_.begin(), v_.end(), [&](Vertex v) { return labels.at(v).size() == 1; });
        std::string s;
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (i && !compact) s += '.';
            s += labels.at(v_[i]);
        }
        return s;
    }

    friend auto operator<=>(const ElementaryPath&, const ElementaryPath&) = default;
    friend bool operator==(const ElementaryPath&, const ElementaryPath&) = default;

private:
    std::vector<Vertex> v_;
};

struct ElementaryPathHash {
    std::size_t operator()(const ElementaryPath& p) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (Vertex v : p.vertices()) h = (h ^ v) * 1099511628211ull;
        return h;
    }
};

/**
 * Finite formal linear combination of regular elementary paths of one
 * degree, with nonzero exact rational coefficients. Adding an irregular path
 * is a no-op (irregular paths are identified with zero).
 */
class Chain {
public:
    using Terms = std::map<ElementaryPath, Rational>;

    explicit Chain(int degree = 0) : degree_(degree) {}
    Chain(int degree, std::initializer_list<std::pair<ElementaryPath, long>> terms) : degree_(degree) {
        for (const auto& [p, c] : terms) add(p, c);
    }

    static Chain of(const ElementaryPath& p) {
        Chain c(p.degree());
        c.add(p, 1);
        return c;
    }

    int degree() const noexcept { return degree_; }
    const Terms& terms() const& noexcept { return terms_; }
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Rational coefficient(const ElementaryPath& p) const {
        const auto it = terms_.find(p);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(const ElementaryPath& p, const Rational& c) {
        if (c == 0 || !p.is_regular()) return;
        if (p.degree() != degree_) throw InvalidArgument("chain term has the wrong degree");
        auto [it, inserted] = terms_.emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Chain& operator+=(const Chain& o) {
        require_degree(o);
        for (const auto& [p, c] : o.terms_) add(p, c);
        return *this;
    }

    Chain& operator-=(const Chain& o) {
        require_degree(o);
        for (const auto& [p, c] : o.terms_) add(p, -c);
        return *this;
    }

    /// this += s * o
    void add_scaled(const Chain& o, const Rational& s) {
        if (s == 0) return;
        require_degree(o);
        for (const auto& [p, c] : o.terms_) add(p, s * c);
    }

    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
    friend Chain operator*(const Rational& s, const Chain& a) {
        Chain r(a.degree_);
        r.add_scaled(a, s);
        return r;
    }

    /// Standard inner product: elementary paths are orthonormal.
    Rational dot(const Chain& o) const {
        const Chain& small = size() <= o.size() ? *this : o;
        const Chain& large = size() <= o.size() ? o : *this;
        Rational s = 0;
        for (const auto& [p, c] : small.terms_) {
            const auto it = large.terms_.find(p);
            if (it != large.terms_.end()) s += c * it->second;
        }
        return s;
    }

    /// Largest absolute coefficient (0 for the zero chain).
    Rational max_abs() const {
        Rational m = 0;
        for (const auto& [p, c] : terms_) m = std::max(m, abs_value(c));
        return m;
    }

    friend bool operator==(const Chain& a, const Chain& b) {
        return a.terms_ == b.terms_ && (a.degree_ == b.degree_ || a.terms_.empty());
    }

private:
    void require_degree(const Chain& o) const {
        if (o.degree_ != degree_ && !o.is_zero()) throw InvalidArgument("chain degree mismatch");
    }

    int degree_;
    Terms terms_;
};

/// Boundary of a single path: alternating sum of faces, irregular faces
/// dropped. Degree-0 paths map to the zero chain of degree -1.
inline Chain boundary(const ElementaryPath& p) {
    Chain out(p.degree() - 1);
    if (p.degree() <= 0) return out;
    for (std::size_t i = 0; i < p.size(); ++i) out.add(p.face(i), (i % 2 == 0) ? 1 : -1);
    return out;
}

inline Chain boundary(const Chain& c) {
    Chain out(c.degree() - 1);
    if (c.degree() <= 0) return out;
    for (const auto& [p, coeff] : c.terms()) out.add_scaled(boundary(p), coeff);
    return out;
}

/// Adjoint of the boundary on the regular path spaces over n vertices:
/// the image of a (k-1)-chain in Λ_k, i.e. the action of D_k^T.
inline Chain coboundary(const Chain& c, std::size_t n) {
    Chain out(c.degree() + 1);
    for (const auto& [q, coeff] : c.terms()) {
        const std::size_t len = q.size();
        for (std::size_t pos = 0; pos <= len; ++pos) {
            const Rational s = (pos % 2 == 0) ? coeff : Rational(-coeff);
            for (Vertex v = 0; v < n; ++v) {
                if (pos > 0 && q[pos - 1] == v) continue;
                if (pos < len && q[pos] == v) continue;
                out.add(q.inserted(pos, v), s);
            }
        }
    }
    return out;
}

/// Ordered basis of elementary k-paths with a reverse index.
class PathBasis {
public:
    PathBasis() = default;
    PathBasis(int degree, std::vector<ElementaryPath> paths) : degree_(degree), paths_(std::move(paths)) {
        index_.reserve(paths_.size());
        for (std::size_t i = 0; i < paths_.size(); ++i) index_.emplace(paths_[i], i);
    }

    int degree() const noexcept { return degree_; }
    std::size_t size() const noexcept { return paths_.size(); }
    bool empty() const noexcept { return paths_.empty(); }
    const std::vector<ElementaryPath>& paths() const& noexcept { return paths_; }
    std::vector<ElementaryPath> paths() && { return std::move(paths_); }
    const ElementaryPath& operator[](std::size_t i) const { return paths_[i]; }
    bool contains(const ElementaryPath& p) const { return index_.count(p) != 0; }

    std::optional<std::size_t> index_of(const ElementaryPath& p) const {
        const auto it = index_.find(p);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Coordinates of c in this basis; terms outside the basis are an error.
    RationalVector coordinates(const Chain& c) const {
        RationalVector v(paths_.size());
        for (const auto& [p, coeff] : c.terms()) {
            const auto i = index_of(p);
            if (!i) throw InvalidArgument("chain term outside the basis");
            v[*i] = coeff;
        }
        return v;
    }

    Chain combination(const RationalVector& coords) const {
        Chain c(degree_);
        for (std::size_t i = 0; i < paths_.size(); ++i) c.add(paths_[i], coords[i]);
        return c;
    }

private:
    int degree_ = 0;
    std::vector<ElementaryPath> paths_;
    std::unordered_map<ElementaryPath, std::size_t, ElementaryPathHash> index_;
};

/// n(n-1)^k, or nullopt if it overflows 64 bits.
inline std::optional<std::uint64_t> regular_path_count(std::size_t n, int k) {
    if (n == 0 || k < 0) return 0;
    std::uint64_t total = n;
    for (int i = 0; i < k; ++i) {
        if (n - 1 != 0 && total > std::numeric_limits<std::uint64_t>::max() / (n - 1)) return std::nullopt;
        total *= (n - 1);
    }
    return total;
}

inline void require_regular_count(std::size_t n, int k, std::uint64_t cap) {
    const auto count = regular_path_count(n, k);
    if (!count || *count > cap)
        throw SizeLimitError("regular " + std::to_string(k) + "-paths on " + std::to_string(n) +
                             " vertices exceed the cap of " + std::to_string(cap));
}

/// Position of a regular path in the lexicographic enumeration of Λ_k.
inline std::uint64_t regular_index(std::size_t n, const ElementaryPath& p) {
    std::uint64_t idx = p[0];
    for (std::size_t i = 1; i < p.size(); ++i) {
        const std::uint64_t r = p[i] < p[i - 1] ? p[i] : p[i] - 1;
        idx = idx * (n - 1) + r;
    }
    return idx;
}

/// All n(n-1)^k regular k-paths in lexicographic order.
inline PathBasis enumerate_regular(std::size_t n, int k, std::uint64_t cap = kDefaultRegularPathCap) {
    if (n == 0) throw InvalidArgument("vertex count must be positive");
    if (k < 0) return PathBasis(k, {});
    require_regular_count(n, k, cap);
    std::vector<ElementaryPath> out;
    out.reserve(static_cast<std::size_t>(*regular_path_count(n, k)));
    std::vector<Vertex> cur;
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == k + 1) {
            out.emplace_back(cur);
            return;
        }
        for (Vertex v = 0; v < n; ++v) {
            if (!cur.empty() && cur.back() == v) continue;
            cur.push_back(v);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return PathBasis(k, std::move(out));
}

/// All allowed k-paths (directed walks with k edges) in lexicographic order.
inline PathBasis enumerate_allowed(const Digraph& g, int k) {
    std::vector<ElementaryPath> out;
    if (k < 0) return PathBasis(k, {});
    std::vector<Vertex> cur;
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == k + 1) {
            out.emplace_back(cur);
            return;
        }
        for (Vertex w : g.successors(cur.back())) {
            cur.push_back(w);
            rec();
            cur.pop_back();
        }
    };
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        cur.assign(1, v);
        rec();
    }
    return PathBasis(k, std::move(out));
}

/// Dense D_k : Λ_k -> Λ_{k-1} over n vertices (λ_{k-1} x λ_k). D_0 is the
/// 0 x n zero map.
inline RationalMatrix boundary_matrix_total(std::size_t n, int k, std::uint64_t cap = kDefaultRegularPathCap) {
    const PathBasis cols = enumerate_regular(n, k, cap);
    if (k == 0) return RationalMatrix(0, cols.size());
    require_regular_count(n, k - 1, cap);
    const auto rows = *regular_path_count(n, k - 1);
    if (rows * cols.size() > cap) throw SizeLimitError("dense boundary matrix exceeds the cap");
    RationalMatrix d(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [f, c] : boundary(cols[j]).terms()) d(regular_index(n, f), j) = c;
    return d;
}

/// Dense Δ_k = D_k^T D_k + D_{k+1} D_{k+1}^T on Λ_k.
inline RationalMatrix hodge_laplacian_total(std::size_t n, int k, std::uint64_t cap = kDefaultRegularPathCap) {
    const RationalMatrix dk = boundary_matrix_total(n, k, cap);
    const RationalMatrix dk1 = boundary_matrix_total(n, k + 1, cap);
    return dk.transpose() * dk + dk1 * dk1.transpose();
}

}  // namespace glmy
