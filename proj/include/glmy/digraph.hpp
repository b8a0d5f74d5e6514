#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "glmy/errors.hpp"

namespace glmy {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/**
 * Finite directed graph without self-edges or directed cycles.
 *
 * Vertices are dense indices 0..n-1; the original labels are kept only for
 * output. Instances are validated on construction and immutable afterwards.
 */
class Digraph {
public:
    /// Throws SelfLoopError, CycleError or InvalidArgument.
    Digraph(std::vector<std::string> labels, std::vector<Edge> edges) : labels_(std::move(labels)) {
        if (labels_.empty()) throw InvalidArgument("empty graph");
        {
            std::set<std::string> seen(labels_.begin(), labels_.end());
            if (seen.size() != labels_.size()) throw InvalidArgument("duplicate vertex label");
        }
        const std::size_t before = edges.size();
        for (const auto& [u, v] : edges) {
            if (u >= labels_.size() || v >= labels_.size())
                throw InvalidArgument("edge endpoint out of range");
            if (u == v) throw SelfLoopError(labels_[u]);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        duplicate_edges_ = before - edges.size();
        edges_ = std::move(edges);
        out_.assign(labels_.size(), {});
        for (const auto& [u, v] : edges_) out_[u].push_back(v);
        order_ = topological_order_or_throw();
    }

    /// Vertices labelled "0".."n-1".
    static Digraph with_indices(std::size_t n, std::vector<Edge> edges) {
        std::vector<std::string> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
        return Digraph(std::move(labels), std::move(edges));
    }

    std::size_t vertex_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(Vertex v) const { return labels_.at(v); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    /// Sorted out-neighbours of v.
    const std::vector<Vertex>& successors(Vertex v) const { return out_.at(v); }
    std::size_t duplicate_edges() const noexcept { return duplicate_edges_; }

    bool has_edge(Vertex u, Vertex v) const {
        return std::binary_search(out_[u].begin(), out_[u].end(), v);
    }

    /// A vertex order in which every edge points forward.
    const std::vector<Vertex>& topological_order() const noexcept { return order_; }

    std::optional<Vertex> index_of(std::string_view label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return static_cast<Vertex>(i);
        return std::nullopt;
    }

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.labels_ == b.labels_ && a.edges_ == b.edges_;
    }

private:
    std::vector<Vertex> topological_order_or_throw() const {
        const std::size_t n = labels_.size();
        // 0 = unvisited, 1 = on stack, 2 = done
        std::vector<int> state(n, 0);
        std::vector<Vertex> parent(n, 0);
        std::vector<Vertex> post;
        post.reserve(n);
        for (Vertex root = 0; root < n; ++root) {
            if (state[root]) continue;
            std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
            state[root] = 1;
            while (!stack.empty()) {
                auto& [v, next] = stack.back();
                if (next < out_[v].size()) {
                    const Vertex w = out_[v][next++];
                    if (state[w] == 1) throw CycleError(cycle_witness(parent, v, w));
                    if (state[w] == 0) {
                        state[w] = 1;
                        parent[w] = v;
                        stack.emplace_back(w, 0);
                    }
                } else {
                    state[v] = 2;
                    post.push_back(v);
                    stack.pop_back();
                }
            }
        }
        std::reverse(post.begin(), post.end());
        return post;
    }

    // Back edge tail -> head closes the cycle head ... tail -> head.
    std::vector<std::string> cycle_witness(const std::vector<Vertex>& parent, Vertex tail, Vertex head) const {
        std::vector<Vertex> cyc{tail};
        for (Vertex v = tail; v != head;) {
            v = parent[v];
            cyc.push_back(v);
        }
        std::reverse(cyc.begin(), cyc.end());
        cyc.push_back(head);
        std::vector<std::string> out;
        for (Vertex v : cyc) out.push_back(labels_[v]);
        return out;
    }

    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> out_;
    std::vector<Vertex> order_;
    std::size_t duplicate_edges_ = 0;
};

/// Topological order of g. Validation already happened in the constructor,
/// so this never throws for a constructed Digraph.
inline std::vector<Vertex> check_acyclic(const Digraph& g) { return g.topological_order(); }

/// Edge count of the longest directed path (= longest allowed path).
inline std::size_t max_allowed_path_length(const Digraph& g) {
    const auto& order = g.topological_order();
    std::vector<std::size_t> longest(g.vertex_count(), 0);
    std::size_t best = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        for (Vertex w : g.successors(*it)) longest[*it] = std::max(longest[*it], longest[w] + 1);
        best = std::max(best, longest[*it]);
    }
    return best;
}

/// Number of weakly connected components.
inline std::size_t weak_component_count(const Digraph& g) {
    std::vector<std::size_t> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = g.vertex_count();
    for (const auto& [u, v] : g.edges()) {
        const auto a = find(u), b = find(v);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components;
}

namespace detail {

inline bool is_label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == ':';
}

inline bool is_decimal(const std::string& s) {
    return !s.empty() && s.size() <= 18 &&
           std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

/// Reads one label starting at pos (after skipping blanks); returns the
/// label and advances pos past it.
inline std::string read_label(std::string_view line, std::size_t& pos, std::size_t line_no) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && is_label_char(line[pos])) ++pos;
    if (pos == start) {
        if (pos < line.size())
            throw ParseError(std::string("unexpected character '") + line[pos] + "'", line_no, pos + 1);
        throw ParseError("expected a vertex label", line_no, pos + 1);
    }
    return std::string(line.substr(start, pos - start));
}

inline void skip_blanks(std::string_view line, std::size_t& pos) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
}

/// Label order rule: numeric sort when every label is a decimal integer,
/// first-appearance order otherwise.
inline std::vector<std::string> order_labels(std::vector<std::string> appearance) {
    if (std::all_of(appearance.begin(), appearance.end(), is_decimal)) {
        std::stable_sort(appearance.begin(), appearance.end(), [](const std::string& a, const std::string& b) {
            return std::stoll(a) < std::stoll(b);
        });
    }
    return appearance;
}

}  // namespace detail

/**
 * Parses the edge-list format: one `LABEL->LABEL` per line; `#` starts a
 * comment and blank lines are ignored. A line with a single label declares
 * an isolated vertex. Labels are `[A-Za-z0-9_.:]+`.
 */
inline Digraph parse_edge_list(std::string_view text) {
    std::vector<std::string> appearance;
    std::map<std::string, std::size_t> seen;
    std::vector<std::pair<std::string, std::string>> raw;
    auto note = [&](const std::string& s) {
        if (seen.emplace(s, appearance.size()).second) appearance.push_back(s);
    };

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        line = line.substr(0, line.find('#'));
        ++line_no;
        start = end + 1;

        std::size_t pos = 0;
        detail::skip_blanks(line, pos);
        if (pos == line.size()) {
            if (end == text.size()) break;
            continue;
        }
        const std::string from = detail::read_label(line, pos, line_no);
        detail::skip_blanks(line, pos);
        if (pos == line.size()) {
            note(from);
        } else {
            if (line.substr(pos, 2) != "->") throw ParseError("expected '->'", line_no, pos + 1);
            pos += 2;
            const std::string to = detail::read_label(line, pos, line_no);
            detail::skip_blanks(line, pos);
            if (pos != line.size()) throw ParseError("trailing characters after edge", line_no, pos + 1);
            if (from == to) throw SelfLoopError(from);
            note(from);
            note(to);
            raw.emplace_back(from, to);
        }
        if (end == text.size()) break;
    }
    if (appearance.empty()) throw InvalidArgument("empty graph");

    std::vector<std::string> labels = detail::order_labels(std::move(appearance));
    std::map<std::string, Vertex> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = static_cast<Vertex>(i);
    std::vector<Edge> edges;
    for (const auto& [a, b] : raw) edges.emplace_back(index[a], index[b]);
    return Digraph(std::move(labels), std::move(edges));
}

/// Parses `{"vertices":[...], "edges":[[u,v],...]}`; labels may be strings
/// or integers and edges refer to labels.
inline Digraph parse_json_digraph(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0, 0);
    }
    auto label_of = [](const nlohmann::json& j) -> std::string {
        if (j.is_string()) return j.get<std::string>();
        if (j.is_number_integer()) return std::to_string(j.get<long long>());
        throw ParseError("vertex labels must be strings or integers", 0, 0);
    };
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw ParseError("JSON digraph needs a \"vertices\" array", 0, 0);
    std::vector<std::string> labels;
    std::map<std::string, Vertex> index;
    for (const auto& v : doc["vertices"]) {
        auto l = label_of(v);
        if (index.count(l)) throw InvalidArgument("duplicate vertex label '" + l + "'");
        index[l] = static_cast<Vertex>(labels.size());
        labels.push_back(std::move(l));
    }
    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) throw ParseError("\"edges\" must be an array", 0, 0);
        for (const auto& e : doc["edges"]) {
            if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a [u, v] pair", 0, 0);
            const auto a = label_of(e[0]), b = label_of(e[1]);
            if (!index.count(a) || !index.count(b))
                throw ParseError("edge refers to an undeclared vertex", 0, 0);
            if (a == b) throw SelfLoopError(a);
            edges.emplace_back(index[a], index[b]);
        }
    }
    if (labels.empty()) throw InvalidArgument("empty graph");
    return Digraph(std::move(labels), std::move(edges));
}

/// Dispatches on the first non-blank character: `{` means JSON.
inline Digraph parse_digraph(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return parse_json_digraph(text);
    return parse_edge_list(text);
}

/// Edge-list text that parses back to an equal Digraph: vertex declarations
/// first (fixing the label order), then edges.
inline std::string serialize_edge_list(const Digraph& g) {
    std::ostringstream os;
    for (const auto& l : g.labels()) os << l << '\n';
    for (const auto& [u, v] : g.edges()) os << g.label(u) << "->" << g.label(v) << '\n';
    return os.str();
}

}  // namespace glmy
