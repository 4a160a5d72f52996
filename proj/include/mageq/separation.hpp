#pragma once

// m-separation queries. A path m-connects x and y given Z when none of its
// noncolliders lie in Z and every collider is an ancestor of Z. The query is
// answered by reachability over walk states (vertex, mark of arrival): an
// m-connecting walk exists iff an m-connecting path does, and any loop of a
// connecting walk can be cut without breaking the connection, so witnesses
// are returned as simple paths.

#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "graph.hpp"

namespace mageq {

// A walk between two vertices; consecutive entries are adjacent in the graph.
struct Walk {
    std::vector<Vertex> vertices;
};

// Literal check of the m-connection conditions for a concrete walk.
inline bool walk_m_connects(const MixedGraph& g, const std::vector<Vertex>& walk, const std::vector<char>& in_z,
                            const std::vector<char>& an_z) {
    if (walk.size() < 2) return false;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i)
        if (!g.adjacent(walk[i], walk[i + 1])) return false;
    for (std::size_t i = 1; i + 1 < walk.size(); ++i) {
        const Vertex v = walk[i];
        const bool collider =
            g.mark_at(v, walk[i - 1]) == Mark::Arrow && g.mark_at(v, walk[i + 1]) == Mark::Arrow;
        if (collider ? !an_z[v] : in_z[v]) return false;
    }
    return true;
}

namespace detail {

inline void check_sep_query(const MixedGraph& g, Vertex x, Vertex y, const std::vector<Vertex>& z) {
    if (!g.is_ancestral()) fail(errc::not_ancestral, "m-separation requires an ancestral graph");
    if (x == y) fail(errc::overlap, "query endpoints must be distinct");
    for (Vertex v : z) {
        if (v >= g.vertex_count()) fail(errc::unknown_vertex, "vertex index out of range");
        if (v == x || v == y) fail(errc::overlap, "conditioning set contains a query endpoint");
    }
}

// Walk-state search. States are (vertex, mark at that vertex on the edge just
// crossed); a step may continue through v when v behaves as an open collider
// (in an(Z)) or an open noncollider (outside Z).
struct SepSearch {
    const MixedGraph& g;
    std::vector<char> in_z, an_z;

    SepSearch(const MixedGraph& graph, const std::vector<Vertex>& z)
        : g(graph), in_z(set_mask(graph.vertex_count(), z)), an_z(ancestor_mask(graph, z)) {}

    static std::uint32_t state(Vertex v, Mark at_v) {
        return (v << 1) | (at_v == Mark::Arrow ? 1u : 0u);
    }

    // Returns the walk found, or nullopt. `want_walk` skips bookkeeping when
    // only the boolean answer is needed.
    std::optional<std::vector<Vertex>> run(Vertex x, Vertex y, bool want_walk) const {
        const std::size_t n = g.vertex_count();
        std::vector<char> seen(2 * n, 0);
        std::vector<std::int32_t> prev(want_walk ? 2 * n : 0, -2);
        std::vector<std::uint32_t> queue;
        for (const AdjEntry& e : g.adjacency(x)) {
            const std::uint32_t s = state(e.to, e.at_other);
            if (!seen[s]) {
                seen[s] = 1;
                if (want_walk) prev[s] = -1;  // reached directly from x
                queue.push_back(s);
            }
        }
        std::int32_t hit = -1;
        for (std::size_t i = 0; i < queue.size() && hit < 0; ++i) {
            const std::uint32_t s = queue[i];
            const Vertex v = s >> 1;
            if (v == y) {
                hit = static_cast<std::int32_t>(s);
                break;
            }
            const bool arrived_arrow = (s & 1) != 0;
            for (const AdjEntry& e : g.adjacency(v)) {
                const bool collider = arrived_arrow && e.at_self == Mark::Arrow;
                if (collider ? !an_z[v] : in_z[v]) continue;
                const std::uint32_t t = state(e.to, e.at_other);
                if (!seen[t]) {
                    seen[t] = 1;
                    if (want_walk) prev[t] = static_cast<std::int32_t>(s);
                    queue.push_back(t);
                }
            }
        }
        if (hit < 0) return std::nullopt;
        if (!want_walk) return std::vector<Vertex>{};
        std::vector<Vertex> walk;
        for (std::int32_t s = hit; s >= 0; s = prev[s]) walk.push_back(static_cast<Vertex>(s >> 1));
        walk.push_back(x);
        std::reverse(walk.begin(), walk.end());
        return walk;
    }
};

// Cuts loops out of a connecting walk until it is a simple path. Any single
// excision of a repeated vertex preserves the connection conditions, which
// the re-check below enforces.
inline std::vector<Vertex> shorten_to_path(const MixedGraph& g, std::vector<Vertex> walk,
                                           const std::vector<char>& in_z, const std::vector<char>& an_z) {
    const Vertex x = walk.front(), y = walk.back();
    for (std::size_t i = 1; i < walk.size(); ++i)
        if (walk[i] == y) {
            walk.resize(i + 1);
            break;
        }
    for (std::size_t i = walk.size(); i-- > 0;)
        if (walk[i] == x) {
            walk.erase(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    for (;;) {
        bool repeated = false;
        for (std::size_t i = 0; i < walk.size() && !repeated; ++i) {
            for (std::size_t j = walk.size(); j-- > i + 1;) {
                if (walk[j] != walk[i]) continue;
                repeated = true;
                std::vector<Vertex> cut(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(i + 1));
                cut.insert(cut.end(), walk.begin() + static_cast<std::ptrdiff_t>(j + 1), walk.end());
                if (!walk_m_connects(g, cut, in_z, an_z))
                    fail(errc::internal, "loop excision broke an m-connecting walk");
                walk = std::move(cut);
                break;
            }
        }
        if (!repeated) return walk;
    }
}

}  // namespace detail

inline bool m_connected(const MixedGraph& g, Vertex x, Vertex y, const std::vector<Vertex>& z) {
    detail::check_sep_query(g, x, y, z);
    detail::SepSearch search(g, z);
    return search.run(x, y, /*want_walk=*/false).has_value();
}

inline std::optional<Walk> m_connecting_walk(const MixedGraph& g, Vertex x, Vertex y,
                                             const std::vector<Vertex>& z) {
    detail::check_sep_query(g, x, y, z);
    detail::SepSearch search(g, z);
    auto walk = search.run(x, y, /*want_walk=*/true);
    if (!walk) return std::nullopt;
    auto path = detail::shorten_to_path(g, std::move(*walk), search.in_z, search.an_z);
    if (!walk_m_connects(g, path, search.in_z, search.an_z))
        fail(errc::internal, "witness walk failed its own re-check");
    return Walk{std::move(path)};
}

inline bool m_separated(const MixedGraph& g, Vertex x, Vertex y, const std::vector<Vertex>& z) {
    return !m_connected(g, x, y, z);
}

inline bool m_connected(const MixedGraph& g, std::string_view x, std::string_view y,
                        const std::vector<std::string>& z) {
    return m_connected(g, g.index_of(x), g.index_of(y), detail::indices_of(g, z));
}

inline std::optional<Walk> m_connecting_walk(const MixedGraph& g, std::string_view x, std::string_view y,
                                             const std::vector<std::string>& z) {
    return m_connecting_walk(g, g.index_of(x), g.index_of(y), detail::indices_of(g, z));
}

inline bool m_separated(const MixedGraph& g, std::string_view x, std::string_view y,
                        const std::vector<std::string>& z) {
    return !m_connected(g, x, y, z);
}

// Set form: A and B are m-separated given Z iff every cross pair is.
inline bool m_separated_sets(const MixedGraph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                             const std::vector<Vertex>& z) {
    if (a.empty() || b.empty()) fail(errc::empty_set, "separation query over an empty set");
    auto overlap = [](const std::vector<Vertex>& s, const std::vector<Vertex>& t) {
        for (Vertex v : s)
            for (Vertex w : t)
                if (v == w) return true;
        return false;
    };
    if (overlap(a, b) || overlap(a, z) || overlap(b, z))
        fail(errc::disjointness, "separation query sets must be pairwise disjoint");
    for (Vertex x : a)
        for (Vertex y : b)
            if (m_connected(g, x, y, z)) return false;
    return true;
}

inline bool m_separated_sets(const MixedGraph& g, const std::vector<std::string>& a,
                             const std::vector<std::string>& b, const std::vector<std::string>& z) {
    return m_separated_sets(g, detail::indices_of(g, a), detail::indices_of(g, b), detail::indices_of(g, z));
}

// ---------------------------------------------------------------------------
// Independence models: the full set of pairwise m-separation statements, the
// fingerprint compared when deciding Markov equivalence by brute force.

struct SeparationStatement {
    std::string a, b;                // a < b
    std::vector<std::string> given;  // sorted

    friend bool operator==(const SeparationStatement&, const SeparationStatement&) = default;
};

struct IndependenceModel {
    std::vector<std::string> universe;
    std::vector<SeparationStatement> statements;

    friend bool operator==(const IndependenceModel&, const IndependenceModel&) = default;

    std::string to_text() const {
        std::ostringstream out;
        for (const auto& s : statements) {
            out << s.a << " _||_ " << s.b;
            if (!s.given.empty()) {
                out << " | ";
                for (std::size_t i = 0; i < s.given.size(); ++i) {
                    if (i) out << ',';
                    out << s.given[i];
                }
            }
            out << '\n';
        }
        return out.str();
    }
};

namespace detail {

// Separation engine for graphs of at most 32 vertices, with ancestor sets
// precomputed as bitmasks. Used by the exhaustive model enumeration, where
// the same graph answers thousands of queries.
class SmallSeparation {
public:
    explicit SmallSeparation(const MixedGraph& g) : g_(&g), n_(g.vertex_count()) {
        if (n_ > 32) fail(errc::guard_exceeded, "small separation engine is limited to 32 vertices");
        anc_.assign(n_, 0);
        // Directed part of an ancestral graph is acyclic; accumulate ancestor
        // masks in topological order.
        std::vector<std::uint32_t> indeg(n_, 0);
        std::vector<Vertex> order;
        for (Vertex v = 0; v < n_; ++v) indeg[v] = static_cast<std::uint32_t>(g.parents(v).size());
        for (Vertex v = 0; v < n_; ++v)
            if (indeg[v] == 0) order.push_back(v);
        for (std::size_t i = 0; i < order.size(); ++i) {
            Vertex v = order[i];
            anc_[v] |= 1u << v;
            for (Vertex c : g.children(v)) {
                anc_[c] |= anc_[v];
                if (--indeg[c] == 0) order.push_back(c);
            }
        }
        if (order.size() != n_) fail(errc::not_ancestral, "directed cycle");
        seen_.assign(2 * n_, 0);
        queue_.reserve(2 * n_);
    }

    bool connected(Vertex x, Vertex y, std::uint32_t zmask) {
        std::uint32_t an_z = 0;  // ancestors of Z, Z included
        for (std::uint32_t m = zmask; m; m &= m - 1) an_z |= anc_[std::countr_zero(m)];
        std::fill(seen_.begin(), seen_.end(), 0);
        queue_.clear();
        for (const AdjEntry& e : g_->adjacency(x)) {
            const std::uint32_t s = (e.to << 1) | (e.at_other == Mark::Arrow ? 1u : 0u);
            if (!seen_[s]) {
                seen_[s] = 1;
                queue_.push_back(s);
            }
        }
        for (std::size_t i = 0; i < queue_.size(); ++i) {
            const std::uint32_t s = queue_[i];
            const Vertex v = s >> 1;
            if (v == y) return true;
            const bool arrived_arrow = (s & 1) != 0;
            const std::uint32_t bit = 1u << v;
            for (const AdjEntry& e : g_->adjacency(v)) {
                const bool collider = arrived_arrow && e.at_self == Mark::Arrow;
                if (collider ? !(an_z & bit) : (zmask & bit) != 0) continue;
                const std::uint32_t t = (e.to << 1) | (e.at_other == Mark::Arrow ? 1u : 0u);
                if (!seen_[t]) {
                    seen_[t] = 1;
                    queue_.push_back(t);
                }
            }
        }
        return false;
    }

private:
    const MixedGraph* g_;
    std::size_t n_;
    std::vector<std::uint32_t> anc_;
    std::vector<char> seen_;
    std::vector<std::uint32_t> queue_;
};

}  // namespace detail

// Enumerates every statement <{a,b} | Z> with a,b nonadjacent and Z ranging
// over all subsets of the remaining vertices, in canonical order: pairs by
// vertex order, Z as a binary counter over the sorted vertex list.
inline IndependenceModel independence_model(const MixedGraph& g, std::size_t max_vertices = 12) {
    const std::size_t n = g.vertex_count();
    if (n > max_vertices || n > 32)
        fail(errc::guard_exceeded, "independence model enumeration over " + std::to_string(n) +
                                       " vertices exceeds the guard of " + std::to_string(std::min<std::size_t>(max_vertices, 32)));
    if (!g.is_ancestral()) fail(errc::not_ancestral, "independence model requires an ancestral graph");

    IndependenceModel model;
    model.universe = g.names();
    detail::SmallSeparation sep(g);
    const std::uint32_t full = (n >= 32) ? 0xFFFFFFFFu : ((1u << n) - 1u);
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            if (g.adjacent(a, b)) continue;
            const std::uint32_t skip = (1u << a) | (1u << b);
            for (std::uint32_t mask = 0;; ++mask) {
                if (!(mask & skip) && !sep.connected(a, b, mask)) {
                    SeparationStatement st;
                    st.a = g.name(a);
                    st.b = g.name(b);
                    for (Vertex v = 0; v < n; ++v)
                        if (mask & (1u << v)) st.given.push_back(g.name(v));
                    model.statements.push_back(std::move(st));
                }
                if (mask == full) break;
            }
        }
    }
    return model;
}

}  // namespace mageq
