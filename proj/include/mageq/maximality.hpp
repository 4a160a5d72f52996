#pragma once

// Inducing paths and maximality. An inducing path between a and b is a path
// whose every nonendpoint vertex is a collider on the path and an ancestor of
// a or b; a nonadjacent pair joined by one cannot be m-separated by any set.
// An ancestral graph is maximal when no such pair exists, and any ancestral
// graph extends to a unique maximal one by adding bidirected edges.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace mageq {

struct InducingPathWitness {
    std::vector<Vertex> path;  // a ... b
    // One directed path per nonendpoint, from that vertex to a or to b.
    std::vector<std::vector<Vertex>> ancestor_certificates;
};

namespace detail {

// Walk states (vertex, mark of arrival); only all-collider continuations
// through ancestors of {a,b} are allowed, so any walk found shortens to an
// inducing path by cutting loops (statuses at the junction are unchanged).
inline std::optional<std::vector<Vertex>> inducing_walk(const MixedGraph& g, Vertex a, Vertex b,
                                                        const std::vector<char>& an_ab, bool want_walk) {
    const std::size_t n = g.vertex_count();
    std::vector<char> seen(2 * n, 0);
    std::vector<std::int32_t> prev(want_walk ? 2 * n : 0, -2);
    std::vector<std::uint32_t> queue;
    for (const AdjEntry& e : g.adjacency(a)) {
        const std::uint32_t s = (e.to << 1) | (e.at_other == Mark::Arrow ? 1u : 0u);
        if (!seen[s]) {
            seen[s] = 1;
            if (want_walk) prev[s] = -1;
            queue.push_back(s);
        }
    }
    std::int32_t hit = -1;
    for (std::size_t i = 0; i < queue.size() && hit < 0; ++i) {
        const std::uint32_t s = queue[i];
        const Vertex v = s >> 1;
        if (v == b) {
            hit = static_cast<std::int32_t>(s);
            break;
        }
        if ((s & 1) == 0) continue;        // arrival by tail: v cannot be a collider
        if (!an_ab[v]) continue;           // nonendpoints must be ancestors of {a,b}
        for (const AdjEntry& e : g.adjacency(v)) {
            if (e.at_self != Mark::Arrow) continue;  // keep v a collider
            const std::uint32_t t = (e.to << 1) | (e.at_other == Mark::Arrow ? 1u : 0u);
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
    walk.push_back(a);
    std::reverse(walk.begin(), walk.end());
    // Truncate endpoint revisits, then cut interior loops.
    for (std::size_t i = 1; i < walk.size(); ++i)
        if (walk[i] == b) {
            walk.resize(i + 1);
            break;
        }
    for (std::size_t i = walk.size(); i-- > 0;)
        if (walk[i] == a) {
            walk.erase(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    for (;;) {
        bool repeated = false;
        for (std::size_t i = 0; i < walk.size() && !repeated; ++i)
            for (std::size_t j = walk.size(); j-- > i + 1;)
                if (walk[j] == walk[i]) {
                    walk.erase(walk.begin() + static_cast<std::ptrdiff_t>(i + 1),
                               walk.begin() + static_cast<std::ptrdiff_t>(j + 1));
                    repeated = true;
                    break;
                }
        if (!repeated) break;
    }
    return walk;
}

// Shortest directed path from `v` to a vertex of `targets` (BFS childward).
inline std::vector<Vertex> directed_path_to_any(const MixedGraph& g, Vertex v,
                                                const std::vector<Vertex>& targets) {
    std::vector<char> target_mask = set_mask(g.vertex_count(), targets);
    std::vector<std::int64_t> prev(g.vertex_count(), -2);
    std::vector<Vertex> queue{v};
    prev[v] = -1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Vertex u = queue[i];
        if (target_mask[u]) {
            std::vector<Vertex> path;
            for (std::int64_t s = u; s >= 0; s = prev[s]) path.push_back(static_cast<Vertex>(s));
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (Vertex c : g.children(u))
            if (prev[c] == -2) {
                prev[c] = u;
                queue.push_back(c);
            }
    }
    fail(errc::internal, "no directed certificate path found");
}

}  // namespace detail

inline std::optional<InducingPathWitness> has_inducing_path(const MixedGraph& g, Vertex a, Vertex b) {
    if (a >= g.vertex_count() || b >= g.vertex_count()) fail(errc::unknown_vertex, "vertex index out of range");
    if (!g.is_ancestral()) fail(errc::not_ancestral, "inducing paths are defined on ancestral graphs");
    if (a == b) fail(errc::overlap, "endpoints must be distinct");
    const std::vector<char> an_ab = ancestor_mask(g, {a, b});
    auto walk = detail::inducing_walk(g, a, b, an_ab, /*want_walk=*/true);
    if (!walk) return std::nullopt;
    InducingPathWitness w;
    w.path = std::move(*walk);
    for (std::size_t i = 1; i + 1 < w.path.size(); ++i)
        w.ancestor_certificates.push_back(detail::directed_path_to_any(g, w.path[i], {a, b}));
    return w;
}

inline std::optional<InducingPathWitness> has_inducing_path(const MixedGraph& g, std::string_view a,
                                                            std::string_view b) {
    return has_inducing_path(g, g.index_of(a), g.index_of(b));
}

// Literal re-check of an inducing-path witness.
inline bool inducing_witness_valid(const MixedGraph& g, const InducingPathWitness& w) {
    const auto& p = w.path;
    if (p.size() < 2) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!g.adjacent(p[i], p[i + 1])) return false;
    if (w.ancestor_certificates.size() + 2 != p.size()) return false;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        if (g.mark_at(p[i], p[i - 1]) != Mark::Arrow || g.mark_at(p[i], p[i + 1]) != Mark::Arrow) return false;
        const auto& cert = w.ancestor_certificates[i - 1];
        if (cert.empty() || cert.front() != p[i]) return false;
        if (cert.back() != p.front() && cert.back() != p.back()) return false;
        for (std::size_t j = 0; j + 1 < cert.size(); ++j) {
            auto e = g.edge_between(cert[j], cert[j + 1]);
            if (!e) return false;
            Mark at_from = (e->u == cert[j]) ? e->at_u : e->at_v;
            Mark at_to = (e->u == cert[j + 1]) ? e->at_u : e->at_v;
            if (at_from != Mark::Tail || at_to != Mark::Arrow) return false;
        }
    }
    return true;
}

struct MaximalityResult {
    bool maximal = true;
    std::optional<std::pair<std::string, std::string>> offending_pair;
};

inline MaximalityResult is_maximal(const MixedGraph& g) {
    if (!g.is_ancestral()) fail(errc::not_ancestral, "maximality is defined on ancestral graphs");
    const std::size_t n = g.vertex_count();
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            if (g.adjacent(a, b)) continue;
            const std::vector<char> an_ab = ancestor_mask(g, {a, b});
            if (detail::inducing_walk(g, a, b, an_ab, /*want_walk=*/false))
                return {false, std::make_pair(g.name(a), g.name(b))};
        }
    }
    return {};
}

// Extends an ancestral graph to the unique maximal ancestral graph with the
// same independence model. Each round adds a bidirected edge for every
// nonadjacent pair currently joined by an inducing path; rounds repeat until
// none remain (one round suffices in practice, but that is not assumed).
inline MixedGraph maximal_completion(const MixedGraph& g) {
    if (!g.is_ancestral()) fail(errc::not_ancestral, "completion is defined on ancestral graphs");
    MixedGraph cur = g;
    const std::size_t n = g.vertex_count();
    for (std::size_t round = 0; round <= n * n + 1; ++round) {
        std::vector<std::pair<Vertex, Vertex>> missing;
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b = a + 1; b < n; ++b) {
                if (cur.adjacent(a, b)) continue;
                const std::vector<char> an_ab = ancestor_mask(cur, {a, b});
                if (detail::inducing_walk(cur, a, b, an_ab, /*want_walk=*/false)) missing.emplace_back(a, b);
            }
        }
        if (missing.empty()) return cur;
        std::vector<EdgeSpec> specs;
        for (const auto& e : cur.edges()) specs.push_back({cur.name(e.u), cur.name(e.v), e.at_u, e.at_v});
        for (auto [a, b] : missing) specs.push_back(bidirected(cur.name(a), cur.name(b)));
        cur = MixedGraph::build(cur.names(), specs);
        if (!cur.is_ancestral()) fail(errc::internal, "completion produced a non-ancestral graph");
    }
    fail(errc::internal, "completion did not reach a fixpoint");
}

inline void require_mag(const MixedGraph& g) {
    if (!g.is_ancestral()) fail(errc::not_ancestral, "expected a maximal ancestral graph");
    auto r = is_maximal(g);
    if (!r.maximal)
        fail(errc::not_maximal, "graph is not maximal: no set m-separates '" + r.offending_pair->first +
                                    "' and '" + r.offending_pair->second + "'");
}

}  // namespace mageq
