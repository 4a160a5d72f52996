#pragma once

// Brute-force ground truth at desk scale. Everything here trades speed for
// being a literal transcription of a definition, so the fast implementations
// can be checked against it on small graphs. Guards refuse oversize inputs
// rather than truncating.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equivalence.hpp"
#include "graph.hpp"
#include "maximality.hpp"
#include "separation.hpp"

namespace mageq {

// m-connection decided by enumerating every simple path and checking the
// collider/noncollider conditions on each.
inline bool brute_force_m_connected(const MixedGraph& g, Vertex x, Vertex y, const std::vector<Vertex>& z) {
    detail::check_sep_query(g, x, y, z);
    const std::vector<char> in_z = detail::set_mask(g.vertex_count(), z);
    const std::vector<char> an_z = ancestor_mask(g, z);
    std::vector<Vertex> path{x};
    std::vector<char> on_path(g.vertex_count(), 0);
    on_path[x] = 1;
    bool found = false;
    auto dfs = [&](auto&& self, Vertex v) -> void {
        if (found) return;
        if (v == y) {
            if (walk_m_connects(g, path, in_z, an_z)) found = true;
            return;
        }
        for (const AdjEntry& e : g.adjacency(v)) {
            if (on_path[e.to]) continue;
            on_path[e.to] = 1;
            path.push_back(e.to);
            self(self, e.to);
            path.pop_back();
            on_path[e.to] = 0;
        }
    };
    dfs(dfs, x);
    return found;
}

inline bool brute_force_m_connected(const MixedGraph& g, std::string_view x, std::string_view y,
                                    const std::vector<std::string>& z) {
    return brute_force_m_connected(g, g.index_of(x), g.index_of(y), detail::indices_of(g, z));
}

// Markov equivalence by comparing the full independence models.
inline bool brute_force_equivalent(const MixedGraph& g1, const MixedGraph& g2, std::size_t guard = 12) {
    if (g1.names() != g2.names()) fail(errc::vertex_set_mismatch, "graphs have different vertex sets");
    return independence_model(g1, guard) == independence_model(g2, guard);
}

// ---------------------------------------------------------------------------
// Discriminating paths: <x, q_1, ..., q_p, b, y> with x nonadjacent to y and
// every q_i both a collider on the path and a parent of y. Such a path pins
// down whether <q_p, b, y> is a collider in every equivalent graph that also
// carries the path.

struct DiscriminatingPath {
    std::vector<Vertex> path;  // x, q_1..q_p, b, y

    Triple discriminated() const {
        const std::size_t k = path.size();
        return make_triple(path[k - 3], path[k - 2], path[k - 1]);
    }
};

inline bool discriminating_path_valid(const MixedGraph& g, const std::vector<Vertex>& p) {
    if (p.size() < 4) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!g.adjacent(p[i], p[i + 1])) return false;
    std::vector<char> seen(g.vertex_count(), 0);
    for (Vertex v : p) {
        if (seen[v]) return false;
        seen[v] = 1;
    }
    const Vertex y = p.back();
    if (g.adjacent(p.front(), y)) return false;
    for (std::size_t i = 1; i + 2 < p.size(); ++i) {  // the q_i
        if (g.mark_at(p[i], p[i - 1]) != Mark::Arrow || g.mark_at(p[i], p[i + 1]) != Mark::Arrow) return false;
        auto e = g.edge_between(p[i], y);
        if (!e) return false;
        Mark at_q = (e->u == p[i]) ? e->at_u : e->at_v;
        Mark at_y = (e->u == p[i]) ? e->at_v : e->at_u;
        if (at_q != Mark::Tail || at_y != Mark::Arrow) return false;
    }
    return true;
}

namespace detail {

// Backward extension from the discriminated triple: interior vertices are
// parents of y chained by bidirected edges, terminated by any x with an
// arrowhead into the chain and no edge to y.
inline void extend_discriminating(const MixedGraph& g, Vertex b, Vertex y, std::vector<Vertex>& chain,
                                  std::vector<char>& used, std::vector<DiscriminatingPath>& out) {
    const Vertex q1 = chain.front();
    for (const AdjEntry& e : g.adjacency(q1)) {
        const Vertex x = e.to;
        if (x == y || x == b || used[x]) continue;
        if (e.at_self != Mark::Arrow) continue;  // q_1 must stay a collider
        if (g.adjacent(x, y)) continue;
        DiscriminatingPath dp;
        dp.path.push_back(x);
        dp.path.insert(dp.path.end(), chain.begin(), chain.end());
        dp.path.push_back(b);
        dp.path.push_back(y);
        out.push_back(std::move(dp));
    }
    for (Vertex q0 : g.parents(y)) {
        if (q0 == b || used[q0]) continue;
        auto e = g.edge_between(q0, q1);
        if (!e || kind(*e) != EdgeKind::Bidirected) continue;
        used[q0] = 1;
        chain.insert(chain.begin(), q0);
        extend_discriminating(g, b, y, chain, used, out);
        chain.erase(chain.begin());
        used[q0] = 0;
    }
}

}  // namespace detail

namespace detail {

inline std::vector<DiscriminatingPath> discriminating_paths_unchecked(const MixedGraph& g, Vertex a, Vertex b,
                                                                      Vertex c) {
    std::vector<DiscriminatingPath> out;
    if (!g.adjacent(a, b) || !g.adjacent(b, c)) return out;
    for (auto [qp, y] : {std::pair(a, c), std::pair(c, a)}) {
        auto qy = g.edge_between(qp, y);
        if (!qy) continue;
        const Mark at_qp = (qy->u == qp) ? qy->at_u : qy->at_v;
        const Mark at_y = (qy->u == qp) ? qy->at_v : qy->at_u;
        if (at_qp != Mark::Tail || at_y != Mark::Arrow) continue;  // q_p must be a parent of y
        if (g.mark_at(qp, b) != Mark::Arrow) continue;             // and a collider beside b
        std::vector<Vertex> chain{qp};
        std::vector<char> used(g.vertex_count(), 0);
        used[qp] = used[b] = used[y] = 1;
        detail::extend_discriminating(g, b, y, chain, used, out);
        used[qp] = used[b] = used[y] = 0;
    }
    std::sort(out.begin(), out.end(),
              [](const DiscriminatingPath& l, const DiscriminatingPath& r) { return l.path < r.path; });
    return out;
}

}  // namespace detail

// Every discriminating path whose discriminated triple is <a,b,c> (in either
// endpoint role). Unshielded triples get none: the next-to-last vertex is
// always a parent of the last, hence adjacent to it.
inline std::vector<DiscriminatingPath> discriminating_paths(const MixedGraph& g, Vertex a, Vertex b, Vertex c) {
    require_mag(g);
    return detail::discriminating_paths_unchecked(g, a, b, c);
}

inline std::vector<DiscriminatingPath> discriminating_paths(const MixedGraph& g, std::string_view a,
                                                            std::string_view b, std::string_view c) {
    return discriminating_paths(g, g.index_of(a), g.index_of(b), g.index_of(c));
}

// ---------------------------------------------------------------------------
// Exact ordered triples, by the literal recursion: order 0 for triples with
// nonadjacent endpoints; order i+1 for triples discriminated by a path whose
// interior colliders all carry order at most i. Noncolliders receive orders
// too, so both directions of the equivalence characterization can read from
// one structure.

struct OrderAssignment {
    struct Entry {
        Triple triple;
        int order = 0;
        bool collider = false;

        friend bool operator==(const Entry&, const Entry&) = default;
    };
    std::vector<Entry> entries;  // sorted by triple

    std::optional<int> order_of(const Triple& t) const {
        for (const auto& e : entries)
            if (e.triple == t) return e.order;
        return std::nullopt;
    }

    // The ordered colliders only, canonical order.
    std::vector<Triple> ordered_colliders() const {
        std::vector<Triple> out;
        for (const auto& e : entries)
            if (e.collider) out.push_back(e.triple);
        return out;
    }
};

inline OrderAssignment colliders_with_order_exact(const MixedGraph& g, std::size_t guard = 10) {
    if (g.vertex_count() > guard)
        fail(errc::guard_exceeded, "exact order recursion guarded at " + std::to_string(guard) + " vertices");
    require_mag(g);

    // All triples of the graph, canonical.
    std::vector<Triple> all;
    for (Vertex b = 0; b < g.vertex_count(); ++b) {
        const auto& adj = g.adjacency(b);
        for (std::size_t i = 0; i < adj.size(); ++i)
            for (std::size_t j = i + 1; j < adj.size(); ++j) all.push_back(make_triple(adj[i].to, b, adj[j].to));
    }
    std::sort(all.begin(), all.end());

    std::map<Triple, int> order;
    std::map<Triple, std::vector<DiscriminatingPath>> paths;
    for (const Triple& t : all) {
        if (!g.adjacent(t.a, t.c)) order[t] = 0;
        paths[t] = detail::discriminating_paths_unchecked(g, t.a, t.b, t.c);
    }

    for (int stage = 0;; ++stage) {
        std::vector<Triple> found;
        for (const Triple& t : all) {
            if (order.count(t)) continue;
            for (const DiscriminatingPath& dp : paths[t]) {
                bool ok = true;
                for (std::size_t i = 1; ok && i + 2 < dp.path.size(); ++i) {
                    auto it = order.find(make_triple(dp.path[i - 1], dp.path[i], dp.path[i + 1]));
                    ok = it != order.end() && it->second <= stage;
                }
                if (ok) {
                    found.push_back(t);
                    break;
                }
            }
        }
        if (found.empty()) break;
        for (const Triple& t : found) order[t] = stage + 1;
    }

    OrderAssignment out;
    for (const auto& [t, ord] : order) out.entries.push_back({t, ord, is_collider(g, t)});
    return out;
}

// ---------------------------------------------------------------------------
// Minimal collider paths: collider paths (single edges included) with no
// order-preserving proper subsequence that is itself a collider path. Two
// MAGs are Markov equivalent exactly when these sets coincide, which makes
// them a second, independent oracle.

namespace detail {

inline bool is_collider_path(const MixedGraph& g, const std::vector<Vertex>& p) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!g.adjacent(p[i], p[i + 1])) return false;
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
        if (g.mark_at(p[i], p[i - 1]) != Mark::Arrow || g.mark_at(p[i], p[i + 1]) != Mark::Arrow) return false;
    return true;
}

inline bool has_collider_subpath(const MixedGraph& g, const std::vector<Vertex>& p) {
    const std::size_t inner = p.size() - 2;
    if (inner == 0) return false;
    // Proper subsequences keep both endpoints and drop at least one interior.
    for (std::uint32_t mask = 0; mask + 1 < (1u << inner); ++mask) {
        std::vector<Vertex> sub{p.front()};
        for (std::size_t i = 0; i < inner; ++i)
            if (mask & (1u << i)) sub.push_back(p[i + 1]);
        sub.push_back(p.back());
        if (is_collider_path(g, sub)) return true;
    }
    return false;
}

}  // namespace detail

inline std::vector<std::vector<Vertex>> minimal_collider_paths(const MixedGraph& g, std::size_t guard = 8) {
    if (g.vertex_count() > guard)
        fail(errc::guard_exceeded, "collider path enumeration guarded at " + std::to_string(guard) + " vertices");
    require_mag(g);
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> path;
    std::vector<char> used(g.vertex_count(), 0);
    auto dfs = [&](auto&& self, Vertex v) -> void {
        // Record the path ending here, canonically oriented: start < end.
        if (!path.empty() && path.front() < v) {
            std::vector<Vertex> full = path;
            full.push_back(v);
            if (detail::is_collider_path(g, full) && !detail::has_collider_subpath(g, full))
                out.push_back(std::move(full));
        }
        path.push_back(v);
        used[v] = 1;
        // Continuing makes v interior, so v must be a collider.
        const bool arrow_in = path.size() < 2 || g.mark_at(v, path[path.size() - 2]) == Mark::Arrow;
        if (arrow_in) {
            for (const AdjEntry& e : g.adjacency(v)) {
                if (path.size() >= 2 && e.at_self != Mark::Arrow) continue;
                if (!used[e.to]) self(self, e.to);
            }
        }
        path.pop_back();
        used[v] = 0;
    };
    for (Vertex s = 0; s < g.vertex_count(); ++s) dfs(dfs, s);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool mcp_equivalent(const MixedGraph& g1, const MixedGraph& g2, std::size_t guard = 8) {
    if (g1.names() != g2.names()) fail(errc::vertex_set_mismatch, "graphs have different vertex sets");
    return minimal_collider_paths(g1, guard) == minimal_collider_paths(g2, guard);
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of every MAG on a given skeleton: all four mark
// assignments per edge, filtered to ancestral and maximal. Assignment order
// is deterministic, so the output order is too.

inline std::vector<MixedGraph> enumerate_mags_on_skeleton(const MixedGraph& skeleton,
                                                          std::size_t guard_edges = 8) {
    const std::size_t e = skeleton.edge_count();
    if (e > guard_edges)
        fail(errc::guard_exceeded, "skeleton enumeration guarded at " + std::to_string(guard_edges) + " edges");
    static constexpr std::pair<Mark, Mark> kAssignments[4] = {
        {Mark::Tail, Mark::Arrow},   // u -> v
        {Mark::Arrow, Mark::Tail},   // u <- v
        {Mark::Arrow, Mark::Arrow},  // u <-> v
        {Mark::Tail, Mark::Tail},    // u -- v
    };
    std::vector<MixedGraph> out;
    std::vector<EdgeSpec> specs(e);
    for (std::size_t i = 0; i < e; ++i) {
        specs[i].u = skeleton.name(skeleton.edges()[i].u);
        specs[i].v = skeleton.name(skeleton.edges()[i].v);
    }
    const std::uint64_t total = std::uint64_t(1) << (2 * e);
    for (std::uint64_t code = 0; code < total; ++code) {
        for (std::size_t i = 0; i < e; ++i) {
            const auto [mu, mv] = kAssignments[(code >> (2 * i)) & 3];
            specs[i].at_u = mu;
            specs[i].at_v = mv;
        }
        MixedGraph g = MixedGraph::build(skeleton.names(), specs);
        if (!g.is_ancestral()) continue;
        if (!is_maximal(g).maximal) continue;
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace mageq
