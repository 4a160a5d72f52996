#pragma once

// Polynomial-time Markov equivalence for maximal ancestral graphs. Two MAGs
// are equivalent iff they share adjacencies and "colliders with order":
// colliders certified by chains of discriminating paths grounded in
// unshielded colliders. The fixpoint below computes a set sandwiched between
// the exact ordered colliders and the colliders common to the whole
// equivalence class, which is all the two-sided subset test needs.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "maximality.hpp"

namespace mageq {

// Vertex triple with adjacent consecutive pairs; endpoints stored so a <= c
// (an ordered triple and its reversal are the same triple).
struct Triple {
    Vertex a, b, c;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple& x, const Triple& y) {
        return std::tuple(x.a, x.b, x.c) <=> std::tuple(y.a, y.b, y.c);
    }
};

inline Triple make_triple(Vertex x, Vertex mid, Vertex y) {
    return x <= y ? Triple{x, mid, y} : Triple{y, mid, x};
}

inline std::uint64_t triple_key(const Triple& t) {
    return (static_cast<std::uint64_t>(t.a) << 42) | (static_cast<std::uint64_t>(t.b) << 21) |
           static_cast<std::uint64_t>(t.c);
}

inline bool is_collider(const MixedGraph& g, const Triple& t) {
    return t.a != t.b && t.b != t.c && t.a != t.c && g.adjacent(t.a, t.b) && g.adjacent(t.b, t.c) &&
           g.mark_at(t.b, t.a) == Mark::Arrow && g.mark_at(t.b, t.c) == Mark::Arrow;
}

inline bool is_unshielded(const MixedGraph& g, const Triple& t) { return !g.adjacent(t.a, t.c); }

// All collider triples, canonically ordered.
inline std::vector<Triple> colliders(const MixedGraph& g) {
    std::vector<Triple> out;
    for (Vertex b = 0; b < g.vertex_count(); ++b) {
        std::vector<Vertex> into;  // neighbors with an arrowhead at b
        for (const AdjEntry& e : g.adjacency(b))
            if (e.at_self == Mark::Arrow) into.push_back(e.to);
        for (std::size_t i = 0; i < into.size(); ++i)
            for (std::size_t j = i + 1; j < into.size(); ++j) out.push_back(make_triple(into[i], b, into[j]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Triple> unshielded_colliders(const MixedGraph& g) {
    std::vector<Triple> out;
    for (const Triple& t : colliders(g))
        if (is_unshielded(g, t)) out.push_back(t);
    return out;
}

// ---------------------------------------------------------------------------
// Derived digraph: each node stands for a directed traversal <t,u> of an edge
// of the source graph, and each arc chains two traversals through a shared
// middle vertex.

struct DerivedDigraph {
    std::vector<std::pair<Vertex, Vertex>> nodes;
    std::vector<std::vector<std::uint32_t>> arcs;

    std::optional<std::uint32_t> node_index(Vertex t, Vertex u) const {
        for (std::uint32_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].first == t && nodes[i].second == u) return i;
        return std::nullopt;
    }
};

// Frontier expansion from a seed node; returns every node reachable along
// arcs, seed included, in ascending index order.
inline std::vector<std::uint32_t> reachable(const DerivedDigraph& d, std::uint32_t seed) {
    if (seed >= d.nodes.size()) fail(errc::unknown_node, "seed is not a node of the derived digraph");
    std::vector<char> in(d.nodes.size(), 0);
    std::vector<std::uint32_t> frontier{seed};
    in[seed] = 1;
    while (!frontier.empty()) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t w1 : frontier)
            for (std::uint32_t w2 : d.arcs[w1])
                if (!in[w2]) {
                    in[w2] = 1;
                    next.push_back(w2);
                }
        frontier = std::move(next);
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < in.size(); ++i)
        if (in[i]) out.push_back(i);
    return out;
}

struct OrderedColliderSet {
    std::vector<Triple> triples;  // canonical order
    int rounds = 0;               // fixpoint iterations, final quiet one included
};

namespace detail {

using TripleSet = std::unordered_set<std::uint64_t>;

// Traversals of bidirected edges joining parents of `c`, with arcs chained
// through triples currently in T. The seed traversal for a candidate is
// appended by the caller.
inline DerivedDigraph collider_chain_digraph(const MixedGraph& g, Vertex c, const TripleSet& t_set) {
    DerivedDigraph d;
    const auto& pa = g.parents(c);
    for (Vertex t : pa)
        for (Vertex u : pa) {
            if (t == u) continue;
            auto e = g.edge_between(t, u);
            if (e && kind(*e) == EdgeKind::Bidirected) d.nodes.emplace_back(t, u);
        }
    d.arcs.resize(d.nodes.size());
    for (std::uint32_t i = 0; i < d.nodes.size(); ++i)
        for (std::uint32_t j = 0; j < d.nodes.size(); ++j) {
            if (d.nodes[i].second != d.nodes[j].first) continue;
            const Triple chained = make_triple(d.nodes[i].first, d.nodes[i].second, d.nodes[j].second);
            if (t_set.count(triple_key(chained))) d.arcs[i].push_back(j);
        }
    return d;
}

inline OrderedColliderSet triples_superset_unchecked(const MixedGraph& g) {
    const std::size_t n = g.vertex_count();
    const std::vector<Triple> cols = colliders(g);
    TripleSet t_set;
    for (const Triple& t : cols)
        if (is_unshielded(g, t)) t_set.insert(triple_key(t));

    int rounds = 0;
    for (;;) {
        ++rounds;
        if (rounds > static_cast<int>(n) + 1)
            fail(errc::internal, "ordered-collider fixpoint exceeded its round bound");
        std::vector<std::uint64_t> additions;
        std::map<Vertex, DerivedDigraph> per_c;  // rebuilt each round: arcs read the frozen T

        for (const Triple& t : cols) {
            if (t_set.count(triple_key(t))) continue;
            bool fires = false;
            for (auto [f, m, l] : {std::tuple(t.a, t.b, t.c), std::tuple(t.c, t.b, t.a)}) {
                // Candidate orientation: f <-> m and f -> l.
                auto fm = g.edge_between(f, m);
                if (!fm || kind(*fm) != EdgeKind::Bidirected) continue;
                auto fl = g.edge_between(f, l);
                if (!fl) continue;
                const Mark at_f = (fl->u == f) ? fl->at_u : fl->at_v;
                const Mark at_l = (fl->u == l) ? fl->at_u : fl->at_v;
                if (at_f != Mark::Tail || at_l != Mark::Arrow) continue;

                auto it = per_c.find(l);
                if (it == per_c.end()) it = per_c.emplace(l, collider_chain_digraph(g, l, t_set)).first;
                DerivedDigraph d = it->second;
                const auto seed = static_cast<std::uint32_t>(d.nodes.size());
                d.nodes.emplace_back(m, f);
                d.arcs.emplace_back();
                for (std::uint32_t j = 0; j + 1 < d.nodes.size(); ++j) {
                    if (d.nodes[j].first != f) continue;
                    if (t_set.count(triple_key(make_triple(m, f, d.nodes[j].second)))) d.arcs[seed].push_back(j);
                }

                for (std::uint32_t s : reachable(d, seed)) {
                    const auto [z, y] = d.nodes[s];
                    for (const AdjEntry& e : g.adjacency(y)) {
                        const Vertex x = e.to;
                        if (x == z || !t_set.count(triple_key(make_triple(z, y, x)))) continue;
                        if (!g.adjacent(x, l)) {
                            fires = true;
                            break;
                        }
                    }
                    if (fires) break;
                }
                if (fires) break;
            }
            if (fires) additions.push_back(triple_key(t));
        }
        if (additions.empty()) break;
        t_set.insert(additions.begin(), additions.end());
    }

    OrderedColliderSet out;
    out.rounds = rounds;
    for (const Triple& t : cols)
        if (t_set.count(triple_key(t))) out.triples.push_back(t);
    return out;
}

}  // namespace detail

inline OrderedColliderSet triples_with_order_superset(const MixedGraph& g) {
    require_mag(g);
    return detail::triples_superset_unchecked(g);
}

// ---------------------------------------------------------------------------
// The decision procedure.

struct EquivalenceVerdict {
    bool equivalent = false;
    enum class Reason { Equivalent, AdjacencyMismatch, ColliderMissingInG2, ColliderMissingInG1 };
    Reason reason = Reason::Equivalent;
    std::vector<std::string> witness;  // empty iff equivalent; else a pair or a triple
    int rounds_g1 = 0, rounds_g2 = 0;  // 0 when the stage was never reached
};

inline const char* reason_name(EquivalenceVerdict::Reason r) {
    switch (r) {
        case EquivalenceVerdict::Reason::Equivalent: return "Equivalent";
        case EquivalenceVerdict::Reason::AdjacencyMismatch: return "AdjacencyMismatch";
        case EquivalenceVerdict::Reason::ColliderMissingInG2: return "ColliderMissingInG2";
        case EquivalenceVerdict::Reason::ColliderMissingInG1: return "ColliderMissingInG1";
    }
    return "unknown";
}

namespace detail {

// First pair adjacent in exactly one of the graphs, in canonical order.
inline std::optional<std::pair<Vertex, Vertex>> adjacency_mismatch(const MixedGraph& a, const MixedGraph& b) {
    for (Vertex u = 0; u < a.vertex_count(); ++u)
        for (Vertex v = u + 1; v < a.vertex_count(); ++v)
            if (a.adjacent(u, v) != b.adjacent(u, v)) return std::make_pair(u, v);
    return std::nullopt;
}

inline std::vector<std::string> triple_names(const MixedGraph& g, const Triple& t) {
    return {g.name(t.a), g.name(t.b), g.name(t.c)};
}

}  // namespace detail

// Decides whether two ancestral graphs on the same vertex set induce the same
// independence model. Nonmaximal inputs are completed first; the verdict then
// reports the two-sided collider test on the completed graphs.
inline EquivalenceVerdict markov_equivalent(const MixedGraph& g1, const MixedGraph& g2) {
    if (g1.names() != g2.names()) fail(errc::vertex_set_mismatch, "graphs have different vertex sets");
    if (!g1.is_ancestral() || !g2.is_ancestral())
        fail(errc::not_ancestral, "equivalence is defined on ancestral graphs");
    const MixedGraph m1 = maximal_completion(g1);
    const MixedGraph m2 = maximal_completion(g2);

    EquivalenceVerdict v;
    if (auto mm = detail::adjacency_mismatch(m1, m2)) {
        v.equivalent = false;
        v.reason = EquivalenceVerdict::Reason::AdjacencyMismatch;
        v.witness = {m1.name(mm->first), m1.name(mm->second)};
        return v;
    }
    const OrderedColliderSet t1 = detail::triples_superset_unchecked(m1);
    v.rounds_g1 = t1.rounds;
    for (const Triple& t : t1.triples) {
        if (!is_collider(m2, t)) {
            v.equivalent = false;
            v.reason = EquivalenceVerdict::Reason::ColliderMissingInG2;
            v.witness = detail::triple_names(m1, t);
            return v;
        }
    }
    const OrderedColliderSet t2 = detail::triples_superset_unchecked(m2);
    v.rounds_g2 = t2.rounds;
    for (const Triple& t : t2.triples) {
        if (!is_collider(m1, t)) {
            v.equivalent = false;
            v.reason = EquivalenceVerdict::Reason::ColliderMissingInG1;
            v.witness = detail::triple_names(m2, t);
            return v;
        }
    }
    v.equivalent = true;
    v.reason = EquivalenceVerdict::Reason::Equivalent;
    return v;
}

// DAG special case: same skeleton and same unshielded colliders.
inline EquivalenceVerdict dag_markov_equivalent(const MixedGraph& d1, const MixedGraph& d2) {
    if (!is_dag(d1) || !is_dag(d2)) fail(errc::not_a_dag, "both inputs must be DAGs");
    if (d1.names() != d2.names()) fail(errc::vertex_set_mismatch, "graphs have different vertex sets");

    EquivalenceVerdict v;
    if (auto mm = detail::adjacency_mismatch(d1, d2)) {
        v.equivalent = false;
        v.reason = EquivalenceVerdict::Reason::AdjacencyMismatch;
        v.witness = {d1.name(mm->first), d1.name(mm->second)};
        return v;
    }
    for (const Triple& t : unshielded_colliders(d1)) {
        if (!is_collider(d2, t)) {
            v.equivalent = false;
            v.reason = EquivalenceVerdict::Reason::ColliderMissingInG2;
            v.witness = detail::triple_names(d1, t);
            return v;
        }
    }
    for (const Triple& t : unshielded_colliders(d2)) {
        if (!is_collider(d1, t)) {
            v.equivalent = false;
            v.reason = EquivalenceVerdict::Reason::ColliderMissingInG1;
            v.witness = detail::triple_names(d2, t);
            return v;
        }
    }
    v.equivalent = true;
    return v;
}

}  // namespace mageq
