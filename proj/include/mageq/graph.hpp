#pragma once

// Simple mixed graphs with per-endpoint marks (tail or arrowhead), covering
// directed, bidirected and undirected edges. A graph is immutable once built;
// every query below is a pure function, so graphs can be shared freely across
// threads.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace mageq {

using Vertex = std::uint32_t;

enum class Mark : std::uint8_t { Tail, Arrow };

enum class EdgeKind { Directed, Bidirected, Undirected };

// Name-based edge description used when building graphs.
struct EdgeSpec {
    std::string u, v;
    Mark at_u = Mark::Tail;
    Mark at_v = Mark::Arrow;
};

inline EdgeSpec directed(std::string tail, std::string head) {
    return {std::move(tail), std::move(head), Mark::Tail, Mark::Arrow};
}
inline EdgeSpec bidirected(std::string u, std::string v) {
    return {std::move(u), std::move(v), Mark::Arrow, Mark::Arrow};
}
inline EdgeSpec undirected(std::string u, std::string v) {
    return {std::move(u), std::move(v), Mark::Tail, Mark::Tail};
}

// Canonical edge record; u < v in vertex order, marks swapped to match.
struct EdgeView {
    Vertex u, v;
    Mark at_u, at_v;

    friend bool operator==(const EdgeView&, const EdgeView&) = default;
};

inline EdgeKind kind(const EdgeView& e) {
    if (e.at_u == Mark::Arrow && e.at_v == Mark::Arrow) return EdgeKind::Bidirected;
    if (e.at_u == Mark::Tail && e.at_v == Mark::Tail) return EdgeKind::Undirected;
    return EdgeKind::Directed;
}

// One row of a vertex's adjacency list.
struct AdjEntry {
    Vertex to;
    Mark at_self;   // mark at the owning vertex
    Mark at_other;  // mark at `to`
};

// Vertex names: nonempty tokens without whitespace or the reserved substrings
// of the text format ("->", "--", "#", ","). "nodes:" is refused because it
// would collide with the header line of the format.
inline bool valid_vertex_name(std::string_view name) {
    if (name.empty() || name == "nodes:") return false;
    if (name.find("->") != std::string_view::npos) return false;
    if (name.find("--") != std::string_view::npos) return false;
    for (char ch : name) {
        if (ch == '#' || ch == ',' || std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

class MixedGraph {
public:
    MixedGraph() = default;

    // Builds a graph from declared vertices and edges. With
    // `declare_from_edges`, endpoints missing from `vertices` are added
    // instead of rejected (used by the text parser).
    static MixedGraph build(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges,
                            bool declare_from_edges = false) {
        for (const auto& name : vertices) {
            if (!valid_vertex_name(name)) fail(errc::bad_name, "invalid vertex name '" + name + "'");
        }
        if (declare_from_edges) {
            for (const auto& e : edges) {
                vertices.push_back(e.u);
                vertices.push_back(e.v);
            }
        }
        std::sort(vertices.begin(), vertices.end());
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

        MixedGraph g;
        g.names_ = std::move(vertices);
        const std::size_t n = g.names_.size();
        g.adj_.resize(n);
        g.parents_.resize(n);
        g.children_.resize(n);
        g.spouses_.resize(n);
        g.neighbors_.resize(n);

        for (const auto& e : edges) {
            if (!valid_vertex_name(e.u)) fail(errc::bad_name, "invalid vertex name '" + e.u + "'");
            if (!valid_vertex_name(e.v)) fail(errc::bad_name, "invalid vertex name '" + e.v + "'");
            const Vertex a = g.index_of(e.u);
            const Vertex b = g.index_of(e.v);
            if (a == b) fail(errc::self_loop, "self loop at '" + e.u + "'");
            EdgeView ev{std::min(a, b), std::max(a, b), Mark::Tail, Mark::Tail};
            ev.at_u = (ev.u == a) ? e.at_u : e.at_v;
            ev.at_v = (ev.v == b) ? e.at_v : e.at_u;
            g.add_edge(ev);
        }
        g.finalize();
        return g;
    }

    std::size_t vertex_count() const { return names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(Vertex v) const { return names_[v]; }

    std::optional<Vertex> find(std::string_view name) const {
        auto it = std::lower_bound(names_.begin(), names_.end(), name);
        if (it == names_.end() || *it != name) return std::nullopt;
        return static_cast<Vertex>(it - names_.begin());
    }

    Vertex index_of(std::string_view name) const {
        auto ix = find(name);
        if (!ix) fail(errc::unknown_vertex, "unknown vertex '" + std::string(name) + "'");
        return *ix;
    }

    // Canonical edge list, sorted by (u, v).
    const std::vector<EdgeView>& edges() const { return edges_; }

    const std::vector<AdjEntry>& adjacency(Vertex v) const { return adj_[v]; }

    bool adjacent(Vertex a, Vertex b) const { return entry(a, b) != nullptr; }

    std::optional<EdgeView> edge_between(Vertex a, Vertex b) const {
        const AdjEntry* e = entry(a, b);
        if (!e) return std::nullopt;
        EdgeView ev{std::min(a, b), std::max(a, b), Mark::Tail, Mark::Tail};
        ev.at_u = (ev.u == a) ? e->at_self : e->at_other;
        ev.at_v = (ev.v == b) ? e->at_other : e->at_self;
        return ev;
    }

    // Mark at `a` on the edge joining a and b; the pair must be adjacent.
    Mark mark_at(Vertex a, Vertex b) const {
        const AdjEntry* e = entry(a, b);
        if (!e) fail(errc::internal, "mark_at on nonadjacent pair");
        return e->at_self;
    }

    bool has_arrow_at(Vertex a, Vertex b) const { return mark_at(a, b) == Mark::Arrow; }

    const std::vector<Vertex>& parents(Vertex v) const { return parents_[v]; }
    const std::vector<Vertex>& children(Vertex v) const { return children_[v]; }
    const std::vector<Vertex>& spouses(Vertex v) const { return spouses_[v]; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return neighbors_[v]; }

    bool all_directed() const {
        for (const auto& e : edges_)
            if (kind(e) != EdgeKind::Directed) return false;
        return true;
    }

    // Ancestral conditions, decided once at construction: no directed cycles,
    // no bidirected edge joining a vertex to one of its ancestors, and no
    // undirected edge at a vertex that has a parent or spouse.
    bool is_ancestral() const { return ancestral_; }

    friend bool operator==(const MixedGraph& a, const MixedGraph& b) {
        return a.names_ == b.names_ && a.edges_ == b.edges_;
    }

private:
    const AdjEntry* entry(Vertex a, Vertex b) const {
        const auto& row = adj_[a];
        auto it = std::lower_bound(row.begin(), row.end(), b,
                                   [](const AdjEntry& e, Vertex x) { return e.to < x; });
        if (it == row.end() || it->to != b) return nullptr;
        return &*it;
    }

    void add_edge(const EdgeView& ev) {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), ev, [](const EdgeView& a, const EdgeView& b) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });
        if (it != edges_.end() && it->u == ev.u && it->v == ev.v)
            fail(errc::duplicate_edge, "second edge between '" + names_[ev.u] + "' and '" + names_[ev.v] + "'");
        edges_.insert(it, ev);
    }

    void finalize() {
        for (const auto& e : edges_) {
            adj_[e.u].push_back({e.v, e.at_u, e.at_v});
            adj_[e.v].push_back({e.u, e.at_v, e.at_u});
        }
        for (auto& row : adj_)
            std::sort(row.begin(), row.end(), [](const AdjEntry& a, const AdjEntry& b) { return a.to < b.to; });
        for (Vertex v = 0; v < names_.size(); ++v) {
            for (const AdjEntry& e : adj_[v]) {
                if (e.at_self == Mark::Arrow && e.at_other == Mark::Arrow)
                    spouses_[v].push_back(e.to);
                else if (e.at_self == Mark::Tail && e.at_other == Mark::Tail)
                    neighbors_[v].push_back(e.to);
                else if (e.at_self == Mark::Arrow)
                    parents_[v].push_back(e.to);  // e.to -> v
                else
                    children_[v].push_back(e.to);  // v -> e.to
            }
        }
        ancestral_ = check_ancestral();
    }

    bool check_ancestral() const {
        const std::size_t n = names_.size();
        // (a) no directed cycles: Kahn over directed edges only.
        std::vector<std::uint32_t> indeg(n, 0);
        for (Vertex v = 0; v < n; ++v) indeg[v] = static_cast<std::uint32_t>(parents_[v].size());
        std::vector<Vertex> queue;
        for (Vertex v = 0; v < n; ++v)
            if (indeg[v] == 0) queue.push_back(v);
        std::size_t seen = 0;
        while (!queue.empty()) {
            Vertex v = queue.back();
            queue.pop_back();
            ++seen;
            for (Vertex c : children_[v])
                if (--indeg[c] == 0) queue.push_back(c);
        }
        if (seen != n) return false;
        // (b) no bidirected edge into an ancestor.
        for (const auto& e : edges_) {
            if (kind(e) != EdgeKind::Bidirected) continue;
            if (reaches_directed(e.u, e.v) || reaches_directed(e.v, e.u)) return false;
        }
        // (c) undirected endpoints carry no arrowheads anywhere.
        for (const auto& e : edges_) {
            if (kind(e) != EdgeKind::Undirected) continue;
            for (Vertex x : {e.u, e.v})
                if (!parents_[x].empty() || !spouses_[x].empty()) return false;
        }
        return true;
    }

    bool reaches_directed(Vertex from, Vertex to) const {
        std::vector<char> seen(names_.size(), 0);
        std::vector<Vertex> stack{from};
        seen[from] = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            if (v == to) return true;
            for (Vertex c : children_[v])
                if (!seen[c]) {
                    seen[c] = 1;
                    stack.push_back(c);
                }
        }
        return false;
    }

    std::vector<std::string> names_;
    std::vector<EdgeView> edges_;
    std::vector<std::vector<AdjEntry>> adj_;
    std::vector<std::vector<Vertex>> parents_, children_, spouses_, neighbors_;
    bool ancestral_ = true;
};

inline MixedGraph build_graph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges) {
    return MixedGraph::build(std::move(vertices), edges, false);
}

inline MixedGraph build_graph_auto(const std::vector<EdgeSpec>& edges, std::vector<std::string> extra = {}) {
    return MixedGraph::build(std::move(extra), edges, true);
}

// The four vertex relations, by name, each sorted.
struct Relations {
    std::vector<std::string> parents, children, spouses, neighbors;
};

inline Relations relations(const MixedGraph& g, std::string_view v) {
    const Vertex ix = g.index_of(v);
    Relations r;
    auto fill = [&](const std::vector<Vertex>& src, std::vector<std::string>& dst) {
        for (Vertex w : src) dst.push_back(g.name(w));
        std::sort(dst.begin(), dst.end());
    };
    fill(g.parents(ix), r.parents);
    fill(g.children(ix), r.children);
    fill(g.spouses(ix), r.spouses);
    fill(g.neighbors(ix), r.neighbors);
    return r;
}

namespace detail {

inline std::vector<Vertex> indices_of(const MixedGraph& g, const std::vector<std::string>& names) {
    std::vector<Vertex> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(g.index_of(n));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<std::string> names_of(const MixedGraph& g, const std::vector<Vertex>& ixs) {
    std::vector<std::string> out;
    out.reserve(ixs.size());
    for (Vertex v : ixs) out.push_back(g.name(v));
    return out;
}

inline std::vector<char> set_mask(std::size_t n, const std::vector<Vertex>& set) {
    std::vector<char> mask(n, 0);
    for (Vertex v : set) mask[v] = 1;
    return mask;
}

inline std::vector<Vertex> mask_to_sorted(const std::vector<char>& mask) {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < mask.size(); ++v)
        if (mask[v]) out.push_back(static_cast<Vertex>(v));
    return out;
}

// Reflexive-transitive closure along directed edges, walking parentward
// (ancestors) or childward (descendants).
inline std::vector<char> directed_closure_mask(const MixedGraph& g, const std::vector<Vertex>& seeds,
                                               bool parentward) {
    std::vector<char> mask(g.vertex_count(), 0);
    std::vector<Vertex> stack;
    for (Vertex s : seeds) {
        if (s >= g.vertex_count()) fail(errc::unknown_vertex, "vertex index out of range");
        if (!mask[s]) {
            mask[s] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        const auto& next = parentward ? g.parents(v) : g.children(v);
        for (Vertex w : next)
            if (!mask[w]) {
                mask[w] = 1;
                stack.push_back(w);
            }
    }
    return mask;
}

}  // namespace detail

inline std::vector<char> ancestor_mask(const MixedGraph& g, const std::vector<Vertex>& targets) {
    return detail::directed_closure_mask(g, targets, /*parentward=*/true);
}

inline std::vector<char> descendant_mask(const MixedGraph& g, const std::vector<Vertex>& sources) {
    return detail::directed_closure_mask(g, sources, /*parentward=*/false);
}

inline std::vector<Vertex> ancestors(const MixedGraph& g, const std::vector<Vertex>& targets) {
    return detail::mask_to_sorted(ancestor_mask(g, targets));
}

inline std::vector<Vertex> descendants(const MixedGraph& g, const std::vector<Vertex>& sources) {
    return detail::mask_to_sorted(descendant_mask(g, sources));
}

// Anterior set: an(X) grown through undirected-edge prefixes, matching paths
// of the shape a -- ... -- c -> ... -> b with b in X.
inline std::vector<Vertex> anteriors(const MixedGraph& g, const std::vector<Vertex>& targets) {
    std::vector<char> mask = ancestor_mask(g, targets);
    std::vector<Vertex> stack = detail::mask_to_sorted(mask);
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : g.neighbors(v))
            if (!mask[w]) {
                mask[w] = 1;
                stack.push_back(w);
            }
    }
    return detail::mask_to_sorted(mask);
}

inline std::vector<std::string> ancestors(const MixedGraph& g, const std::vector<std::string>& targets) {
    return detail::names_of(g, ancestors(g, detail::indices_of(g, targets)));
}
inline std::vector<std::string> descendants(const MixedGraph& g, const std::vector<std::string>& sources) {
    return detail::names_of(g, descendants(g, detail::indices_of(g, sources)));
}
inline std::vector<std::string> anteriors(const MixedGraph& g, const std::vector<std::string>& targets) {
    return detail::names_of(g, anteriors(g, detail::indices_of(g, targets)));
}

// A violation of the ancestral conditions, with a replayable witness:
//   DirectedCycle               <v0, ..., v0>   a directed cycle
//   BidirectedAncestor          <x, ..., y>     directed path, with x <-> y in the graph
//   UndirectedWithArrowNeighbor <p, x, y>       x -- y, and p is a parent or spouse of x
struct Violation {
    enum class Kind { DirectedCycle, BidirectedAncestor, UndirectedWithArrowNeighbor };
    Kind kind;
    std::vector<Vertex> witness;
};

inline const char* violation_kind_name(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::DirectedCycle: return "directed_cycle";
        case Violation::Kind::BidirectedAncestor: return "bidirected_ancestor";
        case Violation::Kind::UndirectedWithArrowNeighbor: return "undirected_with_arrow_neighbor";
    }
    return "unknown";
}

namespace detail {

inline std::optional<std::vector<Vertex>> directed_path(const MixedGraph& g, Vertex from, Vertex to) {
    std::vector<std::int64_t> prev(g.vertex_count(), -1);
    std::vector<Vertex> queue{from};
    std::vector<char> seen(g.vertex_count(), 0);
    seen[from] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Vertex v = queue[i];
        if (v == to) break;
        for (Vertex c : g.children(v))
            if (!seen[c]) {
                seen[c] = 1;
                prev[c] = v;
                queue.push_back(c);
            }
    }
    if (!seen[to]) return std::nullopt;
    std::vector<Vertex> path;
    for (Vertex v = to;; v = static_cast<Vertex>(prev[v])) {
        path.push_back(v);
        if (v == from) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace detail

inline std::vector<Violation> validate_ancestral(const MixedGraph& g) {
    std::vector<Violation> out;
    const std::size_t n = g.vertex_count();

    // Directed cycles, one witness per back edge found by iterative DFS.
    {
        std::vector<std::uint8_t> color(n, 0);  // 0 white, 1 on stack, 2 done
        std::vector<Vertex> path;
        struct Frame {
            Vertex v;
            std::size_t next = 0;
        };
        for (Vertex start = 0; start < n; ++start) {
            if (color[start] != 0) continue;
            std::vector<Frame> stack{{start}};
            color[start] = 1;
            path.push_back(start);
            while (!stack.empty()) {
                Frame& f = stack.back();
                const auto& ch = g.children(f.v);
                if (f.next < ch.size()) {
                    Vertex c = ch[f.next++];
                    if (color[c] == 1) {
                        auto it = std::find(path.begin(), path.end(), c);
                        std::vector<Vertex> cycle(it, path.end());
                        cycle.push_back(c);
                        out.push_back({Violation::Kind::DirectedCycle, std::move(cycle)});
                    } else if (color[c] == 0) {
                        color[c] = 1;
                        path.push_back(c);
                        stack.push_back({c});
                    }
                } else {
                    color[f.v] = 2;
                    path.pop_back();
                    stack.pop_back();
                }
            }
        }
    }

    for (const auto& e : g.edges()) {
        if (kind(e) == EdgeKind::Bidirected) {
            for (auto [x, y] : {std::pair(e.u, e.v), std::pair(e.v, e.u)}) {
                if (auto p = detail::directed_path(g, x, y); p && p->size() > 1)
                    out.push_back({Violation::Kind::BidirectedAncestor, std::move(*p)});
            }
        } else if (kind(e) == EdgeKind::Undirected) {
            for (auto [x, y] : {std::pair(e.u, e.v), std::pair(e.v, e.u)}) {
                Vertex offender = 0;
                bool found = false;
                for (const AdjEntry& a : g.adjacency(x)) {
                    if (a.at_self == Mark::Arrow) {  // parent or spouse of x
                        offender = a.to;
                        found = true;
                        break;
                    }
                }
                if (found) out.push_back({Violation::Kind::UndirectedWithArrowNeighbor, {offender, x, y}});
            }
        }
    }
    return out;
}

// Re-checks a violation witness against the graph.
inline bool replay_violation(const MixedGraph& g, const Violation& v) {
    const auto& w = v.witness;
    auto is_directed_step = [&](Vertex a, Vertex b) {
        auto e = g.edge_between(a, b);
        if (!e) return false;
        Mark at_a = (e->u == a) ? e->at_u : e->at_v;
        Mark at_b = (e->u == b) ? e->at_u : e->at_v;
        return at_a == Mark::Tail && at_b == Mark::Arrow;
    };
    switch (v.kind) {
        case Violation::Kind::DirectedCycle: {
            if (w.size() < 3 || w.front() != w.back()) return false;
            for (std::size_t i = 0; i + 1 < w.size(); ++i)
                if (!is_directed_step(w[i], w[i + 1])) return false;
            return true;
        }
        case Violation::Kind::BidirectedAncestor: {
            if (w.size() < 2) return false;
            auto e = g.edge_between(w.front(), w.back());
            if (!e || kind(*e) != EdgeKind::Bidirected) return false;
            for (std::size_t i = 0; i + 1 < w.size(); ++i)
                if (!is_directed_step(w[i], w[i + 1])) return false;
            return true;
        }
        case Violation::Kind::UndirectedWithArrowNeighbor: {
            if (w.size() != 3) return false;
            auto e = g.edge_between(w[1], w[2]);
            if (!e || kind(*e) != EdgeKind::Undirected) return false;
            auto pe = g.edge_between(w[0], w[1]);
            if (!pe) return false;
            Mark at_x = (pe->u == w[1]) ? pe->at_u : pe->at_v;
            return at_x == Mark::Arrow;
        }
    }
    return false;
}

inline bool is_dag(const MixedGraph& g) { return g.all_directed() && g.is_ancestral(); }

}  // namespace mageq
