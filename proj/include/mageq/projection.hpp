#pragma once

// Latent projection: collapse a DAG with latent and selection variables onto
// its observed margin. Two observed vertices are joined in the output when
// the DAG carries an inducing path relative to <L,S> (noncolliders in L,
// colliders ancestral to the endpoints or S); the endpoint gets an arrowhead
// unless it is an ancestor of the opposite endpoint or of S. The sole
// authority for this construction inside this project is the independence
// preservation property suite, which compares the projected graph's
// separation model against the DAG's on every generated instance.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "maximality.hpp"
#include "separation.hpp"

namespace mageq {

// splitmix64: the fixed, portable generator behind every seeded corpus here,
// so identical seeds reproduce identical graphs byte for byte anywhere.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1), 53 significant bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
};

struct DagPartition {
    MixedGraph dag;
    std::vector<std::string> observed, latent, selection;
};

inline void validate_partition(const DagPartition& p) {
    if (!is_dag(p.dag)) fail(errc::not_a_dag, "latent projection requires a DAG");
    if (p.observed.empty()) fail(errc::bad_partition, "observed set must be nonempty");
    std::vector<std::string> all;
    for (const auto* part : {&p.observed, &p.latent, &p.selection})
        all.insert(all.end(), part->begin(), part->end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        fail(errc::bad_partition, "observed/latent/selection sets overlap");
    if (all != p.dag.names()) fail(errc::bad_partition, "partition does not cover the vertex set exactly");
}

namespace detail {

// Inducing walk relative to <L,S> in a DAG; cutting loops of such a walk
// leaves it valid, so walk reachability decides path existence.
inline bool inducing_walk_rel(const MixedGraph& g, Vertex a, Vertex b, const std::vector<char>& in_latent,
                              const std::vector<char>& an_abs) {
    const std::size_t n = g.vertex_count();
    std::vector<char> seen(2 * n, 0);
    std::vector<std::uint32_t> queue;
    for (const AdjEntry& e : g.adjacency(a)) {
        const std::uint32_t s = (e.to << 1) | (e.at_other == Mark::Arrow ? 1u : 0u);
        if (!seen[s]) {
            seen[s] = 1;
            queue.push_back(s);
        }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const std::uint32_t s = queue[i];
        const Vertex v = s >> 1;
        if (v == b) return true;
        const bool arrived_arrow = (s & 1) != 0;
        for (const AdjEntry& e : g.adjacency(v)) {
            const bool collider = arrived_arrow && e.at_self == Mark::Arrow;
            if (collider ? !an_abs[v] : !in_latent[v]) continue;
            const std::uint32_t t = (e.to << 1) | (e.at_other == Mark::Arrow ? 1u : 0u);
            if (!seen[t]) {
                seen[t] = 1;
                queue.push_back(t);
            }
        }
    }
    return false;
}

}  // namespace detail

inline MixedGraph latent_project(const DagPartition& p) {
    validate_partition(p);
    const MixedGraph& d = p.dag;
    const std::vector<Vertex> obs = detail::indices_of(d, p.observed);
    const std::vector<Vertex> sel = detail::indices_of(d, p.selection);
    std::vector<char> in_latent(d.vertex_count(), 0);
    for (const auto& name : p.latent) in_latent[d.index_of(name)] = 1;

    const std::vector<char> an_s = ancestor_mask(d, sel);
    // an({v} u S) per endpoint, reused across pairs.
    std::vector<std::vector<char>> an_vs(d.vertex_count());
    for (Vertex v : obs) {
        an_vs[v] = ancestor_mask(d, {v});
        for (std::size_t i = 0; i < an_vs[v].size(); ++i) an_vs[v][i] |= an_s[i];
    }

    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            const Vertex a = obs[i], b = obs[j];
            std::vector<char> an_abs = an_vs[a];
            for (std::size_t k = 0; k < an_abs.size(); ++k) an_abs[k] |= an_vs[b][k];
            if (!detail::inducing_walk_rel(d, a, b, in_latent, an_abs)) continue;
            EdgeSpec e;
            e.u = d.name(a);
            e.v = d.name(b);
            e.at_u = an_vs[b][a] ? Mark::Tail : Mark::Arrow;  // tail iff a ancestral to b or S
            e.at_v = an_vs[a][b] ? Mark::Tail : Mark::Arrow;
            edges.push_back(std::move(e));
        }
    }
    MixedGraph out = build_graph(p.observed, edges);
    if (!out.is_ancestral()) fail(errc::internal, "latent projection produced a non-ancestral graph");
    if (!is_maximal(out).maximal) fail(errc::internal, "latent projection produced a nonmaximal graph");
    return out;
}

namespace detail {

inline MixedGraph random_dag_inner(std::size_t n, double edge_prob, SplitMix64& rng) {
    if (edge_prob < 0.0 || edge_prob > 1.0) fail(errc::bad_probability, "edge probability must lie in [0,1]");
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back("v" + std::to_string(i));
    // Seeded random topological order, then independent edge draws for each
    // pair, earlier position -> later position.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform() < edge_prob) edges.push_back(directed(names[order[i]], names[order[j]]));
    return build_graph(names, edges);
}

}  // namespace detail

inline MixedGraph random_dag(std::size_t n, double edge_prob, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return detail::random_dag_inner(n, edge_prob, rng);
}

// Random MAG: a random DAG over observed + latent + selection vertices,
// projected onto a seeded choice of observed margin. Deterministic per seed.
inline MixedGraph random_mag(std::size_t n_observed, std::size_t n_latent, std::size_t n_selection,
                             double edge_prob, std::uint64_t seed) {
    if (n_observed == 0) fail(errc::bad_partition, "need at least one observed vertex");
    SplitMix64 rng(seed);
    const std::size_t total = n_observed + n_latent + n_selection;
    DagPartition p;
    p.dag = detail::random_dag_inner(total, edge_prob, rng);
    std::vector<std::string> pool = p.dag.names();
    for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
    p.latent.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_latent));
    p.selection.assign(pool.begin() + static_cast<std::ptrdiff_t>(n_latent),
                       pool.begin() + static_cast<std::ptrdiff_t>(n_latent + n_selection));
    p.observed.assign(pool.begin() + static_cast<std::ptrdiff_t>(n_latent + n_selection), pool.end());
    return latent_project(p);
}

}  // namespace mageq
