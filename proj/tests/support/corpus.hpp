#pragma once

// Seeded graph corpora for the property suites. Everything is deterministic
// per seed so failures replay.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <mageq/graph.hpp>
#include <mageq/oracles.hpp>
#include <mageq/projection.hpp>
#include <mageq/separation.hpp>

namespace corpus {

using mageq::MixedGraph;
using mageq::SplitMix64;
using mageq::Vertex;

// Random mixed graph: a random skeleton with uniformly chosen marks.
// Not necessarily ancestral.
inline MixedGraph random_mixed(SplitMix64& rng, std::size_t n, double edge_prob) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<mageq::EdgeSpec> edges;
    static constexpr std::pair<mageq::Mark, mageq::Mark> kMarks[4] = {
        {mageq::Mark::Tail, mageq::Mark::Arrow},
        {mageq::Mark::Arrow, mageq::Mark::Tail},
        {mageq::Mark::Arrow, mageq::Mark::Arrow},
        {mageq::Mark::Tail, mageq::Mark::Tail},
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform() < edge_prob) {
                auto [mu, mv] = kMarks[rng.below(4)];
                edges.push_back({names[i], names[j], mu, mv});
            }
    return mageq::build_graph(names, edges);
}

// Random ancestral graph by rejection; thins the skeleton if a draw keeps
// failing so the loop always terminates.
inline MixedGraph random_ancestral(SplitMix64& rng, std::size_t n, double edge_prob) {
    for (double p = edge_prob;; p *= 0.7) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            MixedGraph g = random_mixed(rng, n, p);
            if (g.is_ancestral()) return g;
        }
    }
}

// A spread of small skeletons that exercise the discriminating-path
// machinery: the paw, the diamond, a triangle with two pendants, a 4-cycle
// with a chord, and a dense 5-vertex shape.
inline std::vector<MixedGraph> interesting_skeletons() {
    using mageq::undirected;
    auto sk = [](std::vector<std::string> names, std::vector<std::pair<std::string, std::string>> pairs) {
        std::vector<mageq::EdgeSpec> edges;
        for (auto& [u, v] : pairs) edges.push_back(undirected(u, v));
        return mageq::build_graph(std::move(names), edges);
    };
    return {
        sk({"x", "q", "b", "y"}, {{"x", "q"}, {"q", "b"}, {"q", "y"}, {"b", "y"}}),
        sk({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}}),
        sk({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}, {"b", "c"}}),
        sk({"x", "q", "b", "y", "z"}, {{"x", "q"}, {"q", "b"}, {"q", "y"}, {"b", "y"}, {"z", "b"}}),
        sk({"a", "b", "c", "d", "e"},
           {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"a", "e"}, {"b", "d"}}),
        sk({"a", "b", "c", "d", "e"},
           {{"a", "b"}, {"a", "c"}, {"b", "c"}, {"b", "d"}, {"c", "d"}, {"c", "e"}, {"d", "e"}}),
    };
}

// Every MAG on the interesting skeletons, grouped by brute-force model text;
// groups of size >= 2 are Markov equivalence classes.
struct EquivalenceClasses {
    std::vector<MixedGraph> graphs;
    std::map<std::string, std::vector<std::size_t>> by_model;
};

inline EquivalenceClasses enumerate_classes(const MixedGraph& skeleton) {
    EquivalenceClasses out;
    out.graphs = mageq::enumerate_mags_on_skeleton(skeleton);
    for (std::size_t i = 0; i < out.graphs.size(); ++i)
        out.by_model[mageq::independence_model(out.graphs[i]).to_text()].push_back(i);
    return out;
}

}  // namespace corpus
