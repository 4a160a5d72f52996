#include <doctest.h>

#include <mageq/oracles.hpp>
#include <mageq/separation.hpp>

#include "../support/corpus.hpp"
#include "../support/figures.hpp"

using namespace mageq;

namespace {

// All (pair, Z) queries on g, both engines, must agree.
void check_engines_agree(const MixedGraph& g) {
    const std::size_t n = g.vertex_count();
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y)
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                if (mask & ((1u << x) | (1u << y))) continue;
                std::vector<Vertex> z;
                for (Vertex v = 0; v < n; ++v)
                    if (mask & (1u << v)) z.push_back(v);
                CAPTURE(x);
                CAPTURE(y);
                CAPTURE(mask);
                REQUIRE(m_connected(g, x, y, z) == brute_force_m_connected(g, x, y, z));
            }
}

}  // namespace

TEST_SUITE("separation") {

TEST_CASE("marginalized AIDS trial graph reproduces its independences") {
    auto g = fixtures::aids_trial_mag();
    CHECK(!m_connected(g, "Azt", "Ap", {}));
    CHECK(!m_connected(g, "Azt", "Ap", {"CD4"}));
    CHECK(m_connected(g, "Azt", "CD4", {"Pcp"}));  // conditioning opens the collider
    CHECK(!m_connected(g, "Azt", "CD4", {}));
    CHECK(m_separated_sets(g, {"Azt"}, {"Ap", "CD4"}, {}));
    CHECK(m_separated_sets(g, {"Ap"}, {"Azt", "Pcp"}, {}));
}

TEST_CASE("isolated vertices are never connected") {
    auto g = build_graph({"a", "b", "c"}, {});
    CHECK(!m_connected(g, "a", "b", {}));
    CHECK(!m_connected(g, "a", "b", {"c"}));
}

TEST_CASE("adjacent pairs are connected under every conditioning set") {
    SplitMix64 rng(11);
    for (int i = 0; i < 50; ++i) {
        auto g = corpus::random_ancestral(rng, 5, 0.5);
        for (const auto& e : g.edges())
            for (std::uint32_t mask = 0; mask < (1u << g.vertex_count()); ++mask) {
                if (mask & ((1u << e.u) | (1u << e.v))) continue;
                std::vector<Vertex> z;
                for (Vertex v = 0; v < g.vertex_count(); ++v)
                    if (mask & (1u << v)) z.push_back(v);
                CHECK(m_connected(g, e.u, e.v, z));
            }
    }
}

TEST_CASE("preconditions") {
    auto g = fixtures::aids_trial_mag();
    CHECK_THROWS_AS(m_connected(g, "Azt", "zz", {}), error);
    try {
        m_connected(g, "Azt", "Ap", {"Azt"});
        FAIL("overlap not caught");
    } catch (const error& e) {
        CHECK(e.code() == errc::overlap);
    }
    auto cyc = build_graph({"a", "b", "c", "z"},
                           {directed("a", "b"), directed("b", "c"), directed("c", "a")});
    try {
        m_connected(cyc, 0, 3, {});
        FAIL("non-ancestral accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::not_ancestral);
    }
    CHECK_THROWS_AS(m_separated_sets(g, {}, {"Ap"}, {}), error);
    try {
        m_separated_sets(g, {"Azt", "Ap"}, {"Ap"}, {});
        FAIL("set overlap not caught");
    } catch (const error& e) {
        CHECK(e.code() == errc::disjointness);
    }
}

TEST_CASE("symmetry in the query endpoints") {
    SplitMix64 rng(12);
    for (int i = 0; i < 60; ++i) {
        auto g = corpus::random_ancestral(rng, 6, 0.4);
        for (int q = 0; q < 20; ++q) {
            Vertex x = static_cast<Vertex>(rng.below(g.vertex_count()));
            Vertex y = static_cast<Vertex>(rng.below(g.vertex_count()));
            if (x == y) continue;
            std::vector<Vertex> z;
            for (Vertex v = 0; v < g.vertex_count(); ++v)
                if (v != x && v != y && rng.uniform() < 0.3) z.push_back(v);
            CHECK(m_connected(g, x, y, z) == m_connected(g, y, x, z));
        }
    }
}

TEST_CASE("reachability engine agrees with literal path enumeration") {
    SplitMix64 rng(13);
    for (int i = 0; i < 40; ++i) check_engines_agree(corpus::random_ancestral(rng, 5, 0.5));
    for (int i = 0; i < 10; ++i) check_engines_agree(corpus::random_ancestral(rng, 7, 0.35));
}

TEST_CASE("witness walks are simple paths that satisfy the definition") {
    SplitMix64 rng(14);
    for (int i = 0; i < 80; ++i) {
        auto g = corpus::random_ancestral(rng, 6, 0.5);
        for (int q = 0; q < 10; ++q) {
            Vertex x = static_cast<Vertex>(rng.below(g.vertex_count()));
            Vertex y = static_cast<Vertex>(rng.below(g.vertex_count()));
            if (x == y) continue;
            std::vector<Vertex> z;
            for (Vertex v = 0; v < g.vertex_count(); ++v)
                if (v != x && v != y && rng.uniform() < 0.3) z.push_back(v);
            auto w = m_connecting_walk(g, x, y, z);
            CHECK(w.has_value() == m_connected(g, x, y, z));
            if (!w) continue;
            auto& p = w->vertices;
            CHECK(p.front() == x);
            CHECK(p.back() == y);
            std::vector<Vertex> sorted = p;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());  // simple
            CHECK(walk_m_connects(g, p, detail::set_mask(g.vertex_count(), z), ancestor_mask(g, z)));
        }
    }
}

TEST_CASE("witness paths: an arrowhead midway forces ancestry of Z or a directed tail segment") {
    SplitMix64 rng(15);
    for (int i = 0; i < 80; ++i) {
        auto g = corpus::random_ancestral(rng, 6, 0.5);
        auto an_z_of = [&](const std::vector<Vertex>& z) { return ancestor_mask(g, z); };
        for (int q = 0; q < 10; ++q) {
            Vertex x = static_cast<Vertex>(rng.below(g.vertex_count()));
            Vertex y = static_cast<Vertex>(rng.below(g.vertex_count()));
            if (x == y) continue;
            std::vector<Vertex> z;
            for (Vertex v = 0; v < g.vertex_count(); ++v)
                if (v != x && v != y && rng.uniform() < 0.3) z.push_back(v);
            auto w = m_connecting_walk(g, x, y, z);
            if (!w) continue;
            const auto& p = w->vertices;
            const auto an_z = an_z_of(z);
            for (std::size_t i2 = 1; i2 + 1 < p.size(); ++i2) {
                if (g.mark_at(p[i2], p[i2 - 1]) != Mark::Arrow) continue;
                bool directed_rest = true;
                for (std::size_t j = i2; j + 1 < p.size() && directed_rest; ++j) {
                    directed_rest = g.mark_at(p[j], p[j + 1]) == Mark::Tail &&
                                    g.mark_at(p[j + 1], p[j]) == Mark::Arrow;
                }
                CHECK((an_z[p[i2]] || directed_rest));
            }
        }
    }
}

TEST_CASE("DAG pairwise separation by the complement of descendants") {
    SplitMix64 rng(16);
    for (int i = 0; i < 100; ++i) {
        auto d = random_dag(6, 0.4, rng.next());
        for (Vertex a = 0; a < d.vertex_count(); ++a)
            for (Vertex b = 0; b < d.vertex_count(); ++b) {
                if (a == b || d.adjacent(a, b)) continue;
                auto an_a = ancestor_mask(d, {a});
                if (an_a[b]) continue;  // need b outside an(a)
                auto de_b = descendant_mask(d, {b});
                std::vector<Vertex> z;
                for (Vertex v = 0; v < d.vertex_count(); ++v)
                    if (!de_b[v] && v != a) z.push_back(v);
                CHECK(!m_connected(d, a, b, z));
            }
    }
}

TEST_CASE("independence model: smallest cases") {
    auto g0 = build_graph({"a", "b"}, {});
    auto m0 = independence_model(g0);
    REQUIRE(m0.statements.size() == 1);
    CHECK(m0.statements[0].a == "a");
    CHECK(m0.statements[0].b == "b");
    CHECK(m0.statements[0].given.empty());
    CHECK(m0.to_text() == "a _||_ b\n");

    CHECK(independence_model(build_graph({"a", "b"}, {directed("a", "b")})).statements.empty());
    CHECK(independence_model(fixtures::maximal_square()).statements.empty());
}

TEST_CASE("independence model: guard and ancestral precondition") {
    std::vector<std::string> names;
    for (int i = 0; i < 13; ++i) names.push_back("n" + std::to_string(i));
    try {
        independence_model(build_graph(names, {}));
        FAIL("guard not enforced");
    } catch (const error& e) {
        CHECK(e.code() == errc::guard_exceeded);
    }
    CHECK(independence_model(build_graph(names, {}), 13).statements.size() == 13 * 12 / 2 * 2048);
}

TEST_CASE("independence model matches direct per-query enumeration") {
    SplitMix64 rng(17);
    for (int i = 0; i < 30; ++i) {
        auto g = corpus::random_ancestral(rng, 5, 0.45);
        auto model = independence_model(g);
        std::size_t count = 0;
        const std::size_t n = g.vertex_count();
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b) {
                if (g.adjacent(a, b)) continue;
                for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                    if (mask & ((1u << a) | (1u << b))) continue;
                    std::vector<Vertex> z;
                    for (Vertex v = 0; v < n; ++v)
                        if (mask & (1u << v)) z.push_back(v);
                    if (!m_connected(g, a, b, z)) ++count;
                }
            }
        CHECK(model.statements.size() == count);
        for (const auto& st : model.statements) {
            CHECK(st.a < st.b);
            CHECK(!g.adjacent(g.index_of(st.a), g.index_of(st.b)));
            CHECK(m_separated_sets(g, {st.a}, {st.b}, st.given));
        }
    }
}

TEST_CASE("independence model: serialized listing is sorted and parseable") {
    auto g = fixtures::aids_trial_mag();
    auto m = independence_model(g);
    std::string text = m.to_text();
    CHECK(text.find("Ap _||_ Azt\n") != std::string::npos);
    CHECK(text.find(" | ") != std::string::npos);
    // statements come pair-major, conditioning sets in counter order
    CHECK(text ==
          "Ap _||_ Azt\n"
          "Ap _||_ Azt | CD4\n"
          "Ap _||_ Azt | Pcp\n"
          "Ap _||_ Pcp\n"
          "Ap _||_ Pcp | Azt\n"
          "Azt _||_ CD4\n"
          "Azt _||_ CD4 | Ap\n");
}

}  // TEST_SUITE
