#pragma once

// Command-line front end. Every verb is a pure function of its inputs and
// flags; parsing failures, guard violations and precondition failures exit
// with code 2 and a one-line diagnostic on stderr. Verbs with a yes/no answer
// use exit code 0 for yes and 1 for no.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bench.hpp"
#include "equivalence.hpp"
#include "graph.hpp"
#include "maximality.hpp"
#include "oracles.hpp"
#include "projection.hpp"
#include "separation.hpp"
#include "text_format.hpp"

namespace mageq::cli {

namespace detail {

inline std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline std::vector<std::size_t> split_sizes(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& tok : split_csv(s)) out.push_back(static_cast<std::size_t>(std::stoull(tok)));
    return out;
}

// Oracle guard: MAGEQ_GUARD overrides the default of 12 vertices.
inline std::size_t env_guard(std::size_t fallback = 12) {
    if (const char* v = std::getenv("MAGEQ_GUARD")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && parsed > 0) return static_cast<std::size_t>(parsed);
    }
    return fallback;
}

inline std::string render_walk(const MixedGraph& g, const Walk& w) {
    std::ostringstream out;
    for (std::size_t i = 0; i < w.vertices.size(); ++i) {
        if (i) {
            const Vertex a = w.vertices[i - 1], b = w.vertices[i];
            const Mark at_a = g.mark_at(a, b), at_b = g.mark_at(b, a);
            if (at_a == Mark::Arrow && at_b == Mark::Arrow)
                out << " <-> ";
            else if (at_a == Mark::Tail && at_b == Mark::Tail)
                out << " -- ";
            else if (at_b == Mark::Arrow)
                out << " -> ";
            else
                out << " <- ";
        }
        out << g.name(w.vertices[i]);
    }
    return out.str();
}

inline nlohmann::json verdict_json(const EquivalenceVerdict& v) {
    nlohmann::json j;
    j["equivalent"] = v.equivalent;
    j["reason"] = reason_name(v.reason);
    j["witness"] = v.witness;
    j["rounds_g1"] = v.rounds_g1;
    j["rounds_g2"] = v.rounds_g2;
    return j;
}

inline void print_verdict_text(std::ostream& out, const EquivalenceVerdict& v) {
    if (v.equivalent) {
        out << "equivalent\n";
        return;
    }
    out << "not equivalent (" << reason_name(v.reason) << "):";
    for (const auto& name : v.witness) out << ' ' << name;
    out << '\n';
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"maximal ancestral graphs: validation, separation, equivalence"};
    app.name("mageq");
    app.require_subcommand(1);

    int exit_code = 0;

    // validate FILE
    std::string validate_file;
    auto* validate = app.add_subcommand("validate", "check the ancestral conditions");
    validate->add_option("file", validate_file)->required();
    validate->callback([&] {
        const MixedGraph g = load_ag(validate_file);
        const auto violations = validate_ancestral(g);
        if (violations.empty()) {
            out << "ancestral\n";
            return;
        }
        for (const auto& v : violations) {
            out << violation_kind_name(v.kind) << ':';
            for (Vertex w : v.witness) out << ' ' << g.name(w);
            out << '\n';
        }
        exit_code = 1;
    });

    // complete FILE
    std::string complete_file;
    auto* complete = app.add_subcommand("complete", "print the maximal completion");
    complete->add_option("file", complete_file)->required();
    complete->callback([&] { out << serialize_ag(maximal_completion(load_ag(complete_file))); });

    // msep FILE --x A --y B --given C,D
    std::string msep_file, msep_x, msep_y, msep_given;
    auto* msep = app.add_subcommand("msep", "decide m-separation of two vertices");
    msep->add_option("file", msep_file)->required();
    msep->add_option("--x", msep_x)->required();
    msep->add_option("--y", msep_y)->required();
    msep->add_option("--given", msep_given);
    msep->callback([&] {
        const MixedGraph g = load_ag(msep_file);
        auto walk = m_connecting_walk(g, msep_x, msep_y, detail::split_csv(msep_given));
        if (walk) {
            out << "connected: " << detail::render_walk(g, *walk) << '\n';
            exit_code = 1;
        } else {
            out << "separated\n";
        }
    });

    // equiv FILE1 FILE2 [--oracle] [--json]
    std::string equiv_f1, equiv_f2;
    bool equiv_oracle = false, equiv_json = false;
    auto* equiv = app.add_subcommand("equiv", "decide Markov equivalence");
    equiv->add_option("file1", equiv_f1)->required();
    equiv->add_option("file2", equiv_f2)->required();
    equiv->add_flag("--oracle", equiv_oracle, "cross-check with the brute-force model comparison");
    equiv->add_flag("--json", equiv_json, "machine-readable report");
    equiv->callback([&] {
        const MixedGraph g1 = load_ag(equiv_f1);
        const MixedGraph g2 = load_ag(equiv_f2);
        const EquivalenceVerdict v = markov_equivalent(g1, g2);
        bool oracle_agreed = true;
        if (equiv_oracle) {
            const bool brute = brute_force_equivalent(g1, g2, detail::env_guard());
            oracle_agreed = (brute == v.equivalent);
        }
        if (equiv_json) {
            nlohmann::json j = detail::verdict_json(v);
            if (equiv_oracle) j["oracle_agreed"] = oracle_agreed;
            out << j.dump() << '\n';
        } else {
            detail::print_verdict_text(out, v);
            if (equiv_oracle) out << (oracle_agreed ? "oracle: agreed\n" : "oracle: DISAGREED\n");
        }
        if (!oracle_agreed) {
            err << "error: fast verdict '" << (v.equivalent ? "equivalent" : "not equivalent")
                << "' but brute-force model comparison says '"
                << (v.equivalent ? "not equivalent" : "equivalent") << "'\n";
            exit_code = 2;
        } else {
            exit_code = v.equivalent ? 0 : 1;
        }
    });

    // triples FILE
    std::string triples_file;
    auto* triples = app.add_subcommand("triples", "print the ordered-collider superset");
    triples->add_option("file", triples_file)->required();
    triples->callback([&] {
        const MixedGraph g = load_ag(triples_file);
        for (const Triple& t : triples_with_order_superset(g).triples)
            out << g.name(t.a) << ' ' << g.name(t.b) << ' ' << g.name(t.c) << '\n';
    });

    // project FILE --observe ... --latent ... --select ...
    std::string project_file, project_obs, project_lat, project_sel;
    auto* project = app.add_subcommand("project", "latent projection of a DAG");
    project->add_option("file", project_file)->required();
    project->add_option("--observe", project_obs, "comma-separated; defaults to the rest");
    project->add_option("--latent", project_lat);
    project->add_option("--select", project_sel);
    project->callback([&] {
        DagPartition p;
        p.dag = load_ag(project_file);
        p.latent = detail::split_csv(project_lat);
        p.selection = detail::split_csv(project_sel);
        p.observed = detail::split_csv(project_obs);
        if (p.observed.empty()) {
            std::vector<std::string> rest = p.dag.names();
            auto dropped = [&](const std::string& n) {
                for (const auto* part : {&p.latent, &p.selection})
                    for (const auto& x : *part)
                        if (x == n) return true;
                return false;
            };
            for (const auto& n : rest)
                if (!dropped(n)) p.observed.push_back(n);
        }
        out << serialize_ag(latent_project(p));
    });

    // random --nodes N --edge-prob P --seed S [--latent K --select M]
    std::size_t rnd_nodes = 0, rnd_latent = 0, rnd_select = 0;
    double rnd_prob = 0.0;
    std::uint64_t rnd_seed = 0;
    bool rnd_manifest = false;
    auto* random = app.add_subcommand("random", "seeded random DAG or projected MAG");
    random->add_option("--nodes", rnd_nodes)->required();
    random->add_option("--edge-prob", rnd_prob)->required();
    random->add_option("--seed", rnd_seed)->required();
    random->add_option("--latent", rnd_latent);
    random->add_option("--select", rnd_select);
    random->add_flag("--manifest", rnd_manifest, "print a corpus-manifest line instead of the graph");
    random->callback([&] {
        const MixedGraph g = (rnd_latent == 0 && rnd_select == 0)
                                 ? random_dag(rnd_nodes, rnd_prob, rnd_seed)
                                 : random_mag(rnd_nodes, rnd_latent, rnd_select, rnd_prob, rnd_seed);
        if (rnd_manifest) {
            std::ostringstream line;
            line << "nodes=" << rnd_nodes << " latent=" << rnd_latent << " select=" << rnd_select
                 << " edge-prob=" << rnd_prob << " seed=" << rnd_seed << " digest=" << std::hex
                 << std::setw(16) << std::setfill('0') << canonical_digest(g);
            out << line.str() << '\n';
        } else {
            out << serialize_ag(g);
        }
    });

    // indmodel FILE [--max N]
    std::string indmodel_file;
    std::size_t indmodel_max = 0;
    auto* indmodel = app.add_subcommand("indmodel", "exhaustive independence model listing");
    indmodel->add_option("file", indmodel_file)->required();
    indmodel->add_option("--max", indmodel_max, "vertex guard (default 12, or MAGEQ_GUARD)");
    indmodel->callback([&] {
        const std::size_t guard = indmodel_max ? indmodel_max : detail::env_guard();
        out << independence_model(load_ag(indmodel_file), guard).to_text();
    });

    // bench --sizes 50,100,200 --density D --seed S
    std::string bench_sizes = "50,100,200";
    double bench_density = 3.0;
    std::uint64_t bench_seed = 1;
    auto* bench = app.add_subcommand("bench", "equivalence-check wall times on random MAGs");
    bench->add_option("--sizes", bench_sizes, "comma-separated vertex counts");
    bench->add_option("--density", bench_density, "target mean degree of the underlying DAG");
    bench->add_option("--seed", bench_seed);
    bench->callback([&] {
        BenchConfig cfg;
        cfg.sizes = detail::split_sizes(bench_sizes);
        cfg.avg_degree = bench_density;
        cfg.seed = bench_seed;
        out << "n edges avg_degree median_ms verdict\n";
        for (const BenchRow& r : bench_equivalence(cfg)) {
            out << r.n << ' ' << r.edges << ' ' << std::fixed << std::setprecision(2) << r.avg_degree << ' '
                << std::setprecision(3) << r.seconds * 1e3 << ' ' << (r.equivalent ? "equivalent" : "mixed")
                << '\n';
        }
    });

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes args back to front
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help and friends
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}

}  // namespace mageq::cli
