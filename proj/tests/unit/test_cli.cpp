#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <mageq/cli.hpp>

#include "../support/figures.hpp"

using namespace mageq;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    std::filesystem::path dir;
    TempDir() {
        dir = std::filesystem::temp_directory_path() /
              ("mageq-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        std::filesystem::create_directories(dir);
    }
    ~TempDir() { std::filesystem::remove_all(dir); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name, const std::string& content) {
        auto p = dir / name;
        std::ofstream(p) << content;
        return p.string();
    }
    std::string graph(const std::string& name, const MixedGraph& g) { return file(name, serialize_ag(g)); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate: ancestral vs violating input") {
    TempDir t;
    auto ok = t.graph("ok.ag", fixtures::aids_trial_mag());
    auto r = run_cli({"validate", ok});
    CHECK(r.code == 0);
    CHECK(r.out == "ancestral\n");

    auto bad = t.file("bad.ag", "a -> b\nb -> c\nc -> a\n");
    auto r2 = run_cli({"validate", bad});
    CHECK(r2.code == 1);
    CHECK(r2.out.find("directed_cycle: a b c a") != std::string::npos);

    auto r3 = run_cli({"validate", (t.dir / "missing.ag").string()});
    CHECK(r3.code == 2);
    CHECK(r3.err.find("error:") == 0);
}

TEST_CASE("msep: separated and connected with witness") {
    TempDir t;
    auto f = t.graph("m.ag", fixtures::aids_trial_mag());
    auto sep = run_cli({"msep", f, "--x", "Azt", "--y", "Ap", "--given", "CD4"});
    CHECK(sep.code == 0);
    CHECK(sep.out == "separated\n");
    auto con = run_cli({"msep", f, "--x", "Azt", "--y", "CD4", "--given", "Pcp"});
    CHECK(con.code == 1);
    CHECK(con.out == "connected: Azt -> Pcp <-> CD4\n");
    auto err = run_cli({"msep", f, "--x", "Azt", "--y", "Azt"});
    CHECK(err.code == 2);
}

TEST_CASE("equiv: text, json, oracle and exit codes") {
    TempDir t;
    auto g1 = t.graph("g1.ag", fixtures::paw_mag1());
    auto g2 = t.graph("g2.ag", fixtures::paw_mag2());
    auto g3 = t.graph("g3.ag", fixtures::paw_dag());

    auto eq = run_cli({"equiv", g1, g2});
    CHECK(eq.code == 0);
    CHECK(eq.out == "equivalent\n");

    auto ne = run_cli({"equiv", g1, g3});
    CHECK(ne.code == 1);
    CHECK(ne.out == "not equivalent (ColliderMissingInG2): q b y\n");

    auto j = run_cli({"equiv", g1, g3, "--json", "--oracle"});
    CHECK(j.code == 1);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["equivalent"] == false);
    CHECK(parsed["reason"] == "ColliderMissingInG2");
    CHECK(parsed["witness"] == nlohmann::json::array({"q", "b", "y"}));
    CHECK(parsed["rounds_g1"].get<int>() == 2);
    CHECK(parsed["rounds_g2"].get<int>() == 0);
    CHECK(parsed["oracle_agreed"] == true);

    auto ja = run_cli({"equiv", g1, g2, "--oracle"});
    CHECK(ja.code == 0);
    CHECK(ja.out == "equivalent\noracle: agreed\n");

    auto missing_vertex = t.file("mismatch.ag", "a -> b\n");
    CHECK(run_cli({"equiv", g1, missing_vertex}).code == 2);
}

TEST_CASE("equiv --oracle respects the MAGEQ_GUARD override") {
    TempDir t;
    std::vector<EdgeSpec> chain;
    std::vector<std::string> names;
    for (int i = 0; i < 13; ++i) names.push_back("n" + std::string(1, char('a' + i)));
    for (int i = 0; i + 1 < 13; ++i) chain.push_back(directed(names[i], names[i + 1]));
    auto big = t.graph("big.ag", build_graph(names, chain));
    CHECK(run_cli({"equiv", big, big, "--oracle"}).code == 2);  // guard of 12 trips
    CHECK(run_cli({"equiv", big, big}).code == 0);
    ::setenv("MAGEQ_GUARD", "13", 1);
    CHECK(run_cli({"equiv", big, big, "--oracle"}).code == 0);
    ::unsetenv("MAGEQ_GUARD");
}

TEST_CASE("complete: canonical output, fixpoint under re-completion") {
    TempDir t;
    auto f = t.graph("sq.ag", fixtures::nonmaximal_square());
    auto r = run_cli({"complete", f});
    CHECK(r.code == 0);
    CHECK(r.out == serialize_ag(fixtures::maximal_square()));
    auto f2 = t.file("sq2.ag", r.out);
    auto r2 = run_cli({"complete", f2});
    CHECK(r2.out == r.out);
}

TEST_CASE("triples: one canonical triple per line") {
    TempDir t;
    auto f = t.graph("paw.ag", fixtures::paw_mag1());
    auto r = run_cli({"triples", f});
    CHECK(r.code == 0);
    CHECK(r.out == "b q x\nq b y\n");
    auto nm = t.graph("nm.ag", fixtures::nonmaximal_square());
    CHECK(run_cli({"triples", nm}).code == 2);
}

TEST_CASE("project: the marginalized trial graph") {
    TempDir t;
    auto f = t.graph("dag.ag", fixtures::aids_trial_dag());
    auto r = run_cli({"project", f, "--latent", "H"});
    CHECK(r.code == 0);
    CHECK(r.out == serialize_ag(fixtures::aids_trial_mag()));
    auto r2 = run_cli({"project", f, "--observe", "Azt,Ap,Pcp,CD4", "--latent", "H"});
    CHECK(r2.out == r.out);
    CHECK(run_cli({"project", f, "--latent", "H", "--select", "H"}).code == 2);
}

TEST_CASE("random: deterministic and well formed") {
    auto a = run_cli({"random", "--nodes", "6", "--edge-prob", "0.5", "--seed", "9"});
    auto b = run_cli({"random", "--nodes", "6", "--edge-prob", "0.5", "--seed", "9"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(is_dag(parse_ag(a.out)));
    auto m = run_cli({"random", "--nodes", "5", "--edge-prob", "0.6", "--seed", "9", "--latent", "2"});
    auto g = parse_ag(m.out);
    CHECK(g.vertex_count() == 5);
    CHECK(g.is_ancestral());

    auto man = run_cli(
        {"random", "--nodes", "5", "--edge-prob", "0.6", "--seed", "9", "--latent", "2", "--manifest"});
    CHECK(man.code == 0);
    CHECK(man.out.find("nodes=5 latent=2 select=0 edge-prob=0.6 seed=9 digest=") == 0);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(canonical_digest(g)));
    CHECK(man.out.find(buf) != std::string::npos);
}

TEST_CASE("indmodel: listing and guard") {
    TempDir t;
    auto f = t.graph("m.ag", fixtures::aids_trial_mag());
    auto r = run_cli({"indmodel", f});
    CHECK(r.code == 0);
    CHECK(r.out.find("Azt _||_ CD4 | Ap\n") != std::string::npos);
    auto ge = run_cli({"indmodel", f, "--max", "2"});
    CHECK(ge.code == 2);
    CHECK(ge.err.find("guard") != std::string::npos);
}

TEST_CASE("bench: produces one row per size") {
    auto r = run_cli({"bench", "--sizes", "8,12", "--density", "2", "--seed", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("n edges avg_degree median_ms verdict") == 0);
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 3);
    CHECK(r.out.find("equivalent") != std::string::npos);
}

TEST_CASE("malformed invocations exit 2 before reading graphs") {
    CHECK(run_cli({"frobnicate", "x.ag"}).code == 2);
    CHECK(run_cli({"msep", "definitely-missing.ag", "--x", "a"}).code == 2);  // missing --y
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
}

}  // TEST_SUITE
