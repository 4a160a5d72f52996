#pragma once

// Line-oriented text format for mixed graphs (extension .ag):
//
//   # comment lines and blank lines are ignored
//   nodes: a b c          optional, declares vertices (isolated ones included)
//   a -> b                directed edge
//   a <-> b               bidirected edge
//   a -- b                undirected edge
//
// Canonical serialization is bit-exact: a `nodes:` line listing every vertex
// in sorted order, then one edge per line sorted by (min endpoint, max
// endpoint), directed edges printed tail first, single spaces, every line
// newline-terminated.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "graph.hpp"

namespace mageq {

namespace detail {

inline std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace detail

inline MixedGraph parse_ag(std::string_view text) {
    std::vector<std::string> declared;
    std::vector<EdgeSpec> edges;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto tokens = detail::tokenize(line);
        if (tokens.empty() || tokens.front().front() == '#') continue;
        if (tokens.front() == "nodes:") {
            declared.insert(declared.end(), tokens.begin() + 1, tokens.end());
            continue;
        }
        if (tokens.size() != 3)
            fail(errc::parse_error, "line " + std::to_string(lineno) + ": expected 'u OP v'");
        const std::string& op = tokens[1];
        EdgeSpec e;
        e.u = tokens[0];
        e.v = tokens[2];
        if (op == "->") {
            e.at_u = Mark::Tail;
            e.at_v = Mark::Arrow;
        } else if (op == "<->") {
            e.at_u = Mark::Arrow;
            e.at_v = Mark::Arrow;
        } else if (op == "--") {
            e.at_u = Mark::Tail;
            e.at_v = Mark::Tail;
        } else {
            fail(errc::parse_error, "line " + std::to_string(lineno) + ": unknown edge operator '" + op + "'");
        }
        edges.push_back(std::move(e));
    }
    try {
        return MixedGraph::build(std::move(declared), edges, /*declare_from_edges=*/true);
    } catch (const error& e) {
        if (e.code() == errc::bad_name || e.code() == errc::self_loop || e.code() == errc::duplicate_edge) throw;
        fail(errc::parse_error, e.what());
    }
}

inline std::string serialize_ag(const MixedGraph& g) {
    std::ostringstream out;
    out << "nodes:";
    for (const auto& name : g.names()) out << ' ' << name;
    out << '\n';
    for (const auto& e : g.edges()) {
        switch (kind(e)) {
            case EdgeKind::Bidirected:
                out << g.name(e.u) << " <-> " << g.name(e.v) << '\n';
                break;
            case EdgeKind::Undirected:
                out << g.name(e.u) << " -- " << g.name(e.v) << '\n';
                break;
            case EdgeKind::Directed:
                if (e.at_u == Mark::Tail)
                    out << g.name(e.u) << " -> " << g.name(e.v) << '\n';
                else
                    out << g.name(e.v) << " -> " << g.name(e.u) << '\n';
                break;
        }
    }
    return out.str();
}

// FNV-1a digest of the canonical serialization; corpus manifests pair it
// with the generator parameters so corpora can be reproduced and verified.
inline std::uint64_t canonical_digest(const MixedGraph& g) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : serialize_ag(g)) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline MixedGraph load_ag(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ag(buf.str());
}

}  // namespace mageq
