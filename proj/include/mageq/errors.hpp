#pragma once

#include <stdexcept>
#include <string>

namespace mageq {

enum class errc {
    bad_name,
    self_loop,
    duplicate_edge,
    unknown_vertex,
    unknown_node,
    overlap,
    disjointness,
    empty_set,
    not_ancestral,
    not_maximal,
    not_a_dag,
    vertex_set_mismatch,
    guard_exceeded,
    bad_probability,
    bad_partition,
    parse_error,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::bad_name: return "bad_name";
        case errc::self_loop: return "self_loop";
        case errc::duplicate_edge: return "duplicate_edge";
        case errc::unknown_vertex: return "unknown_vertex";
        case errc::unknown_node: return "unknown_node";
        case errc::overlap: return "overlap";
        case errc::disjointness: return "disjointness";
        case errc::empty_set: return "empty_set";
        case errc::not_ancestral: return "not_ancestral";
        case errc::not_maximal: return "not_maximal";
        case errc::not_a_dag: return "not_a_dag";
        case errc::vertex_set_mismatch: return "vertex_set_mismatch";
        case errc::guard_exceeded: return "guard_exceeded";
        case errc::bad_probability: return "bad_probability";
        case errc::bad_partition: return "bad_partition";
        case errc::parse_error: return "parse_error";
        case errc::internal: return "internal";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace mageq
