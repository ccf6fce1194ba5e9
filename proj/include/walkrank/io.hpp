#pragma once

// File formats: tab-separated edge lists (lines in arrival order, '#'
// comments and blank lines ignored) and the segment dump used for debugging
// and replay.

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "walkrank/graph.hpp"
#include "walkrank/walk_store.hpp"

namespace walkrank {

struct ParseError : std::runtime_error {
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

inline std::vector<DirectedEdge> read_edge_list(std::istream& in,
                                                const std::string& name = "<stream>") {
    std::vector<DirectedEdge> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        long long src = -1, dst = -1;
        if (!(fields >> src >> dst) || src < 0 || dst < 0)
            throw ParseError(name, lineno, "expected \"src<TAB>dst\", got: " + line);
        std::string rest;
        if (fields >> rest) throw ParseError(name, lineno, "trailing content: " + rest);
        edges.push_back({NodeId(src), NodeId(dst)});
    }
    return edges;
}

inline std::vector<DirectedEdge> read_edge_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge file: " + path);
    return read_edge_list(in, path);
}

inline void write_edge_list(std::ostream& out, const std::vector<DirectedEdge>& edges) {
    for (const DirectedEdge& e : edges) out << e.src << '\t' << e.dst << '\n';
}

inline const char* segment_kind_name(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::pagerank: return "pagerank";
        case SegmentKind::salsa_forward_start: return "salsa_forward_start";
        case SegmentKind::salsa_backward_start: return "salsa_backward_start";
    }
    return "?";
}

inline void write_segment_dump(std::ostream& out, const WalkStore& ws) {
    for (SegmentId id = 0; id < ws.segment_count(); ++id) {
        const WalkSegment& seg = ws.segment(id);
        out << seg.id << '\t' << segment_kind_name(seg.kind) << '\t';
        for (std::size_t i = 0; i < seg.path.size(); ++i) {
            if (i) out << ' ';
            out << seg.path[i];
        }
        out << '\n';
    }
}

}  // namespace walkrank
