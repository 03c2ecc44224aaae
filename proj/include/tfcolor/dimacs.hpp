#pragma once

// DIMACS-style edge lists: `c` comment lines, one `p edge n m` header, then
// `e u v` lines with 1-based vertex ids.

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfcolor/graph.hpp"

namespace tfcolor {

class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

inline Graph read_dimacs(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<Edge> edges;
    std::set<std::pair<long long, long long>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag) || tag == "c") {
            continue;
        }
        if (tag == "p") {
            std::string kind;
            if (have_header) {
                throw FormatError(line_no, "second problem line");
            }
            if (!(fields >> kind >> n >> m) || (kind != "edge" && kind != "col")) {
                throw FormatError(line_no, "expected `p edge <n> <m>`");
            }
            have_header = true;
            edges.reserve(m);
        } else if (tag == "e") {
            long long u = 0;
            long long v = 0;
            if (!have_header) {
                throw FormatError(line_no, "edge before problem line");
            }
            if (!(fields >> u >> v)) {
                throw FormatError(line_no, "expected `e <u> <v>`");
            }
            if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n) {
                throw FormatError(line_no, "vertex id out of range 1.." + std::to_string(n));
            }
            if (u == v) {
                throw FormatError(line_no, "self-loop at vertex " + std::to_string(u));
            }
            if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
                throw FormatError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
            }
            edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
        } else {
            throw FormatError(line_no, "unknown line type `" + tag + "`");
        }
    }
    if (!have_header) {
        throw FormatError(line_no, "missing `p edge` line");
    }
    if (edges.size() != m) {
        throw FormatError(line_no, "header declares " + std::to_string(m) + " edges, found " +
                                       std::to_string(edges.size()));
    }
    try {
        return Graph(n, edges);
    } catch (const std::invalid_argument& e) {
        throw FormatError(line_no, e.what());
    }
}

inline void write_dimacs(std::ostream& out, const Graph& g, const std::string& comment = {})
{
    if (!comment.empty()) {
        out << "c " << comment << '\n';
    }
    out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) {
        out << "e " << u + 1 << ' ' << v + 1 << '\n';
    }
}

} // namespace tfcolor
