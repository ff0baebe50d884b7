#pragma once

#include "coloring.hpp"
#include "graph.hpp"
#include "reductions.hpp"
#include "solver.hpp"

#include "json.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcfcolor {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_comment(const std::string& line)
{
    auto at = line.find_first_not_of(" \t\r");
    return at != std::string::npos && line[at] == '#';
}

inline bool is_blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

} // namespace detail

// Edge list: "n m", then m lines "u v"; '#' starts a comment line.

inline Graph read_edge_list(std::istream& in)
{
    std::string line;
    int n = -1;
    long long m = -1;
    std::vector<Edge> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_comment(line) || detail::is_blank(line))
            continue;
        std::istringstream ls(line);
        std::string rest;
        if (n < 0) {
            if (!(ls >> n >> m) || (ls >> rest) || n < 0 || m < 0)
                throw FormatError("line " + std::to_string(lineno) + ": expected header \"n m\"");
            continue;
        }
        Edge e;
        if (!(ls >> e.u >> e.v) || (ls >> rest))
            throw FormatError("line " + std::to_string(lineno) + ": expected edge \"u v\"");
        edges.push_back(e);
    }
    if (n < 0)
        throw FormatError("missing header line");
    if (static_cast<long long>(edges.size()) != m)
        throw FormatError("header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    return Graph(n, edges);
}

inline void write_edge_list(std::ostream& out, const Graph& g)
{
    out << g.order() << ' ' << g.size() << '\n';
    for (const Edge& e : g.edges())
        out << e.u << ' ' << e.v << '\n';
}

// Rotation file: line v lists v's neighbors in cyclic order. Empty lines
// matter (isolated vertices); '#' lines are skipped.

inline std::vector<std::vector<Vertex>> read_rotation(std::istream& in, int n)
{
    std::vector<std::vector<Vertex>> rotation;
    std::string line;
    while (std::getline(in, line)) {
        if (detail::is_comment(line))
            continue;
        std::istringstream ls(line);
        std::vector<Vertex> row;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                int v = std::stoi(tok, &used);
                if (used != tok.size())
                    throw std::invalid_argument(tok);
                row.push_back(v);
            } catch (const std::exception&) {
                throw FormatError("rotation line " + std::to_string(rotation.size()) + ": bad vertex '" + tok + "'");
            }
        }
        rotation.push_back(std::move(row));
    }
    while (static_cast<int>(rotation.size()) > n && rotation.back().empty())
        rotation.pop_back();
    if (static_cast<int>(rotation.size()) != n)
        throw FormatError("rotation file has " + std::to_string(rotation.size()) + " lines, expected " +
                          std::to_string(n));
    return rotation;
}

inline void write_rotation(std::ostream& out, const PlaneGraph& pg)
{
    for (const auto& row : pg.rotation()) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? " " : "") << row[i];
        out << '\n';
    }
}

// Coloring file: lines "vertex color". Vertices never mentioned stay 0, which
// the checkers reject as a partial coloring.

inline Coloring read_coloring(std::istream& in, int n)
{
    std::vector<int> colors(n, 0);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_comment(line) || detail::is_blank(line))
            continue;
        std::istringstream ls(line);
        int v = 0, c = 0;
        std::string rest;
        if (!(ls >> v >> c) || (ls >> rest))
            throw FormatError("line " + std::to_string(lineno) + ": expected \"vertex color\"");
        if (v < 0 || v >= n)
            throw FormatError("line " + std::to_string(lineno) + ": vertex " + std::to_string(v) + " out of range");
        if (c < 1)
            throw FormatError("line " + std::to_string(lineno) + ": colors start at 1");
        if (colors[v] != 0 && colors[v] != c)
            throw FormatError("line " + std::to_string(lineno) + ": vertex " + std::to_string(v) + " colored twice");
        colors[v] = c;
    }
    return Coloring::from_colors(std::move(colors));
}

inline void write_coloring(std::ostream& out, const Coloring& c)
{
    for (Vertex v = 0; v < c.size(); ++v)
        out << v << ' ' << c[v] << '\n';
}

template <typename T, typename Reader>
T read_file(const std::string& path, Reader reader)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    return reader(in);
}

template <typename Writer>
void write_file(const std::string& path, Writer writer)
{
    std::ofstream out(path);
    if (!out)
        throw FormatError("cannot write " + path);
    writer(out);
}

// DOT export.

inline void write_dot(std::ostream& out, const Graph& g, const Coloring* c = nullptr, const RoleMap* roles = nullptr)
{
    static const char* palette[] = {"white",     "tomato",  "gold",      "lightblue", "palegreen",
                                    "orchid",    "orange",  "cyan",      "pink",      "khaki",
                                    "lightgray", "salmon",  "turquoise"};
    out << "graph G {\n  node [style=filled];\n";
    for (Vertex v = 0; v < g.order(); ++v) {
        out << "  " << v << " [label=\"" << v;
        if (roles && v < static_cast<int>(roles->size()))
            out << "\\n" << (*roles)[v];
        if (c)
            out << "\\nc=" << (*c)[v];
        out << '"';
        if (c) {
            int col = (*c)[v];
            out << ", fillcolor=\"" << (col >= 0 && col < 13 ? palette[col] : "gray") << '"';
        }
        out << "];\n";
    }
    for (const Edge& e : g.edges())
        out << "  " << e.u << " -- " << e.v << ";\n";
    out << "}\n";
}

// JSON.

using nlohmann::json;

inline json to_json(const Coloring& c)
{
    return json{{"k", c.k}, {"colors", c.colors}};
}

inline json to_json(const CertificateReport& r)
{
    json witnesses = json::array();
    for (Vertex v = 0; v < static_cast<int>(r.witness.size()); ++v)
        if (r.witness[v])
            witnesses.push_back({{"vertex", v},
                                 {r.variant == Variant::pcf ? "neighbor" : "color", *r.witness[v]}});
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"kind", to_string(v.kind)}, {"vertices", v.vertices}});
    return json{{"variant", to_string(r.variant)},
                {"verdict", r.verdict},
                {"witnesses", witnesses},
                {"violations", violations}};
}

inline json to_json(const Budget& b)
{
    return json{{"max_nodes", b.max_nodes}, {"time_limit_seconds", b.time_limit_seconds}};
}

/// elapsed time is omitted unless asked for, so reports stay reproducible.
inline json to_json(const SolveResult& r, bool with_time = false)
{
    json j{{"status", to_string(r.status)}, {"nodes", r.stats.nodes}, {"budget", to_json(r.budget)}};
    if (r.witness)
        j["witness"] = to_json(*r.witness);
    if (with_time)
        j["elapsed_seconds"] = r.stats.elapsed_seconds;
    return j;
}

inline json to_json(const ChromaticResult& r)
{
    json j{{"status", to_string(r.status)}, {"nodes", r.nodes}};
    if (r.status == Status::sat)
        j["value"] = r.value;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    if (r.witness)
        j["witness"] = to_json(*r.witness);
    return j;
}

inline json roles_to_json(const RoleMap& roles)
{
    return json{{"n", roles.size()}, {"roles", roles}};
}

inline RoleMap roles_from_json(const json& j)
{
    return j.at("roles").get<RoleMap>();
}

} // namespace pcfcolor
