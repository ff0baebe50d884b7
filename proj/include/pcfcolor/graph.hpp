#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcfcolor {

using Vertex = int;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    auto operator<=>(const Edge&) const = default;
};

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Simple finite undirected graph on vertices 0..n-1.
///
/// Immutable once built. Edges are stored normalized (u < v) in lexicographic
/// order and neighbor lists are sorted, so every derived ordering (subdivision
/// ids, face tracing, solver tie-breaks) is deterministic.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::span<const Edge> edge_list) : adj_(check_order(n))
    {
        edges_.reserve(edge_list.size());
        for (const Edge& e : edge_list) {
            if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
                throw GraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 ") has an endpoint outside [0," + std::to_string(n) + ")");
            if (e.u == e.v)
                throw GraphError("self-loop (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
            edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u});
        }
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        for (const Edge& e : edges_) {
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
        for (auto& row : adj_)
            std::sort(row.begin(), row.end());
    }

    int order() const { return static_cast<int>(adj_.size()); }
    std::size_t size() const { return edges_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    bool adjacent(Vertex u, Vertex v) const
    {
        const auto& row = adj_[u];
        return std::binary_search(row.begin(), row.end(), v);
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    static std::size_t check_order(int n)
    {
        if (n < 0)
            throw GraphError("negative vertex count " + std::to_string(n));
        return static_cast<std::size_t>(n);
    }

    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

inline Graph build_graph(int n, std::span<const Edge> edge_list) { return Graph(n, edge_list); }

inline Graph build_graph(int n, std::initializer_list<Edge> edge_list)
{
    return Graph(n, std::span<const Edge>(edge_list.begin(), edge_list.size()));
}

/// Accumulates vertices and edges for constructions that append vertices.
class GraphBuilder {
public:
    explicit GraphBuilder(int n = 0) : n_(n) {}

    explicit GraphBuilder(const Graph& g) : n_(g.order()), edges_(g.edges()) {}

    Vertex add_vertex() { return n_++; }
    void add_edge(Vertex u, Vertex v) { edges_.push_back({u, v}); }

    int order() const { return n_; }
    Graph build() const { return Graph(n_, edges_); }

private:
    int n_;
    std::vector<Edge> edges_;
};

// Common families, used all over the tests and the harness.

inline Graph path_graph(int n)
{
    GraphBuilder b(n);
    for (int i = 0; i + 1 < n; ++i)
        b.add_edge(i, i + 1);
    return b.build();
}

inline Graph cycle_graph(int n)
{
    GraphBuilder b(n);
    for (int i = 0; i < n; ++i)
        b.add_edge(i, (i + 1) % n);
    return b.build();
}

inline Graph complete_graph(int n)
{
    GraphBuilder b(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            b.add_edge(i, j);
    return b.build();
}

/// K_{1,leaves} with the center at vertex 0.
inline Graph star_graph(int leaves)
{
    GraphBuilder b(leaves + 1);
    for (int i = 1; i <= leaves; ++i)
        b.add_edge(0, i);
    return b.build();
}

/// The labeled graph on n vertices whose edge set is the bitmask `mask` over
/// the pairs (i,j), i<j, enumerated lexicographically.
inline Graph graph_from_mask(int n, unsigned long long mask)
{
    GraphBuilder b(n);
    int bit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            if (mask >> bit & 1ULL)
                b.add_edge(i, j);
    return b.build();
}

struct Bipartition {
    std::vector<Vertex> side_a;
    std::vector<Vertex> side_b;
    std::vector<int> side;  // 0 for side_a, 1 for side_b
};

/// Two-colors each component by BFS; the lowest id of every component lands in
/// side_a. Returns nullopt when an odd cycle exists.
inline std::optional<Bipartition> bipartition(const Graph& g)
{
    const int n = g.order();
    std::vector<int> side(n, -1);
    std::queue<Vertex> queue;
    for (Vertex root = 0; root < n; ++root) {
        if (side[root] != -1)
            continue;
        side[root] = 0;
        queue.push(root);
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop();
            for (Vertex w : g.neighbors(v)) {
                if (side[w] == -1) {
                    side[w] = 1 - side[v];
                    queue.push(w);
                } else if (side[w] == side[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    Bipartition result;
    result.side = side;
    for (Vertex v = 0; v < n; ++v)
        (side[v] == 0 ? result.side_a : result.side_b).push_back(v);
    return result;
}

inline bool is_bipartite(const Graph& g) { return bipartition(g).has_value(); }

struct DegreeProfile {
    std::vector<int> degrees;
    int max_degree = 0;
    std::vector<Vertex> isolated;
    std::vector<Vertex> even;  // includes isolated vertices: 0 is even
};

inline DegreeProfile degree_profile(const Graph& g)
{
    DegreeProfile p;
    p.degrees.resize(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
        int d = g.degree(v);
        p.degrees[v] = d;
        p.max_degree = std::max(p.max_degree, d);
        if (d == 0)
            p.isolated.push_back(v);
        if (d % 2 == 0)
            p.even.push_back(v);
    }
    return p;
}

/// Number of connected components, optionally ignoring one deleted vertex.
inline int component_count(const Graph& g, Vertex removed = -1)
{
    const int n = g.order();
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack;
    int count = 0;
    for (Vertex root = 0; root < n; ++root) {
        if (seen[root] || root == removed)
            continue;
        ++count;
        seen[root] = 1;
        stack.push_back(root);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v))
                if (!seen[w] && w != removed) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
    }
    return count;
}

inline bool is_connected(const Graph& g) { return component_count(g) <= 1; }

/// n > 2, connected, and free of cut vertices (Hopcroft-Tarjan lowpoints).
inline bool is_two_connected(const Graph& g)
{
    const int n = g.order();
    if (n <= 2 || !is_connected(g))
        return false;

    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
    std::vector<std::size_t> next(n, 0);
    int timer = 0;
    int root_children = 0;
    std::vector<Vertex> stack{0};
    disc[0] = low[0] = timer++;
    while (!stack.empty()) {
        Vertex v = stack.back();
        const auto& nbrs = g.neighbors(v);
        if (next[v] < nbrs.size()) {
            Vertex w = nbrs[next[v]++];
            if (disc[w] == -1) {
                parent[w] = v;
                disc[w] = low[w] = timer++;
                if (v == 0)
                    ++root_children;
                stack.push_back(w);
            } else if (w != parent[v]) {
                low[v] = std::min(low[v], disc[w]);
            }
            continue;
        }
        stack.pop_back();
        Vertex p = parent[v];
        if (p != -1) {
            low[p] = std::min(low[p], low[v]);
            if (p != 0 && low[v] >= disc[p])
                return false;
        }
    }
    return root_children <= 1;
}

struct Face {
    std::vector<Vertex> boundary;  // cyclic; boundary[0] is the tail of the face's smallest dart
};

/// A Graph together with a rotation system: rotation[v] is the cyclic order of
/// v's neighbors around v.
class PlaneGraph {
public:
    PlaneGraph(Graph g, std::vector<std::vector<Vertex>> rotation)
        : graph_(std::move(g)), rotation_(std::move(rotation))
    {
        if (static_cast<int>(rotation_.size()) != graph_.order())
            throw GraphError("rotation system lists " + std::to_string(rotation_.size()) +
                             " vertices, graph has " + std::to_string(graph_.order()));
        for (Vertex v = 0; v < graph_.order(); ++v) {
            auto sorted = rotation_[v];
            std::sort(sorted.begin(), sorted.end());
            if (sorted != graph_.neighbors(v))
                throw GraphError("rotation at vertex " + std::to_string(v) +
                                 " does not list exactly its neighbors");
        }
    }

    const Graph& graph() const { return graph_; }
    const std::vector<std::vector<Vertex>>& rotation() const { return rotation_; }

private:
    Graph graph_;
    std::vector<std::vector<Vertex>> rotation_;
};

/// Traces every face of a connected plane graph. Arriving at v along (u,v),
/// the walk leaves along (v, w) where w follows u in rotation[v]. Faces are
/// reported once each, ordered by their lexicographically smallest dart.
inline std::vector<Face> trace_faces(const PlaneGraph& pg)
{
    const Graph& g = pg.graph();
    const auto& rot = pg.rotation();
    const int n = g.order();
    if (g.size() == 0)
        return {};
    if (!is_connected(g))
        throw GraphError("face tracing requires a connected plane graph");

    // position[v][j]: index in rot[v] of the j-th (sorted) neighbor of v
    std::vector<std::vector<int>> position(n);
    for (Vertex v = 0; v < n; ++v) {
        const auto& nbrs = g.neighbors(v);
        position[v].resize(nbrs.size());
        for (std::size_t i = 0; i < rot[v].size(); ++i) {
            auto it = std::lower_bound(nbrs.begin(), nbrs.end(), rot[v][i]);
            position[v][it - nbrs.begin()] = static_cast<int>(i);
        }
    }
    auto sorted_index = [&](Vertex v, Vertex w) {
        const auto& nbrs = g.neighbors(v);
        return static_cast<std::size_t>(std::lower_bound(nbrs.begin(), nbrs.end(), w) - nbrs.begin());
    };

    // dart (u, j) = u -> g.neighbors(u)[j]; visiting in that order is lexicographic
    std::vector<std::vector<char>> used(n);
    for (Vertex v = 0; v < n; ++v)
        used[v].assign(g.neighbors(v).size(), 0);

    std::vector<Face> faces;
    for (Vertex start = 0; start < n; ++start) {
        for (std::size_t j = 0; j < g.neighbors(start).size(); ++j) {
            if (used[start][j])
                continue;
            Face face;
            Vertex u = start;
            std::size_t idx = j;
            while (!used[u][idx]) {
                used[u][idx] = 1;
                face.boundary.push_back(u);
                Vertex v = g.neighbors(u)[idx];
                const auto& rv = rot[v];
                int at = position[v][sorted_index(v, u)];
                Vertex w = rv[(at + 1) % rv.size()];
                u = v;
                idx = sorted_index(v, w);
            }
            if (u != start || idx != j)
                throw GraphError("invalid rotation system: face walk did not close");
            faces.push_back(std::move(face));
        }
    }

    const long long euler = static_cast<long long>(n) - static_cast<long long>(g.size()) +
                            static_cast<long long>(faces.size());
    if (euler != 2)
        throw GraphError("invalid rotation system: n - m + f = " + std::to_string(euler) + ", expected 2");
    return faces;
}

} // namespace pcfcolor
