#pragma once

#include "coloring.hpp"
#include "graph.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcfcolor {

class ReductionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// roles[v] names vertex v: "orig:<v>", "a:<i>", "b:<j>", "alpha:<l>",
/// "beta:<l>", "sub:<u>-<v>", "pendant:<v>", "apex:<t>", "tent:<f>:v:<i>",
/// "tent:<f>:l:<i>", "tent:<f>:center", "tent:<f>:w".
using RoleMap = std::vector<std::string>;

struct GadgetOutput {
    Graph graph;
    RoleMap roles;
    std::optional<Coloring> coloring;
};

inline RoleMap original_roles(int n)
{
    RoleMap roles;
    roles.reserve(n);
    for (int v = 0; v < n; ++v)
        roles.push_back("orig:" + std::to_string(v));
    return roles;
}

inline std::optional<Vertex> find_role(const RoleMap& roles, const std::string& label)
{
    auto it = std::find(roles.begin(), roles.end(), label);
    if (it == roles.end())
        return std::nullopt;
    return static_cast<Vertex>(it - roles.begin());
}

/// sub_k(g): every edge becomes a path with k internal vertices. New vertices
/// follow the originals, edge by edge in lexicographic edge order. For k > 1
/// the internal vertices are labeled "sub:<u>-<v>:<i>".
inline GadgetOutput subdivide_k(const Graph& g, int k, const RoleMap* base_roles = nullptr)
{
    if (k < 0)
        throw ReductionError("subdivision parameter must be non-negative");
    GraphBuilder b(g.order());
    RoleMap roles = base_roles ? *base_roles : original_roles(g.order());
    if (k == 0)
        return {g, roles, std::nullopt};
    for (const Edge& e : g.edges()) {
        Vertex prev = e.u;
        for (int i = 1; i <= k; ++i) {
            Vertex s = b.add_vertex();
            std::string label = "sub:" + std::to_string(e.u) + "-" + std::to_string(e.v);
            if (k > 1)
                label += ":" + std::to_string(i);
            roles.push_back(std::move(label));
            b.add_edge(prev, s);
            prev = s;
        }
        b.add_edge(prev, e.v);
    }
    return {b.build(), std::move(roles), std::nullopt};
}

/// A pendant at every vertex.
inline GadgetOutput add_pendants_all(const Graph& g)
{
    GraphBuilder b(g);
    RoleMap roles = original_roles(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
        b.add_edge(v, b.add_vertex());
        roles.push_back("pendant:" + std::to_string(v));
    }
    return {b.build(), std::move(roles), std::nullopt};
}

inline GadgetOutput add_universal_vertex(const Graph& g)
{
    GraphBuilder b(g);
    RoleMap roles = original_roles(g.order());
    Vertex apex = b.add_vertex();
    roles.push_back("apex:1");
    for (Vertex v = 0; v < g.order(); ++v)
        b.add_edge(v, apex);
    return {b.build(), std::move(roles), std::nullopt};
}

/// A pendant at every even-degree vertex (isolated vertices included).
inline GadgetOutput add_pendants_even_degree(const Graph& g)
{
    GraphBuilder b(g);
    RoleMap roles = original_roles(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
        if (g.degree(v) % 2 == 0) {
            b.add_edge(v, b.add_vertex());
            roles.push_back("pendant:" + std::to_string(v));
        }
    return {b.build(), std::move(roles), std::nullopt};
}

/// Two adjacent apexes, each joined to every original vertex.
inline GadgetOutput add_two_universal(const Graph& g)
{
    GraphBuilder b(g);
    RoleMap roles = original_roles(g.order());
    Vertex x = b.add_vertex();
    Vertex y = b.add_vertex();
    roles.push_back("apex:1");
    roles.push_back("apex:2");
    b.add_edge(x, y);
    for (Vertex v = 0; v < g.order(); ++v) {
        b.add_edge(v, x);
        b.add_edge(v, y);
    }
    return {b.build(), std::move(roles), std::nullopt};
}

/// Vertex ids of G_{n,m} placed at `offset`: a_1..a_2n, alpha_1..3,
/// b_1..b_2m, beta_1..3.
struct GnmLayout {
    int offset = 0;
    int n = 0;
    int m = 0;

    Vertex a(int i) const { return offset + i - 1; }
    Vertex alpha(int l) const { return offset + 2 * n + l - 1; }
    Vertex b(int j) const { return offset + 2 * n + 3 + j - 1; }
    Vertex beta(int l) const { return offset + 2 * n + 3 + 2 * m + l - 1; }
    int count() const { return 2 * n + 2 * m + 6; }
};

inline GadgetOutput build_gadget_Gnm(int n, int m)
{
    if (n < 1 || m < 1)
        throw ReductionError("G_{n,m} needs n, m >= 1");
    GnmLayout at{0, n, m};
    GraphBuilder b(at.count());
    RoleMap roles(at.count());
    for (int i = 1; i <= 2 * n; ++i) {
        roles[at.a(i)] = "a:" + std::to_string(i);
        for (int l = 1; l <= 3; ++l)
            b.add_edge(at.a(i), at.alpha(l));
    }
    for (int j = 1; j <= 2 * m; ++j) {
        roles[at.b(j)] = "b:" + std::to_string(j);
        for (int l = 1; l <= 3; ++l)
            b.add_edge(at.b(j), at.beta(l));
    }
    for (int l = 1; l <= 3; ++l) {
        roles[at.alpha(l)] = "alpha:" + std::to_string(l);
        roles[at.beta(l)] = "beta:" + std::to_string(l);
        for (int r = l + 1; r <= 3; ++r) {
            b.add_edge(at.alpha(l), at.alpha(r));
            b.add_edge(at.beta(l), at.beta(r));
        }
    }
    return {b.build(), std::move(roles), std::nullopt};
}

// ---------------------------------------------------------------------------
// sub_1(K_4) with a pcf 4-coloring whose fourth branch vertex x sees three
// distinct colors (property a), and where every other branch vertex y has a
// uniquely colored neighbor z, not adjacent to x, with c(z) != c(x)
// (property b). Vertices: 0..3 are v_1..v_4 = x, then s_12, s_13, s_14, s_23,
// s_24, s_34.

inline constexpr std::array<int, 10> sub1K4_table = {1, 2, 3, 4, 3, 2, 2, 1, 3, 1};

/// The table as published, with s_23 colored 4. It is pcf but breaks (b) at v_2.
inline constexpr std::array<int, 10> sub1K4_published_table = {1, 2, 3, 4, 3, 2, 2, 4, 3, 1};

struct Sub1K4Properties {
    bool pcf = false;
    bool distinct_around_x = false;           // (a)
    bool private_unique_neighbor = false;     // (b)
    std::vector<Vertex> failing;              // branch vertices y violating (b)

    bool all() const { return pcf && distinct_around_x && private_unique_neighbor; }
};

inline Sub1K4Properties check_sub1K4_properties(const Graph& g, const Coloring& c, Vertex x)
{
    Sub1K4Properties p;
    p.pcf = check_pcf(g, c).verdict;
    std::vector<int> seen;
    for (Vertex w : g.neighbors(x))
        seen.push_back(c[w]);
    std::sort(seen.begin(), seen.end());
    p.distinct_around_x = std::adjacent_find(seen.begin(), seen.end()) == seen.end();

    for (Vertex y = 0; y < g.order(); ++y) {
        if (y == x || g.degree(y) != 3)
            continue;
        bool ok = false;
        for (Vertex z : g.neighbors(y)) {
            if (g.adjacent(z, x) || c[z] == c[x])
                continue;
            int mult = 0;
            for (Vertex w : g.neighbors(y))
                mult += c[w] == c[z];
            if (mult == 1)
                ok = true;
        }
        if (!ok)
            p.failing.push_back(y);
    }
    p.private_unique_neighbor = p.failing.empty();
    return p;
}

inline GadgetOutput lemma_sub1K4_coloring()
{
    GadgetOutput out = subdivide_k(complete_graph(4), 1);
    out.coloring = Coloring(std::vector<int>(sub1K4_table.begin(), sub1K4_table.end()), 4);
    auto props = check_sub1K4_properties(out.graph, *out.coloring, 3);
    if (!props.all())
        throw std::logic_error("sub1(K4) coloring table fails its certificate check");
    return out;
}

// ---------------------------------------------------------------------------
// Bipartite gadget: G joined to sub_1(G_{|A|,|B|}).

/// Which side plays A and which B, in the order their vertices are wired.
struct SideOrder {
    std::vector<Vertex> side_a;
    std::vector<Vertex> side_b;
};

/// B is the side with at least two vertices; if both qualify, the larger one,
/// and on a tie the side holding the smallest id. Vertices ascend within a side.
/// An edgeless graph has every vertex on one side; vertex 0 then moves to A so
/// that neither side is empty.
inline SideOrder default_side_order(const Graph& g)
{
    auto parts = bipartition(g);
    if (!parts)
        throw ReductionError("graph is not bipartite");
    auto first = parts->side_a;   // contains vertex 0
    auto second = parts->side_b;
    if (second.empty() && first.size() >= 3)
        return SideOrder{{first.front()}, {first.begin() + 1, first.end()}};
    if (first.size() < 2 && second.size() < 2)
        throw ReductionError("neither side has two vertices");
    bool first_is_b;
    if (first.size() >= 2 && second.size() >= 2)
        first_is_b = first.size() >= second.size();
    else
        first_is_b = first.size() >= 2;
    return first_is_b ? SideOrder{second, first} : SideOrder{first, second};
}

struct TildeOutput : GadgetOutput {
    int original_order = 0;
    SideOrder sides;
    GnmLayout gadget;
    std::map<std::pair<Vertex, Vertex>, Vertex> subdivision_of;  // gadget edge (lo,hi) -> its middle vertex
    bool unchanged = false;                                       // n <= 3: the graph itself
};

inline TildeOutput build_bipartite_tilde(const Graph& g, std::optional<SideOrder> order = std::nullopt)
{
    if (!is_bipartite(g))
        throw ReductionError("bipartite gadget needs a bipartite input");
    TildeOutput out;
    out.original_order = g.order();
    if (g.order() <= 3) {
        out.graph = g;
        out.roles = original_roles(g.order());
        out.unchanged = true;
        return out;
    }
    out.sides = order ? *order : default_side_order(g);
    {
        std::vector<Vertex> all = out.sides.side_a;
        all.insert(all.end(), out.sides.side_b.begin(), out.sides.side_b.end());
        std::sort(all.begin(), all.end());
        bool cover = static_cast<int>(all.size()) == g.order() &&
                     std::adjacent_find(all.begin(), all.end()) == all.end();
        for (Vertex v = 0; cover && v < g.order(); ++v)
            cover = all[v] == v;
        if (!cover || out.sides.side_a.empty() || out.sides.side_b.size() < 2)
            throw ReductionError("side order must partition the vertices with |A| >= 1 and |B| >= 2");
        for (const Edge& e : g.edges()) {
            auto in_a = [&](Vertex v) {
                return std::find(out.sides.side_a.begin(), out.sides.side_a.end(), v) != out.sides.side_a.end();
            };
            if (in_a(e.u) == in_a(e.v))
                throw ReductionError("side order is not a bipartition");
        }
    }

    const int n = g.order();
    const int na = static_cast<int>(out.sides.side_a.size());
    const int nb = static_cast<int>(out.sides.side_b.size());
    GadgetOutput gadget = build_gadget_Gnm(na, nb);
    out.gadget = GnmLayout{n, na, nb};

    GraphBuilder b(g);
    out.roles = original_roles(n);
    for (const auto& role : gadget.roles) {
        b.add_vertex();
        out.roles.push_back(role);
    }
    for (const Edge& e : gadget.graph.edges()) {
        Vertex x = e.u + n, y = e.v + n;
        Vertex s = b.add_vertex();
        out.roles.push_back("sub:" + std::to_string(x) + "-" + std::to_string(y));
        out.subdivision_of[{x, y}] = s;
        b.add_edge(x, s);
        b.add_edge(s, y);
    }
    const GnmLayout& at = out.gadget;
    for (int i = 1; i <= na; ++i) {
        b.add_edge(out.sides.side_a[i - 1], at.a(2 * i - 1));
        b.add_edge(out.sides.side_a[i - 1], at.a(2 * i));
    }
    for (int j = 1; j <= nb; ++j) {
        b.add_edge(out.sides.side_b[j - 1], at.b(2 * j - 1));
        b.add_edge(out.sides.side_b[j - 1], at.b(2 * j));
    }
    for (int l = 1; l <= 3; ++l)
        b.add_edge(at.alpha(l), at.b(l));
    out.graph = b.build();
    if (!is_bipartite(out.graph))
        throw std::logic_error("bipartite gadget produced a non-bipartite graph");
    return out;
}

namespace detail {

inline void require_small_palette(const Coloring& c)
{
    for (int col : c.colors)
        if (col < 1 || col > 3)
            throw ReductionError("lift needs a coloring with colors in {1,2,3}, found " + std::to_string(col));
}

inline std::string describe_failure(const CertificateReport& r)
{
    std::string s = "input coloring fails the " + to_string(r.variant) + " check:";
    for (const auto& v : r.violations) {
        s += " " + to_string(v.kind) + "(";
        for (std::size_t i = 0; i < v.vertices.size(); ++i)
            s += (i ? "," : "") + std::to_string(v.vertices[i]);
        s += ")";
    }
    return s;
}

} // namespace detail

/// Extends a pcf/odd 3-coloring of G to a 4-coloring of the bipartite gadget:
/// every a_i and b_j gets 4, alpha_l and beta_l get l, and each subdivided
/// gadget edge copies the sub_1(K_4) table with a_i/b_j playing x.
inline TildeOutput lift_bipartite(const Graph& g, const Coloring& c, Variant variant,
                                  std::optional<SideOrder> order = std::nullopt)
{
    if (variant == Variant::proper)
        throw ReductionError("bipartite lift is defined for pcf and odd colorings");
    if (g.order() <= 3)
        throw ReductionError("bipartite lift needs more than three vertices");
    auto report = check(g, c, variant);
    if (!report.verdict)
        throw ReductionError(detail::describe_failure(report));
    detail::require_small_palette(c);

    TildeOutput out = build_bipartite_tilde(g, std::move(order));
    const GnmLayout& at = out.gadget;
    const auto table = lemma_sub1K4_coloring();
    const Graph& k4 = table.graph;
    const Coloring& tc = *table.coloring;
    // branch vertices 0,1,2 play alpha/beta 1,2,3; vertex 3 plays x
    auto table_sub = [&](int i, int j) {
        for (Vertex s = 4; s < k4.order(); ++s)
            if (k4.adjacent(s, i) && k4.adjacent(s, j))
                return tc[s];
        throw std::logic_error("missing subdivision vertex in sub1(K4)");
    };

    std::vector<int> colors(out.graph.order(), 0);
    for (Vertex v = 0; v < g.order(); ++v)
        colors[v] = c[v];
    auto color_side = [&](auto hub, int count, auto leaf) {
        for (int l = 1; l <= 3; ++l) {
            colors[hub(l)] = tc[l - 1];
            for (int r = l + 1; r <= 3; ++r)
                colors[out.subdivision_of.at({hub(l), hub(r)})] = table_sub(l - 1, r - 1);
        }
        for (int i = 1; i <= count; ++i) {
            colors[leaf(i)] = tc[3];
            for (int l = 1; l <= 3; ++l) {
                const Vertex x = leaf(i), y = hub(l);
                colors[out.subdivision_of.at({std::min(x, y), std::max(x, y)})] = table_sub(l - 1, 3);
            }
        }
    };
    color_side([&](int l) { return at.alpha(l); }, 2 * at.n, [&](int i) { return at.a(i); });
    color_side([&](int l) { return at.beta(l); }, 2 * at.m, [&](int j) { return at.b(j); });

    out.coloring = Coloring(std::move(colors), 4);
    if (!check(out.graph, *out.coloring, variant).verdict)
        throw std::logic_error("bipartite lift produced an invalid coloring");
    return out;
}

// ---------------------------------------------------------------------------
// Tents.

/// Ids of one tent: cycle v_1..v_{4k+2}, pendants l_1..l_{4k+2}, center, w.
struct TentLayout {
    int face = 0;
    int k = 0;
    Vertex first = 0;

    int cycle_length() const { return 4 * k + 2; }
    Vertex v(int i) const { return first + i - 1; }
    Vertex pendant(int i) const { return first + cycle_length() + i - 1; }
    Vertex center() const { return first + 2 * cycle_length(); }
    Vertex w() const { return center() + 1; }
};

struct TentOutput : GadgetOutput {
    int original_order = 0;
    std::vector<Face> faces;
    std::vector<TentLayout> tents;
};

/// Attaches a tent inside every face. The i-th boundary vertex of a face (in
/// traced order) is joined to v_{4i-2} and v_{4i}. The result is returned as
/// an abstract graph.
inline TentOutput attach_tents(const PlaneGraph& pg)
{
    const Graph& g = pg.graph();
    if (!is_two_connected(g))
        throw ReductionError("tents need a 2-connected plane graph");
    TentOutput out;
    out.original_order = g.order();
    out.faces = trace_faces(pg);
    out.roles = original_roles(g.order());
    GraphBuilder b(g);
    for (std::size_t f = 0; f < out.faces.size(); ++f) {
        const auto& boundary = out.faces[f].boundary;
        TentLayout t{static_cast<int>(f), static_cast<int>(boundary.size()), b.order()};
        const int len = t.cycle_length();
        const std::string tag = "tent:" + std::to_string(f) + ":";
        for (int i = 1; i <= len; ++i) {
            b.add_vertex();
            out.roles.push_back(tag + "v:" + std::to_string(i));
        }
        for (int i = 1; i <= len; ++i) {
            b.add_vertex();
            out.roles.push_back(tag + "l:" + std::to_string(i));
        }
        b.add_vertex();
        out.roles.push_back(tag + "center");
        b.add_vertex();
        out.roles.push_back(tag + "w");

        for (int i = 1; i <= len; ++i) {
            b.add_edge(t.v(i), t.v(i % len + 1));
            b.add_edge(t.v(i), t.pendant(i));
            b.add_edge(t.v(i), t.center());
        }
        b.add_edge(t.w(), t.center());
        b.add_edge(t.w(), t.v(1));
        b.add_edge(t.w(), t.v(len));
        for (int i = 1; i <= t.k; ++i) {
            b.add_edge(boundary[i - 1], t.v(4 * i - 2));
            b.add_edge(boundary[i - 1], t.v(4 * i));
        }
        out.tents.push_back(t);
    }
    out.graph = b.build();
    return out;
}

/// Extends a pcf 3-coloring: centers 1, w and pendants 2, cycle vertices 3 at
/// odd positions and 4 at even ones.
inline TentOutput lift_planar(const PlaneGraph& pg, const Coloring& c)
{
    auto report = check_pcf(pg.graph(), c);
    if (!report.verdict)
        throw ReductionError(detail::describe_failure(report));
    detail::require_small_palette(c);

    TentOutput out = attach_tents(pg);
    std::vector<int> colors(out.graph.order(), 0);
    for (Vertex v = 0; v < pg.graph().order(); ++v)
        colors[v] = c[v];
    for (const TentLayout& t : out.tents) {
        colors[t.center()] = 1;
        colors[t.w()] = 2;
        for (int i = 1; i <= t.cycle_length(); ++i) {
            colors[t.pendant(i)] = 2;
            colors[t.v(i)] = i % 2 == 1 ? 3 : 4;
        }
    }
    out.coloring = Coloring(std::move(colors), 4);
    if (!check_pcf(out.graph, *out.coloring).verdict)
        throw std::logic_error("planar lift produced an invalid coloring");
    return out;
}

// ---------------------------------------------------------------------------

/// Pcf k-coloring of sub_1(g) extending a proper coloring of g. Each
/// subdivision vertex, in edge order, takes the smallest color avoiding both
/// endpoint colors and both endpoints' protected colors; a branch vertex's
/// protected color is that of its first colored subdivision neighbor, which
/// therefore stays unique around it.
inline GadgetOutput greedy_extend_subdivision(const Graph& g, const Coloring& c, int k)
{
    auto report = check_proper(g, c);
    if (!report.verdict)
        throw ReductionError(detail::describe_failure(report));
    int top = 0;
    for (int col : c.colors)
        top = std::max(top, col);
    if (k < std::max(top, 5))
        throw ReductionError("greedy extension needs k >= max(colors used, 5), got k = " + std::to_string(k));

    GadgetOutput out = subdivide_k(g, 1);
    std::vector<int> colors(out.graph.order(), 0);
    for (Vertex v = 0; v < g.order(); ++v)
        colors[v] = c[v];
    std::vector<int> protected_color(g.order(), 0);
    Vertex s = g.order();
    for (const Edge& e : g.edges()) {
        const std::array<int, 4> forbidden = {c[e.u], c[e.v], protected_color[e.u], protected_color[e.v]};
        int pick = 1;
        while (std::find(forbidden.begin(), forbidden.end(), pick) != forbidden.end())
            ++pick;
        colors[s++] = pick;
        if (protected_color[e.u] == 0)
            protected_color[e.u] = pick;
        if (protected_color[e.v] == 0)
            protected_color[e.v] = pick;
    }
    out.coloring = Coloring(std::move(colors), k);
    if (!check_pcf(out.graph, *out.coloring).verdict)
        throw std::logic_error("greedy extension produced an invalid coloring");
    return out;
}

} // namespace pcfcolor
