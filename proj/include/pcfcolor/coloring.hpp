#pragma once

#include "graph.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcfcolor {

class ColoringError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Colors are 1..k; 0 marks an unassigned vertex (a partial coloring, which
/// every checker rejects).
struct Coloring {
    std::vector<int> colors;
    int k = 0;

    Coloring() = default;
    Coloring(std::vector<int> c, int palette) : colors(std::move(c)), k(palette) {}

    /// Palette sized to the largest color present.
    static Coloring from_colors(std::vector<int> c)
    {
        int top = c.empty() ? 0 : *std::max_element(c.begin(), c.end());
        return Coloring(std::move(c), std::max(top, 0));
    }

    int size() const { return static_cast<int>(colors.size()); }
    int operator[](Vertex v) const { return colors[v]; }

    int distinct_colors() const
    {
        std::set<int> used(colors.begin(), colors.end());
        used.erase(0);
        return static_cast<int>(used.size());
    }

    friend bool operator==(const Coloring&, const Coloring&) = default;
};

enum class Variant { proper, pcf, odd };

inline std::string to_string(Variant v)
{
    switch (v) {
    case Variant::proper: return "proper";
    case Variant::pcf: return "pcf";
    case Variant::odd: return "odd";
    }
    return "?";
}

inline Variant parse_variant(const std::string& s)
{
    if (s == "proper")
        return Variant::proper;
    if (s == "pcf")
        return Variant::pcf;
    if (s == "odd")
        return Variant::odd;
    throw std::invalid_argument("unknown variant '" + s + "' (expected proper, pcf or odd)");
}

struct Violation {
    enum class Kind { monochromatic_edge, no_unique_color, no_odd_color };
    Kind kind;
    std::vector<Vertex> vertices;  // the edge endpoints, or the single offending vertex

    friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::string to_string(Violation::Kind k)
{
    switch (k) {
    case Violation::Kind::monochromatic_edge: return "monochromatic-edge";
    case Violation::Kind::no_unique_color: return "no-unique-color";
    case Violation::Kind::no_odd_color: return "no-odd-color";
    }
    return "?";
}

/// Outcome of a checker. For pcf, witness[v] is the smallest neighbor whose
/// color is unique in N(v); for odd, the smallest color of odd multiplicity in
/// N(v). Isolated vertices and proper checks carry no witness.
struct CertificateReport {
    Variant variant = Variant::proper;
    bool verdict = true;
    std::vector<std::optional<int>> witness;
    std::vector<Violation> violations;
};

namespace detail {

inline void require_total(const Graph& g, const Coloring& c)
{
    if (c.size() != g.order())
        throw ColoringError("coloring covers " + std::to_string(c.size()) + " vertices, graph has " +
                            std::to_string(g.order()));
    for (Vertex v = 0; v < c.size(); ++v)
        if (c[v] < 1 || c[v] > c.k)
            throw ColoringError("vertex " + std::to_string(v) + " has color " + std::to_string(c[v]) +
                                " outside [1," + std::to_string(c.k) + "]");
}

inline void collect_monochromatic(const Graph& g, const Coloring& c, CertificateReport& r)
{
    for (const Edge& e : g.edges())
        if (c[e.u] == c[e.v])
            r.violations.push_back({Violation::Kind::monochromatic_edge, {e.u, e.v}});
}

} // namespace detail

inline CertificateReport check_proper(const Graph& g, const Coloring& c)
{
    detail::require_total(g, c);
    CertificateReport r;
    r.variant = Variant::proper;
    r.witness.assign(g.order(), std::nullopt);
    detail::collect_monochromatic(g, c, r);
    r.verdict = r.violations.empty();
    return r;
}

inline CertificateReport check_pcf(const Graph& g, const Coloring& c)
{
    detail::require_total(g, c);
    CertificateReport r;
    r.variant = Variant::pcf;
    r.witness.assign(g.order(), std::nullopt);
    detail::collect_monochromatic(g, c, r);

    std::vector<int> count(c.k + 1, 0);
    for (Vertex v = 0; v < g.order(); ++v) {
        const auto& nbrs = g.neighbors(v);
        if (nbrs.empty())
            continue;
        for (Vertex w : nbrs)
            ++count[c[w]];
        for (Vertex w : nbrs)
            if (count[c[w]] == 1) {
                r.witness[v] = w;
                break;
            }
        for (Vertex w : nbrs)
            count[c[w]] = 0;
        if (!r.witness[v])
            r.violations.push_back({Violation::Kind::no_unique_color, {v}});
    }
    r.verdict = r.violations.empty();
    return r;
}

inline CertificateReport check_odd(const Graph& g, const Coloring& c)
{
    detail::require_total(g, c);
    CertificateReport r;
    r.variant = Variant::odd;
    r.witness.assign(g.order(), std::nullopt);
    detail::collect_monochromatic(g, c, r);

    std::vector<int> count(c.k + 1, 0);
    for (Vertex v = 0; v < g.order(); ++v) {
        const auto& nbrs = g.neighbors(v);
        if (nbrs.empty())
            continue;
        for (Vertex w : nbrs)
            ++count[c[w]];
        for (int col = 1; col <= c.k; ++col)
            if (count[col] % 2 == 1) {
                r.witness[v] = col;
                break;
            }
        for (Vertex w : nbrs)
            count[c[w]] = 0;
        if (!r.witness[v])
            r.violations.push_back({Violation::Kind::no_odd_color, {v}});
    }
    r.verdict = r.violations.empty();
    return r;
}

inline CertificateReport check(const Graph& g, const Coloring& c, Variant v)
{
    switch (v) {
    case Variant::proper: return check_proper(g, c);
    case Variant::pcf: return check_pcf(g, c);
    case Variant::odd: return check_odd(g, c);
    }
    throw std::logic_error("unreachable variant");
}

/// Restriction to the vertex set `s`; vertex s[i] (ascending) becomes vertex i
/// of the result. The palette shrinks to the largest color still present; use
/// distinct_colors() for the number of colors actually used.
inline Coloring restrict_coloring(const Coloring& c, std::vector<Vertex> s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::vector<int> out;
    out.reserve(s.size());
    for (Vertex v : s) {
        if (v < 0 || v >= c.size())
            throw ColoringError("vertex " + std::to_string(v) + " is outside the coloring's domain");
        out.push_back(c[v]);
    }
    return Coloring::from_colors(std::move(out));
}

/// Restriction to the prefix 0..n-1, the original vertices of every gadget.
inline Coloring restrict_to_prefix(const Coloring& c, int n)
{
    std::vector<Vertex> s(n);
    for (int i = 0; i < n; ++i)
        s[i] = i;
    return restrict_coloring(c, std::move(s));
}

/// Degree-2 vertices whose two neighbors share a color. Empty for every odd
/// (and so every pcf) coloring.
inline std::vector<Vertex> degree_two_violations(const Graph& g, const Coloring& c)
{
    std::vector<Vertex> bad;
    for (Vertex v = 0; v < g.order(); ++v) {
        const auto& nbrs = g.neighbors(v);
        if (nbrs.size() == 2 && c[nbrs[0]] == c[nbrs[1]])
            bad.push_back(v);
    }
    return bad;
}

} // namespace pcfcolor
