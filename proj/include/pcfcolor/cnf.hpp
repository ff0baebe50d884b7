#pragma once

#include "coloring.hpp"
#include "graph.hpp"
#include "solver.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcfcolor {

/// What a CNF variable stands for.
///   x v c    : vertex v has color c
///   u v w c  : w is the unique c-colored neighbor of v
///   p v c i  : parity of color c over the first i neighbors of v
///   o v c    : color c occurs an odd number of times around v
struct CnfVar {
    char kind = 'x';
    int vertex = 0;
    int color = 0;
    int extra = 0;  // w for 'u', i for 'p'

    friend bool operator==(const CnfVar&, const CnfVar&) = default;
};

struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<CnfVar> vars;  // vars[id - 1]
    int vertices = 0;
    int colors = 0;

    int new_var(CnfVar info)
    {
        vars.push_back(info);
        return ++num_vars;
    }

    void add(std::vector<int> clause) { clauses.push_back(std::move(clause)); }
};

namespace detail {

// y <-> a xor b
inline void add_xor(Cnf& f, int y, int a, int b)
{
    f.add({-y, a, b});
    f.add({-y, -a, -b});
    f.add({y, -a, b});
    f.add({y, a, -b});
}

} // namespace detail

/// One-hot color variables x(v,c) = v*k + c (c in 1..k), properness per edge,
/// then the variant's neighborhood constraints on auxiliary variables.
inline Cnf encode_cnf(const Graph& g, int k, Variant variant)
{
    if (k < 1)
        throw std::invalid_argument("palette size must be at least 1");
    Cnf f;
    f.vertices = g.order();
    f.colors = k;
    const int n = g.order();
    for (Vertex v = 0; v < n; ++v)
        for (int c = 1; c <= k; ++c)
            f.new_var({'x', v, c, 0});
    auto x = [k](Vertex v, int c) { return v * k + c; };

    for (Vertex v = 0; v < n; ++v) {
        std::vector<int> alo;
        for (int c = 1; c <= k; ++c)
            alo.push_back(x(v, c));
        f.add(alo);
        for (int c = 1; c <= k; ++c)
            for (int d = c + 1; d <= k; ++d)
                f.add({-x(v, c), -x(v, d)});
    }
    for (const Edge& e : g.edges())
        for (int c = 1; c <= k; ++c)
            f.add({-x(e.u, c), -x(e.v, c)});

    if (variant == Variant::pcf) {
        for (Vertex v = 0; v < n; ++v) {
            const auto& nbrs = g.neighbors(v);
            if (nbrs.empty())
                continue;
            std::vector<int> some_unique;
            for (Vertex w : nbrs)
                for (int c = 1; c <= k; ++c) {
                    int u = f.new_var({'u', v, c, w});
                    some_unique.push_back(u);
                    f.add({-u, x(w, c)});
                    for (Vertex other : nbrs)
                        if (other != w)
                            f.add({-u, -x(other, c)});
                }
            f.add(some_unique);
        }
    } else if (variant == Variant::odd) {
        for (Vertex v = 0; v < n; ++v) {
            const auto& nbrs = g.neighbors(v);
            if (nbrs.empty())
                continue;
            std::vector<int> some_odd;
            for (int c = 1; c <= k; ++c) {
                const int d = static_cast<int>(nbrs.size());
                int prefix = x(nbrs[0], c);
                int odd = 0;
                if (d == 1) {
                    odd = f.new_var({'o', v, c, 0});
                    f.add({-odd, prefix});
                    f.add({odd, -prefix});
                }
                for (int i = 2; i <= d; ++i) {
                    int link = i == d ? f.new_var({'o', v, c, 0}) : f.new_var({'p', v, c, i});
                    detail::add_xor(f, link, prefix, x(nbrs[i - 1], c));
                    prefix = link;
                    odd = link;
                }
                some_odd.push_back(odd);
            }
            f.add(some_odd);
        }
    }
    return f;
}

inline void write_dimacs(std::ostream& out, const Cnf& f)
{
    out << "c pcfcolor coloring encoding: " << f.vertices << " vertices, " << f.colors << " colors\n";
    for (int id = 1; id <= f.num_vars; ++id) {
        const CnfVar& v = f.vars[id - 1];
        switch (v.kind) {
        case 'x': out << "c var " << id << " = x " << v.vertex << ' ' << v.color << '\n'; break;
        case 'u': out << "c aux " << id << " = u " << v.vertex << ' ' << v.extra << ' ' << v.color << '\n'; break;
        case 'p': out << "c aux " << id << " = p " << v.vertex << ' ' << v.color << ' ' << v.extra << '\n'; break;
        case 'o': out << "c aux " << id << " = o " << v.vertex << ' ' << v.color << '\n'; break;
        }
    }
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& clause : f.clauses) {
        for (int lit : clause)
            out << lit << ' ';
        out << "0\n";
    }
}

inline std::string to_dimacs(const Cnf& f)
{
    std::ostringstream out;
    write_dimacs(out, f);
    return out.str();
}

/// Reads DIMACS, recovering the variable map from the comment lines.
inline Cnf read_dimacs(std::istream& in)
{
    Cnf f;
    std::string line;
    bool header = false;
    std::size_t expected_clauses = 0;
    std::vector<int> current;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok))
            continue;
        if (tok == "c") {
            std::string tag, eq, kind;
            int id = 0;
            if (!(ls >> tag) || (tag != "var" && tag != "aux"))
                continue;
            if (!(ls >> id >> eq >> kind) || eq != "=" || kind.size() != 1)
                throw std::runtime_error("malformed variable comment: " + line);
            CnfVar v;
            v.kind = kind[0];
            switch (v.kind) {
            case 'x': ls >> v.vertex >> v.color; break;
            case 'u': ls >> v.vertex >> v.extra >> v.color; break;
            case 'p': ls >> v.vertex >> v.color >> v.extra; break;
            case 'o': ls >> v.vertex >> v.color; break;
            default: throw std::runtime_error("unknown variable kind in: " + line);
            }
            if (!ls)
                throw std::runtime_error("malformed variable comment: " + line);
            if (id != static_cast<int>(f.vars.size()) + 1)
                throw std::runtime_error("variable comments out of order at id " + std::to_string(id));
            f.vars.push_back(v);
            if (v.kind == 'x') {
                f.vertices = std::max(f.vertices, v.vertex + 1);
                f.colors = std::max(f.colors, v.color);
            }
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            if (!(ls >> fmt >> f.num_vars >> expected_clauses) || fmt != "cnf")
                throw std::runtime_error("malformed problem line: " + line);
            header = true;
            continue;
        }
        if (!header)
            throw std::runtime_error("clause before problem line");
        std::istringstream cs(line);
        int lit = 0;
        while (cs >> lit) {
            if (lit == 0) {
                f.clauses.push_back(current);
                current.clear();
            } else {
                if (std::abs(lit) > f.num_vars)
                    throw std::runtime_error("literal " + std::to_string(lit) + " exceeds variable count");
                current.push_back(lit);
            }
        }
    }
    if (!header)
        throw std::runtime_error("missing problem line");
    if (!current.empty())
        throw std::runtime_error("unterminated clause");
    if (f.clauses.size() != expected_clauses)
        throw std::runtime_error("clause count mismatch: header says " + std::to_string(expected_clauses) +
                                 ", found " + std::to_string(f.clauses.size()));
    if (!f.vars.empty() && static_cast<int>(f.vars.size()) != f.num_vars)
        throw std::runtime_error("variable map does not cover every variable");
    return f;
}

struct CnfResult {
    Status status = Status::timeout;
    std::vector<bool> model;  // model[id], index 0 unused
    std::uint64_t decisions = 0;
};

/// Plain DPLL: two-watched-literal unit propagation, chronological
/// backtracking, lowest-index branching with the positive phase first.
class DpllSolver {
public:
    explicit DpllSolver(const Cnf& f) : n_(f.num_vars), watches_(2 * (f.num_vars + 1)), value_(f.num_vars + 1, 0)
    {
        for (const auto& clause : f.clauses) {
            std::vector<int> c;
            for (int lit : clause)
                c.push_back(encode(lit));
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
            bool tautology = false;
            for (std::size_t i = 1; i < c.size(); ++i)
                if ((c[i] ^ 1) == c[i - 1])
                    tautology = true;
            if (tautology)
                continue;
            if (c.empty()) {
                trivially_unsat_ = true;
                continue;
            }
            if (c.size() == 1) {
                units_.push_back(c[0]);
                continue;
            }
            watches_[c[0]].push_back(clauses_.size());
            watches_[c[1]].push_back(clauses_.size());
            clauses_.push_back(std::move(c));
        }
    }

    CnfResult solve(const Budget& budget = {})
    {
        CnfResult r;
        auto start = std::chrono::steady_clock::now();
        if (trivially_unsat_) {
            r.status = Status::unsat;
            return r;
        }
        for (int lit : units_) {
            if (lit_value(lit) == -1) {
                r.status = Status::unsat;
                return r;
            }
            if (lit_value(lit) == 0)
                assign(lit);
        }
        int next_var = 1;
        while (true) {
            if (!propagate()) {
                // chronological backtrack to the latest unflipped decision
                while (!decisions_.empty() && decisions_.back().flipped)
                    decisions_.pop_back();
                if (decisions_.empty()) {
                    r.status = Status::unsat;
                    return r;
                }
                Decision& d = decisions_.back();
                undo_to(d.trail_size);
                d.flipped = true;
                assign(d.lit ^ 1);
                next_var = 1;
                continue;
            }
            while (next_var <= n_ && value_[next_var] != 0)
                ++next_var;
            if (next_var > n_) {
                r.status = Status::sat;
                r.model.assign(n_ + 1, false);
                for (int v = 1; v <= n_; ++v)
                    r.model[v] = value_[v] == 1;
                return r;
            }
            ++r.decisions;
            if (r.decisions > budget.max_nodes ||
                (budget.time_limit_seconds > 0 && (r.decisions & 0x3FF) == 0 &&
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
                     budget.time_limit_seconds)) {
                r.status = Status::timeout;
                return r;
            }
            int lit = 2 * next_var;
            decisions_.push_back({lit, trail_.size(), false});
            assign(lit);
        }
    }

private:
    struct Decision {
        int lit;
        std::size_t trail_size;
        bool flipped;
    };

    static int encode(int dimacs) { return dimacs > 0 ? 2 * dimacs : 2 * -dimacs + 1; }

    int lit_value(int lit) const
    {
        int v = value_[lit >> 1];
        return (lit & 1) ? -v : v;
    }

    void assign(int lit)
    {
        value_[lit >> 1] = (lit & 1) ? -1 : 1;
        trail_.push_back(lit);
    }

    void undo_to(std::size_t size)
    {
        while (trail_.size() > size) {
            value_[trail_.back() >> 1] = 0;
            trail_.pop_back();
        }
        head_ = std::min(head_, size);
    }

    bool propagate()
    {
        while (head_ < trail_.size()) {
            int falsified = trail_[head_++] ^ 1;
            auto& list = watches_[falsified];
            std::size_t keep = 0;
            for (std::size_t i = 0; i < list.size(); ++i) {
                std::size_t ci = list[i];
                auto& c = clauses_[ci];
                if (c[0] == falsified)
                    std::swap(c[0], c[1]);
                if (lit_value(c[0]) == 1) {
                    list[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t j = 2; j < c.size(); ++j)
                    if (lit_value(c[j]) != -1) {
                        std::swap(c[1], c[j]);
                        watches_[c[1]].push_back(ci);
                        moved = true;
                        break;
                    }
                if (moved)
                    continue;
                list[keep++] = ci;
                if (lit_value(c[0]) == -1) {
                    for (++i; i < list.size(); ++i)
                        list[keep++] = list[i];
                    list.resize(keep);
                    return false;
                }
                assign(c[0]);
            }
            list.resize(keep);
        }
        return true;
    }

    int n_;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<std::size_t>> watches_;
    std::vector<int> value_;
    std::vector<int> trail_;
    std::vector<int> units_;
    std::vector<Decision> decisions_;
    std::size_t head_ = 0;
    bool trivially_unsat_ = false;
};

inline CnfResult solve_cnf(const Cnf& f, const Budget& budget = {})
{
    return DpllSolver(f).solve(budget);
}

/// Reads the coloring off a model using the variable map.
inline Coloring decode_coloring(const Cnf& f, const std::vector<bool>& model)
{
    std::vector<int> colors(f.vertices, 0);
    for (int id = 1; id <= static_cast<int>(f.vars.size()); ++id) {
        const CnfVar& v = f.vars[id - 1];
        if (v.kind == 'x' && model[id]) {
            if (colors[v.vertex] != 0)
                throw std::runtime_error("model assigns two colors to vertex " + std::to_string(v.vertex));
            colors[v.vertex] = v.color;
        }
    }
    return Coloring(std::move(colors), f.colors);
}

} // namespace pcfcolor
