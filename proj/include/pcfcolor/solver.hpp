#pragma once

#include "coloring.hpp"
#include "graph.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcfcolor {

enum class Status { sat, unsat, timeout };

inline std::string to_string(Status s)
{
    switch (s) {
    case Status::sat: return "SAT";
    case Status::unsat: return "UNSAT";
    case Status::timeout: return "TIMEOUT";
    }
    return "?";
}

/// Limits for one decision. A zero time limit disables the clock, which keeps
/// node-bounded runs reproducible.
struct Budget {
    std::uint64_t max_nodes = 10'000'000;
    double time_limit_seconds = 60.0;

    static Budget nodes_only(std::uint64_t nodes) { return {nodes, 0.0}; }

    /// Defaults overridden by PCFCOLOR_NODE_BUDGET / PCFCOLOR_TIME_LIMIT.
    static Budget from_environment()
    {
        Budget b;
        if (const char* s = std::getenv("PCFCOLOR_NODE_BUDGET"))
            b.max_nodes = std::stoull(s);
        if (const char* s = std::getenv("PCFCOLOR_TIME_LIMIT"))
            b.time_limit_seconds = std::stod(s);
        return b;
    }
};

struct SolveStats {
    std::uint64_t nodes = 0;
    double elapsed_seconds = 0.0;
};

struct SolveResult {
    Status status = Status::timeout;
    std::optional<Coloring> witness;
    SolveStats stats;
    Budget budget;
};

struct SolveOptions {
    Budget budget;
    /// Also test a vertex as soon as its open neighborhood is colored, and
    /// reject pcf states where every palette color already occurs twice around
    /// a vertex. Off by default: the baseline only tests closed neighborhoods.
    bool early_pruning = false;
};

/// Search order: descending degree, ties by ascending id.
inline std::vector<Vertex> branching_order(const Graph& g)
{
    std::vector<Vertex> order(g.order());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    return order;
}

namespace detail {

class Backtracker {
public:
    using Visitor = std::function<bool(const Coloring&)>;

    Backtracker(const Graph& g, int k, Variant variant, const SolveOptions& opts)
        : g_(g), k_(k), variant_(variant), opts_(opts), order_(branching_order(g)),
          color_(g.order(), 0), count_(k + 1, 0), check_at_(g.order())
    {
        const int n = g.order();
        std::vector<int> pos(n);
        for (int p = 0; p < n; ++p)
            pos[order_[p]] = p;
        if (variant_ != Variant::proper) {
            for (Vertex v = 0; v < n; ++v) {
                int last = opts_.early_pruning ? -1 : pos[v];
                for (Vertex w : g.neighbors(v))
                    last = std::max(last, pos[w]);
                if (last >= 0)
                    check_at_[last].push_back(v);
            }
        }
    }

    /// Runs the search; the visitor sees each solution and returns whether to
    /// keep going. Returns false if the budget ran out.
    bool run(const Visitor& visit)
    {
        start_ = std::chrono::steady_clock::now();
        visit_ = &visit;
        exhausted_ = false;
        stopped_ = false;
        if (k_ >= 1 || g_.order() == 0)
            descend(0, 0);
        return !exhausted_;
    }

    std::uint64_t nodes() const { return nodes_; }

    double elapsed() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    bool satisfied(Vertex v)
    {
        const auto& nbrs = g_.neighbors(v);
        if (nbrs.empty())
            return true;
        for (Vertex w : nbrs)
            ++count_[color_[w]];
        bool ok = false;
        for (Vertex w : nbrs) {
            int c = count_[color_[w]];
            if (variant_ == Variant::pcf ? c == 1 : c % 2 == 1) {
                ok = true;
                break;
            }
        }
        for (Vertex w : nbrs)
            count_[color_[w]] = 0;
        return ok;
    }

    // Every palette color already seen twice or more around v: nothing can
    // become unique any more.
    bool pcf_saturated(Vertex v)
    {
        const auto& nbrs = g_.neighbors(v);
        if (static_cast<int>(nbrs.size()) < 2 * k_)
            return false;
        for (Vertex w : nbrs)
            ++count_[color_[w]];
        bool saturated = true;
        for (int c = 1; c <= k_; ++c)
            if (count_[c] < 2) {
                saturated = false;
                break;
            }
        for (Vertex w : nbrs)
            count_[color_[w]] = 0;
        return saturated;
    }

    bool out_of_budget()
    {
        if (nodes_ > opts_.budget.max_nodes)
            return true;
        if (opts_.budget.time_limit_seconds > 0 && (nodes_ & 0xFFF) == 0 &&
            elapsed() > opts_.budget.time_limit_seconds)
            return true;
        return false;
    }

    void descend(int p, int max_used)
    {
        if (stopped_ || exhausted_)
            return;
        if (p == g_.order()) {
            Coloring c(color_, k_);
            if (!(*visit_)(c))
                stopped_ = true;
            return;
        }
        Vertex v = order_[p];
        const int limit = std::min(k_, max_used + 1);
        for (int col = 1; col <= limit; ++col) {
            ++nodes_;
            if (out_of_budget()) {
                exhausted_ = true;
                return;
            }
            bool clash = false;
            for (Vertex w : g_.neighbors(v))
                if (color_[w] == col) {
                    clash = true;
                    break;
                }
            if (clash)
                continue;
            color_[v] = col;
            bool ok = true;
            for (Vertex u : check_at_[p])
                if (!satisfied(u)) {
                    ok = false;
                    break;
                }
            if (ok && opts_.early_pruning && variant_ == Variant::pcf)
                for (Vertex u : g_.neighbors(v))
                    if (pcf_saturated(u)) {
                        ok = false;
                        break;
                    }
            if (ok)
                descend(p + 1, std::max(max_used, col));
            color_[v] = 0;
            if (stopped_ || exhausted_)
                return;
        }
    }

    const Graph& g_;
    int k_;
    Variant variant_;
    SolveOptions opts_;
    std::vector<Vertex> order_;
    std::vector<int> color_;
    std::vector<int> count_;
    std::vector<std::vector<Vertex>> check_at_;
    std::uint64_t nodes_ = 0;
    std::chrono::steady_clock::time_point start_;
    const Visitor* visit_ = nullptr;
    bool exhausted_ = false;
    bool stopped_ = false;
};

inline void verify_witness(const Graph& g, const Coloring& c, Variant v)
{
    auto report = check(g, c, v);
    if (!report.verdict)
        throw std::logic_error("solver produced a coloring that fails the " + to_string(v) + " checker");
}

} // namespace detail

/// Exact decision: SAT with a checked witness, UNSAT after exhausting the
/// search, or TIMEOUT when the budget runs out first.
inline SolveResult decide_coloring(const Graph& g, int k, Variant variant, const SolveOptions& opts = {})
{
    if (k < 1)
        throw std::invalid_argument("palette size must be at least 1");
    detail::Backtracker search(g, k, variant, opts);
    SolveResult result;
    result.budget = opts.budget;
    bool complete = search.run([&](const Coloring& c) {
        result.witness = c;
        return false;
    });
    result.stats = {search.nodes(), search.elapsed()};
    if (result.witness) {
        detail::verify_witness(g, *result.witness, variant);
        result.status = Status::sat;
    } else {
        result.status = complete ? Status::unsat : Status::timeout;
    }
    return result;
}

/// Visits up to `limit` solutions (one per color-permutation class, given the
/// symmetry breaking). Returns the status of the enumeration: SAT if any
/// solution was seen, UNSAT if none exist, TIMEOUT if the budget ran out
/// before either.
inline Status enumerate_colorings(const Graph& g, int k, Variant variant, std::size_t limit,
                                  const std::function<void(const Coloring&)>& on_solution,
                                  const SolveOptions& opts = {})
{
    if (k < 1)
        throw std::invalid_argument("palette size must be at least 1");
    detail::Backtracker search(g, k, variant, opts);
    std::size_t seen = 0;
    bool complete = search.run([&](const Coloring& c) {
        detail::verify_witness(g, c, variant);
        on_solution(c);
        return ++seen < limit;
    });
    if (seen > 0)
        return Status::sat;
    return complete ? Status::unsat : Status::timeout;
}

struct ChromaticResult {
    Status status = Status::timeout;  // sat: value is exact; timeout: [lower, upper] bracket
    int value = 0;
    int lower = 0;
    int upper = 0;
    std::optional<Coloring> witness;
    std::uint64_t nodes = 0;
};

/// Smallest k admitting a coloring of the variant, by ascending search from 1
/// (or 2 when an edge exists). Every variant is finite: n distinct colors always work.
inline ChromaticResult chromatic_number(const Graph& g, Variant variant, const SolveOptions& opts = {})
{
    ChromaticResult r;
    const int n = g.order();
    r.upper = n;
    if (n == 0) {
        r.status = Status::sat;
        r.witness = Coloring{};
        return r;
    }
    int k = g.size() > 0 ? 2 : 1;
    r.lower = k;
    for (; k <= n; ++k) {
        SolveResult s = decide_coloring(g, k, variant, opts);
        r.nodes += s.stats.nodes;
        if (s.status == Status::sat) {
            r.status = Status::sat;
            r.value = r.lower = r.upper = k;
            r.witness = s.witness;
            return r;
        }
        if (s.status == Status::timeout) {
            r.status = Status::timeout;
            r.lower = k;
            return r;
        }
        r.lower = k + 1;
    }
    throw std::logic_error("no coloring found with n colors");
}

class OracleRefusal : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exhaustive enumeration of all k^n colorings in lexicographic order (vertex
/// 0 most significant). Shares no code with the backtracking search or with
/// the checkers: the predicates are evaluated inline.
inline SolveResult brute_force_oracle(const Graph& g, int k, Variant variant, double cap = 1e8)
{
    if (k < 1)
        throw std::invalid_argument("palette size must be at least 1");
    const int n = g.order();
    if (n * std::log(static_cast<double>(k)) > std::log(cap) + 1e-9)
        throw OracleRefusal(std::to_string(k) + "^" + std::to_string(n) + " colorings exceed the oracle cap");

    auto start = std::chrono::steady_clock::now();
    SolveResult result;
    result.budget = {static_cast<std::uint64_t>(cap), 0.0};

    std::vector<int> c(n, 1);
    std::vector<int> tally(k + 1);
    auto accepts = [&]() {
        for (const Edge& e : g.edges())
            if (c[e.u] == c[e.v])
                return false;
        if (variant == Variant::proper)
            return true;
        for (Vertex v = 0; v < n; ++v) {
            const auto& nbrs = g.neighbors(v);
            if (nbrs.empty())
                continue;
            std::fill(tally.begin(), tally.end(), 0);
            for (Vertex w : nbrs)
                ++tally[c[w]];
            bool found = false;
            for (int col = 1; col <= k; ++col)
                if (variant == Variant::pcf ? tally[col] == 1 : tally[col] % 2 == 1)
                    found = true;
            if (!found)
                return false;
        }
        return true;
    };

    while (true) {
        ++result.stats.nodes;
        if (accepts()) {
            result.status = Status::sat;
            result.witness = Coloring(c, k);
            break;
        }
        int i = n - 1;
        while (i >= 0 && c[i] == k)
            c[i--] = 1;
        if (i < 0) {
            result.status = Status::unsat;
            break;
        }
        ++c[i];
    }
    result.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace pcfcolor
