#pragma once

#include "cnf.hpp"
#include "coloring.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "reductions.hpp"
#include "solver.hpp"

#include "json.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace pcfcolor {

enum class Verdict { verified, refuted, timeout };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::refuted: return "refuted";
    case Verdict::timeout: return "timeout";
    }
    return "?";
}

struct CaseRecord {
    std::string id;
    std::string claim;
    std::string ref;  // claim family, serialized as "paper_ref"
    Verdict verdict = Verdict::verified;
    nlohmann::json details = nlohmann::json::object();
    std::vector<std::string> artifact_paths;
    int witnesses_audited = 0;
    int degree_two_violations = 0;
};

struct HarnessConfig {
    std::uint64_t seed = 1;
    /// Node-only budgets keep reports reproducible.
    Budget budget = Budget::nodes_only(10'000'000);
    Budget cnf_budget = Budget::nodes_only(500'000);
    std::string artifact_dir;  // empty: nothing written
    unsigned workers = 1;
    std::size_t reverse_samples = 8;
};

struct SuiteReport {
    std::string suite;
    HarnessConfig config;
    std::vector<CaseRecord> cases;

    int count(Verdict v) const
    {
        int c = 0;
        for (const auto& r : cases)
            c += r.verdict == v;
        return c;
    }

    int degree_two_violations() const
    {
        int c = 0;
        for (const auto& r : cases)
            c += r.degree_two_violations;
        return c;
    }

    int witnesses_audited() const
    {
        int c = 0;
        for (const auto& r : cases)
            c += r.witnesses_audited;
        return c;
    }

    nlohmann::json to_json() const
    {
        using nlohmann::json;
        json cases_json = json::array();
        for (const auto& r : cases)
            cases_json.push_back({{"id", r.id},
                                  {"claim", r.claim},
                                  {"paper_ref", r.ref},
                                  {"verdict", pcfcolor::to_string(r.verdict)},
                                  {"artifact_paths", r.artifact_paths},
                                  {"details", r.details}});
        return json{{"suite", suite},
                    {"seed", config.seed},
                    {"budgets", {{"search", pcfcolor::to_json(config.budget)},
                                 {"cnf", pcfcolor::to_json(config.cnf_budget)}}},
                    {"cases", cases_json},
                    {"summary",
                     {{"cases", cases.size()},
                      {"verified", count(Verdict::verified)},
                      {"refuted", count(Verdict::refuted)},
                      {"timeout", count(Verdict::timeout)},
                      {"witnesses_audited", witnesses_audited()},
                      {"degree_two_violations", degree_two_violations()}}}};
    }
};

namespace detail {

inline nlohmann::json graph_json(const Graph& g)
{
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : g.edges())
        edges.push_back({e.u, e.v});
    return {{"n", g.order()}, {"edges", edges}};
}

/// Every odd or pcf witness passes through here: records the degree-2 audit on
/// the case and downgrades it to refuted on a violation.
inline void audit(CaseRecord& rec, const Graph& g, const Coloring& c, const std::string& what)
{
    ++rec.witnesses_audited;
    auto bad = degree_two_violations(g, c);
    if (!bad.empty()) {
        rec.degree_two_violations += static_cast<int>(bad.size());
        rec.verdict = Verdict::refuted;
        rec.details["degree_two_counterexample"] = {{"where", what}, {"graph", graph_json(g)},
                                                    {"coloring", pcfcolor::to_json(c)}, {"vertices", bad}};
    }
}

inline void downgrade(CaseRecord& rec, Verdict v)
{
    if (v == Verdict::refuted || (v == Verdict::timeout && rec.verdict == Verdict::verified))
        rec.verdict = v;
}

using Job = std::function<CaseRecord()>;

/// Runs independent cases, optionally on a worker pool; results keep job order.
inline std::vector<CaseRecord> run_jobs(const std::vector<Job>& jobs, unsigned workers)
{
    std::vector<CaseRecord> out(jobs.size());
    if (workers <= 1 || jobs.size() <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            out[i] = jobs[i]();
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < jobs.size(); i = next++)
                out[i] = jobs[i]();
        });
    for (auto& th : pool)
        th.join();
    return out;
}

/// Random labeled graph, each edge present with probability 1/2. Uses raw
/// engine bits so the stream is identical across standard libraries.
inline Graph random_graph(std::mt19937_64& rng, int n)
{
    GraphBuilder b(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() >> 63)
                b.add_edge(i, j);
    return b.build();
}

inline int random_between(std::mt19937_64& rng, int lo, int hi)
{
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline std::string write_artifact(const HarnessConfig& cfg, const std::string& name,
                                  const std::function<void(std::ostream&)>& writer)
{
    if (cfg.artifact_dir.empty())
        return {};
    std::filesystem::create_directories(cfg.artifact_dir);
    write_file((std::filesystem::path(cfg.artifact_dir) / name).string(), writer);
    return name;
}

/// chromatic number with the witness audited; nullopt on timeout.
inline std::optional<int> chi(CaseRecord& rec, const Graph& g, Variant v, const SolveOptions& opts,
                              const std::string& label)
{
    auto r = chromatic_number(g, v, opts);
    if (r.status != Status::sat) {
        rec.details[label] = {{"status", "TIMEOUT"}, {"lower", r.lower}, {"upper", r.upper}};
        downgrade(rec, Verdict::timeout);
        return std::nullopt;
    }
    rec.details[label] = r.value;
    if (v != Variant::proper && r.witness)
        audit(rec, g, *r.witness, label);
    return r.value;
}

} // namespace detail

/// Small-palette characterizations on every labeled graph with 1..max_n
/// vertices: a pcf 2-coloring exists iff the maximum degree is at most 1, and
/// an odd 2-coloring exists iff the graph is bipartite with every degree odd
/// or zero.
inline SuiteReport run_characterization_suite(int max_n, const HarnessConfig& cfg = {})
{
    if (max_n > 6)
        throw std::invalid_argument("exhaustive sweep is limited to 6 vertices");
    std::vector<detail::Job> jobs;
    for (int n = 1; n <= max_n; ++n) {
        const unsigned long long graphs = 1ULL << (n * (n - 1) / 2);
        for (unsigned long long mask = 0; mask < graphs; ++mask)
            for (Variant v : {Variant::pcf, Variant::odd})
                jobs.push_back([n, mask, v, &cfg] {
                    Graph g = graph_from_mask(n, mask);
                    CaseRecord rec;
                    rec.id = "n" + std::to_string(n) + "/g" + std::to_string(mask) + "/" + to_string(v);
                    SolveOptions opts{cfg.budget, false};
                    auto profile = degree_profile(g);
                    bool predicted;
                    if (v == Variant::pcf) {
                        rec.claim = "pcf 2-colorable iff max degree <= 1";
                        rec.ref = "characterization:pcf-2";
                        predicted = profile.max_degree <= 1;
                    } else {
                        rec.claim = "odd 2-colorable iff bipartite with every degree odd or zero";
                        rec.ref = "characterization:odd-2";
                        predicted = is_bipartite(g);
                        for (int d : profile.degrees)
                            if (d != 0 && d % 2 == 0)
                                predicted = false;
                    }
                    auto r = decide_coloring(g, 2, v, opts);
                    rec.details["predicted"] = predicted;
                    rec.details["solver"] = to_string(r.status);
                    if (r.status == Status::timeout) {
                        rec.verdict = Verdict::timeout;
                        return rec;
                    }
                    if (r.witness)
                        detail::audit(rec, g, *r.witness, "decide");
                    if ((r.status == Status::sat) != predicted) {
                        rec.verdict = Verdict::refuted;
                        rec.details["graph"] = detail::graph_json(g);
                        if (r.witness)
                            rec.details["witness"] = to_json(*r.witness);
                    }
                    return rec;
                });
    }
    SuiteReport report{"characterization", cfg, detail::run_jobs(jobs, cfg.workers)};
    return report;
}

struct LemmaSuiteOptions {
    int max_n = 5;               // exhaustive range for the four gadget lemmas
    int samples = 200;           // random graphs for the subdivision sandwich
    int sandwich_min_n = 1;
    int sandwich_max_n = 6;
};

/// Gadget lemmas (pendants, apex, even-degree pendants, two apexes) on every
/// labeled graph up to max_n, then the subdivision sandwich
/// chi(G) <= chi_odd(sub1 G) <= chi_pcf(sub1 G) <= max(chi(G), 5) with the
/// greedy extension as the upper-bound witness on random graphs.
inline SuiteReport run_lemma_suite(const LemmaSuiteOptions& lo, const HarnessConfig& cfg = {})
{
    std::vector<detail::Job> jobs;
    const SolveOptions opts{cfg.budget, false};

    struct GadgetLemma {
        const char* name;
        const char* claim;
        GadgetOutput (*build)(const Graph&);
        Variant variant;
        int lo_offset;  // chi(G) + lo <= chi_variant(H) <= chi(G) + hi
        int hi_offset;
    };
    static const GadgetLemma lemmas[] = {
        {"pendants-all", "chi(G) <= chi_pcf(H) <= chi(G)+1", add_pendants_all, Variant::pcf, 0, 1},
        {"universal-apex", "chi(G)+1 <= chi_pcf(H) <= chi(G)+2", add_universal_vertex, Variant::pcf, 1, 2},
        {"pendants-even-degree", "chi(G) = chi_odd(H)", add_pendants_even_degree, Variant::odd, 0, 0},
        {"two-apexes", "chi(G)+2 = chi_pcf(H)", add_two_universal, Variant::pcf, 2, 2},
    };

    for (int n = 1; n <= lo.max_n; ++n) {
        const unsigned long long graphs = 1ULL << (n * (n - 1) / 2);
        for (unsigned long long mask = 0; mask < graphs; ++mask)
            for (const GadgetLemma& lemma : lemmas)
                jobs.push_back([n, mask, &lemma, opts] {
                    Graph g = graph_from_mask(n, mask);
                    CaseRecord rec;
                    rec.id = std::string(lemma.name) + "/n" + std::to_string(n) + "/g" + std::to_string(mask);
                    rec.claim = lemma.claim;
                    rec.ref = std::string("lemma:") + lemma.name;
                    auto base = detail::chi(rec, g, Variant::proper, opts, "chi_G");
                    Graph h = lemma.build(g).graph;
                    auto lifted = detail::chi(rec, h, lemma.variant, opts, "chi_H");
                    if (!base || !lifted)
                        return rec;
                    if (*lifted < *base + lemma.lo_offset || *lifted > *base + lemma.hi_offset) {
                        rec.verdict = Verdict::refuted;
                        rec.details["graph"] = detail::graph_json(g);
                    }
                    return rec;
                });
    }

    std::mt19937_64 rng(cfg.seed);
    for (int s = 0; s < lo.samples; ++s) {
        int n = detail::random_between(rng, lo.sandwich_min_n, lo.sandwich_max_n);
        Graph g = detail::random_graph(rng, n);
        jobs.push_back([s, g, opts] {
            CaseRecord rec;
            rec.id = "subdivision-sandwich/sample" + std::to_string(s);
            rec.claim = "chi(G) <= chi_odd(sub1 G) <= chi_pcf(sub1 G) <= max(chi(G),5); greedy witness valid";
            rec.ref = "lemma:subdivision-sandwich";
            rec.details["graph"] = detail::graph_json(g);
            auto proper = chromatic_number(g, Variant::proper, opts);
            if (proper.status != Status::sat) {
                rec.verdict = Verdict::timeout;
                return rec;
            }
            const int base = proper.value;
            rec.details["chi_G"] = base;
            Graph sub = subdivide_k(g, 1).graph;
            auto odd = detail::chi(rec, sub, Variant::odd, opts, "chi_odd_sub1");
            auto pcf = detail::chi(rec, sub, Variant::pcf, opts, "chi_pcf_sub1");
            const int top = std::max(base, 5);
            try {
                auto greedy = greedy_extend_subdivision(g, *proper.witness, top);
                detail::audit(rec, greedy.graph, *greedy.coloring, "greedy");
                rec.details["greedy_k"] = top;
            } catch (const std::exception& e) {
                rec.verdict = Verdict::refuted;
                rec.details["greedy_error"] = e.what();
            }
            bool ok = true;
            if (odd && base > *odd)
                ok = false;
            if (odd && pcf && *odd > *pcf)
                ok = false;
            if (pcf && *pcf > top)
                ok = false;
            if (!ok)
                rec.verdict = Verdict::refuted;
            return rec;
        });
    }
    return SuiteReport{"lemmas", cfg, detail::run_jobs(jobs, cfg.workers)};
}

struct ReductionInstance {
    std::string name;
    Graph graph;
    std::optional<PlaneGraph> plane;  // set: tent gadget; unset: bipartite gadget
};

/// Small sources for both gadgets, including ones with no pcf 3-coloring
/// (C4, K4) whose gadgets must have no pcf 4-coloring.
inline std::vector<ReductionInstance> default_reduction_instances()
{
    std::vector<ReductionInstance> out;
    out.push_back({"P4", path_graph(4), std::nullopt});
    out.push_back({"C6", cycle_graph(6), std::nullopt});
    out.push_back({"K1_3", star_graph(3), std::nullopt});
    out.push_back({"C4", cycle_graph(4), std::nullopt});
    auto ring = [](int n) {
        std::vector<std::vector<Vertex>> rot(n);
        for (int i = 0; i < n; ++i)
            rot[i] = {(i + 1) % n, (i + n - 1) % n};
        return PlaneGraph(cycle_graph(n), rot);
    };
    out.push_back({"C3-plane", cycle_graph(3), ring(3)});
    out.push_back({"C6-plane", cycle_graph(6), ring(6)});
    out.push_back({"C4-plane", cycle_graph(4), ring(4)});
    out.push_back({"K4-plane", complete_graph(4),
                   PlaneGraph(complete_graph(4), {{1, 2, 3}, {2, 0, 3}, {3, 0, 1}, {1, 0, 2}})});
    return out;
}

namespace detail {

struct GadgetJob {
    ReductionInstance inst;
    Variant variant;
};

inline CaseRecord run_reduction_case(const GadgetJob& job, const HarnessConfig& cfg)
{
    const Graph& g = job.inst.graph;
    const bool planar = job.inst.plane.has_value();
    const std::string base_id = job.inst.name + "/" + to_string(job.variant);
    CaseRecord rec;
    rec.id = base_id;
    rec.ref = planar ? "reduction:tents" : "reduction:bipartite";
    rec.claim = std::string("source has a ") + to_string(job.variant) + " 3-coloring iff the " +
                (planar ? "tent" : "bipartite") + " gadget has a " + to_string(job.variant) +
                " 4-coloring; gadget colorings restrict to source 3-colorings";
    SolveOptions src_opts{cfg.budget, false};
    SolveOptions big_opts{cfg.budget, true};

    auto source = decide_coloring(g, 3, job.variant, src_opts);
    rec.details["source_3"] = to_string(source.status);
    if (source.status == Status::timeout) {
        rec.verdict = Verdict::timeout;
        return rec;
    }
    const bool colorable = source.status == Status::sat;

    Graph gadget;
    std::string stem = job.inst.name + "-" + to_string(job.variant);
    if (colorable) {
        audit(rec, g, *source.witness, "source");
        try {
            Coloring lifted;
            if (planar) {
                auto out = lift_planar(*job.inst.plane, *source.witness);
                gadget = out.graph;
                lifted = *out.coloring;
            } else {
                auto out = lift_bipartite(g, *source.witness, job.variant);
                gadget = out.graph;
                lifted = *out.coloring;
            }
            audit(rec, gadget, lifted, "lift");
            rec.details["forward"] = "lift passes checker";
            auto path = write_artifact(cfg, stem + "-lift.col", [&](std::ostream& o) { write_coloring(o, lifted); });
            if (!path.empty())
                rec.artifact_paths.push_back(path);
        } catch (const std::exception& e) {
            rec.verdict = Verdict::refuted;
            rec.details["forward"] = std::string("lift failed: ") + e.what();
            return rec;
        }
    } else {
        gadget = planar ? attach_tents(*job.inst.plane).graph : build_bipartite_tilde(g).graph;
    }
    rec.details["gadget_vertices"] = gadget.order();
    rec.details["gadget_edges"] = gadget.size();

    // Reverse direction: every gadget 4-coloring we can find must restrict to a
    // source coloring with at most three colors.
    std::vector<Coloring> found;
    Status search = enumerate_colorings(gadget, 4, job.variant, cfg.reverse_samples,
                                        [&](const Coloring& c) { found.push_back(c); }, big_opts);
    Cnf cnf = encode_cnf(gadget, 4, job.variant);
    auto cnf_result = solve_cnf(cnf, cfg.cnf_budget);
    if (cnf_result.status == Status::sat)
        found.push_back(decode_coloring(cnf, cnf_result.model));
    rec.details["gadget_search"] = to_string(search);
    rec.details["gadget_cnf"] = to_string(cnf_result.status);
    if ((search == Status::sat) != (cnf_result.status == Status::sat) && search != Status::timeout &&
        cnf_result.status != Status::timeout) {
        rec.verdict = Verdict::refuted;
        rec.details["disagreement"] = "search and CNF disagree on the gadget";
    }

    int restricted_ok = 0;
    for (const Coloring& c : found) {
        if (!check(gadget, c, job.variant).verdict) {
            rec.verdict = Verdict::refuted;
            continue;
        }
        audit(rec, gadget, c, "gadget");
        Coloring back = restrict_to_prefix(c, g.order());
        if (check(g, back, job.variant).verdict && back.distinct_colors() <= 3) {
            ++restricted_ok;
        } else {
            rec.verdict = Verdict::refuted;
            rec.details["restriction_counterexample"] = to_json(c);
        }
    }
    rec.details["gadget_colorings_checked"] = found.size();
    rec.details["restrictions_valid"] = restricted_ok;

    const bool gadget_unsat = search == Status::unsat || cnf_result.status == Status::unsat;
    const bool gadget_sat = !found.empty();
    if (colorable && gadget_unsat)
        rec.verdict = Verdict::refuted;
    if (!colorable) {
        auto path = write_artifact(cfg, stem + "-gadget-k4.cnf", [&](std::ostream& o) { write_dimacs(o, cnf); });
        if (!path.empty())
            rec.artifact_paths.push_back(path);
        if (gadget_sat)
            rec.verdict = Verdict::refuted;
        else if (!gadget_unsat)
            downgrade(rec, Verdict::timeout);
    } else if (!gadget_sat) {
        downgrade(rec, Verdict::timeout);
    }
    return rec;
}

} // namespace detail

inline SuiteReport run_reduction_suite(const std::vector<ReductionInstance>& instances, const HarnessConfig& cfg = {})
{
    std::vector<detail::Job> jobs;
    for (const auto& inst : instances) {
        if (inst.plane) {
            jobs.push_back([inst, &cfg] { return detail::run_reduction_case({inst, Variant::pcf}, cfg); });
        } else {
            for (Variant v : {Variant::pcf, Variant::odd})
                jobs.push_back([inst, v, &cfg] { return detail::run_reduction_case({inst, v}, cfg); });
        }
    }
    return SuiteReport{"reductions", cfg, detail::run_jobs(jobs, cfg.workers)};
}

} // namespace pcfcolor
