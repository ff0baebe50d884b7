// pcfcolor: checkers, exact solvers, gadget constructions and verification
// suites for proper, proper conflict-free and odd colorings.
//
// Exit codes: 0 verified/SAT, 1 refuted/UNSAT, 2 timeout, 64 usage,
// 65 bad input data or violated precondition, 66 unreadable/unwritable file.

#include <pcfcolor/cnf.hpp>
#include <pcfcolor/harness.hpp>
#include <pcfcolor/io.hpp>
#include <pcfcolor/reductions.hpp>
#include <pcfcolor/solver.hpp>

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

using namespace pcfcolor;
namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_refuted = 1;
constexpr int exit_timeout = 2;
constexpr int exit_usage = 64;
constexpr int exit_data = 65;
constexpr int exit_io = 66;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    return out;
}

Graph load_graph(const std::string& path)
{
    auto in = open_in(path);
    return read_edge_list(in);
}

PlaneGraph load_plane(const std::string& graph_path, const std::string& rotation_path)
{
    Graph g = load_graph(graph_path);
    auto in = open_in(rotation_path);
    return PlaneGraph(g, read_rotation(in, g.order()));
}

Coloring load_coloring(const std::string& path, int n)
{
    auto in = open_in(path);
    return read_coloring(in, n);
}

std::string default_output(const std::string& input, const std::string& suffix)
{
    fs::path p(input);
    return (p.parent_path() / (p.stem().string() + "-" + suffix)).string();
}

std::string roles_path_for(const std::string& graph_path)
{
    fs::path p(graph_path);
    return (p.parent_path() / (p.stem().string() + ".roles.json")).string();
}

void save_graph(const std::string& path, const Graph& g, const RoleMap& roles, const std::string& roles_path)
{
    {
        auto out = open_out(path);
        write_edge_list(out, g);
    }
    auto out = open_out(roles_path);
    out << roles_to_json(roles).dump(2) << '\n';
}

int status_exit(Status s)
{
    switch (s) {
    case Status::sat: return exit_ok;
    case Status::unsat: return exit_refuted;
    case Status::timeout: return exit_timeout;
    }
    return exit_data;
}

struct Common {
    std::string graph;
    std::string rotation;
    std::string coloring;
    std::string variant = "pcf";
    int k = 0;
    std::uint64_t budget = 0;
    double time_limit = -1;
    bool early = false;
    bool json_out = false;
    std::string output;
    std::string roles;
};

Budget budget_from(const Common& o)
{
    Budget b = Budget::from_environment();
    if (o.budget > 0)
        b.max_nodes = o.budget;
    if (o.time_limit >= 0)
        b.time_limit_seconds = o.time_limit;
    return b;
}

int cmd_check(const Common& o)
{
    Graph g = load_graph(o.graph);
    Coloring c = load_coloring(o.coloring, g.order());
    auto report = check(g, c, parse_variant(o.variant));
    std::cout << to_json(report).dump(2) << '\n';
    return report.verdict ? exit_ok : exit_refuted;
}

int cmd_solve(const Common& o, const std::string& cnf_path, bool oracle)
{
    if (!cnf_path.empty()) {
        auto in = open_in(cnf_path);
        Cnf f = read_dimacs(in);
        auto r = solve_cnf(f, budget_from(o));
        std::cout << to_string(r.status) << '\n';
        if (r.status == Status::sat && !o.output.empty()) {
            auto out = open_out(o.output);
            write_coloring(out, decode_coloring(f, r.model));
        }
        return status_exit(r.status);
    }
    Graph g = load_graph(o.graph);
    Variant v = parse_variant(o.variant);
    SolveResult r = oracle ? brute_force_oracle(g, o.k, v)
                           : decide_coloring(g, o.k, v, SolveOptions{budget_from(o), o.early});
    if (o.json_out)
        std::cout << to_json(r, true).dump(2) << '\n';
    else
        std::cout << to_string(r.status) << '\n';
    if (r.witness && !o.output.empty()) {
        auto out = open_out(o.output);
        write_coloring(out, *r.witness);
    }
    return status_exit(r.status);
}

int cmd_chromatic(const Common& o)
{
    Graph g = load_graph(o.graph);
    auto r = chromatic_number(g, parse_variant(o.variant), SolveOptions{budget_from(o), o.early});
    if (o.json_out)
        std::cout << to_json(r).dump(2) << '\n';
    else if (r.status == Status::sat)
        std::cout << r.value << '\n';
    else
        std::cout << "TIMEOUT in [" << r.lower << "," << r.upper << "]\n";
    if (r.witness && !o.output.empty()) {
        auto out = open_out(o.output);
        write_coloring(out, *r.witness);
    }
    return r.status == Status::sat ? exit_ok : exit_timeout;
}

int cmd_build(const Common& o, const std::string& kind, int gn, int gm)
{
    GadgetOutput out;
    std::string source = o.graph;
    if (kind == "gnm") {
        out = build_gadget_Gnm(gn, gm);
        source = "G" + std::to_string(gn) + "_" + std::to_string(gm) + ".txt";
    } else if (kind == "tents") {
        if (o.rotation.empty())
            throw std::invalid_argument("build tents needs a rotation file (-r)");
        out = attach_tents(load_plane(o.graph, o.rotation));
    } else {
        if (o.graph.empty())
            throw std::invalid_argument("build " + kind + " needs a graph (-g)");
        Graph g = load_graph(o.graph);
        if (kind == "sub1")
            out = subdivide_k(g, 1);
        else if (kind == "subk")
            out = subdivide_k(g, o.k);
        else if (kind == "pendants")
            out = add_pendants_all(g);
        else if (kind == "apex")
            out = add_universal_vertex(g);
        else if (kind == "pendants-even")
            out = add_pendants_even_degree(g);
        else if (kind == "two-apex")
            out = add_two_universal(g);
        else if (kind == "bip-tilde")
            out = build_bipartite_tilde(g);
        else
            throw std::invalid_argument("unknown construction '" + kind + "'");
    }
    std::string path = o.output.empty() ? default_output(source, kind + ".txt") : o.output;
    std::string roles = o.roles.empty() ? roles_path_for(path) : o.roles;
    save_graph(path, out.graph, out.roles, roles);
    std::cout << path << ": " << out.graph.order() << " vertices, " << out.graph.size() << " edges\n"
              << roles << ": roles\n";
    return exit_ok;
}

int cmd_lift(const Common& o, const std::string& kind)
{
    GadgetOutput out;
    if (kind == "planar") {
        PlaneGraph pg = load_plane(o.graph, o.rotation);
        out = lift_planar(pg, load_coloring(o.coloring, pg.graph().order()));
    } else {
        Graph g = load_graph(o.graph);
        Coloring c = load_coloring(o.coloring, g.order());
        if (kind == "bip")
            out = lift_bipartite(g, c, parse_variant(o.variant));
        else if (kind == "greedy")
            out = greedy_extend_subdivision(g, c, o.k > 0 ? o.k : std::max(5, c.k));
        else
            throw std::invalid_argument("unknown lift '" + kind + "'");
    }
    std::string path = o.output.empty() ? default_output(o.graph, "lift-" + kind + ".txt") : o.output;
    std::string roles = o.roles.empty() ? roles_path_for(path) : o.roles;
    fs::path col = fs::path(path).replace_extension(".col");
    save_graph(path, out.graph, out.roles, roles);
    {
        auto f = open_out(col.string());
        write_coloring(f, *out.coloring);
    }
    std::cout << path << ": " << out.graph.order() << " vertices, " << out.graph.size() << " edges\n"
              << col.string() << ": " << out.coloring->k << "-coloring (checked)\n"
              << roles << ": roles\n";
    return exit_ok;
}

struct SuiteArgs {
    std::string name;
    std::uint64_t seed = 1;
    int max_n = 5;
    int samples = 200;
    std::string report;
    std::string artifacts;
    unsigned workers = 1;
    std::uint64_t cnf_budget = 0;
};

int cmd_suite(const Common& o, const SuiteArgs& s)
{
    HarnessConfig cfg;
    cfg.seed = s.seed;
    if (o.budget > 0)
        cfg.budget = Budget::nodes_only(o.budget);
    if (s.cnf_budget > 0)
        cfg.cnf_budget = Budget::nodes_only(s.cnf_budget);
    cfg.artifact_dir = s.artifacts;
    cfg.workers = std::max(1u, s.workers);

    SuiteReport report;
    if (s.name == "characterization")
        report = run_characterization_suite(s.max_n, cfg);
    else if (s.name == "lemmas")
        report = run_lemma_suite(LemmaSuiteOptions{s.max_n, s.samples}, cfg);
    else if (s.name == "reductions")
        report = run_reduction_suite(default_reduction_instances(), cfg);
    else
        throw std::invalid_argument("unknown suite '" + s.name + "'");

    auto j = report.to_json();
    if (s.report.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        auto out = open_out(s.report);
        out << j.dump(2) << '\n';
    }
    std::cerr << report.suite << ": " << report.cases.size() << " cases, " << report.count(Verdict::verified)
              << " verified, " << report.count(Verdict::refuted) << " refuted, "
              << report.count(Verdict::timeout) << " timeout\n";
    if (report.count(Verdict::refuted) > 0)
        return exit_refuted;
    return report.count(Verdict::timeout) > 0 ? exit_timeout : exit_ok;
}

int cmd_encode(const Common& o)
{
    Graph g = load_graph(o.graph);
    Cnf f = encode_cnf(g, o.k, parse_variant(o.variant));
    if (o.output.empty()) {
        write_dimacs(std::cout, f);
    } else {
        auto out = open_out(o.output);
        write_dimacs(out, f);
        std::cout << o.output << ": " << f.num_vars << " variables, " << f.clauses.size() << " clauses\n";
    }
    return exit_ok;
}

int cmd_dot(const Common& o)
{
    Graph g = load_graph(o.graph);
    std::optional<Coloring> c;
    if (!o.coloring.empty())
        c = load_coloring(o.coloring, g.order());
    std::optional<RoleMap> roles;
    if (!o.roles.empty()) {
        auto in = open_in(o.roles);
        roles = roles_from_json(nlohmann::json::parse(in));
    }
    if (o.output.empty()) {
        write_dot(std::cout, g, c ? &*c : nullptr, roles ? &*roles : nullptr);
    } else {
        auto out = open_out(o.output);
        write_dot(out, g, c ? &*c : nullptr, roles ? &*roles : nullptr);
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Proper, proper conflict-free and odd colorings: checkers, solvers, gadgets"};
    app.require_subcommand(1);
    Common o;
    const std::vector<std::string> variants{"proper", "pcf", "odd"};

    auto add_graph = [&](CLI::App* c, bool required = true) {
        auto opt = c->add_option("-g,--graph", o.graph, "edge-list file");
        if (required)
            opt->required();
    };
    auto add_variant = [&](CLI::App* c) {
        c->add_option("--variant", o.variant, "proper | pcf | odd")->check(CLI::IsMember(variants));
    };
    auto add_budget = [&](CLI::App* c) {
        c->add_option("--budget", o.budget, "node budget (default: PCFCOLOR_NODE_BUDGET or 1e7)");
        c->add_option("--time-limit", o.time_limit, "seconds, 0 disables (default: PCFCOLOR_TIME_LIMIT or 60)");
        c->add_flag("--early", o.early, "prune as soon as open neighborhoods are colored");
    };

    auto* check_cmd = app.add_subcommand("check", "check a coloring and print its certificate");
    add_variant(check_cmd);
    add_graph(check_cmd);
    check_cmd->add_option("-c,--coloring", o.coloring, "coloring file")->required();

    std::string cnf_in;
    bool oracle = false;
    auto* solve_cmd = app.add_subcommand("solve", "decide whether a k-coloring exists");
    add_variant(solve_cmd);
    add_graph(solve_cmd, false);
    solve_cmd->add_option("-k", o.k, "palette size");
    solve_cmd->add_option("--cnf", cnf_in, "solve a DIMACS file written by encode-cnf instead");
    solve_cmd->add_flag("--oracle", oracle, "use exhaustive enumeration");
    solve_cmd->add_flag("--json", o.json_out, "print the full result as JSON");
    solve_cmd->add_option("-o,--output", o.output, "write the witness coloring here");
    add_budget(solve_cmd);

    auto* chrom_cmd = app.add_subcommand("chromatic", "smallest palette for a variant");
    add_variant(chrom_cmd);
    add_graph(chrom_cmd);
    chrom_cmd->add_flag("--json", o.json_out, "print the full result as JSON");
    chrom_cmd->add_option("-o,--output", o.output, "write the witness coloring here");
    add_budget(chrom_cmd);

    std::string build_kind;
    int gn = 1, gm = 1;
    auto* build_cmd = app.add_subcommand("build", "construct a gadget graph and its role map");
    build_cmd
        ->add_option("kind", build_kind, "sub1 | subk | pendants | apex | pendants-even | two-apex | gnm | bip-tilde | tents")
        ->required();
    add_graph(build_cmd, false);
    build_cmd->add_option("-r,--rotation", o.rotation, "rotation file (tents)");
    build_cmd->add_option("-k", o.k, "subdivision parameter (subk)");
    build_cmd->add_option("--n", gn, "G_{n,m}: n");
    build_cmd->add_option("--m", gm, "G_{n,m}: m");
    build_cmd->add_option("-o,--output", o.output, "graph file to write");
    build_cmd->add_option("--roles", o.roles, "role map JSON to write");

    std::string lift_kind;
    auto* lift_cmd = app.add_subcommand("lift", "extend a coloring onto a gadget (checked before writing)");
    lift_cmd->add_option("kind", lift_kind, "bip | planar | greedy")->required();
    add_variant(lift_cmd);
    add_graph(lift_cmd);
    lift_cmd->add_option("-r,--rotation", o.rotation, "rotation file (planar)");
    lift_cmd->add_option("-c,--coloring", o.coloring, "source coloring")->required();
    lift_cmd->add_option("-k", o.k, "palette for greedy (default max(5, colors))");
    lift_cmd->add_option("-o,--output", o.output, "graph file to write; coloring goes next to it as .col");
    lift_cmd->add_option("--roles", o.roles, "role map JSON to write");

    SuiteArgs suite;
    auto* suite_cmd = app.add_subcommand("suite", "run a verification suite and emit a JSON report");
    suite_cmd->add_option("name", suite.name, "characterization | lemmas | reductions")->required();
    suite_cmd->add_option("--seed", suite.seed, "random seed");
    suite_cmd->add_option("--max-n", suite.max_n, "exhaustive sweep size");
    suite_cmd->add_option("--samples", suite.samples, "random samples (lemmas)");
    suite_cmd->add_option("--report", suite.report, "write the report here instead of stdout");
    suite_cmd->add_option("--artifacts", suite.artifacts, "directory for witness colorings and CNF files");
    suite_cmd->add_option("--workers", suite.workers, "worker threads");
    suite_cmd->add_option("--budget", o.budget, "search node budget per decision");
    suite_cmd->add_option("--cnf-budget", suite.cnf_budget, "DPLL decision budget per CNF");

    auto* cnf_cmd = app.add_subcommand("encode-cnf", "write the DIMACS encoding of a coloring question");
    add_variant(cnf_cmd);
    add_graph(cnf_cmd);
    cnf_cmd->add_option("-k", o.k, "palette size")->required();
    cnf_cmd->add_option("-o,--output", o.output, "DIMACS file (default stdout)");

    auto* dot_cmd = app.add_subcommand("export-dot", "write Graphviz DOT");
    add_graph(dot_cmd);
    dot_cmd->add_option("-c,--coloring", o.coloring, "color the nodes");
    dot_cmd->add_option("--roles", o.roles, "label nodes from a role map");
    dot_cmd->add_option("-o,--output", o.output, "DOT file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*check_cmd)
            return cmd_check(o);
        if (*solve_cmd) {
            if (cnf_in.empty() && (o.graph.empty() || o.k < 1))
                throw CLI::ValidationError("solve needs -g and -k >= 1 (or --cnf)");
            return cmd_solve(o, cnf_in, oracle);
        }
        if (*chrom_cmd)
            return cmd_chromatic(o);
        if (*build_cmd)
            return cmd_build(o, build_kind, gn, gm);
        if (*lift_cmd)
            return cmd_lift(o, lift_kind);
        if (*suite_cmd)
            return cmd_suite(o, suite);
        if (*cnf_cmd)
            return cmd_encode(o);
        if (*dot_cmd)
            return cmd_dot(o);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    }
    return exit_usage;
}
