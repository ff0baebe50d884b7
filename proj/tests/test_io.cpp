#include <pcfcolor/io.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace pcfcolor;

namespace {

template <typename F>
auto parse(const std::string& text, F reader)
{
    std::istringstream in(text);
    return reader(in);
}

Graph parse_graph(const std::string& text)
{
    return parse(text, [](std::istream& in) { return read_edge_list(in); });
}

} // namespace

TEST(EdgeList, RoundTrip)
{
    Graph g = cycle_graph(5);
    std::ostringstream out;
    write_edge_list(out, g);
    EXPECT_EQ(out.str(), "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    EXPECT_EQ(parse_graph(out.str()), g);
}

TEST(EdgeList, CommentsAndBlankLines)
{
    Graph g = parse_graph("# a path\n\n3 2\n0 1\n  # middle\n1 2\n");
    EXPECT_EQ(g, path_graph(3));
}

TEST(EdgeList, Errors)
{
    EXPECT_THROW(parse_graph(""), FormatError);
    EXPECT_THROW(parse_graph("3\n"), FormatError);
    EXPECT_THROW(parse_graph("3 2\n0 1\n"), FormatError);
    EXPECT_THROW(parse_graph("3 1\n0 x\n"), FormatError);
    EXPECT_THROW(parse_graph("3 1\n0 1 2\n"), FormatError);
    EXPECT_THROW(parse_graph("3 1\n0 3\n"), GraphError);
}

TEST(Rotation, RoundTripKeepsEmptyRows)
{
    Graph g = build_graph(4, {{0, 1}, {1, 2}, {0, 2}});
    PlaneGraph pg(g, {{1, 2}, {2, 0}, {0, 1}, {}});
    std::ostringstream out;
    write_rotation(out, pg);
    EXPECT_EQ(out.str(), "1 2\n2 0\n0 1\n\n");
    auto rot = parse(out.str(), [](std::istream& in) { return read_rotation(in, 4); });
    EXPECT_EQ(rot, pg.rotation());
}

TEST(Rotation, Errors)
{
    EXPECT_THROW(parse("1\n0\n", [](std::istream& in) { return read_rotation(in, 3); }), FormatError);
    EXPECT_THROW(parse("1 a\n0\n", [](std::istream& in) { return read_rotation(in, 2); }), FormatError);
}

TEST(ColoringFile, RoundTripAndErrors)
{
    Coloring c = Coloring::from_colors({2, 1, 3});
    std::ostringstream out;
    write_coloring(out, c);
    EXPECT_EQ(out.str(), "0 2\n1 1\n2 3\n");
    auto read = [](int n) { return [n](std::istream& in) { return read_coloring(in, n); }; };
    EXPECT_EQ(parse(out.str(), read(3)), c);

    Coloring partial = parse("0 1\n2 2\n", read(3));
    EXPECT_EQ(partial[1], 0);
    EXPECT_THROW(check_proper(path_graph(3), partial), ColoringError);

    EXPECT_THROW(parse("3 1\n", read(3)), FormatError);
    EXPECT_THROW(parse("0 0\n", read(3)), FormatError);
    EXPECT_THROW(parse("0 1\n0 2\n", read(3)), FormatError);
    EXPECT_THROW(parse("0\n", read(3)), FormatError);
}

TEST(Dot, ContainsRolesColorsAndEdges)
{
    RoleMap roles = {"orig:0", "pendant:0"};
    Coloring c = Coloring::from_colors({1, 2});
    std::ostringstream out;
    write_dot(out, complete_graph(2), &c, &roles);
    const std::string s = out.str();
    EXPECT_EQ(s.rfind("graph G {", 0), 0u);
    EXPECT_NE(s.find("pendant:0"), std::string::npos);
    EXPECT_NE(s.find("c=2"), std::string::npos);
    EXPECT_NE(s.find("0 -- 1;"), std::string::npos);
}

TEST(Json, CertificateAndSolveResult)
{
    auto report = check_pcf(path_graph(3), Coloring::from_colors({1, 2, 1}));
    auto j = to_json(report);
    EXPECT_EQ(j["variant"], "pcf");
    EXPECT_EQ(j["verdict"], false);
    EXPECT_EQ(j["violations"][0]["kind"], "no-unique-color");
    EXPECT_EQ(j["witnesses"].size(), 2u);

    auto r = decide_coloring(cycle_graph(4), 3, Variant::pcf);
    auto rj = to_json(r);
    EXPECT_EQ(rj["status"], "UNSAT");
    EXPECT_FALSE(rj.contains("elapsed_seconds"));
    EXPECT_TRUE(to_json(r, true).contains("elapsed_seconds"));
}

TEST(Json, RolesRoundTrip)
{
    RoleMap roles = {"orig:0", "orig:1", "apex:1"};
    auto j = roles_to_json(roles);
    EXPECT_EQ(j["n"], 3);
    EXPECT_EQ(roles_from_json(j), roles);
}
