#include "generators.hpp"
#include "oracles.hpp"
#include "tropjac/errors.hpp"
#include "tropjac/metric_graph.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tropjac;

namespace {

Point mid(const MetricGraph& g, const std::string& e) { return Point::on_edge(e, g.edge(e).length / 2); }

}  // namespace

TEST(Validate, AcceptsK4) { EXPECT_TRUE(validate(testgraphs::k4()).empty()); }

TEST(Validate, ReportsZeroLength) {
  MetricGraph g({{"a", 0}, {"b", 0}}, {{"e", "a", "b", 0}});
  EXPECT_EQ(validate(g).size(), 1u);
}

TEST(Validate, ReportsDisconnectedTriangles) {
  std::vector<Edge> es{{"a1", "a", "b", 1}, {"a2", "b", "c", 1}, {"a3", "c", "a", 1},
                       {"b1", "x", "y", 1}, {"b2", "y", "z", 1}, {"b3", "z", "x", 1}};
  MetricGraph g({{"a", 0}, {"b", 0}, {"c", 0}, {"x", 0}, {"y", 0}, {"z", 0}}, es);
  auto issues = validate(g);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_NE(issues[0].find("disconnected"), std::string::npos);
}

TEST(Validate, ReportsDuplicatesAndNegativeGenus) {
  MetricGraph g({{"a", 0}, {"a", -1}}, {{"e", "a", "a", 1}, {"e", "a", "a", 2}});
  EXPECT_GE(validate(g).size(), 3u);
}

TEST(Validate, UnknownEndpointIsInvalidInput) {
  EXPECT_THROW(MetricGraph({{"a", 0}}, {{"e", "a", "b", 1}}), InvalidInput);
}

TEST(Canonical, K4) {
  auto gk = genus_and_canonical(testgraphs::k4());
  EXPECT_EQ(gk.genus, 3);
  Divisor k{{Point::vertex("A"), 1}, {Point::vertex("B"), 1}, {Point::vertex("C"), 1}, {Point::vertex("D"), 1}};
  EXPECT_EQ(gk.canonical, k);
}

TEST(Canonical, LoopAndAugmentedVertex) {
  auto loop = genus_and_canonical(testgraphs::loop());
  EXPECT_EQ(loop.genus, 1);
  EXPECT_TRUE(loop.canonical.is_zero());
  auto aug = genus_and_canonical(MetricGraph({{"v", 1}}, {{"e", "v", "v", 1}}));
  EXPECT_EQ(aug.genus, 2);
  EXPECT_EQ(aug.canonical.coefficient(Point::vertex("v")), 2);
}

TEST(Canonical, DegreeIsTwoGenusMinusTwo) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    MetricGraph g = testgraphs::random_small_graph(rng);
    auto gk = genus_and_canonical(g);
    EXPECT_EQ(gk.genus, oracle::betti(g));
    EXPECT_EQ(gk.canonical.degree(), 2 * gk.genus - 2);
  }
}

TEST(CycleSpace, K4HasFourTrianglesAndThreeSquares) {
  auto space = cycle_space(testgraphs::k4());
  ASSERT_EQ(space.even_subgraphs.size(), 8u);
  EXPECT_TRUE(space.even_subgraphs[0].empty());
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(space.even_subgraphs[i].edges.size(), 3u);
  for (int i = 5; i <= 7; ++i) EXPECT_EQ(space.even_subgraphs[i].edges.size(), 4u);
}

TEST(CycleSpace, TreeAndDumbbell) {
  EXPECT_EQ(cycle_space(testgraphs::path(4)).even_subgraphs.size(), 1u);
  auto d = cycle_space(testgraphs::dumbbell()).even_subgraphs;
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d[1].edges, (std::set<std::string>{"a"}));
  EXPECT_EQ(d[2].edges, (std::set<std::string>{"b"}));
  EXPECT_EQ(d[3].edges, (std::set<std::string>{"a", "b"}));
}

TEST(CycleSpace, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    MetricGraph g = testgraphs::random_small_graph(rng);
    auto space = cycle_space(g);
    std::set<std::set<std::string>> ours;
    for (const auto& c : space.even_subgraphs) {
      ours.insert(c.edges);
      EXPECT_TRUE(is_even(g, c));
      for (const auto& d : space.even_subgraphs) EXPECT_TRUE(is_even(g, symmetric_difference(c, d)));
    }
    EXPECT_EQ(space.even_subgraphs.size(), std::size_t{1} << g.genus());
    EXPECT_EQ(ours, oracle::even_subgraphs(g));
    for (const auto& b : space.basis) EXPECT_TRUE(is_closed(g, b));
  }
}

TEST(Refine, MidpointSplitsEdge) {
  MetricGraph g = testgraphs::k4();
  Refinement r = refine(g, {mid(g, "AB")});
  EXPECT_EQ(r.graph().vertices().size(), 5u);
  EXPECT_EQ(r.graph().edges().size(), 7u);
  for (const auto& e : r.graph().edges())
    if (r.origin_edge(r.graph().edge_index(e.id)) == "AB") EXPECT_EQ(e.length, Rational(1, 2));
}

TEST(Refine, AtVertexIsIdentity) {
  MetricGraph g = testgraphs::k4();
  EXPECT_EQ(refine(g, {Point::vertex("A"), Point::on_edge("AB", 0)}).graph(), g);
}

TEST(Refine, K4AtThreeMidpoints) {
  MetricGraph g = testgraphs::k4();
  Refinement r = refine(g, {mid(g, "BC"), mid(g, "BD"), mid(g, "CD")});
  EXPECT_EQ(r.graph().vertices().size(), 7u);
  EXPECT_EQ(r.graph().edges().size(), 9u);
  EXPECT_EQ(r.graph().genus(), 3);
}

TEST(Refine, PreservesGenusLengthAndPoints) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 40; ++i) {
    MetricGraph g = testgraphs::random_small_graph(rng);
    std::vector<Point> pts;
    for (const auto& e : g.edges()) pts.push_back(Point::on_edge(e.id, e.length * Rational(1 + rng() % 3, 4)));
    Refinement r = refine(g, pts);
    EXPECT_EQ(r.graph().genus(), g.genus());
    EXPECT_EQ(r.graph().total_length(), g.total_length());
    for (const auto& p : pts) {
      Point q = r.to_refined(normalize(g, p));
      EXPECT_TRUE(q.is_vertex());
      EXPECT_EQ(r.to_original(q), normalize(g, p));
    }
  }
}

TEST(Refine, PointOffTheGraphThrows) {
  MetricGraph g = testgraphs::k4();
  EXPECT_THROW(refine(g, {Point::on_edge("AB", 2)}), InvalidInput);
  EXPECT_THROW(refine(g, {Point::vertex("Z")}), InvalidInput);
}

TEST(Distance, K4FromVertex) {
  MetricGraph g = testgraphs::k4();
  DistanceField f = distance_field(g, Point::vertex("A"));
  for (const char* v : {"B", "C", "D"}) EXPECT_EQ(f.at(Point::vertex(v)), 1);
  std::set<Point> ridges(f.ridges.begin(), f.ridges.end());
  EXPECT_EQ(ridges, (std::set<Point>{mid(g, "BC"), mid(g, "BD"), mid(g, "CD")}));
  EXPECT_EQ(f.at(mid(g, "BC")), Rational(3, 2));
}

TEST(Distance, WholeGraphCycleIsZero) {
  MetricGraph g = testgraphs::theta_graph();
  DistanceField f = distance_field(g, CycleZ2{{"p", "q"}});
  CycleZ2 all{{"p", "q"}};
  MetricGraph loop = testgraphs::loop(3);
  DistanceField z = distance_field(loop, CycleZ2{{"e"}});
  for (const auto& v : z.value) EXPECT_EQ(v, 0);
  EXPECT_TRUE(z.ridges.empty());
  EXPECT_EQ(f.at(Point::on_edge("r", 1)), 1);
  EXPECT_EQ(f.ridges.size(), 1u);
  EXPECT_EQ(f.ridges[0], Point::on_edge("r", Rational(3, 2)));
}

TEST(Distance, K4FromTriangle) {
  MetricGraph g = testgraphs::k4();
  DistanceField f = distance_field(g, CycleZ2{{"BC", "BD", "CD"}});
  EXPECT_EQ(f.at(Point::vertex("A")), 1);
  EXPECT_TRUE(f.ridges.empty());
}

TEST(Distance, EmptyCycleIsAPreconditionError) {
  EXPECT_THROW(distance_field(testgraphs::k4(), CycleZ2{}), PreconditionError);
}

TEST(Distance, AgreesWithBreadthFirstSearchOnFineGrid) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 40; ++i) {
    MetricGraph g = testgraphs::random_small_graph(rng);
    const Edge& e = g.edges()[rng() % g.edges().size()];
    Point p = normalize(g, Point::on_edge(e.id, e.length * Rational(rng() % 4, 3)));
    Divisor marker{{p, 1}};
    oracle::Grid grid = oracle::make_grid(g, marker, 2);
    // Breadth-first distances in grid units.
    std::vector<std::vector<std::size_t>> adj(grid.points.size());
    for (auto [u, v] : grid.segments) adj[u].push_back(v), adj[v].push_back(u);
    std::vector<long> dist(grid.points.size(), -1);
    std::deque<std::size_t> q{grid.node(g, p)};
    dist[q.front()] = 0;
    while (!q.empty()) {
      auto x = q.front();
      q.pop_front();
      for (auto y : adj[x])
        if (dist[y] < 0) dist[y] = dist[x] + 1, q.push_back(y);
    }
    DistanceField f = distance_field(g, p);
    for (std::size_t k = 0; k < grid.points.size(); ++k)
      EXPECT_EQ(f.at(grid.points[k]) * Rational(grid.scale), dist[k]) << to_string(grid.points[k]);
  }
}

TEST(Virtualize, UnaugmentedIsUnchanged) {
  auto v = virtualize(testgraphs::k4());
  EXPECT_EQ(v.graph, testgraphs::k4());
  EXPECT_TRUE(v.loops.empty());
}

TEST(Virtualize, GenusTwoPoint) {
  auto v = virtualize(MetricGraph({{"x", 2}}, {}), Rational(1, 3));
  EXPECT_EQ(v.graph.edges().size(), 2u);
  EXPECT_EQ(v.graph.genus(), 2);
  EXPECT_FALSE(v.graph.is_augmented());
  for (const auto& e : v.graph.edges()) EXPECT_EQ(e.length, Rational(1, 3));
  for (const auto& l : v.loops) EXPECT_EQ(l.base, "x");
}

TEST(Virtualize, GenusIndependentOfEpsilon) {
  MetricGraph g({{"a", 1}, {"b", 3}}, {{"e", "a", "b", 1}});
  for (Rational eps : {Rational(1), Rational(1, 2), Rational(3)}) EXPECT_EQ(virtualize(g, eps).graph.genus(), 4);
  EXPECT_THROW(virtualize(g, 0), PreconditionError);
  EXPECT_THROW(virtualize(g, -1), PreconditionError);
}
