#include "cube.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "tropjac/covers.hpp"
#include "tropjac/divisor.hpp"
#include "tropjac/errors.hpp"
#include "tropjac/theta.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tropjac;

namespace {

const CycleZ2 kTriangle{{"BC", "BD", "CD"}};
const CycleZ2 kSquare{{"AB", "BC", "CD", "AD"}};

std::set<std::pair<std::string, std::string>> edge_ends(const MetricGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& e : g.edges()) out.insert(std::minmax(e.tail, e.head));
  return out;
}

}  // namespace

TEST(FreeCovers, K4HasEightAndTheCube) {
  MetricGraph g = testgraphs::k4();
  auto covers = free_covers(g);
  ASSERT_EQ(covers.size(), 8u);
  for (const auto& c : covers) {
    auto r = verify_cover(c);
    EXPECT_TRUE(r.ok) << (r.issues.empty() ? "" : r.issues.front());
    EXPECT_TRUE(r.dilation.empty());
  }
  DoubleCover c = covers.back();
  std::set<std::pair<std::string, std::string>> cube{
      {"A", "B"}, {"A'", "B'"}, {"A", "C"}, {"A'", "C'"}, {"A", "D"}, {"A'", "D'"},
      {"B", "C'"}, {"B'", "C"}, {"B", "D'"}, {"B'", "D"}, {"C", "D'"}, {"C'", "D"}};
  EXPECT_EQ(edge_ends(c.source), cube);
  EXPECT_EQ(c.source.genus(), 5);
  EXPECT_EQ(c.involution.at("A"), "A'");
}

TEST(FreeCovers, TreeAndLoop) {
  auto tree = free_covers(testgraphs::path(3));
  ASSERT_EQ(tree.size(), 1u);
  EXPECT_EQ(tree[0].source.component_count(), 2u);
  auto loop = free_covers(testgraphs::loop());
  ASSERT_EQ(loop.size(), 2u);
  EXPECT_EQ(loop[0].source.component_count(), 2u);
  EXPECT_EQ(loop[1].source.component_count(), 1u);
  EXPECT_EQ(loop[1].source.genus(), 1);
  EXPECT_EQ(loop[1].source.total_length(), 2);
  for (const auto& c : loop) EXPECT_TRUE(verify_cover(c).ok);
}

TEST(FreeCovers, GenusAndMonodromyOnRandomGraphs) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 30; ++i) {
    MetricGraph g = testgraphs::random_small_graph(rng);
    auto covers = free_covers(g);
    EXPECT_EQ(covers.size(), std::size_t{1} << g.genus());
    std::set<std::vector<bool>> seen;
    for (std::size_t k = 0; k < covers.size(); ++k) {
      const auto& c = covers[k];
      EXPECT_TRUE(verify_cover(c).ok);
      seen.insert(monodromy(c));
      if (c.source.is_connected()) EXPECT_EQ(oracle::betti(c.source), 2 * g.genus() - 1);
      else EXPECT_EQ(k, 0u);
    }
    EXPECT_EQ(seen.size(), covers.size());
  }
}

TEST(FreeCovers, SpecCarriesTreeAndBits) {
  MetricGraph g = testgraphs::k4();
  FreeCoverSpec spec = free_cover_spec(g, {true, false, true});
  EXPECT_EQ(spec.tree_edges, (std::vector<std::string>{"AB", "AC", "AD"}));
  EXPECT_EQ(spec.non_tree_edges, (std::vector<std::string>{"BC", "BD", "CD"}));
  EXPECT_EQ(free_cover(g, spec), free_cover(g, spec.bits));
  EXPECT_THROW(free_cover(g, std::vector<bool>{true}), InvalidInput);
  EXPECT_THROW(free_covers(MetricGraph({{"v", 1}}, {})), PreconditionError);
}

TEST(DilatedCovers, K4TriangleAndSquareAreUnique) {
  MetricGraph g = testgraphs::k4();
  for (const auto& cyc : {kTriangle, kSquare}) {
    auto covers = covers_with_dilation(g, cyc);
    ASSERT_EQ(covers.size(), 1u);
    auto r = verify_cover(covers[0]);
    EXPECT_TRUE(r.ok) << (r.issues.empty() ? "" : r.issues.front());
    EXPECT_EQ(r.dilation, cyc);
    EXPECT_EQ(virtual_source(covers[0]).graph.genus(), 5);
    EXPECT_EQ(oracle::betti(virtual_source(covers[0]).graph), 5);
  }
  DoubleCover t = covers_with_dilation(g, kTriangle)[0];
  for (const char* v : {"B", "C", "D"}) EXPECT_EQ(t.source.vertex(v).genus, 0);
}

TEST(DilatedCovers, DumbbellHasTwo) {
  MetricGraph g = testgraphs::dumbbell();
  auto covers = covers_with_dilation(g, CycleZ2{{"a"}});
  ASSERT_EQ(covers.size(), 2u);
  EXPECT_NE(monodromy(covers[0]), monodromy(covers[1]));
  for (const auto& c : covers) EXPECT_TRUE(verify_cover(c).ok);
}

TEST(DilatedCovers, GenusOnDilatedVertices) {
  // Figure-eight: one vertex meeting both loops; dilating both gives genus 1 there.
  MetricGraph g({{"v", 0}}, {{"a", "v", "v", 1}, {"b", "v", "v", 2}});
  auto covers = covers_with_dilation(g, CycleZ2{{"a", "b"}});
  ASSERT_EQ(covers.size(), 1u);
  EXPECT_EQ(covers[0].source.vertex("v").genus, 1);
  EXPECT_TRUE(verify_cover(covers[0]).ok);
  EXPECT_EQ(virtual_source(covers[0]).graph.genus(), 3);
}

TEST(DilatedCovers, Errors) {
  MetricGraph g = testgraphs::k4();
  EXPECT_THROW(covers_with_dilation(g, CycleZ2{}), PreconditionError);
  EXPECT_THROW(covers_with_dilation(g, CycleZ2{{"AB", "BC"}}), PreconditionError);
}

TEST(DilatedCovers, CountIsTwoToTheComplementGenus) {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 30; ++i) {
    MetricGraph g = testgraphs::random_small_graph(rng);
    for (const auto& cyc : cycle_space(g).even_subgraphs) {
      if (cyc.empty()) continue;
      auto covers = covers_with_dilation(g, cyc);
      ComplementData data = complement_data(g, cyc);
      EXPECT_EQ(covers.size(), std::size_t{1} << data.genus);
      std::set<std::vector<bool>> seen;
      for (const auto& c : covers) {
        auto r = verify_cover(c);
        EXPECT_TRUE(r.ok) << (r.issues.empty() ? "" : r.issues.front());
        EXPECT_EQ(r.dilation, cyc);
        seen.insert(monodromy(c));
        // Unramified double covers of a genus g graph have genus 2g - 1.
        EXPECT_EQ(oracle::betti(virtual_source(c).graph), 2 * g.genus() - 1);
      }
      EXPECT_EQ(seen.size(), covers.size());
    }
  }
}

TEST(Verify, CorruptedCubeFails) {
  DoubleCover c = cube::cover();
  std::vector<Edge> es = c.source.edges();
  es[0].length /= 2;
  c.source = MetricGraph(c.source.vertices(), es);
  auto r = verify_cover(c);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.issues.front().find("length"), std::string::npos);
}

TEST(Verify, BadInvolutionAndGenusAreReported) {
  DoubleCover c = cube::cover();
  c.involution["A"] = "B'";
  EXPECT_FALSE(verify_cover(c).ok);
  DoubleCover t = covers_with_dilation(testgraphs::k4(), kTriangle)[0];
  std::vector<Vertex> vs = t.source.vertices();
  vs[1].genus = 1;
  t.source = MetricGraph(vs, t.source.edges());
  EXPECT_FALSE(verify_cover(t).ok);
}

TEST(Pullback, CubeTriangleAndSquareClasses) {
  DoubleCover c = cube::cover();
  MetricGraph g = testgraphs::k4();
  EXPECT_TRUE(pullback(c, {}).is_zero());
  EXPECT_EQ(pullback(c, two_torsion_divisor(g, kTriangle)), cube::pullback_triangle(c));
  Divisor sq = pullback(c, two_torsion_divisor(g, kSquare));
  EXPECT_TRUE(equivalent(c.source, sq, cube::pullback_square(c)));
  EXPECT_FALSE(is_principal(c.source, cube::pullback_triangle(c)).principal);
  EXPECT_FALSE(is_principal(c.source, cube::pullback_square(c)).principal);
}

TEST(Pullback, DilatedPointsGetMultiplicityTwo) {
  DoubleCover t = covers_with_dilation(testgraphs::k4(), kTriangle)[0];
  Divisor up = pullback(t, Divisor{{Point::vertex("B"), 1}, {Point::on_edge("BC", Rational(1, 2)), 1}});
  EXPECT_EQ(up.coefficient(Point::vertex("B")), 2);
  EXPECT_EQ(up.coefficient(Point::on_edge("BC", Rational(1, 4))), 2);
  EXPECT_EQ(up.degree(), 4);
}

TEST(Pushforward, InvertsPullbackUpToTwo) {
  std::mt19937_64 rng(71);
  std::vector<DoubleCover> covers = free_covers(testgraphs::k4());
  for (const auto& cyc : {kTriangle, kSquare})
    for (auto& c : covers_with_dilation(testgraphs::k4(), cyc)) covers.push_back(c);
  for (const auto& c : covers) {
    Divisor d = testgraphs::random_divisor(rng, c.target, 4, 4, 1);
    Divisor up = pullback(c, d);
    EXPECT_EQ(up.degree(), 2 * d.degree());
    EXPECT_EQ(pushforward(c, up), 2 * normalize(c.target, d));
  }
}

TEST(Pushforward, VirtualLoopPointsGoToTheBase) {
  MetricGraph g({{"v", 0}}, {{"a", "v", "v", 1}, {"b", "v", "v", 2}});
  DoubleCover c = covers_with_dilation(g, CycleZ2{{"a", "b"}})[0];
  Virtualization sharp = virtual_source(c);
  ASSERT_EQ(sharp.loops.size(), 1u);
  Divisor d{{Point::on_edge(sharp.loops[0].edge, Rational(1, 3)), 1}};
  EXPECT_EQ(pushforward(c, d), (Divisor{{Point::vertex("v"), 1}}));
}

TEST(Involution, SwapsSheetsAndReflectsLoops) {
  DoubleCover c = cube::cover();
  EXPECT_EQ(involution_divisor(c, Divisor{{Point::vertex("A"), 1}}), (Divisor{{Point::vertex("A'"), 1}}));
  MetricGraph g({{"v", 0}}, {{"a", "v", "v", 1}, {"b", "v", "v", 2}});
  DoubleCover f = covers_with_dilation(g, CycleZ2{{"a", "b"}})[0];
  for (Rational eps : {Rational(1), Rational(1, 2), Rational(3)}) {
    std::string loop = virtual_source(f, eps).loops[0].edge;
    Divisor d{{Point::on_edge(loop, eps / 3), 1}};
    EXPECT_EQ(involution_divisor(f, d, eps), (Divisor{{Point::on_edge(loop, 2 * eps / 3), 1}}));
  }
}

TEST(Involution, IsAnInvolutionCompatibleWithEquivalence) {
  std::mt19937_64 rng(73);
  for (const auto& g : testgraphs::cover_corpus(74, 4)) {
    std::vector<DoubleCover> covers = free_covers(g);
    for (const auto& cyc : cycle_space(g).even_subgraphs)
      if (!cyc.empty())
        for (auto& c : covers_with_dilation(g, cyc)) covers.push_back(c);
    for (const auto& c : covers) {
      MetricGraph sharp = virtual_source(c).graph;
      Divisor d = testgraphs::random_divisor(rng, sharp, 2, 4, 0);
      Divisor id = involution_divisor(c, d);
      EXPECT_EQ(involution_divisor(c, id), normalize(sharp, d));
      EXPECT_TRUE(pushforward(c, d - id).is_zero());
      Divisor e = reduce_at(sharp, d, Point::vertex(sharp.vertices().front().id));
      EXPECT_TRUE(equivalent(sharp, id, involution_divisor(c, e)));
    }
  }
}

TEST(PullbackKernel, MatchesDilationCycle) {
  MetricGraph g = testgraphs::k4();
  EXPECT_EQ(pullback_kernel(cube::cover()), std::vector<CycleZ2>{CycleZ2{}});
  EXPECT_EQ(pullback_kernel(covers_with_dilation(g, kTriangle)[0]), (std::vector<CycleZ2>{CycleZ2{}, kTriangle}));
  EXPECT_EQ(pullback_kernel(covers_with_dilation(g, kSquare)[0]), (std::vector<CycleZ2>{CycleZ2{}, kSquare}));
}

TEST(ThreeRegular, EdgeCountIdentity) {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 20; ++i) {
    MetricGraph g = testgraphs::random_cubic(rng, 2 * (2 + static_cast<int>(rng() % 3)));
    for (const auto& cyc : cycle_space(g).even_subgraphs) {
      ComplementData d = complement_data(g, cyc);
      EXPECT_EQ(static_cast<int>(cyc.edges.size()), g.genus() + d.components - d.genus - 1);
    }
  }
}
