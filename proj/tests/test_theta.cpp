#include "generators.hpp"
#include "oracles.hpp"
#include "tropjac/divisor.hpp"
#include "tropjac/errors.hpp"
#include "tropjac/theta.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tropjac;

namespace {

Point V(const std::string& id) { return Point::vertex(id); }
Point mid(const std::string& e) { return Point::on_edge(e, Rational(1, 2)); }

Point random_point(std::mt19937_64& rng, const MetricGraph& g) {
  const Edge& e = g.edges()[rng() % g.edges().size()];
  return normalize(g, Point::on_edge(e.id, e.length * Rational(rng() % 5, 4)));
}

}  // namespace

TEST(Theta, K4Census) {
  MetricGraph g = testgraphs::k4();
  auto all = enumerate_theta(g);
  ASSERT_EQ(all.size(), 8u);
  int effective = 0;
  for (const auto& t : all) effective += t.effective;
  EXPECT_EQ(effective, 7);
  EXPECT_FALSE(all[0].effective);
  EXPECT_EQ(all[0].divisor, (Divisor{{V("A"), -1}, {mid("BC"), 1}, {mid("BD"), 1}, {mid("CD"), 1}}));
  std::map<std::set<std::string>, Divisor> expect{
      {{"BC", "BD", "CD"}, Divisor{{V("A"), 2}}},
      {{"AC", "AD", "CD"}, Divisor{{V("B"), 2}}},
      {{"AB", "AD", "BD"}, Divisor{{V("C"), 2}}},
      {{"AB", "AC", "BC"}, Divisor{{V("D"), 2}}},
      {{"AB", "BC", "CD", "AD"}, Divisor{{mid("AC"), 1}, {mid("BD"), 1}}},
      {{"AB", "BD", "CD", "AC"}, Divisor{{mid("AD"), 1}, {mid("BC"), 1}}},
      {{"AC", "BC", "BD", "AD"}, Divisor{{mid("AB"), 1}, {mid("CD"), 1}}},
  };
  for (const auto& t : all) {
    if (t.cycle.empty()) continue;
    ASSERT_TRUE(expect.count(t.cycle.edges));
    EXPECT_EQ(t.divisor, expect.at(t.cycle.edges));
    EXPECT_TRUE(t.effective);
  }
}

TEST(Theta, MatchesBruteForceOrientation) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 40; ++i) {
    MetricGraph g = testgraphs::random_small_graph(rng);
    Point p = random_point(rng, g);
    EXPECT_EQ(theta_characteristic(g, CycleZ2{}, p).divisor, oracle::brute_theta(g, {}, p));
    for (const auto& c : cycle_space(g).even_subgraphs) {
      if (c.empty()) continue;
      EXPECT_EQ(theta_characteristic(g, c, p).divisor, oracle::brute_theta(g, c.edges, p));
    }
  }
}

TEST(Theta, CharacteristicIdentities) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 20; ++i) {
    MetricGraph g = testgraphs::random_small_graph(rng);
    Divisor k = genus_and_canonical(g).canonical;
    Point p = random_point(rng, g);
    Divisor l0 = theta_characteristic(g, CycleZ2{}, p).divisor;
    for (int j = 0; j < 3; ++j) EXPECT_TRUE(equivalent(g, l0, theta_characteristic(g, CycleZ2{}, random_point(rng, g)).divisor));
    for (const auto& c : cycle_space(g).even_subgraphs) {
      auto t = theta_characteristic(g, c, p);
      EXPECT_EQ(t.divisor.degree(), g.genus() - 1);
      EXPECT_TRUE(equivalent(g, 2 * t.divisor, k));
      EXPECT_EQ(t.effective, !c.empty());
    }
  }
}

TEST(Theta, IndependentOfCircuitDecomposition) {
  std::mt19937_64 rng(57);
  for (int i = 0; i < 20; ++i) {
    MetricGraph g = testgraphs::random_small_graph(rng);
    for (const auto& c : cycle_space(g).even_subgraphs) {
      if (c.empty()) continue;
      Divisor base = theta_characteristic(g, c, V(g.vertices().front().id)).divisor;
      for (std::uint64_t variant = 1; variant <= 3; ++variant) {
        auto circuits = circuit_decomposition(g, c, variant);
        std::multiset<std::size_t> used;
        for (const auto& circ : circuits)
          for (const auto& [e, fwd] : circ) used.insert(e);
        EXPECT_EQ(used.size(), c.edges.size());
        EXPECT_TRUE(equivalent(g, theta_characteristic(g, c, V(g.vertices().front().id), variant).divisor, base));
      }
    }
  }
}

TEST(Theta, CircuitsAreClosedTrails) {
  MetricGraph g = testgraphs::k4();
  CycleZ2 square{{"AB", "BC", "CD", "AD"}};
  for (std::uint64_t variant : {0, 1, 2}) {
    for (const auto& circ : circuit_decomposition(g, square, variant)) {
      std::size_t at = circ.front().second ? g.tail_index(circ.front().first) : g.head_index(circ.front().first);
      std::size_t start = at;
      for (const auto& [e, fwd] : circ) {
        EXPECT_EQ(fwd ? g.tail_index(e) : g.head_index(e), at);
        at = fwd ? g.head_index(e) : g.tail_index(e);
      }
      EXPECT_EQ(at, start);
    }
  }
}

TEST(Theta, RejectsOddEdgeSets) {
  EXPECT_THROW(theta_characteristic(testgraphs::k4(), CycleZ2{{"AB"}}, V("A")), PreconditionError);
}

TEST(Theta, AugmentedGraphUsesVirtualLoops) {
  MetricGraph g({{"x", 1}, {"y", 0}}, {{"e", "x", "y", 1}, {"f", "y", "y", 1}});
  auto all = enumerate_theta(g);
  EXPECT_EQ(all.size(), 4u);
  for (const auto& t : all) EXPECT_EQ(t.divisor.degree(), 1);
}

TEST(Theta, TwoTorsionDivisorDoublesToZero) {
  MetricGraph g = testgraphs::k4();
  Divisor d = two_torsion_divisor(g, CycleZ2{{"BC", "BD", "CD"}});
  EXPECT_EQ(d, (Divisor{{V("A"), 3}, {mid("BC"), -1}, {mid("BD"), -1}, {mid("CD"), -1}}));
  EXPECT_FALSE(is_principal(g, d).principal);
  EXPECT_TRUE(is_principal(g, 2 * d).principal);
}
