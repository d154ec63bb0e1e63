#include "tropjac/errors.hpp"
#include "tropjac/linalg.hpp"
#include "tropjac/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tropjac;

TEST(Rational, ParsesAndPrintsLowestTerms) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-2/6")), "-1/3");
  EXPECT_EQ(to_string(parse_rational("5")), "5");
  EXPECT_EQ(to_string(parse_rational("4/2")), "2");
  EXPECT_EQ(to_string(parse_rational("0/7")), "0");
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "a", "1/", "/2", "1.5", "1/2/3", " 1", "--1"})
    EXPECT_THROW(parse_rational(bad), InvalidInput) << bad;
}

TEST(Rational, FloorAndFractionalPart) {
  EXPECT_EQ(floor(Rational(-1, 3)), -1);
  EXPECT_EQ(floor(Rational(7, 3)), 2);
  EXPECT_EQ(frac(Rational(-1, 3)), Rational(2, 3));
  EXPECT_EQ(frac(Rational(4)), 0);
  EXPECT_EQ(common_denominator({Rational(1, 4), Rational(5, 6), Rational(2)}), 12);
}

TEST(Linalg, SolveAndInverse) {
  RationalMatrix a(2, 2);
  a(0, 0) = 2, a(0, 1) = 1, a(1, 0) = 1, a(1, 1) = 3;
  auto x = solve(a, {Rational(3), Rational(5)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], Rational(4, 5));
  EXPECT_EQ((*x)[1], Rational(7, 5));
  auto inv = inverse(a);
  ASSERT_TRUE(inv);
  EXPECT_EQ(a * *inv, RationalMatrix::identity(2));
  RationalMatrix s(2, 2);
  s(0, 0) = 1, s(0, 1) = 2, s(1, 0) = 2, s(1, 1) = 4;
  EXPECT_FALSE(solve(s, {Rational(1), Rational(0)}));
  EXPECT_EQ(rank(s), 1u);
}

TEST(Linalg, NullspaceIsAnnihilated) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    RationalMatrix a(3, 5);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 5; ++c) a(r, c) = Rational(static_cast<long>(rng() % 5) - 2, 1 + rng() % 3);
    RationalMatrix n = nullspace(a);
    EXPECT_EQ(n.cols() + rank(a), 5u);
    RationalMatrix zero = a * n;
    for (std::size_t r = 0; r < zero.rows(); ++r)
      for (std::size_t c = 0; c < zero.cols(); ++c) EXPECT_EQ(zero(r, c), 0);
  }
}

TEST(Linalg, IntegerSpanAgainstEnumeration) {
  // Lattice spanned by (2,0) and (1,3): index 6, membership by brute force.
  IntegerMatrix gens(2, 2);
  gens(0, 0) = 2, gens(1, 0) = 0, gens(0, 1) = 1, gens(1, 1) = 3;
  EXPECT_EQ(lattice_index(gens), 6);
  for (int x = -4; x <= 4; ++x)
    for (int y = -4; y <= 4; ++y) {
      bool brute = false;
      for (int a = -10; a <= 10 && !brute; ++a)
        for (int b = -10; b <= 10 && !brute; ++b) brute = 2 * a + b == x && 3 * b == y;
      EXPECT_EQ(in_integer_span(gens, {Integer(x), Integer(y)}), brute) << x << "," << y;
    }
}

TEST(Linalg, HermiteFormSpansSameLattice) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    IntegerMatrix gens(3, 4);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 4; ++c) gens(r, c) = static_cast<long>(rng() % 9) - 4;
    IntegerMatrix h = hermite_normal_form(gens);
    for (std::size_t c = 0; c < gens.cols(); ++c) EXPECT_TRUE(in_integer_span(h, gens.column(c)));
    for (std::size_t c = 0; c < h.cols(); ++c) EXPECT_TRUE(in_integer_span(gens, h.column(c)));
  }
}

TEST(Linalg, RankDeficientLatticeHasIndexZero) {
  IntegerMatrix gens(2, 2);
  gens(0, 0) = 1, gens(1, 0) = 2, gens(0, 1) = 2, gens(1, 1) = 4;
  EXPECT_EQ(lattice_index(gens), 0);
  EXPECT_TRUE(in_integer_span(gens, {Integer(3), Integer(6)}));
  EXPECT_FALSE(in_integer_span(gens, {Integer(1), Integer(1)}));
}
