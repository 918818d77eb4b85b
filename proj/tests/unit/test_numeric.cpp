#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rmsalign/numeric.hpp"
#include "support/random_instances.hpp"

using namespace rmsalign;

TEST(Scalar, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_scalar("3"), Scalar(3));
  EXPECT_EQ(parse_scalar("-1/3"), Scalar(-1, 3));
  EXPECT_EQ(parse_scalar("0.1"), Scalar(1, 10));
  EXPECT_EQ(parse_scalar("-2.25"), Scalar(-9, 4));
  EXPECT_EQ(parse_scalar("4/8"), Scalar(1, 2));
  EXPECT_THROW(parse_scalar("abc"), ParseError);
  EXPECT_THROW(parse_scalar("1/0"), ParseError);
  EXPECT_THROW(parse_scalar(""), ParseError);
}

TEST(Scalar, FormatsExactly) {
  EXPECT_EQ(to_string(Scalar(-1, 3)), "-1/3");
  EXPECT_EQ(to_string(Scalar(5)), "5");
  EXPECT_EQ(to_decimal(Scalar(1, 3)).substr(0, 6), "0.3333");
}

TEST(SqDist, Examples) {
  EXPECT_EQ(sq_dist({0, 0}, {0, 0}), 0);
  EXPECT_EQ(sq_dist({0, 0}, {3, 4}), 25);
  EXPECT_EQ(sq_dist({Scalar(1, 2), 0}, {0, Scalar(1, 3)}), Scalar(13, 36));
}

TEST(Line, CanonicalFormIdentifiesEqualLines) {
  EXPECT_EQ(Line({2, 4}, 6), Line({-1, -2}, -3));
  EXPECT_EQ(Line({Scalar(1, 2), 0}, 1), Line::vertical(2));
  Line l({1, -1}, 0);
  EXPECT_TRUE(l.contains({5, 5}));
  EXPECT_EQ(l.param_of(l.at(Scalar(7, 3))), Scalar(7, 3));
}

TEST(Line, IntersectionAndParallel) {
  auto p = intersect(Line::vertical(2), Line::horizontal(3));
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, Point(2, 3));
  EXPECT_FALSE(intersect(Line::vertical(2), Line::vertical(3)));
  EXPECT_TRUE(parallel(Line({1, 1}, 0), Line({2, 2}, 5)));
}

TEST(HalfplaneIntersection, UnitSimplex) {
  std::vector<Halfplane> hs{{{1, 0}, 0, Keep::GE}, {{0, 1}, 0, Keep::GE}, {{1, 1}, 1, Keep::LE}};
  auto poly = halfplane_intersection(hs, {Scalar(1, 4), Scalar(1, 4)});
  ASSERT_TRUE(poly.bounded());
  std::vector<Point> v = poly.vertices;
  std::sort(v.begin(), v.end());
  EXPECT_EQ(v, (std::vector<Point>{{0, 0}, {0, 1}, {1, 0}}));
}

TEST(HalfplaneIntersection, StripHasTwoRays) {
  std::vector<Halfplane> hs{{{1, 0}, 0, Keep::GE}, {{1, 0}, 1, Keep::LE}};
  auto poly = halfplane_intersection(hs, {Scalar(1, 2), 0});
  EXPECT_FALSE(poly.bounded());
  EXPECT_TRUE(poly.vertices.empty());
  EXPECT_EQ(poly.unbounded_rays.size(), 2u);
  EXPECT_EQ(poly.edges.size(), 2u);
  EXPECT_TRUE(poly.contains({Scalar(1, 2), 1000}));
}

TEST(HalfplaneIntersection, RedundantConstraintReported) {
  std::vector<Halfplane> hs{{{1, 0}, 0, Keep::GE}, {{1, 0}, 2, Keep::LE}, {{1, 0}, 1, Keep::LE},
                            {{0, 1}, 0, Keep::GE}, {{0, 1}, 1, Keep::LE}};
  std::vector<std::size_t> redundant;
  auto poly = halfplane_intersection(hs, {Scalar(1, 2), Scalar(1, 2)}, &redundant);
  EXPECT_EQ(poly.vertices.size(), 4u);
  EXPECT_EQ(redundant, std::vector<std::size_t>{1});
}

// Brute oracle: vertices are feasible pairwise boundary intersections.
TEST(HalfplaneIntersection, MatchesBrutePairwiseVertices) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    Point w{Scalar(testsupport::uniform(rng, -3, 3)), Scalar(testsupport::uniform(rng, -3, 3))};
    std::vector<Halfplane> hs;
    for (int k = 0; k < 6; ++k) {
      Point n{Scalar(testsupport::uniform(rng, -4, 4)), Scalar(testsupport::uniform(rng, -4, 4))};
      if (n.is_zero()) continue;
      Scalar off = dot(n, w) + testsupport::uniform(rng, 1, 8);  // w strictly inside
      hs.emplace_back(n, off, Keep::LE);
    }
    if (hs.empty()) continue;
    auto poly = halfplane_intersection(hs, w);
    std::set<Point> brute;
    for (std::size_t i = 0; i < hs.size(); ++i)
      for (std::size_t j = i + 1; j < hs.size(); ++j)
        if (auto p = intersect(hs[i].boundary, hs[j].boundary))
          if (std::all_of(hs.begin(), hs.end(), [&](const Halfplane& h) { return h.contains(*p); }))
            brute.insert(*p);
    std::set<Point> got(poly.vertices.begin(), poly.vertices.end());
    EXPECT_EQ(got, brute);
    EXPECT_TRUE(poly.strictly_contains(w));
  }
}

TEST(Slab, KthIntersectionExamples) {
  std::vector<Line> lines{Line({-1, 1}, 0), Line({1, 1}, 2), Line::horizontal(3)};
  VerticalSlab s{Scalar(-2), Scalar(4)};
  EXPECT_EQ(kth_intersection_in_slab(lines, s, 2), Point(1, 1));
  EXPECT_EQ(kth_intersection_in_slab(lines, s, 1), Point(-1, 3));
  EXPECT_EQ(kth_intersection_in_slab(lines, {Scalar(0), Scalar(4)}, 1), Point(1, 1));
  EXPECT_EQ(count_intersections_in_slab(lines, s), 3u);
  EXPECT_THROW(kth_intersection_in_slab(lines, s, 4), OutOfRange);
}

TEST(WeightedMedian, Examples) {
  EXPECT_EQ(weighted_median({{1, 1}, {2, 1}, {3, 3}}), 3);
  EXPECT_EQ(weighted_median({{5, 7}}), 5);
  EXPECT_EQ(weighted_median({{1, 1}, {2, 1}, {3, 1}}), 2);
}

TEST(QuadAlg, ArithmeticAndOrder) {
  QuadAlg r2 = QuadAlg::sqrt_of(2);
  EXPECT_FALSE(r2.is_rational());
  EXPECT_EQ(r2 * r2, QuadAlg(2));
  EXPECT_EQ(QuadAlg::sqrt_of(8), QuadAlg(2) * r2);
  EXPECT_TRUE(QuadAlg::sqrt_of(Scalar(9, 4)).is_rational());
  EXPECT_EQ(QuadAlg::sqrt_of(Scalar(9, 4)), QuadAlg(Scalar(3, 2)));
  EXPECT_LT(QuadAlg(Scalar(141, 100)), r2);
  EXPECT_LT(r2, QuadAlg(Scalar(142, 100)));
  EXPECT_EQ(sign(r2 - QuadAlg(Scalar(1414213, 1000000))), 1);
  EXPECT_NEAR(r2.to_double(), std::sqrt(2.0), 1e-15);
}

TEST(QuadAlg, RootsSatisfyTheirQuadratic) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 300; ++it) {
    Scalar a2(testsupport::uniform(rng, -5, 5)), a1(testsupport::uniform(rng, -9, 9)),
        a0(testsupport::uniform(rng, -9, 9));
    if (sgn(a2) == 0 && sgn(a1) == 0) continue;
    auto roots = quadratic_roots(a2, a1, a0);
    for (const auto& r : roots) EXPECT_EQ(sign(eval_quadratic(a2, a1, a0, r)), 0);
    double disc = to_double(a1 * a1 - 4 * a2 * a0);
    std::size_t expected = sgn(a2) == 0 ? 1 : disc > 0 ? 2 : disc == 0 ? 1 : 0;
    EXPECT_EQ(roots.size(), expected);
    EXPECT_TRUE(std::is_sorted(roots.begin(), roots.end()));
  }
}

TEST(LnUpperBound, BoundsFromAbove) {
  for (unsigned m = 1; m <= 12; ++m) {
    Scalar b = ln_upper_bound(m);
    // partial Taylor sums bound exp(b) from below, so reaching m certifies b >= ln m
    Scalar term = 1, sum = 1;
    for (long k = 1; k <= 40; ++k) {
      term = term * b / Scalar(k);
      sum += term;
    }
    EXPECT_GE(sum, Scalar(m)) << m;
    EXPECT_LT(to_double(b) - std::log(static_cast<double>(m)), 1e-12);
  }
  EXPECT_EQ(ln_upper_bound(1), 0);
}

TEST(AngleOrder, CounterclockwiseFromPositiveX) {
  std::vector<Point> v{{0, -1}, {-1, 0}, {1, 1}, {1, 0}, {0, 1}, {-1, -1}};
  std::sort(v.begin(), v.end(), angle_less);
  EXPECT_EQ(v, (std::vector<Point>{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}));
}
