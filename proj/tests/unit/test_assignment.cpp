#include <gtest/gtest.h>

#include <random>

#include "rmsalign/assignment.hpp"
#include "rmsalign/oracles.hpp"
#include "support/random_instances.hpp"

using namespace rmsalign;

namespace {
Instance line_inst(std::vector<long> a, std::vector<long> b) {
  std::vector<Point> A, B;
  for (long x : a) A.push_back({x, 0});
  for (long x : b) B.push_back({x, 0});
  return Instance::make(A, B);
}
}  // namespace

TEST(Instance, ValidationRejectsBadInputs) {
  EXPECT_THROW(Instance::make({{0, 0}}, {{0, 0}, {1, 1}}), ValidationError);
  EXPECT_THROW(Instance::make({{0, 0}, {0, 0}}, {{0, 0}}), ValidationError);
  EXPECT_THROW(Instance::make({{0, 0}}, {}), ValidationError);
}

TEST(CostPlane, Examples) {
  auto inst = line_inst({0, 1, 5}, {0, 1});
  auto id = cost_plane(inst, Matching({0, 1}));
  EXPECT_EQ(id.c, 0);
  EXPECT_EQ(id.d, Point(0, 0));

  auto one = Instance::make({{1, 2}}, {{0, 0}});
  auto p = cost_plane(one, Matching({0}));
  EXPECT_EQ(p.c, 5);
  EXPECT_EQ(p.d, Point(-2, -4));
  EXPECT_EQ(cost_at(p, {1, 2}), 0);

  auto two = Instance::make({{0, 0}, {1, 0}}, {{0, 0}, {2, 0}});
  auto q = cost_plane(two, Matching({0, 1}));
  EXPECT_EQ(q.c, 1);
  EXPECT_EQ(q.d, Point(2, 0));
}

TEST(CostPlane, AgreesWithDirectCost) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    auto inst = testsupport::random_sized_instance(rng, 2, 6, 4, 6, 2);
    std::vector<int> assign;
    for (std::size_t i = 0; i < inst.m(); ++i) assign.push_back(static_cast<int>(i));
    Matching pi(assign);
    Point t{testsupport::frac(testsupport::uniform(rng, -20, 20), 3), testsupport::frac(testsupport::uniform(rng, -20, 20), 7)};
    EXPECT_EQ(cost_at(cost_plane(inst, pi), t), matching_cost(inst, pi, t));
  }
}

TEST(OptimalMatching, Examples) {
  auto overlay = line_inst({0, 1, 5}, {0, 1, 5});
  EXPECT_EQ(optimal_matching(overlay, {0, 0}).assign, (std::vector<int>{0, 1, 2}));

  auto inst = line_inst({0, 1, 4}, {0, 2});
  auto pi = optimal_matching(inst, {0, 0});
  EXPECT_EQ(pi.assign, (std::vector<int>{0, 1}));
  EXPECT_EQ(matching_cost(inst, pi, {0, 0}), 1);

  auto single = line_inst({0, 4}, {0});
  EXPECT_EQ(optimal_matching(single, {3, 0}).assign, std::vector<int>{1});
  EXPECT_EQ(matching_cost(single, Matching({1}), {3, 0}), 1);
}

TEST(OptimalMatching, TieGoesToLexicographicallySmallest) {
  auto inst = line_inst({0, 4}, {0});
  EXPECT_EQ(optimal_matching(inst, {2, 0}).assign, std::vector<int>{0});
  auto sym = Instance::make({{-1, 0}, {1, 0}, {0, 5}}, {{0, 0}, {0, 1}});
  // both B-points equidistant to a_0 and a_1
  EXPECT_EQ(optimal_matching(sym, {0, 0}), brute_matching(sym, {0, 0}));
}

TEST(OptimalMatching, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 200; ++it) {
    auto inst = testsupport::random_sized_instance(rng, 1, 7, 5, 5);
    Point t{Scalar(testsupport::uniform(rng, -6, 6)), Scalar(testsupport::uniform(rng, -6, 6))};
    auto pi = optimal_matching(inst, t);
    auto ref = brute_matching(inst, t);
    EXPECT_EQ(matching_cost(inst, pi, t), matching_cost(inst, ref, t));
    EXPECT_EQ(pi, ref);  // integer data creates many ties
  }
}

TEST(OptimalMatchingPerturbed, Examples) {
  auto inst = line_inst({0, 4}, {0});
  EXPECT_EQ(optimal_matching_perturbed(inst, {{2, 0}, {1, 0}}).assign, std::vector<int>{1});
  EXPECT_EQ(optimal_matching_perturbed(inst, {{2, 0}, {-1, 0}}).assign, std::vector<int>{0});
  EXPECT_EQ(optimal_matching_perturbed(inst, {{1, 0}, {1, 0}}), optimal_matching(inst, {1, 0}));
}

TEST(OptimalMatchingPerturbed, AgreesWithSmallConcreteStep) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 100; ++it) {
    auto inst = testsupport::random_sized_instance(rng, 2, 6, 3, 4);
    Point base{Scalar(testsupport::uniform(rng, -4, 4)), Scalar(testsupport::uniform(rng, -4, 4))};
    Point dir{Scalar(testsupport::uniform(rng, -3, 3)), Scalar(testsupport::uniform(rng, -3, 3))};
    if (dir.is_zero()) continue;
    auto pi = optimal_matching_perturbed(inst, {base, dir});
    Point t = base + Scalar(1, 1000000) * dir;
    EXPECT_EQ(matching_cost(inst, pi, t), matching_cost(inst, brute_matching(inst, t), t));
  }
}

TEST(SymmetricDifference, Examples) {
  auto inst = line_inst({0, 4}, {0});
  EXPECT_TRUE(symmetric_difference_paths(inst, Matching({0}), Matching({0})).empty());

  auto paths = symmetric_difference_paths(inst, Matching({0}), Matching({1}));
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_FALSE(paths[0].cycle);
  auto diff = cost_plane(inst, Matching({0})).d - cost_plane(inst, Matching({1})).d;
  EXPECT_EQ(paths[0].d_gamma, diff);
  EXPECT_EQ(paths[0].vertices.size(), 3u);

  auto two = line_inst({0, 1, 7}, {0, 1});
  auto cyc = symmetric_difference_paths(two, Matching({0, 1}), Matching({1, 0}));
  ASSERT_EQ(cyc.size(), 1u);
  EXPECT_TRUE(cyc[0].cycle);
  EXPECT_EQ(cyc[0].d_gamma, Point(0, 0));
}

TEST(SymmetricDifference, ComponentsSumToPlaneDifference) {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 100; ++it) {
    auto inst = testsupport::random_sized_instance(rng, 3, 8, 4, 6);
    Point t1{Scalar(testsupport::uniform(rng, -6, 6)), Scalar(testsupport::uniform(rng, -6, 6))};
    Point t2{Scalar(testsupport::uniform(rng, -6, 6)), Scalar(testsupport::uniform(rng, -6, 6))};
    auto pi = optimal_matching(inst, t1), sigma = optimal_matching(inst, t2);
    Point d{0, 0};
    Scalar c = 0;
    for (const auto& p : symmetric_difference_paths(inst, pi, sigma)) {
      d += p.d_gamma;
      c += p.c_gamma;
      if (p.cycle) EXPECT_TRUE(p.d_gamma.is_zero());
    }
    auto P = cost_plane(inst, pi), S = cost_plane(inst, sigma);
    EXPECT_EQ(d, P.d - S.d);
    EXPECT_EQ(c, P.c - S.c);
  }
}
