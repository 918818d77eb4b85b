#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "rmsalign/assignment.hpp"
#include "rmsalign/preference.hpp"
#include "support/random_instances.hpp"

using namespace rmsalign;

namespace {
PreferenceLists lists(std::size_t n, std::vector<std::vector<int>> ls) {
  PreferenceLists p;
  p.n = n;
  p.lists = std::move(ls);
  return p;
}

// Exhaustive Pareto check against all injections into list entries.
bool brute_efficient(const PreferenceLists& p, const Matching& pi) {
  auto rank = [&](std::size_t b, int a) {
    auto it = std::find(p.lists[b].begin(), p.lists[b].end(), a);
    return it == p.lists[b].end() ? -1 : static_cast<int>(it - p.lists[b].begin());
  };
  const std::size_t m = p.m();
  std::vector<int> cur(m);
  std::vector<char> used(p.n, 0);
  bool dominated = false;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (dominated) return;
    if (i == m) {
      bool strict = false;
      for (std::size_t b = 0; b < m; ++b) strict |= rank(b, cur[b]) < rank(b, pi.assign[b]);
      dominated = strict;
      return;
    }
    for (int a : p.lists[i]) {
      if (used[static_cast<std::size_t>(a)] || rank(i, a) > rank(i, pi.assign[i])) continue;
      used[static_cast<std::size_t>(a)] = 1;
      cur[i] = a;
      self(self, i + 1);
      used[static_cast<std::size_t>(a)] = 0;
    }
  };
  rec(rec, 0);
  return !dominated;
}
}  // namespace

TEST(PreferenceLists, Examples) {
  auto inst = Instance::make({{0, 0}, {3, 0}, {10, 0}}, {{0, 0}, {6, 0}});
  auto p = preference_lists(inst, {0, 0});
  EXPECT_EQ(p.lists, (std::vector<std::vector<int>>{{0, 1}, {1, 2}}));
  EXPECT_FALSE(p.degenerate);

  auto single = Instance::make({{0, 0}, {3, 0}, {10, 0}}, {{9, 0}});
  EXPECT_EQ(preference_lists(single, {0, 0}).lists, (std::vector<std::vector<int>>{{2}}));

  auto self = Instance::make({{0, 0}, {3, 1}, {10, 2}}, {{0, 0}, {3, 1}, {10, 2}});
  auto q = preference_lists(self, {0, 0});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(q.lists[i][0], static_cast<int>(i));
}

TEST(PreferenceLists, TiesAreFlagged) {
  auto inst = Instance::make({{-1, 0}, {1, 0}, {5, 0}}, {{0, 0}});
  auto p = preference_lists(inst, {0, 0});
  EXPECT_TRUE(p.degenerate);
  EXPECT_EQ(p.lists[0], std::vector<int>{0});
}

TEST(SerialDictatorship, Examples) {
  auto p = lists(3, {{0, 1}, {0, 2}});
  EXPECT_EQ(serial_dictatorship(p, {0, 1}).assign, (std::vector<int>{0, 2}));
  EXPECT_EQ(serial_dictatorship(p, {1, 0}).assign, (std::vector<int>{1, 0}));
  auto same = lists(2, {{0, 1}, {0, 1}});
  EXPECT_EQ(serial_dictatorship(same, {0, 1}).assign, (std::vector<int>{0, 1}));
  EXPECT_EQ(serial_dictatorship(same, {1, 0}).assign, (std::vector<int>{1, 0}));
  EXPECT_THROW(serial_dictatorship(lists(2, {{0}, {0}}), {0, 1}), ListExhausted);
}

TEST(IsEfficient, Examples) {
  auto same = lists(2, {{0, 1}, {0, 1}});
  EXPECT_TRUE(is_efficient(same, Matching({1, 0})));
  EXPECT_TRUE(is_efficient(same, Matching({0, 1})));
  auto p = lists(3, {{0, 1}, {2, 0}});
  EXPECT_FALSE(is_efficient(p, Matching({1, 2})));
  EXPECT_TRUE(is_efficient(p, Matching({0, 2})));
}

TEST(IsEfficient, MatchesExhaustiveCheck) {
  std::mt19937_64 rng(71);
  for (int it = 0; it < 300; ++it) {
    std::size_t m = static_cast<std::size_t>(testsupport::uniform(rng, 1, 4));
    std::size_t n = m + static_cast<std::size_t>(testsupport::uniform(rng, 0, 3));
    PreferenceLists p;
    p.n = n;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<int> all(n);
      std::iota(all.begin(), all.end(), 0);
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(m);
      p.lists.push_back(all);
    }
    // a random injection drawn from the lists, when one exists
    std::vector<int> assign(m, -1);
    std::vector<char> used(n, 0);
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      std::vector<int> free;
      for (int a : p.lists[i])
        if (!used[static_cast<std::size_t>(a)]) free.push_back(a);
      if (free.empty()) ok = false;
      else {
        assign[i] = free[static_cast<std::size_t>(testsupport::uniform(rng, 0, static_cast<long>(free.size()) - 1))];
        used[static_cast<std::size_t>(assign[i])] = 1;
      }
    }
    if (!ok) continue;
    Matching pi(assign);
    EXPECT_EQ(is_efficient(p, pi), brute_efficient(p, pi));
  }
}

TEST(EfficientImages, Examples) {
  EXPECT_EQ(efficient_images(lists(2, {{0, 1}, {0, 1}})).size(), 1u);
  auto prop = gen_proposition_lists(2, 3);
  EXPECT_EQ(prop.lists, (std::vector<std::vector<int>>{{0, 1}, {0, 2}}));
  auto imgs = efficient_images(prop);
  EXPECT_EQ(imgs, (std::set<std::vector<int>>{{0, 1}, {0, 2}}));
  for (const auto& s : imgs) EXPECT_EQ(s.front(), 0);
  EXPECT_EQ(efficient_images(gen_proposition_lists(4, 6)).size(), 6u);
}

TEST(EfficientImages, ConstructedListImageCountsAreBinomial) {
  EXPECT_EQ(efficient_images(gen_proposition_lists(6, 9)).size(), 20u);
  EXPECT_EQ(efficient_images(gen_proposition_lists(4, 10)).size(), 6u);
  EXPECT_THROW(gen_proposition_lists(3, 6), ValidationError);
  EXPECT_THROW(gen_proposition_lists(4, 5), ValidationError);
}

TEST(UnionBound, Values) {
  EXPECT_EQ(union_bound(1), 1);
  for (unsigned m = 2; m <= 9; ++m) EXPECT_EQ(union_bound(m), Scalar(m) * (ln_upper_bound(m) + 1));
  EXPECT_NEAR(to_double(union_bound(4)), 4 * (std::log(4.0) + 1), 1e-12);
}

TEST(GenLowerBound, Coordinates) {
  auto one = gen_lower_bound(2, 4, 1);
  EXPECT_EQ(one.A, (std::vector<Point>{{3, 0}, {4, 0}, {5, 0}, {6, 0}}));
  EXPECT_EQ(one.B, (std::vector<Point>{{0, 0}, {3, 0}}));
  auto small = gen_lower_bound(2, 3, 1);
  EXPECT_EQ(small.A, (std::vector<Point>{{2, 0}, {3, 0}, {4, 0}}));
  EXPECT_EQ(small.B, (std::vector<Point>{{0, 0}, {2, 0}}));

  auto two = gen_lower_bound(2, 4, 2);
  std::vector<Point> a1(two.A.begin(), two.A.begin() + 4), b1(two.B.begin(), two.B.begin() + 2);
  EXPECT_EQ(a1, (std::vector<Point>{{3, 0}, {4, 0}, {5, 0}, {6, 0}}));
  EXPECT_EQ(b1, (std::vector<Point>{{0, -12}, {3, -12}}));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(two.A[4 + i], Point(a1[i].y, a1[i].x));
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(two.B[2 + i], Point(b1[i].y, b1[i].x));
  EXPECT_THROW(gen_lower_bound(1, 4, 1), ValidationError);
  EXPECT_THROW(gen_lower_bound(3, 3, 1), ValidationError);
}

// Nearest-neighbour structure of optimal matchings at generic translations.
TEST(OptimalMatchingStructure, ListsContainOptimalPartnersAndGreedyOrderExists) {
  std::mt19937_64 rng(73);
  int checked = 0;
  for (int it = 0; it < 150; ++it) {
    auto inst = testsupport::random_sized_instance(rng, 2, 7, 4, 10);
    Point t{testsupport::frac(testsupport::uniform(rng, -50, 50), 7), testsupport::frac(testsupport::uniform(rng, -50, 50), 13)};
    auto p = preference_lists(inst, t);
    if (p.degenerate) continue;
    ++checked;
    auto pi = optimal_matching(inst, t);
    bool some_first = false;
    for (std::size_t i = 0; i < inst.m(); ++i) {
      const auto& L = p.lists[i];
      EXPECT_NE(std::find(L.begin(), L.end(), pi.assign[i]), L.end());
      some_first |= L.front() == pi.assign[i];
    }
    EXPECT_TRUE(some_first);
    EXPECT_TRUE(is_efficient(p, pi));
    Ordering order(inst.m());
    std::iota(order.begin(), order.end(), 0);
    bool found = false;
    do {
      try {
        found = serial_dictatorship(p, order) == pi;
      } catch (const ListExhausted&) {
      }
    } while (!found && std::next_permutation(order.begin(), order.end()));
    EXPECT_TRUE(found);
  }
  EXPECT_GT(checked, 100);
}
