#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rmsalign/hausdorff1d.hpp"
#include "rmsalign/oracles.hpp"
#include "support/random_instances.hpp"

using namespace rmsalign;

namespace {
std::vector<Scalar> S(std::initializer_list<long> xs) {
  std::vector<Scalar> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::size_t log43_bound(std::size_t breakpoints) {
  return static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(breakpoints + 1)) / std::log(4.0 / 3.0))) + 2;
}

const Variant kAll[] = {Variant::Uni, Variant::L1, Variant::Linf};
}  // namespace

TEST(Variant, RoundTripsNames) {
  for (Variant v : kAll) EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("l2"), ParseError);
}

TEST(StepFunction, Examples) {
  auto f = step_function(S({0, 2, 6}));
  EXPECT_EQ(f.breakpoints, S({1, 4}));
  EXPECT_EQ(f.evaluate(1), 2);
  EXPECT_EQ(f.evaluate_left(1), 0);
  EXPECT_EQ(f.evaluate(3), 2);
  auto g = step_function(S({5}));
  EXPECT_TRUE(g.breakpoints.empty());
  EXPECT_EQ(g.evaluate(-100), 5);
  EXPECT_THROW(step_function(S({1, 1})), ValidationError);
  EXPECT_THROW(step_function({}), ValidationError);
}

TEST(Rms1d, Examples) {
  auto r = rms1d(S({0}), S({0}), 0, Variant::Uni);
  EXPECT_EQ(r.value, 0);
  EXPECT_EQ(r.left, 0);
  EXPECT_EQ(r.right, 0);
  auto k = rms1d(S({0, 10}), S({0}), 5, Variant::Uni);
  EXPECT_EQ(k.value, 25);
  EXPECT_EQ(k.left, 10);
  EXPECT_EQ(k.right, -10);
  auto z = rms1d(S({0, 10}), S({0}), 0, Variant::Uni);
  EXPECT_EQ(z.value, 0);
  EXPECT_EQ(z.left, 0);
  EXPECT_EQ(z.right, 0);
}

TEST(Rms1d, L1IsSumOfDirectedAndLinfIsMax) {
  std::mt19937_64 rng(81);
  for (int it = 0; it < 200; ++it) {
    auto A = testsupport::random_scalars(rng, static_cast<std::size_t>(testsupport::uniform(rng, 1, 6)), 10);
    auto B = testsupport::random_scalars(rng, static_cast<std::size_t>(testsupport::uniform(rng, 1, 6)), 10);
    Scalar t = testsupport::frac(testsupport::uniform(rng, -40, 40), 3);
    auto ab = rms1d(A, B, t, Variant::Uni).value;
    auto ba = rms1d(B, A, -t, Variant::Uni).value;
    EXPECT_EQ(rms1d(A, B, t, Variant::L1).value, ab + ba);
    EXPECT_EQ(rms1d(A, B, t, Variant::Linf).value, std::max(ab, ba));
  }
}

// Derivatives against exact difference quotients of the value.
TEST(Rms1d, OneSidedDerivativesMatchDifferenceQuotients) {
  std::mt19937_64 rng(83);
  for (int it = 0; it < 200; ++it) {
    auto A = testsupport::random_scalars(rng, 5, 10);
    auto B = testsupport::random_scalars(rng, 3, 10);
    Scalar t = testsupport::frac(testsupport::uniform(rng, -40, 40), 2);  // often on a breakpoint
    for (Variant v : kAll) {
      auto r = rms1d(A, B, t, v);
      Scalar h(1, 1000000);
      Scalar fwd = (rms1d(A, B, t + h, v).value - r.value) / h;
      Scalar bwd = (r.value - rms1d(A, B, t - h, v).value) / h;
      EXPECT_LT(abs(fwd - r.right), Scalar(1, 1000)) << to_string(v);
      EXPECT_LT(abs(bwd - r.left), Scalar(1, 1000)) << to_string(v);
    }
  }
}

TEST(Rms1d, NoMinimumAtABreakpointForSmoothVariants) {
  std::mt19937_64 rng(85);
  for (int it = 0; it < 100; ++it) {
    auto A = testsupport::random_scalars(rng, 6, 10);
    auto B = testsupport::random_scalars(rng, 4, 10);
    std::sort(A.begin(), A.end());
    std::sort(B.begin(), B.end());
    auto fa = step_function(A), fb = step_function(B);
    for (const auto& mu : fa.breakpoints)
      for (const auto& b : B) {
        auto r = rms1d(A, B, mu - b, Variant::Uni);
        EXPECT_LT(r.right - r.left, 0);
      }
    for (const auto& nu : fb.breakpoints)
      for (const auto& a : A) {
        auto r = rms1d(A, B, a - nu, Variant::L1);
        EXPECT_LT(r.right - r.left, 0);
      }
  }
}

TEST(Rms1d, KinkPartIsMidpointConcave) {
  std::mt19937_64 rng(87);
  for (int it = 0; it < 100; ++it) {
    auto A = testsupport::random_scalars(rng, 5, 10);
    auto B = testsupport::random_scalars(rng, 3, 10);
    Scalar x = testsupport::frac(testsupport::uniform(rng, -60, 60), 3);
    Scalar y = testsupport::frac(testsupport::uniform(rng, -60, 60), 3);
    auto kink = [&](const Scalar& t, Variant v, long w) -> Scalar { return rms1d(A, B, t, v).value - w * t * t; };
    long m = 3, n = 5;
    Scalar mid = (x + y) / 2;
    EXPECT_GE(kink(mid, Variant::Uni, m), (kink(x, Variant::Uni, m) + kink(y, Variant::Uni, m)) / 2);
    EXPECT_GE(kink(mid, Variant::L1, m + n), (kink(x, Variant::L1, m + n) + kink(y, Variant::L1, m + n)) / 2);
  }
}

TEST(LocalMinH1, Examples) {
  auto r = local_min_h1(S({0, 10}), S({0}), Variant::Uni);
  EXPECT_TRUE(r.t_star == QuadAlg(0) || r.t_star == QuadAlg(10));
  EXPECT_EQ(r.value, QuadAlg(0));
  for (Variant v : kAll) {
    auto s = local_min_h1(S({-3, 1, 4, 9}), S({-3, 1, 4, 9}), v);
    EXPECT_EQ(s.t_star, QuadAlg(0));
    EXPECT_EQ(s.value, QuadAlg(0));
  }
  auto l = local_min_h1(S({0, 10}), S({0, 10}), Variant::Linf);
  EXPECT_EQ(l.t_star, QuadAlg(0));
  EXPECT_EQ(l.value, QuadAlg(0));
  EXPECT_THROW(local_min_h1(S({0, 1}), S({2, 2}), Variant::Uni), ValidationError);
}

TEST(LocalMinH1, AgreesWithOracleAndIterationBound) {
  std::mt19937_64 rng(89);
  for (int it = 0; it < 150; ++it) {
    auto A = testsupport::random_scalars(rng, static_cast<std::size_t>(testsupport::uniform(rng, 1, 15)), 30);
    auto B = testsupport::random_scalars(rng, static_cast<std::size_t>(testsupport::uniform(rng, 1, 15)), 30);
    for (Variant v : kAll) {
      for (bool weighted : {true, false}) {
        H1Options opts;
        opts.weighted_median = weighted;
        auto r = local_min_h1(A, B, v, opts);
        auto minima = enumerate_h1_minima(A, B, v);
        EXPECT_TRUE(minima.contains(AlgPoint(r.t_star, QuadAlg(0)), r.value))
            << to_string(v) << " t=" << r.t_star.to_decimal();
        if (weighted) EXPECT_LE(r.iteration_count, log43_bound(r.total_breakpoints));
      }
    }
  }
}

TEST(LocalMinH1, LinfCrossingMinimumIsIrrational) {
  // directed sums 2t^2 + ... and a shifted one cross at an irrational t
  bool seen = false;
  std::mt19937_64 rng(91);
  for (int it = 0; it < 400 && !seen; ++it) {
    auto A = testsupport::random_scalars(rng, 4, 20);
    auto B = testsupport::random_scalars(rng, 3, 20);
    auto r = local_min_h1(A, B, Variant::Linf);
    if (!r.t_star.is_rational()) {
      seen = true;
      EXPECT_TRUE(enumerate_h1_minima(A, B, Variant::Linf).contains(AlgPoint(r.t_star, QuadAlg(0)), r.value));
    }
  }
  EXPECT_TRUE(seen);
}
