// Copyright 2026 The imdecide Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "imdecide/contour.hpp"
#include "imdecide/decision.hpp"
#include "imdecide/error.hpp"
#include "imdecide/loss.hpp"
#include "oracles.hpp"

using namespace imdecide;

TEST(Loss, SquaredAndWeighted) {
  EXPECT_DOUBLE_EQ(make_loss("squared")(2.0, 0.0), 4.0);
  EXPECT_NEAR(make_loss("weighted-squared")(0.2, 0.5), 0.36, 1e-15);
  EXPECT_THROW(make_loss("weighted-squared")(0.2, 1.5), DomainError);
  EXPECT_TRUE(std::isinf(make_loss("weighted-squared")(0.2, 0.0)));
  EXPECT_DOUBLE_EQ(make_loss("weighted-squared")(0.0, 0.0), 0.0);
}

TEST(Loss, ZeroOne) {
  LossParams p;
  p.hypothesis = {0.0, 0.5};
  const auto l = make_loss("zero-one", p);
  EXPECT_EQ(l(1.0, 0.3), 1.0);
  EXPECT_EQ(l(0.0, 0.3), 0.0);
  EXPECT_EQ(l(0.0, 0.7), 1.0);
  EXPECT_THROW(l(0.5, 0.3), DomainError);
  EXPECT_FALSE(l.convex());
}

TEST(Loss, GroupInvariantSkewNormal) {
  LossParams p;
  p.base = make_auxiliary(Distribution::skew_normal(3.0));
  const auto l = make_loss("group-invariant", p);
  EXPECT_NEAR(l(0.0, 0.0), -0.2 * std::log((*p.base)(0.0)), 1e-15);
  const double m = p.base->mode();
  EXPECT_NEAR(l(m, 0.0), 0.0, 1e-12);
  EXPECT_TRUE(l.convex());
}

TEST(Loss, GroupInvariantStudentTNotConvex) {
  LossParams p;
  p.base = make_auxiliary(Distribution::student_t(3.0));
  EXPECT_FALSE(make_loss("group-invariant", p).convex());
}

TEST(Loss, ConstantAndScaled) {
  LossParams p;
  p.c = 2.5;
  const auto l = make_loss("constant", p);
  EXPECT_EQ(l(3.0, -8.0), 2.5);
  EXPECT_EQ(l.scaled(2.0)(0.0, 0.0), 5.0);
  EXPECT_THROW(l.scaled(0.0), InvalidArgumentError);
  EXPECT_THROW(make_loss("huber"), InvalidArgumentError);
}

TEST(Loss, NonNegative) {
  LossParams p;
  p.base = make_auxiliary(Distribution::skew_normal(3.0));
  for (const char* tag : {"squared", "group-invariant", "constant"}) {
    const auto l = make_loss(tag, p);
    for (double a = -3.0; a <= 3.0; a += 0.5)
      for (double t = -3.0; t <= 3.0; t += 0.25) EXPECT_GE(l(a, t), 0.0) << tag;
  }
  const auto w = make_loss("weighted-squared");
  for (double a = 0.0; a <= 1.0; a += 0.1)
    for (double t = 0.01; t < 1.0; t += 0.01) EXPECT_GE(w(a, t), 0.0);
}

TEST(Loss, ConvexFlagHoldsOnGrid) {
  LossParams p;
  p.base = make_auxiliary(Distribution::skew_normal(3.0));
  for (const char* tag : {"squared", "weighted-squared", "group-invariant"}) {
    const auto l = make_loss(tag, p);
    ASSERT_TRUE(l.convex()) << tag;
    const bool unit = std::string(tag) == "weighted-squared";
    const double lo = unit ? 0.01 : -4.0, hi = unit ? 0.99 : 4.0;
    const int m = 400;
    const double h = (hi - lo) / m;
    for (double a : {0.1, 0.4, 0.8}) {
      for (int i = 1; i < m; ++i) {
        const double t = lo + i * h;
        EXPECT_GE(l(a, t - h) - 2 * l(a, t) + l(a, t + h), -1e-9) << tag << " " << a << " " << t;
      }
    }
  }
}

TEST(Loss, SupOverRegionMatchesGridSearch) {
  const auto c = binomial_contour(18, 7);
  const auto l = make_loss("weighted-squared");
  const auto r = c.region(0.5);
  const double grid = oracle::grid_max([&](double t) { return l(0.2, t); }, r.lo, r.hi, 10000);
  EXPECT_NEAR(l.sup_over(0.2, r), grid, 1e-6);
}

TEST(Loss, SupOverEdgeCases) {
  const auto l = make_loss("squared");
  EXPECT_EQ(l.sup_over(1.0, PlausibilityRegion{}), 0.0);
  PlausibilityRegion wide{0.0, -INFINITY, 2.0, false, false};
  EXPECT_TRUE(std::isinf(l.sup_over(1.0, wide)));

  LossParams p;
  p.hypothesis = {0.0, 0.5};
  const auto z = make_loss("zero-one", p);
  EXPECT_EQ(z.sup_over(1.0, {0.1, 0.6, 0.9, false, false}), 0.0);
  EXPECT_EQ(z.sup_over(1.0, {0.1, 0.4, 0.9, false, false}), 1.0);
  EXPECT_EQ(z.sup_over(1.0, {0.1, 0.5, 0.9, false, false}), 0.0);
  EXPECT_EQ(z.sup_over(1.0, {0.1, 0.5, 0.9, true, false}), 1.0);
  EXPECT_EQ(z.sup_over(0.0, {0.1, 0.1, 0.4, false, false}), 0.0);
  EXPECT_EQ(z.sup_over(0.0, {0.1, 0.1, 0.6, false, false}), 1.0);
}
