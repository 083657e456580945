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
#include <limits>
#include <vector>

#include "imdecide/choquet.hpp"
#include "imdecide/contour.hpp"
#include "imdecide/decision.hpp"
#include "imdecide/error.hpp"
#include "imdecide/fiducial.hpp"
#include "imdecide/oracle.hpp"
#include "imdecide/rng.hpp"
#include "oracles.hpp"

using namespace imdecide;

TEST(QuasiOracle, AtModeIsLoss) {
  const auto c = location_contour(Distribution::student_t(3.0), 0.5);
  const auto l = make_loss("squared");
  EXPECT_NEAR(quasi_oracle(c, l, 1.7, 0.5), l(1.7, 0.5), 1e-12);
  EXPECT_NEAR(modified_quasi_oracle(c, l, 1.7, 0.5), level_sup(c, l, 1.7, 0.5), 1e-12);
}

TEST(QuasiOracle, StudentT3ClosedForm) {
  const auto c = location_contour(Distribution::student_t(3.0), 0.0);
  const auto l = make_loss("squared");
  EXPECT_NEAR(quasi_oracle(c, l, 2.0, 1.0), 9.0, 1e-8);
  const double q = oracle::t_upper(3.0, oracle::t_contour(3.0, 1.0) / 4.0);
  EXPECT_NEAR(modified_quasi_oracle(c, l, 2.0, 1.0), (2.0 + q) * (2.0 + q), 1e-8);
}

TEST(QuasiOracle, DominatesLoss) {
  const auto c = location_contour(Distribution::skew_normal(3.0), 0.2);
  const auto l = make_loss("squared");
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const double a = -3.0 + 6.0 * rng.uniform();
    const double t = -3.0 + 6.0 * rng.uniform();
    EXPECT_GE(quasi_oracle(c, l, a, t), l(a, t) - 1e-9) << a << " " << t;
  }
}

TEST(QuasiOracle, ModifiedDominatesPlain) {
  const auto c = binomial_contour(18, 7);
  const auto l = make_loss("weighted-squared");
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 30; ++j) {
      const double a = 0.02 + 0.96 * i / 29.0;
      const double t = 0.02 + 0.96 * j / 29.0;
      EXPECT_GE(modified_quasi_oracle(c, l, a, t), quasi_oracle(c, l, a, t));
    }
  }
}

TEST(MinRatio, ConstantLossSingleAction) {
  LossParams p;
  p.c = 2.0;
  const auto l = make_loss("constant", p);
  const auto c = location_contour(Distribution::student_t(3.0), 0.0);
  RatioSpec spec{{0.3}, RatioVariant::Plain};
  EXPECT_NEAR(min_ratio(c, l, spec, 1.0), 1.0, 1e-12);
  spec.variant = RatioVariant::Modified;
  EXPECT_NEAR(min_ratio(c, l, spec, 1.0), 1.0, 1e-12);
  EXPECT_THROW(min_ratio(c, l, RatioSpec{}, 1.0), EmptyRequestError);
}

TEST(MinRatio, BruteForceStudentT3) {
  const double y = 0.7, theta = 0.0;
  const auto c = location_contour(Distribution::student_t(3.0), y);
  const auto l = make_loss("squared");
  const auto spec = default_ratio_spec(c, RatioVariant::Plain, 101);
  ASSERT_EQ(spec.actions.size(), 101u);
  // layer-cake integral of the closed-form h by Boost quadrature
  const double level = oracle::t_contour(3.0, y - theta);
  double best = std::numeric_limits<double>::infinity();
  for (double a : spec.actions) {
    const double d = std::abs(y - a);
    const double upper = oracle::integrate(
        [&](double alpha) {
          const double q = oracle::t_upper(3.0, alpha / 2.0);
          return (d + q) * (d + q);
        },
        0.0, 1.0);
    const double q = oracle::t_upper(3.0, level / 2.0);
    const double denom = (d + q) * (d + q);
    best = std::min(best, upper / denom);
  }
  EXPECT_NEAR(min_ratio(c, l, spec, theta), best, 1e-4 * best);
}

TEST(MinRatio, RatioAtLeastPlausibility) {
  const auto l = make_loss("squared");
  for (double y : {-1.0, 0.0, 0.6}) {
    const auto c = location_contour(Distribution::student_t(3.0), y);
    const auto spec = default_ratio_spec(c, RatioVariant::Plain, 41);
    for (double theta : {-2.0, -0.3, 0.4, 1.5}) {
      EXPECT_GE(min_ratio(c, l, spec, theta), c(theta) - 1e-6) << y << " " << theta;
    }
  }
}

TEST(MinRatio, ModifiedBelowPlain) {
  const auto c = binomial_contour(18, 7);
  const auto l = make_loss("weighted-squared");
  const auto plain = default_ratio_spec(c, RatioVariant::Plain, 41);
  const auto modified = default_ratio_spec(c, RatioVariant::Modified, 41);
  for (double theta : {0.1, 0.3, 0.45, 0.7}) {
    EXPECT_LE(min_ratio(c, l, modified, theta), min_ratio(c, l, plain, theta) + 1e-12);
  }
}

TEST(MinRatio, NonPrevisibleActionsAreSkipped) {
  const auto c = binomial_contour(18, 0);
  const auto l = make_loss("weighted-squared");
  const auto spec = default_ratio_spec(c, RatioVariant::Modified, 11);
  EXPECT_TRUE(std::isinf(min_ratio(c, l, spec, 0.2)));
}

TEST(FiducialMinRatio, CredalMemberBelowIm) {
  const auto t3 = Distribution::student_t(3.0);
  const auto c = location_contour(t3, 0.3);
  const auto l = make_loss("squared");
  const auto spec = default_ratio_spec(c, RatioVariant::Modified, 41);
  const auto q = location_fiducial(t3, 0.3);
  for (double theta : {-1.5, 0.0, 0.9, 2.5}) {
    EXPECT_LE(fiducial_min_ratio(q, l, spec, theta, c), min_ratio(c, l, spec, theta) + 1e-9);
  }
}

TEST(FiducialMinRatio, BinomialBelowIm) {
  const auto c = binomial_contour(50, 15);
  const auto q = binomial_fiducial(50, 15);
  const auto l = make_loss("weighted-squared");
  const auto spec = default_ratio_spec(c, RatioVariant::Modified, 41);
  EXPECT_LE(fiducial_min_ratio(q, l, spec, 0.3, c), min_ratio(c, l, spec, 0.3));
}
