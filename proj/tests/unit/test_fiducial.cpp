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
#include <random>
#include <vector>

#include "imdecide/contour.hpp"
#include "imdecide/decision.hpp"
#include "imdecide/error.hpp"
#include "imdecide/fiducial.hpp"
#include "imdecide/rng.hpp"
#include "oracles.hpp"

using namespace imdecide;

namespace {

std::vector<double> alpha_grid() {
  std::vector<double> a;
  for (int i = 1; i <= 99; ++i) a.push_back(i / 100.0);
  return a;
}

}  // namespace

TEST(LocationFiducial, StudentT3) {
  const auto q = location_fiducial(Distribution::student_t(3.0), 0.0);
  for (double t : {-3.0, -0.4, 0.0, 1.1}) EXPECT_NEAR(q.density(t), oracle::t_pdf(3.0, t), 1e-14);
  EXPECT_DOUBLE_EQ(q.cdf(0.0), 0.5);
  EXPECT_DOUBLE_EQ(location_fiducial(Distribution::student_t(3.0), 2.2).cdf(2.2), 0.5);
}

TEST(LocationFiducial, SkewNormalReflected) {
  const auto q = location_fiducial(Distribution::skew_normal(3.0), 0.0);
  for (double t : {-2.0, -0.3, 0.5, 1.5}) EXPECT_NEAR(q.density(t), oracle::sn_pdf(3.0, -t), 1e-14);
  const double total = oracle::integrate_line([&](double t) { return q.density(t); });
  EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(BinomialFiducial, Shapes) {
  const auto q = binomial_fiducial(18, 7);
  EXPECT_NEAR(q.mean(), 7.5 / 19.0, 1e-15);
  EXPECT_NEAR(q.density(0.3), boost::math::pdf(boost::math::beta_distribution<double>(7.5, 11.5), 0.3),
              1e-12);
  EXPECT_NEAR(binomial_fiducial(2, 1).cdf(0.5), 0.5, 1e-14);
  const auto q50 = binomial_fiducial(50, 15);
  EXPECT_EQ(q50.law(), Distribution::beta(15.5, 35.5));
  EXPECT_THROW(binomial_fiducial(18, 19), DomainError);
}

TEST(ExpectedLoss, LocationSquaredIsBiasPlusVariance) {
  const auto l = make_loss("squared");
  for (double y : {-1.0, 0.0, 2.5}) {
    const auto q = location_fiducial(Distribution::student_t(3.0), y);
    for (double a : {y, y + 0.7, y - 3.0}) {
      EXPECT_NEAR(expected_loss(q, l, a), (y - a) * (y - a) + 3.0, 1e-9) << y << " " << a;
    }
  }
}

TEST(ExpectedLoss, AtMeanIsVariance) {
  const auto q = location_fiducial(Distribution::skew_normal(3.0), 0.3);
  EXPECT_NEAR(expected_loss(q, make_loss("squared"), q.mean()),
              Distribution::skew_normal(3.0).variance(), 1e-10);
}

TEST(ExpectedLoss, BetaWeightedMonteCarlo) {
  const auto q = binomial_fiducial(18, 7);
  const auto l = make_loss("weighted-squared");
  std::mt19937_64 engine(99);
  std::gamma_distribution<double> ga(7.5), gb(11.5);
  const int m = 1000000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < m; ++i) {
    const double x = ga(engine);
    const double t = x / (x + gb(engine));
    const double v = l(0.2, t);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / m;
  const double se = std::sqrt((sum2 / m - mean * mean) / m);
  EXPECT_NEAR(expected_loss(q, l, 0.2), mean, 3.0 * se);
}

TEST(ExpectedLoss, NonPrevisible) {
  const auto l = make_loss("squared");
  EXPECT_THROW(expected_loss(location_fiducial(Distribution::student_t(2.0), 0.0), l, 0.0),
               NonPrevisibleError);
  EXPECT_THROW(expected_loss(binomial_fiducial(18, 0), make_loss("weighted-squared"), 0.3),
               NonPrevisibleError);
}

TEST(Probability, MatchesCdfDifference) {
  const auto q = location_fiducial(Distribution::skew_normal(3.0), 0.0);
  PlausibilityRegion r{0.1, -0.8, 1.3, false, false};
  EXPECT_NEAR(q.probability(r), q.cdf(1.3) - q.cdf(-0.8), 1e-8);
}

TEST(CredalTest, LocationFiducialIdentity) {
  for (const auto& law : {Distribution::student_t(3.0), Distribution::skew_normal(3.0)}) {
    const auto c = location_contour(law, 0.4);
    const auto q = location_fiducial(law, 0.4);
    const auto report = confidence_distribution_test(q, c, alpha_grid());
    EXPECT_TRUE(report.pass);
    for (std::size_t i = 0; i < report.masses.size(); ++i) {
      EXPECT_NEAR(report.masses[i], 1.0 - alpha_grid()[i], 1e-6);
    }
  }
}

TEST(CredalTest, PointMassAtModePasses) {
  const auto c = location_contour(Distribution::skew_normal(3.0), 0.0);
  const auto q = ConfidenceDistribution::point_mass(c.mode_interval().lo);
  EXPECT_TRUE(confidence_distribution_test(q, c, alpha_grid()).pass);
}

TEST(CredalTest, WideScaledFiducialFails) {
  const auto t3 = Distribution::student_t(3.0);
  const auto c = location_contour(t3, 0.0);
  const auto report = confidence_distribution_test(scaled_location_fiducial(t3, 0.0, 2.0), c, alpha_grid());
  EXPECT_FALSE(report.pass);
  EXPECT_LT(report.worst_alpha, 0.5);
  // direct mass of the s = 2 law on C_alpha at the failing level
  const double q = oracle::t_upper(3.0, report.worst_alpha / 2.0);
  const double mass = 2.0 * oracle::t_cdf(3.0, q / 2.0) - 1.0;
  EXPECT_LT(mass, 1.0 - report.worst_alpha);
}

TEST(StochasticOrder, ScaledPassesShiftedFails) {
  const auto t3 = Distribution::student_t(3.0);
  const auto c = location_contour(t3, 0.0);
  const auto q_star = location_fiducial(t3, 0.0);
  EXPECT_TRUE(stochastic_order_check(scaled_location_fiducial(t3, 0.0, 0.5), q_star, c, alpha_grid()).pass);
  const auto same = stochastic_order_check(q_star, q_star, c, alpha_grid());
  EXPECT_TRUE(same.pass);
  EXPECT_NEAR(same.worst_margin, 0.0, 1e-9);
  const auto shifted = ConfidenceDistribution::location(t3, 1.0, 1.0);
  EXPECT_FALSE(stochastic_order_check(shifted, q_star, c, alpha_grid()).pass);
}

TEST(Eta, EndsAndInverse) {
  const auto t3 = Distribution::student_t(3.0);
  const double peak = t3.density(0.0);
  EXPECT_NEAR(eta(t3, peak), 1.0, 1e-12);
  EXPECT_NEAR(eta(t3, 0.0), 0.0, 1e-15);
  EXPECT_THROW(eta(t3, 2.0 * peak), DomainError);
  for (double p : {0.05, 0.3, 0.8}) EXPECT_NEAR(eta(t3, eta_inverse(t3, p)), p, 1e-10);
}

TEST(Eta, DensityCutRepresentsRegion) {
  // {theta : f(y - theta) > eta^{-1}(alpha)} = {theta : pi_y(theta) > alpha}
  for (const auto& law : {Distribution::student_t(3.0), Distribution::skew_normal(3.0)}) {
    const double y = 0.3;
    const auto c = location_contour(law, y);
    for (double alpha : {0.05, 0.2, 0.6}) {
      const double z = eta_inverse(law, alpha);
      for (double t = -6.0; t <= 6.0; t += 0.01) {
        const double gap = c(t) - alpha;
        if (std::abs(gap) < 1e-7) continue;
        EXPECT_EQ(law.density(y - t) > z, gap > 0) << law.describe() << " " << alpha << " " << t;
      }
    }
  }
}
