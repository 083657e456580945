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
#include <numeric>
#include <vector>

#include "imdecide/dist.hpp"
#include "imdecide/error.hpp"
#include "imdecide/rng.hpp"
#include "oracles.hpp"

using imdecide::Distribution;
using imdecide::Rng;

namespace {

std::vector<Distribution> continuous_laws() {
  return {Distribution::normal(), Distribution::normal(1.5, 0.5), Distribution::student_t(3.0),
          Distribution::student_t(1.0), Distribution::skew_normal(3.0),
          Distribution::skew_normal(-2.0), Distribution::beta(8.0, 11.0),
          Distribution::beta(0.5, 0.5), Distribution::uniform01()};
}

}  // namespace

TEST(Density, KnownValues) {
  EXPECT_NEAR(Distribution::normal().density(0.0), 0.3989422804014327, 1e-15);
  EXPECT_NEAR(Distribution::student_t(3.0).density(0.0), 0.3675525969478614, 1e-14);
  // normalized 2 phi(u) Phi(3u)
  EXPECT_NEAR(Distribution::skew_normal(3.0).density(0.0), 0.3989422804014327, 1e-15);
}

TEST(Density, MatchesBoost) {
  for (double u : {-4.0, -1.3, -0.2, 0.0, 0.7, 2.5, 9.0}) {
    EXPECT_NEAR(Distribution::student_t(3.0).density(u), oracle::t_pdf(3.0, u), 1e-14) << u;
    EXPECT_NEAR(Distribution::skew_normal(3.0).density(u), oracle::sn_pdf(3.0, u), 1e-14) << u;
  }
}

TEST(Density, IntegratesToOne) {
  for (const auto& d : continuous_laws()) {
    const auto [lo, hi] = d.support();
    double total;
    if (std::isfinite(lo)) {
      total = oracle::integrate([&](double u) { return d.density(u); }, lo, hi);
    } else {
      total = oracle::integrate_line([&](double u) { return d.density(u); });
    }
    EXPECT_NEAR(total, 1.0, 1e-8) << d.describe();
  }
}

TEST(Density, NonNegativeAndZeroOutsideSupport) {
  for (const auto& d : continuous_laws()) {
    for (double u = -20.0; u <= 20.0; u += 0.37) EXPECT_GE(d.density(u), 0.0);
  }
  EXPECT_EQ(Distribution::beta(2.0, 3.0).density(-0.1), 0.0);
  EXPECT_EQ(Distribution::beta(2.0, 3.0).density(1.1), 0.0);
}

TEST(Density, RejectsNonFinite) {
  EXPECT_THROW(Distribution::normal().density(NAN), imdecide::DomainError);
}

TEST(Cdf, KnownValues) {
  EXPECT_DOUBLE_EQ(Distribution::normal().cdf(0.0), 0.5);
  EXPECT_NEAR(Distribution::student_t(3.0).cdf(1e12), 1.0, 1e-15);
  EXPECT_NEAR(Distribution::student_t(3.0).cdf(2.0), oracle::t_cdf(3.0, 2.0), 1e-14);
  // Owen's T closed form at zero: 1/2 - arctan(k)/pi.
  EXPECT_NEAR(Distribution::skew_normal(3.0).cdf(0.0), 0.5 - std::atan(3.0) / oracle::kPi, 1e-13);
}

TEST(Cdf, SkewNormalMatchesBoostOwensT) {
  for (double k : {-3.0, 0.5, 3.0, 8.0}) {
    const auto d = Distribution::skew_normal(k);
    for (double u = -5.0; u <= 5.0; u += 0.25) {
      EXPECT_NEAR(d.cdf(u), oracle::sn_cdf(k, u), 1e-12) << k << " " << u;
    }
  }
}

TEST(Cdf, SkewNormalQuadrature) {
  const auto d = Distribution::skew_normal(3.0);
  const double by_quadrature = oracle::integrate(
      [](double u) { return 2.0 * oracle::sn_pdf(0.0, u) * 0.5 * std::erfc(-3.0 * u / std::sqrt(2.0)); },
      -40.0, 0.0);
  EXPECT_NEAR(d.cdf(0.0), by_quadrature, 1e-12);
}

TEST(Cdf, MonotoneAndComplement) {
  for (const auto& d : continuous_laws()) {
    double prev = 0.0;
    for (double u = -15.0; u <= 15.0; u += 0.05) {
      const double c = d.cdf(u);
      EXPECT_GE(c, prev - 1e-15) << d.describe() << " " << u;
      EXPECT_NEAR(c + d.ccdf(u), 1.0, 1e-14);
      prev = c;
    }
  }
}

TEST(Quantile, RoundTrip) {
  for (const auto& d : continuous_laws()) {
    for (int i = 1; i <= 99; ++i) {
      const double u = d.quantile(i / 100.0);
      EXPECT_NEAR(d.quantile(d.cdf(u)), u, 1e-9 * std::max(1.0, std::abs(u))) << d.describe();
    }
  }
}

TEST(Quantile, KnownValues) {
  EXPECT_NEAR(Distribution::normal().quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(Distribution::student_t(3.0).quantile(0.5), 0.0, 1e-14);
  EXPECT_LT(Distribution::beta(8.0, 11.0).quantile(1.0 - 1e-15), 1.0);
  EXPECT_NEAR(Distribution::student_t(3.0).upper_quantile(1e-10), oracle::t_upper(3.0, 1e-10),
              1e-8 * oracle::t_upper(3.0, 1e-10));
}

TEST(Quantile, RejectsOutsideUnitInterval) {
  EXPECT_THROW(Distribution::normal().quantile(0.0), imdecide::DomainError);
  EXPECT_THROW(Distribution::normal().quantile(1.0), imdecide::DomainError);
  EXPECT_THROW(Distribution::normal().quantile(-0.2), imdecide::DomainError);
}

TEST(Quantile, BinomialIsSmallestCount) {
  const auto d = Distribution::binomial(50, 0.3);
  for (double p : {0.01, 0.2, 0.5, 0.9, 0.999}) {
    const double k = d.quantile(p);
    EXPECT_GE(d.cdf(k), p);
    if (k > 0) EXPECT_LT(d.cdf(k - 1), p);
  }
}

TEST(Moments, StudentTAndSkewNormal) {
  const auto t3 = Distribution::student_t(3.0);
  EXPECT_NEAR(t3.variance(), 3.0, 1e-14);
  const double e_abs = oracle::integrate_line([](double u) { return std::abs(u) * oracle::t_pdf(3.0, u); });
  EXPECT_NEAR(e_abs, 2.0 * std::sqrt(3.0) / oracle::kPi, 1e-9);
  EXPECT_TRUE(std::isinf(Distribution::student_t(2.0).variance()));

  const auto sn = Distribution::skew_normal(3.0);
  const double delta = 3.0 / std::sqrt(10.0);
  EXPECT_NEAR(sn.mean(), delta * std::sqrt(2.0 / oracle::kPi), 1e-14);
  EXPECT_NEAR(sn.variance(), 1.0 - 2.0 * delta * delta / oracle::kPi, 1e-14);
}

TEST(Mode, SkewNormalStationary) {
  const auto sn = Distribution::skew_normal(3.0);
  const double m = sn.mode();
  const double h = 1e-5;
  EXPECT_NEAR((sn.log_density(m + h) - sn.log_density(m - h)) / (2 * h), 0.0, 1e-7);
  EXPECT_THROW(Distribution::beta(0.5, 0.5).mode(), imdecide::UnsupportedModelError);
}

TEST(Sample, SeedReproducible) {
  const auto d = Distribution::skew_normal(3.0);
  Rng a(7), b(7), c(8);
  const auto xa = d.sample(a, 100);
  EXPECT_EQ(xa, d.sample(b, 100));
  EXPECT_NE(xa, d.sample(c, 100));
}

TEST(Sample, NormalMean) {
  Rng rng(20260101);
  const auto x = Distribution::normal().sample(rng, 100000);
  EXPECT_NEAR(std::accumulate(x.begin(), x.end(), 0.0) / x.size(), 0.0, 0.02);
}

TEST(Sample, BinomialSupport) {
  Rng rng(3);
  const double k = Distribution::binomial(50, 0.3).sample(rng);
  EXPECT_EQ(k, std::floor(k));
  EXPECT_GE(k, 0.0);
  EXPECT_LE(k, 50.0);
}

TEST(Sample, SkewNormalPositiveSkewness) {
  Rng rng(11);
  const auto x = Distribution::skew_normal(3.0).sample(rng, 100000);
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double m2 = 0, m3 = 0;
  for (double v : x) {
    m2 += (v - m) * (v - m);
    m3 += (v - m) * (v - m) * (v - m);
  }
  EXPECT_GT(m3 / x.size() / std::pow(m2 / x.size(), 1.5), 0.3);
}

TEST(Sample, EmptyRequest) {
  Rng rng(1);
  EXPECT_THROW(Distribution::normal().sample(rng, 0), imdecide::EmptyRequestError);
}

TEST(Construction, RejectsBadParameters) {
  EXPECT_THROW(Distribution::student_t(0.0), imdecide::InvalidArgumentError);
  EXPECT_THROW(Distribution::normal(0.0, -1.0), imdecide::InvalidArgumentError);
  EXPECT_THROW(Distribution::beta(0.0, 1.0), imdecide::InvalidArgumentError);
  EXPECT_THROW(Distribution::binomial(-1, 0.5), imdecide::InvalidArgumentError);
  EXPECT_THROW(Distribution::binomial(5, 1.5), imdecide::InvalidArgumentError);
}
