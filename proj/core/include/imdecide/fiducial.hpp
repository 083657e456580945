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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "imdecide/contour.hpp"
#include "imdecide/dist.hpp"
#include "imdecide/loss.hpp"
#include "imdecide/rng.hpp"

namespace imdecide {

enum class ConfidenceKind { Location, Beta, PointMass };

// A data-dependent probability for the parameter. Location kinds are the law
// of theta = center - scale * U; scale zero is a point mass at center.
class ConfidenceDistribution {
 public:
  static ConfidenceDistribution location(const Distribution& aux_law, double center, double scale);
  static ConfidenceDistribution beta(double a, double b);
  static ConfidenceDistribution point_mass(double at);

  ConfidenceKind kind() const { return kind_; }
  std::string describe() const;
  double center() const { return center_; }
  double scale() const { return scale_; }
  const Distribution& law() const { return law_; }

  double density(double theta) const;
  double cdf(double theta) const;
  double mean() const;
  std::pair<double, double> support() const;
  double sample(Rng& rng) const;

  // Mass of the region, by adaptive quadrature of the density to 1e-8.
  double probability(const PlausibilityRegion& region) const;

 private:
  ConfidenceDistribution(ConfidenceKind kind, Distribution law, double center, double scale)
      : kind_(kind), law_(std::move(law)), center_(center), scale_(scale) {}

  ConfidenceKind kind_;
  Distribution law_;
  double center_;
  double scale_;
};

// theta = y - U.
ConfidenceDistribution location_fiducial(const Distribution& aux_law, double y);
// theta = y - m - s (U - m) with m the mode of U: the fiducial shrunk about the
// contour mode by s >= 0.
ConfidenceDistribution scaled_location_fiducial(const Distribution& aux_law, double y, double s);
// Beta(y + 1/2, n - y + 1/2). Throws DomainError unless 0 <= y <= n.
ConfidenceDistribution binomial_fiducial(int n, int y);

inline constexpr double kExpectedLossTolerance = 1e-10;

// Q l_a by quadrature. Throws NonPrevisibleError when the integral diverges.
double expected_loss(const ConfidenceDistribution& q, const LossFunction& loss, double a,
                     double tol = kExpectedLossTolerance);

inline constexpr double kCredalSlack = 1e-6;

struct CredalReport {
  bool pass = true;
  // Smallest slack seen: Q{C_alpha} - (1 - alpha), or Q*{C^c} - Q{C^c}.
  double worst_margin = 0.0;
  double worst_alpha = 0.0;
  std::vector<double> masses;
};

// pass iff Q{C_alpha(y)} >= 1 - alpha - 1e-6 on every grid level.
CredalReport confidence_distribution_test(const ConfidenceDistribution& q,
                                          const PossibilityContour& contour,
                                          const std::vector<double>& alphas);

// pass iff Q{C_alpha(y)^c} <= Q*{C_alpha(y)^c} + 1e-6 on every grid level.
CredalReport stochastic_order_check(const ConfidenceDistribution& q,
                                    const ConfidenceDistribution& q_star,
                                    const PossibilityContour& contour,
                                    const std::vector<double>& alphas);

// eta(z) = P{f(U) < z} for z in [0, sup f]; DomainError otherwise.
double eta(const Distribution& aux_law, double z);
// The z with eta(z) = p, by bisection.
double eta_inverse(const Distribution& aux_law, double p);

}  // namespace imdecide
