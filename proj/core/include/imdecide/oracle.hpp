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

#include <vector>

#include "imdecide/contour.hpp"
#include "imdecide/fiducial.hpp"
#include "imdecide/loss.hpp"

namespace imdecide {

enum class RatioVariant { Plain, Modified };

const char* to_string(RatioVariant variant);

struct RatioSpec {
  std::vector<double> actions;
  RatioVariant variant = RatioVariant::Modified;
  // Relative accuracy of each numerator.
  double risk_tol = 1e-6;
};

inline constexpr int kDefaultRatioPoints = 101;

// Location contours: `points` actions evenly spread over y +- 10 scale.
// Binomial: evenly spread over [0.001, 0.999].
RatioSpec default_ratio_spec(const PossibilityContour& contour, RatioVariant variant,
                             int points = kDefaultRatioPoints);

// L_a(y, theta) = sup{l_a(t) : pi_y(t) > pi_y(theta)}.
double quasi_oracle(const PossibilityContour& contour, const LossFunction& loss, double a,
                    double theta);

// Same at the halved level pi_y(theta) / 2.
double modified_quasi_oracle(const PossibilityContour& contour, const LossFunction& loss, double a,
                             double theta);

// min over the grid of upper risk / quasi-oracle assessment. A zero
// denominator or a non-previsible numerator makes that action's ratio +inf.
// Throws EmptyRequestError for an empty grid.
double min_ratio(const PossibilityContour& contour, const LossFunction& loss,
                 const RatioSpec& spec, double theta);

// As min_ratio with the Q expected loss as the numerator.
double fiducial_min_ratio(const ConfidenceDistribution& q, const LossFunction& loss,
                          const RatioSpec& spec, double theta, const PossibilityContour& contour);

}  // namespace imdecide
