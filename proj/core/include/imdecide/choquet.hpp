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
#include <utility>
#include <vector>

#include "imdecide/contour.hpp"
#include "imdecide/loss.hpp"

namespace imdecide {

inline constexpr double kDefaultChoquetTolerance = 1e-6;

struct ChoquetResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t nodes = 0;
};

// h(alpha) = sup{l_a(theta) : pi(theta) > alpha}. Zero for alpha >= 1,
// +inf when the loss is unbounded on the region. Throws DomainError for
// alpha outside [0, 1].
double level_sup(const PossibilityContour& contour, const LossFunction& loss, double a,
                 double alpha);

// Upper expectation of l_a, the integral of h over [0, 1], to relative
// accuracy `tol`. Throws NonPrevisibleError when alpha h(alpha) does not
// decay toward alpha = 0.
ChoquetResult choquet_upper(const PossibilityContour& contour, const LossFunction& loss, double a,
                            double tol = kDefaultChoquetTolerance);

// choquet_upper at each action, in grid order. Throws EmptyRequestError for
// an empty grid.
std::vector<std::pair<double, ChoquetResult>> upper_risk_curve(
    const PossibilityContour& contour, const LossFunction& loss, const std::vector<double>& actions,
    double tol = kDefaultChoquetTolerance, unsigned threads = 1);

}  // namespace imdecide
