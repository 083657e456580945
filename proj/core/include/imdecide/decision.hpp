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

#include <memory>
#include <string>

#include "imdecide/choquet.hpp"
#include "imdecide/contour.hpp"
#include "imdecide/fiducial.hpp"
#include "imdecide/loss.hpp"

namespace imdecide {

struct ActionSearchSpec {
  double lo = 0.0;
  double hi = 1.0;
  // Absolute tolerance on the returned action.
  double tol = 1e-8;
  // Golden-section runs on this many equal sub-brackets.
  int starts = 5;
  // Relative accuracy of each risk evaluation.
  double risk_tol = 1e-9;

  // Throws InvalidArgumentError unless lo < hi, tol > 0, starts >= 1.
  void validate() const;
};

// y +- 10 scale for location contours, [0.001, 0.999] for the binomial.
ActionSearchSpec default_search_spec(const PossibilityContour& contour);
ActionSearchSpec default_search_spec(const ConfidenceDistribution& q);

struct LossParams {
  // Group-invariant coefficient, or the constant loss value.
  double c = 0.2;
  Interval hypothesis{0.0, 0.5};
  std::shared_ptr<const AuxiliaryContour> base;
};

// Tags: squared, weighted-squared, zero-one, group-invariant, constant.
LossFunction make_loss(const std::string& tag, const LossParams& params = {});

struct ActionChoice {
  double action = 0.0;
  double value = 0.0;
};

// Minimizes a -> choquet_upper(contour, loss, a) over the bracket. Ties go to
// the smallest action. Throws NonPrevisibleError if any evaluated action is
// not previsible.
ActionChoice minimize_upper_loss(const PossibilityContour& contour, const LossFunction& loss,
                                 const ActionSearchSpec& spec);

ActionChoice minimize_expected_loss(const ConfidenceDistribution& q, const LossFunction& loss,
                                    const ActionSearchSpec& spec);

inline constexpr double kRiskChainTolerance = 1e-4;

struct RiskChainReport {
  // Level sets of the loss at the chosen action coincide with the regions.
  bool aligned = false;
  double alignment_gap = 0.0;
  bool pass = false;
  double upper_action = 0.0;
  double fiducial_action = 0.0;
  double min_upper = 0.0;          // inf_a upper risk
  double upper_at_action = 0.0;    // upper risk at the chosen action
  double fiducial_at_action = 0.0; // Q* risk at the chosen action
  double min_fiducial = 0.0;       // inf_a Q* risk
  double worst_relative_gap = 0.0;
  std::string message;
};

// Checks inf upper risk = upper risk at a = Q* risk at a = inf Q* risk at the
// upper-risk minimizer a. A loss whose level sets at a do not match the
// plausibility regions gives aligned = false and pass = false.
RiskChainReport theorem_risk_check(const PossibilityContour& contour,
                                   const ConfidenceDistribution& q_star, const LossFunction& loss,
                                   const ActionSearchSpec& spec);

}  // namespace imdecide
