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

#include "imdecide/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "imdecide/choquet.hpp"
#include "imdecide/decision.hpp"
#include "imdecide/error.hpp"

namespace imdecide {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ratio(double numerator, double denominator) {
  if (denominator == 0.0 || !std::isfinite(numerator)) return kInf;
  return numerator / denominator;
}

double assessment(const PossibilityContour& contour, const LossFunction& loss, double a,
                  double theta, RatioVariant variant) {
  return variant == RatioVariant::Plain ? quasi_oracle(contour, loss, a, theta)
                                        : modified_quasi_oracle(contour, loss, a, theta);
}

double minimize(const PossibilityContour& contour, const LossFunction& loss, const RatioSpec& spec,
                double theta, const std::function<double(double)>& numerator) {
  if (spec.actions.empty()) throw EmptyRequestError("min_ratio: empty action grid");
  if (std::isnan(theta)) throw DomainError("min_ratio: NaN parameter");
  double best = kInf;
  for (double a : spec.actions) {
    const double den = assessment(contour, loss, a, theta, spec.variant);
    if (den == 0.0) continue;
    double num;
    try {
      num = numerator(a);
    } catch (const NonPrevisibleError&) {
      continue;
    }
    best = std::min(best, ratio(num, den));
  }
  return best;
}

}  // namespace

const char* to_string(RatioVariant variant) {
  return variant == RatioVariant::Plain ? "plain" : "modified";
}

RatioSpec default_ratio_spec(const PossibilityContour& contour, RatioVariant variant, int points) {
  if (points < 1) throw EmptyRequestError("default_ratio_spec: need at least one action");
  const ActionSearchSpec bracket = default_search_spec(contour);
  RatioSpec spec;
  spec.variant = variant;
  spec.actions.resize(points);
  if (points == 1) {
    spec.actions[0] = 0.5 * (bracket.lo + bracket.hi);
    return spec;
  }
  const double step = (bracket.hi - bracket.lo) / (points - 1);
  for (int i = 0; i < points; ++i) spec.actions[i] = bracket.lo + i * step;
  // Keep the exact centre for odd grids (the observation for location models).
  if (points % 2 == 1) spec.actions[points / 2] = 0.5 * (bracket.lo + bracket.hi);
  return spec;
}

double quasi_oracle(const PossibilityContour& contour, const LossFunction& loss, double a,
                    double theta) {
  const double level = contour(theta);
  if (level < 1.0) return level_sup(contour, loss, a, level);
  // {pi > 1} is empty; the assessment at the mode is taken over the plateau.
  const Interval mode = contour.mode_interval();
  return loss.sup_over(a, PlausibilityRegion{1.0, mode.lo, mode.hi, true, true});
}

double modified_quasi_oracle(const PossibilityContour& contour, const LossFunction& loss, double a,
                             double theta) {
  return level_sup(contour, loss, a, 0.5 * contour(theta));
}

double min_ratio(const PossibilityContour& contour, const LossFunction& loss,
                 const RatioSpec& spec, double theta) {
  return minimize(contour, loss, spec, theta, [&](double a) {
    return choquet_upper(contour, loss, a, spec.risk_tol).value;
  });
}

double fiducial_min_ratio(const ConfidenceDistribution& q, const LossFunction& loss,
                          const RatioSpec& spec, double theta, const PossibilityContour& contour) {
  return minimize(contour, loss, spec, theta,
                  [&](double a) { return expected_loss(q, loss, a, spec.risk_tol); });
}

}  // namespace imdecide
