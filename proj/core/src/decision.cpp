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

#include "imdecide/decision.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "imdecide/error.hpp"

namespace imdecide {
namespace {

constexpr double kInvPhi = 0.6180339887498948482;

double law_scale(const Distribution& law) {
  const double v = law.variance();
  if (std::isfinite(v) && v > 0.0) return std::sqrt(v);
  return law.quantile(0.75) - law.quantile(0.25);
}

// Golden-section search keeping the left point on ties.
ActionChoice golden(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? ActionChoice{x1, f1} : ActionChoice{x2, f2};
}

ActionChoice multi_start(const std::function<double(double)>& f, const ActionSearchSpec& spec) {
  spec.validate();
  const double width = (spec.hi - spec.lo) / spec.starts;
  ActionChoice best{0.0, std::numeric_limits<double>::infinity()};
  std::vector<ActionChoice> candidates;
  for (int i = 0; i < spec.starts; ++i) {
    const double lo = spec.lo + i * width;
    const double hi = i + 1 == spec.starts ? spec.hi : lo + width;
    candidates.push_back(golden(f, lo, hi, spec.tol));
  }
  candidates.push_back({spec.lo, f(spec.lo)});
  candidates.push_back({spec.hi, f(spec.hi)});
  std::sort(candidates.begin(), candidates.end(),
            [](const ActionChoice& a, const ActionChoice& b) { return a.action < b.action; });
  for (const auto& c : candidates) {
    // Strict improvement beyond the evaluation noise, so ties keep the smaller action.
    if (!std::isfinite(best.value) ? c.value < best.value
                                   : c.value < best.value - 1e-12 * std::fabs(best.value)) {
      best = c;
    }
  }
  return best;
}

}  // namespace

void ActionSearchSpec::validate() const {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidArgumentError("action search: need finite lo < hi");
  }
  if (!(tol > 0.0)) throw InvalidArgumentError("action search: tolerance must be > 0");
  if (starts < 1) throw InvalidArgumentError("action search: need at least one start");
  if (!(risk_tol > 0.0)) throw InvalidArgumentError("action search: risk tolerance must be > 0");
}

ActionSearchSpec default_search_spec(const PossibilityContour& contour) {
  ActionSearchSpec spec;
  if (contour.model() == ContourModel::Binomial) {
    spec.lo = 0.001;
    spec.hi = 0.999;
    return spec;
  }
  const Interval mode = contour.mode_interval();
  const double center = 0.5 * (mode.lo + mode.hi);
  double scale = 1.0;
  if (auto aux = contour.auxiliary()) scale = law_scale(aux->law());
  if (contour.model() != ContourModel::Custom) {
    spec.lo = contour.observed() - 10.0 * scale;
    spec.hi = contour.observed() + 10.0 * scale;
  } else {
    spec.lo = center - 10.0 * scale;
    spec.hi = center + 10.0 * scale;
  }
  return spec;
}

ActionSearchSpec default_search_spec(const ConfidenceDistribution& q) {
  ActionSearchSpec spec;
  switch (q.kind()) {
    case ConfidenceKind::Beta:
      spec.lo = 0.001;
      spec.hi = 0.999;
      break;
    case ConfidenceKind::Location: {
      const double scale = q.scale() * law_scale(q.law());
      spec.lo = q.center() - 10.0 * scale;
      spec.hi = q.center() + 10.0 * scale;
      break;
    }
    case ConfidenceKind::PointMass:
      spec.lo = q.center() - 1.0;
      spec.hi = q.center() + 1.0;
      break;
  }
  return spec;
}

LossFunction make_loss(const std::string& tag, const LossParams& params) {
  if (tag == "squared") return LossFunction::squared_error();
  if (tag == "weighted-squared") return LossFunction::weighted_squared_error();
  if (tag == "zero-one") return LossFunction::zero_one(params.hypothesis);
  if (tag == "group-invariant") return LossFunction::group_invariant(params.c, params.base);
  if (tag == "constant") return LossFunction::constant(params.c);
  throw InvalidArgumentError("unknown loss '" + tag + "'");
}

ActionChoice minimize_upper_loss(const PossibilityContour& contour, const LossFunction& loss,
                                 const ActionSearchSpec& spec) {
  return multi_start(
      [&](double a) { return choquet_upper(contour, loss, a, spec.risk_tol).value; }, spec);
}

ActionChoice minimize_expected_loss(const ConfidenceDistribution& q, const LossFunction& loss,
                                    const ActionSearchSpec& spec) {
  return multi_start([&](double a) { return expected_loss(q, loss, a, spec.risk_tol); }, spec);
}

RiskChainReport theorem_risk_check(const PossibilityContour& contour,
                                   const ConfidenceDistribution& q_star, const LossFunction& loss,
                                   const ActionSearchSpec& spec) {
  RiskChainReport report;
  const ActionChoice upper = minimize_upper_loss(contour, loss, spec);
  report.upper_action = upper.action;
  report.min_upper = upper.value;

  for (int i = 1; i < 20; ++i) {
    const PlausibilityRegion region = contour.region(0.05 * i);
    if (region.empty() || !std::isfinite(region.lo) || !std::isfinite(region.hi)) continue;
    const double left = loss(upper.action, region.lo);
    const double right = loss(upper.action, region.hi);
    const double denom = std::max({std::fabs(left), std::fabs(right), 1e-300});
    report.alignment_gap = std::max(report.alignment_gap, std::fabs(left - right) / denom);
  }
  report.aligned = report.alignment_gap <= kRiskChainTolerance;

  const ActionChoice fid = minimize_expected_loss(q_star, loss, spec);
  report.fiducial_action = fid.action;
  report.min_fiducial = fid.value;
  report.upper_at_action = choquet_upper(contour, loss, upper.action, spec.risk_tol).value;
  report.fiducial_at_action = expected_loss(q_star, loss, upper.action, spec.risk_tol);

  const double values[] = {report.min_upper, report.upper_at_action, report.fiducial_at_action,
                           report.min_fiducial};
  const double top = *std::max_element(std::begin(values), std::end(values));
  const double bottom = *std::min_element(std::begin(values), std::end(values));
  report.worst_relative_gap = top > 0.0 ? (top - bottom) / top : 0.0;

  std::ostringstream msg;
  if (!report.aligned) {
    msg << "precondition failed: loss level sets at a = " << upper.action
        << " do not match the plausibility regions (relative gap " << report.alignment_gap << ")";
    report.pass = false;
  } else {
    report.pass = report.worst_relative_gap <= kRiskChainTolerance;
    msg << (report.pass ? "risk chain holds" : "risk chain broken") << " (relative spread "
        << report.worst_relative_gap << ")";
  }
  report.message = msg.str();
  return report;
}

}  // namespace imdecide
