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

#include "imdecide/loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "imdecide/error.hpp"

namespace imdecide {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double weighted(double a, double theta) {
  if (std::isnan(theta) || theta < 0.0 || theta > 1.0) {
    throw DomainError("weighted squared error: theta must lie in [0, 1]");
  }
  const double d = a - theta;
  const double w = theta * (1.0 - theta);
  if (w == 0.0) return d == 0.0 ? 0.0 : kInf;
  return d * d / w;
}

// -log pi(u) is checked on a dense grid spanning pi >= 1e-8.
bool negative_log_contour_convex(const AuxiliaryContour& aux) {
  const Interval span = aux.level_set(1e-8);
  constexpr int kPoints = 801;
  const double step = (span.hi - span.lo) / (kPoints - 1);
  std::vector<double> v(kPoints);
  for (int i = 0; i < kPoints; ++i) v[i] = -std::log(aux(span.lo + i * step));
  for (int i = 1; i + 1 < kPoints; ++i) {
    if (v[i - 1] - 2.0 * v[i] + v[i + 1] < -1e-9) return false;
  }
  return true;
}

}  // namespace

const char* to_string(LossKind kind) {
  switch (kind) {
    case LossKind::SquaredError: return "squared";
    case LossKind::WeightedSquaredError: return "weighted-squared";
    case LossKind::ZeroOne: return "zero-one";
    case LossKind::GroupInvariant: return "group-invariant";
    case LossKind::Constant: return "constant";
  }
  return "unknown";
}

LossFunction LossFunction::squared_error() {
  LossFunction l;
  l.kind_ = LossKind::SquaredError;
  return l;
}

LossFunction LossFunction::weighted_squared_error() {
  LossFunction l;
  l.kind_ = LossKind::WeightedSquaredError;
  return l;
}

LossFunction LossFunction::zero_one(Interval hypothesis) {
  if (hypothesis.empty() || std::isnan(hypothesis.lo) || std::isnan(hypothesis.hi)) {
    throw InvalidArgumentError("zero-one loss: hypothesis interval must be nonempty");
  }
  LossFunction l;
  l.kind_ = LossKind::ZeroOne;
  l.hypothesis_ = hypothesis;
  l.convex_ = false;
  return l;
}

LossFunction LossFunction::group_invariant(double c, std::shared_ptr<const AuxiliaryContour> base) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidArgumentError("group-invariant loss: scale must be positive and finite");
  }
  if (!base) throw InvalidArgumentError("group-invariant loss: missing base contour");
  LossFunction l;
  l.kind_ = LossKind::GroupInvariant;
  l.coefficient_ = c;
  l.convex_ = negative_log_contour_convex(*base);
  l.base_ = std::move(base);
  return l;
}

LossFunction LossFunction::constant(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw InvalidArgumentError("constant loss: value must be finite and >= 0");
  }
  LossFunction l;
  l.kind_ = LossKind::Constant;
  l.coefficient_ = value;
  return l;
}

std::string LossFunction::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << to_string(kind_);
  if (kind_ == LossKind::ZeroOne) out << "[" << hypothesis_.lo << ", " << hypothesis_.hi << "]";
  if (kind_ == LossKind::GroupInvariant) {
    out << "(c=" << coefficient_ << ", " << base_->law().describe() << ")";
  }
  if (kind_ == LossKind::Constant) out << "(" << coefficient_ << ")";
  if (scale_ != 1.0) out << " x " << scale_;
  return out.str();
}

LossFunction LossFunction::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidArgumentError("scaled loss: factor must be positive and finite");
  }
  LossFunction l = *this;
  l.scale_ *= c;
  return l;
}

double LossFunction::base_value(double a, double theta) const {
  if (std::isnan(a) || std::isnan(theta)) throw DomainError("loss: NaN argument");
  switch (kind_) {
    case LossKind::SquaredError: return (a - theta) * (a - theta);
    case LossKind::WeightedSquaredError: return weighted(a, theta);
    case LossKind::ZeroOne: {
      if (a != 0.0 && a != 1.0) throw DomainError("zero-one loss: action must be 0 or 1");
      const bool inside = hypothesis_.contains(theta);
      return (inside && a == 1.0) || (!inside && a == 0.0) ? 1.0 : 0.0;
    }
    case LossKind::GroupInvariant: {
      const double lp = base_->log_value(a - theta);
      return lp == -kInf ? kInf : -coefficient_ * lp;
    }
    case LossKind::Constant: return coefficient_;
  }
  return 0.0;
}

double LossFunction::operator()(double a, double theta) const {
  return scale_ * base_value(a, theta);
}

double LossFunction::sup_over(double a, const PlausibilityRegion& region) const {
  if (region.empty()) return 0.0;
  if (kind_ == LossKind::Constant) return scale_ * coefficient_;
  if (kind_ == LossKind::ZeroOne) {
    if (a != 0.0 && a != 1.0) throw DomainError("zero-one loss: action must be 0 or 1");
    const Interval& h = hypothesis_;
    if (a == 1.0) {
      const bool meets = (h.hi > region.lo || (h.hi == region.lo && region.lo_closed)) &&
                         (h.lo < region.hi || (h.lo == region.hi && region.hi_closed));
      return meets ? scale_ : 0.0;
    }
    const bool escapes = region.lo < h.lo || region.hi > h.hi;
    return escapes ? scale_ : 0.0;
  }
  // The remaining losses are quasi-convex in theta: the supremum over an
  // interval sits at an endpoint.
  if (!std::isfinite(region.lo) || !std::isfinite(region.hi)) return kInf;
  return std::max((*this)(a, region.lo), (*this)(a, region.hi));
}

}  // namespace imdecide
