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

#include "imdecide/contour.hpp"

namespace imdecide {

enum class LossKind { SquaredError, WeightedSquaredError, ZeroOne, GroupInvariant, Constant };

const char* to_string(LossKind kind);

// (a, theta) -> l_a(theta) >= 0, times a positive scale factor.
class LossFunction {
 public:
  // (a - theta)^2
  static LossFunction squared_error();
  // (a - theta)^2 / (theta (1 - theta)) on [0, 1]
  static LossFunction weighted_squared_error();
  // Actions 0 and 1: 1(theta in H, a = 1) + 1(theta not in H, a = 0).
  static LossFunction zero_one(Interval hypothesis);
  // -c log pi(a - theta) for an auxiliary contour pi.
  static LossFunction group_invariant(double c, std::shared_ptr<const AuxiliaryContour> base);
  static LossFunction constant(double value);

  LossKind kind() const { return kind_; }
  std::string describe() const;
  double scale() const { return scale_; }
  // Convex in theta for every action.
  bool convex() const { return convex_; }
  const Interval& hypothesis() const { return hypothesis_; }
  double coefficient() const { return coefficient_; }
  const std::shared_ptr<const AuxiliaryContour>& base() const { return base_; }

  // c * l; throws InvalidArgumentError unless c > 0 and finite.
  LossFunction scaled(double c) const;

  double operator()(double a, double theta) const;

  // Supremum of l_a over the region; 0 for an empty region and +inf when the
  // loss is unbounded on it.
  double sup_over(double a, const PlausibilityRegion& region) const;

 private:
  LossFunction() = default;
  double base_value(double a, double theta) const;

  LossKind kind_ = LossKind::Constant;
  double scale_ = 1.0;
  double coefficient_ = 1.0;
  bool convex_ = true;
  Interval hypothesis_;
  std::shared_ptr<const AuxiliaryContour> base_;
};

}  // namespace imdecide
