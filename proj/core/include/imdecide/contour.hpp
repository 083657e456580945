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
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "imdecide/dist.hpp"

namespace imdecide {

// Closed interval [lo, hi]; empty when lo > hi.
struct Interval {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  static Interval empty_set() { return {}; }
  static Interval real_line() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }

  bool empty() const { return lo > hi; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return empty() ? 0.0 : hi - lo; }
};

// C_alpha = {theta : pi(theta) > alpha}. Interior endpoints are open; an
// endpoint that is a domain bound where the contour still exceeds alpha is
// closed.
struct PlausibilityRegion {
  double alpha = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(double x) const {
    if (empty()) return false;
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }
  double width() const { return empty() ? 0.0 : hi - lo; }
};

namespace detail {

// Thread-safe alpha -> endpoints memo; cleared wholesale when it grows large.
class LevelCache {
 public:
  template <class Solve>
  Interval get(double alpha, Solve&& solve) const {
    {
      std::shared_lock lock(mutex_);
      auto it = map_.find(alpha);
      if (it != map_.end()) return it->second;
    }
    const Interval result = solve(alpha);
    std::unique_lock lock(mutex_);
    if (map_.size() >= kLimit) map_.clear();
    map_.emplace(alpha, result);
    return result;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

 private:
  static constexpr std::size_t kLimit = std::size_t{1} << 20;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<double, Interval> map_;
};

}  // namespace detail

// pi(u) = P{f(U) <= f(u)} for a continuous unimodal auxiliary law. Level sets
// are cached per alpha, so one instance should be shared by every contour
// built on the same law. Thread safe.
class AuxiliaryContour {
 public:
  // Throws UnsupportedModelError unless the law is continuous and unimodal.
  explicit AuxiliaryContour(Distribution law);

  AuxiliaryContour(const AuxiliaryContour&) = delete;
  AuxiliaryContour& operator=(const AuxiliaryContour&) = delete;

  const Distribution& law() const { return law_; }
  double mode() const { return mode_; }
  bool symmetric() const { return symmetric_; }

  double operator()(double u) const;
  // log pi(u), finite wherever the density is positive even after pi itself
  // underflows.
  double log_value(double u) const;

  // Open interval {u : pi(u) > alpha} as [lo, hi] endpoints. Full support for
  // alpha <= 0, empty for alpha >= 1.
  Interval level_set(double alpha) const;

  // The point on the far side of the mode with the same density as u.
  double conjugate(double u) const;

  // {u : f(u) > z} for 0 <= z <= f(mode).
  Interval density_cut(double z) const;

  std::size_t cache_size() const;

 private:
  Interval solve_level_set(double alpha) const;

  Distribution law_;
  double mode_;
  bool symmetric_;
  double log_peak_;
  std::pair<double, double> support_;

  detail::LevelCache cache_;
};

std::shared_ptr<const AuxiliaryContour> make_auxiliary(const Distribution& law);

double auxiliary_contour(const Distribution& law, double u);

enum class ContourModel { SymmetricLocation, SkewNormalLocation, Binomial, Custom };

const char* to_string(ContourModel model);

// theta -> pi_y(theta). Cheap to copy; copies share state.
class PossibilityContour {
 public:
  class Impl;
  explicit PossibilityContour(std::shared_ptr<const Impl> impl);

  ContourModel model() const;
  double observed() const;
  // Binomial trial count; zero for the other models.
  int trials() const;

  double operator()(double theta) const;

  // Closed interval where the contour equals one.
  Interval mode_interval() const;
  Interval domain() const;

  PlausibilityRegion region(double alpha) const;

  // Null for contours not built on an auxiliary law.
  std::shared_ptr<const AuxiliaryContour> auxiliary() const;

 private:
  std::shared_ptr<const Impl> impl_;
};

class PossibilityContour::Impl {
 public:
  virtual ~Impl() = default;
  virtual ContourModel model() const = 0;
  virtual double observed() const = 0;
  virtual int trials() const { return 0; }
  virtual double evaluate(double theta) const = 0;
  virtual Interval mode_interval() const = 0;
  virtual Interval domain() const = 0;
  virtual PlausibilityRegion region(double alpha) const = 0;
  virtual std::shared_ptr<const AuxiliaryContour> auxiliary() const { return nullptr; }
};

// pi_y(theta) = pi(y - theta) for the association Y = theta + U.
PossibilityContour location_contour(const Distribution& law, double y);
PossibilityContour location_contour(std::shared_ptr<const AuxiliaryContour> aux, double y);

// Throws DomainError unless 0 <= y <= n.
PossibilityContour binomial_contour(int n, int y);

// Any continuous contour that is nondecreasing up to `mode` and nonincreasing
// after it. Level sets are found by bisection.
PossibilityContour custom_contour(std::function<double(double)> evaluator, Interval mode,
                                  Interval domain, double observed = 0.0);

PlausibilityRegion plausibility_region(const PossibilityContour& contour, double alpha);

struct ConvexityReport {
  bool convex = true;
  // Most negative second difference seen on either branch (0 if none).
  double worst_second_difference = 0.0;
  double worst_at = std::numeric_limits<double>::quiet_NaN();
  std::size_t triples_checked = 0;
};

inline constexpr double kConvexityTolerance = 1e-9;

// Second differences (scaled to the local spacing) on the grid points of each
// monotone branch must be >= -tolerance. Throws DomainError for grids that
// are not strictly increasing, have fewer than three points, or leave a
// nondegenerate branch with fewer than three points.
ConvexityReport check_directional_convexity(const PossibilityContour& contour,
                                            const std::vector<double>& grid,
                                            double tolerance = kConvexityTolerance);

}  // namespace imdecide
