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

#include <cmath>
#include <limits>

#include "imdecide/error.hpp"

namespace imdecide::numeric {

// Bisection for a function with a sign change on [lo, hi]. Stops once the
// bracket is narrower than abs_tol + rel_tol * |midpoint| or can no longer be
// split in double precision. bisect_from takes g(lo) when the caller
// already knows it; only its sign is used.
template <class G>
double bisect_from(G&& g, double lo, double hi, double g_lo, double abs_tol,
              double rel_tol = 4 * std::numeric_limits<double>::epsilon()) {
  if (!(lo <= hi)) throw DomainError("bisect: empty bracket");
  const bool lo_negative = g_lo < 0;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (hi - lo <= abs_tol + rel_tol * std::fabs(mid) || mid <= lo || mid >= hi) {
      return mid;
    }
    const double g_mid = g(mid);
    if (g_mid == 0) return mid;
    if ((g_mid < 0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

template <class G>
double bisect(G&& g, double lo, double hi, double abs_tol,
              double rel_tol = 4 * std::numeric_limits<double>::epsilon()) {
  const double g_lo = g(lo);
  return bisect_from(g, lo, hi, g_lo, abs_tol, rel_tol);
}

// Grows the right end of [lo, lo + step] geometrically until `still_inside`
// turns false. Returns the first failing point.
template <class P>
double expand_right(P&& still_inside, double lo, double step) {
  double hi = lo + step;
  for (int i = 0; i < 2100 && still_inside(hi); ++i) {
    lo = hi;
    step *= 2;
    hi = lo + step;
    if (!std::isfinite(hi)) return std::numeric_limits<double>::max();
  }
  return hi;
}

template <class P>
double expand_left(P&& still_inside, double hi, double step) {
  double lo = hi - step;
  for (int i = 0; i < 2100 && still_inside(lo); ++i) {
    hi = lo;
    step *= 2;
    lo = hi - step;
    if (!std::isfinite(lo)) return std::numeric_limits<double>::lowest();
  }
  return lo;
}

// Newton's method kept inside a shrinking bracket. `eval(x, g, dg)` fills in
// g(x) and g'(x); g must change sign on [lo, hi] and be monotone there. A
// bisection step replaces Newton whenever the Newton point leaves the bracket
// or the step fails to halve the one before last.
template <class E>
double newton_bisect(E&& eval, double lo, double hi, double x0, double abs_tol,
                     double rel_tol = 4 * std::numeric_limits<double>::epsilon()) {
  double g = 0.0;
  double dg = 0.0;
  eval(lo, g, dg);
  const bool increasing = g < 0;
  double x = (x0 > lo && x0 < hi) ? x0 : lo + 0.5 * (hi - lo);
  double step = hi - lo;
  double step_before = step;
  for (int iter = 0; iter < 400; ++iter) {
    eval(x, g, dg);
    if (g == 0.0) return x;
    if ((g < 0) == increasing) {
      lo = x;
    } else {
      hi = x;
    }
    const double tol = abs_tol + rel_tol * std::fabs(x);
    if (hi - lo <= tol) return lo + 0.5 * (hi - lo);
    const double newton = x - g / dg;
    double next;
    if (std::isfinite(newton) && newton > lo && newton < hi &&
        std::fabs(newton - x) < 0.5 * std::fabs(step_before)) {
      next = newton;
    } else {
      next = lo + 0.5 * (hi - lo);
    }
    step_before = step;
    step = next - x;
    if (std::fabs(step) <= tol) return next;
    x = next;
  }
  return x;
}

}  // namespace imdecide::numeric
