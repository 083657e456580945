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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace imdecide::numeric {

struct QuadratureOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-10;
  std::size_t max_panels = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss-Legendre rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// QUADPACK-style error scaling on a single panel.
template <class F>
Panel kronrod_panel(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = f(center);
  double kronrod = f_center * kKronrodWeights[7];
  double gauss = f_center * kGaussWeights[3];
  double abs_sum = std::fabs(kronrod);
  std::array<double, 7> f_left{};
  std::array<double, 7> f_right{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double fl = f(center - dx);
    const double fr = f(center + dx);
    f_left[j] = fl;
    f_right[j] = fr;
    kronrod += kKronrodWeights[j] * (fl + fr);
    abs_sum += kKronrodWeights[j] * (std::fabs(fl) + std::fabs(fr));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (fl + fr);
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::fabs(f_center - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    asc += kKronrodWeights[j] * (std::fabs(f_left[j] - mean) + std::fabs(f_right[j] - mean));
  }
  kronrod *= half;
  gauss *= half;
  abs_sum *= std::fabs(half);
  asc *= std::fabs(half);
  double err = std::fabs(kronrod - gauss);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_sum > std::numeric_limits<double>::min() / (50 * eps)) {
    err = std::max(50 * eps * abs_sum, err);
  }
  return {lo, hi, kronrod, err};
}

}  // namespace detail

// Adaptive Gauss-Kronrod (G7/K15) integration on a finite interval. Panels
// with the largest error estimate are bisected first.
template <class F>
QuadratureResult integrate_finite(F&& f, double lo, double hi, const QuadratureOptions& opts = {}) {
  QuadratureResult out;
  if (lo == hi) {
    out.converged = true;
    return out;
  }
  double sign = 1.0;
  if (hi < lo) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  std::priority_queue<detail::Panel> heap;
  auto first = detail::kronrod_panel(f, lo, hi);
  out.evaluations = 15;
  double value = first.value;
  double error = first.error;
  heap.push(first);
  while (!heap.empty()) {
    if (!std::isfinite(value)) break;
    if (error <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(value))) {
      out.converged = true;
      break;
    }
    if (heap.size() >= opts.max_panels) break;
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;  // cannot split further
    heap.pop();
    const auto left = detail::kronrod_panel(f, worst.lo, mid);
    const auto right = detail::kronrod_panel(f, mid, worst.hi);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to avoid drift from the incremental updates.
  double total = 0.0;
  double total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = sign * total;
  out.abs_error = total_err;
  if (!out.converged) {
    out.converged = std::isfinite(total) &&
                    total_err <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(total));
  }
  return out;
}

// Integration over a possibly infinite interval. Infinite ends are mapped to
// a finite variable; `anchor` is the finite point the half-line maps expand
// around when both ends are infinite.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureOptions& opts = {},
                           double anchor = 0.0) {
  const bool lo_inf = std::isinf(lo);
  const bool hi_inf = std::isinf(hi);
  if (!lo_inf && !hi_inf) return integrate_finite(f, lo, hi, opts);
  if (lo_inf && hi_inf) {
    auto left = integrate(f, -std::numeric_limits<double>::infinity(), anchor, opts);
    auto right = integrate(f, anchor, std::numeric_limits<double>::infinity(), opts);
    return {left.value + right.value, left.abs_error + right.abs_error,
            left.evaluations + right.evaluations, left.converged && right.converged};
  }
  if (hi_inf) {
    // x = lo + t / (1 - t), t in [0, 1)
    auto g = [&](double t) {
      const double s = 1.0 - t;
      const double x = lo + t / s;
      if (!std::isfinite(x)) return 0.0;
      const double v = f(x);
      return v == 0.0 ? 0.0 : v / (s * s);
    };
    return integrate_finite(g, 0.0, 1.0, opts);
  }
  // x = hi - t / (1 - t)
  auto g = [&](double t) {
    const double s = 1.0 - t;
    const double x = hi - t / s;
    if (!std::isfinite(x)) return 0.0;
    const double v = f(x);
    return v == 0.0 ? 0.0 : v / (s * s);
  };
  return integrate_finite(g, 0.0, 1.0, opts);
}

}  // namespace imdecide::numeric
