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

#include "imdecide/choquet.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "imdecide/error.hpp"
#include "imdecide/parallel.hpp"
#include "imdecide/quadrature.hpp"

namespace imdecide {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Panels [2^-(k+1), 2^-k] are always integrated down to this depth
// (2^-24 ~ 6e-8) before the tail estimate is trusted.
constexpr int kMinDepth = 24;
constexpr int kMaxDepth = 200;
// Relative drop of alpha h(alpha) over one decade that counts as decay.
constexpr double kDecayMargin = 1e-3;

bool decays(const PossibilityContour& contour, const LossFunction& loss, double a) {
  constexpr std::array<double, 4> levels = {1e-6, 1e-7, 1e-8, 1e-9};
  std::array<double, 4> g{};
  for (std::size_t i = 0; i < levels.size(); ++i) {
    g[i] = levels[i] * level_sup(contour, loss, a, levels[i]);
  }
  if (g[0] == 0.0 && g[3] == 0.0) return true;
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (g[i] < (1.0 - kDecayMargin) * g[i - 1]) return true;
  }
  return false;
}

}  // namespace

double level_sup(const PossibilityContour& contour, const LossFunction& loss, double a,
                 double alpha) {
  if (std::isnan(alpha) || alpha < 0.0 || alpha > 1.0) {
    throw DomainError("level_sup: level must lie in [0, 1]");
  }
  if (alpha >= 1.0) return 0.0;
  return loss.sup_over(a, contour.region(alpha));
}

ChoquetResult choquet_upper(const PossibilityContour& contour, const LossFunction& loss, double a,
                            double tol) {
  if (!(tol > 0.0)) throw InvalidArgumentError("choquet_upper: tolerance must be > 0");
  if (std::isnan(a)) throw DomainError("choquet_upper: NaN action");
  if (!decays(contour, loss, a)) {
    throw NonPrevisibleError("upper expectation of " + loss.describe() + " at a = " +
                             std::to_string(a) + " diverges: alpha h(alpha) does not decay");
  }
  auto h = [&](double alpha) { return level_sup(contour, loss, a, alpha); };

  numeric::QuadratureOptions opts;
  opts.rel_tol = 0.1 * tol;
  opts.abs_tol = 1e-300;
  opts.max_panels = 200;

  ChoquetResult out;
  double total = 0.0;
  double previous = 0.0;
  double tail = 0.0;
  double hi = 1.0;
  for (int k = 0; k < kMaxDepth; ++k) {
    const double lo = 0.5 * hi;
    // Absolute accuracy relative to the running total keeps small tail panels cheap.
    opts.abs_tol = std::max(1e-300, 0.01 * tol * total);
    const auto panel = numeric::integrate_finite(h, lo, hi, opts);
    if (!std::isfinite(panel.value)) {
      throw NonPrevisibleError("upper expectation of " + loss.describe() + " is infinite");
    }
    total += panel.value;
    out.abs_error += panel.abs_error;
    out.nodes += panel.evaluations;
    hi = lo;
    if (k + 1 < kMinDepth || panel.value == 0.0) {
      previous = panel.value;
      if (k + 1 >= kMinDepth && panel.value == 0.0) break;
      continue;
    }
    const double ratio = previous > 0.0 ? panel.value / previous : 0.0;
    previous = panel.value;
    tail = ratio < 1.0 ? panel.value * ratio / (1.0 - ratio) : kInf;
    if (panel.value < tol * total && tail < tol * total) break;
    if (k + 1 == kMaxDepth) {
      throw NonPrevisibleError("upper expectation of " + loss.describe() +
                               " did not converge toward alpha = 0");
    }
  }
  out.value = total + (std::isfinite(tail) ? tail : 0.0);
  out.abs_error += 0.5 * (std::isfinite(tail) ? tail : 0.0);
  return out;
}

std::vector<std::pair<double, ChoquetResult>> upper_risk_curve(const PossibilityContour& contour,
                                                               const LossFunction& loss,
                                                               const std::vector<double>& actions,
                                                               double tol, unsigned threads) {
  if (actions.empty()) throw EmptyRequestError("upper_risk_curve: empty action grid");
  std::vector<std::pair<double, ChoquetResult>> out(actions.size());
  parallel_for(actions.size(), threads, [&](std::size_t i) {
    out[i] = {actions[i], choquet_upper(contour, loss, actions[i], tol)};
  });
  return out;
}

}  // namespace imdecide
