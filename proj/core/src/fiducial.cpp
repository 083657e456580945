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

#include "imdecide/fiducial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "imdecide/error.hpp"
#include "imdecide/quadrature.hpp"
#include "imdecide/roots.hpp"

namespace imdecide {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

numeric::QuadratureOptions mass_options() {
  numeric::QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  opts.rel_tol = 1e-10;
  return opts;
}

void check_levels(const std::vector<double>& alphas) {
  if (alphas.empty()) throw EmptyRequestError("credal check: empty level grid");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("credal check: levels must lie in (0, 1)");
  }
}

// Integrates g over [lo, hi] split at the given interior breakpoints.
template <class G>
numeric::QuadratureResult integrate_pieces(G& g, double lo, double hi, std::vector<double> cuts,
                                           const numeric::QuadratureOptions& opts) {
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  numeric::QuadratureResult total;
  total.converged = true;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = std::max(cuts[i], lo);
    const double b = std::min(cuts[i + 1], hi);
    if (!(a < b)) continue;
    const double anchor = std::isfinite(a) ? a : (std::isfinite(b) ? b : 0.0);
    const auto piece = numeric::integrate(g, a, b, opts, anchor);
    total.value += piece.value;
    total.abs_error += piece.abs_error;
    total.evaluations += piece.evaluations;
    total.converged = total.converged && piece.converged;
  }
  return total;
}

// Mass of g in the shells R_k < |theta - c| < R_{k+1}, R_k = r 10^k, must
// shrink by 0.1% over at least one decade. Catches log-divergent tails that
// quadrature alone reports as finite.
template <class G>
bool tails_decay(G& g, const ConfidenceDistribution& q, double a) {
  if (q.kind() != ConfidenceKind::Location || q.law().family() != Family::StudentT) return true;
  const double c = q.center();
  const double r = 10.0 * (q.scale() + std::fabs(a - c) + 1.0);
  numeric::QuadratureOptions opts;
  opts.abs_tol = 1e-300;
  opts.rel_tol = 1e-9;
  double prev = -1.0;
  for (int k = 2; k <= 6; ++k) {
    const double lo = r * std::pow(10.0, k), hi = 10.0 * lo;
    const double shell = numeric::integrate(g, c + lo, c + hi, opts, c + lo).value +
                         numeric::integrate(g, c - hi, c - lo, opts, c - lo).value;
    if (!std::isfinite(shell)) return false;
    if (shell == 0.0) return true;
    if (prev >= 0.0 && shell < (1.0 - 1e-3) * prev) return true;
    prev = shell;
  }
  return false;
}

// Breakpoints at the mode and, for narrow laws, at 1, 10, 100, ... scales
// either side of it up to unit distance.
std::vector<double> scale_cuts(const ConfidenceDistribution& q) {
  if (q.kind() != ConfidenceKind::Location) return {};
  const double m = q.center() - q.scale() * q.law().mode();
  std::vector<double> cuts{m};
  for (double r = q.scale(); r < 1.0; r *= 10.0) {
    cuts.push_back(m - r);
    cuts.push_back(m + r);
  }
  return cuts;
}

}  // namespace

ConfidenceDistribution ConfidenceDistribution::location(const Distribution& aux_law, double center,
                                                        double scale) {
  if (!aux_law.is_continuous()) {
    throw UnsupportedModelError("location confidence distribution needs a continuous law");
  }
  if (!std::isfinite(center) || !(scale >= 0.0) || !std::isfinite(scale)) {
    throw InvalidArgumentError("location confidence distribution: need finite center, scale >= 0");
  }
  if (scale == 0.0) return point_mass(center);
  return ConfidenceDistribution(ConfidenceKind::Location, aux_law, center, scale);
}

ConfidenceDistribution ConfidenceDistribution::beta(double a, double b) {
  return ConfidenceDistribution(ConfidenceKind::Beta, Distribution::beta(a, b), 0.0, 1.0);
}

ConfidenceDistribution ConfidenceDistribution::point_mass(double at) {
  if (!std::isfinite(at)) throw InvalidArgumentError("point mass: location must be finite");
  return ConfidenceDistribution(ConfidenceKind::PointMass, Distribution::uniform01(), at, 0.0);
}

std::string ConfidenceDistribution::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case ConfidenceKind::Location:
      out << center_ << " - " << scale_ << " * " << law_.describe();
      break;
    case ConfidenceKind::Beta: out << law_.describe(); break;
    case ConfidenceKind::PointMass: out << "PointMass(" << center_ << ")"; break;
  }
  return out.str();
}

double ConfidenceDistribution::density(double theta) const {
  if (!std::isfinite(theta)) throw DomainError("confidence density: argument must be finite");
  switch (kind_) {
    case ConfidenceKind::Location: return law_.density((center_ - theta) / scale_) / scale_;
    case ConfidenceKind::Beta: return law_.density(theta);
    case ConfidenceKind::PointMass: break;
  }
  throw UnsupportedModelError("point mass has no density");
}

double ConfidenceDistribution::cdf(double theta) const {
  if (std::isnan(theta)) throw DomainError("confidence cdf: NaN argument");
  switch (kind_) {
    case ConfidenceKind::Location: return law_.ccdf((center_ - theta) / scale_);
    case ConfidenceKind::Beta: return law_.cdf(theta);
    case ConfidenceKind::PointMass: return theta >= center_ ? 1.0 : 0.0;
  }
  return 0.0;
}

double ConfidenceDistribution::mean() const {
  switch (kind_) {
    case ConfidenceKind::Location: return center_ - scale_ * law_.mean();
    case ConfidenceKind::Beta: return law_.mean();
    case ConfidenceKind::PointMass: return center_;
  }
  return 0.0;
}

std::pair<double, double> ConfidenceDistribution::support() const {
  switch (kind_) {
    case ConfidenceKind::Location: {
      const auto [lo, hi] = law_.support();
      return {center_ - scale_ * hi, center_ - scale_ * lo};
    }
    case ConfidenceKind::Beta: return {0.0, 1.0};
    case ConfidenceKind::PointMass: return {center_, center_};
  }
  return {0.0, 0.0};
}

double ConfidenceDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case ConfidenceKind::Location: return center_ - scale_ * law_.sample(rng);
    case ConfidenceKind::Beta: return law_.sample(rng);
    case ConfidenceKind::PointMass: return center_;
  }
  return 0.0;
}

double ConfidenceDistribution::probability(const PlausibilityRegion& region) const {
  if (region.empty()) return 0.0;
  if (kind_ == ConfidenceKind::PointMass) return region.contains(center_) ? 1.0 : 0.0;
  const auto [s_lo, s_hi] = support();
  const double lo = std::max(region.lo, s_lo);
  const double hi = std::min(region.hi, s_hi);
  if (!(lo < hi)) return 0.0;
  std::vector<double> cuts = scale_cuts(*this);
  auto q = [this](double theta) { return density(theta); };
  const auto result = integrate_pieces(q, lo, hi, cuts, mass_options());
  return std::clamp(result.value, 0.0, 1.0);
}

ConfidenceDistribution location_fiducial(const Distribution& aux_law, double y) {
  return ConfidenceDistribution::location(aux_law, y, 1.0);
}

ConfidenceDistribution scaled_location_fiducial(const Distribution& aux_law, double y, double s) {
  const double m = aux_law.mode();
  return ConfidenceDistribution::location(aux_law, y - (1.0 - s) * m, s);
}

ConfidenceDistribution binomial_fiducial(int n, int y) {
  if (n < 1) throw InvalidArgumentError("binomial_fiducial: need n >= 1");
  if (y < 0 || y > n) throw DomainError("binomial_fiducial: count outside [0, n]");
  return ConfidenceDistribution::beta(y + 0.5, n - y + 0.5);
}

double expected_loss(const ConfidenceDistribution& q, const LossFunction& loss, double a,
                     double tol) {
  if (std::isnan(a)) throw DomainError("expected_loss: NaN action");
  if (!(tol > 0.0)) throw InvalidArgumentError("expected_loss: tolerance must be > 0");
  if (q.kind() == ConfidenceKind::PointMass) return loss(a, q.center());
  const auto [lo, hi] = q.support();
  auto g = [&](double theta) {
    const double w = q.density(theta);
    if (w == 0.0) return 0.0;
    const double v = loss(a, theta);
    // Far in the tails the loss can overflow (an underflowed contour) while
    // the weight is negligible.
    if (std::isinf(v) && w < 1e-200) return 0.0;
    return w * v;
  };
  std::vector<double> cuts = scale_cuts(q);
  if (a > lo && a < hi) cuts.push_back(a);
  numeric::QuadratureOptions opts;
  opts.abs_tol = 1e-300;
  opts.rel_tol = tol;
  if (!tails_decay(g, q, a)) {
    throw NonPrevisibleError("expected loss of " + loss.describe() + " under " + q.describe() +
                             " diverges");
  }
  const auto result = integrate_pieces(g, lo, hi, cuts, opts);
  if (!std::isfinite(result.value) ||
      (!result.converged && result.abs_error > 1e-6 * std::fabs(result.value))) {
    throw NonPrevisibleError("expected loss of " + loss.describe() + " under " + q.describe() +
                             " diverges");
  }
  return result.value;
}

CredalReport confidence_distribution_test(const ConfidenceDistribution& q,
                                          const PossibilityContour& contour,
                                          const std::vector<double>& alphas) {
  check_levels(alphas);
  CredalReport report;
  report.worst_margin = kInf;
  for (double alpha : alphas) {
    const double mass = q.probability(contour.region(alpha));
    report.masses.push_back(mass);
    const double margin = mass - (1.0 - alpha);
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_alpha = alpha;
    }
  }
  report.pass = report.worst_margin >= -kCredalSlack;
  return report;
}

CredalReport stochastic_order_check(const ConfidenceDistribution& q,
                                    const ConfidenceDistribution& q_star,
                                    const PossibilityContour& contour,
                                    const std::vector<double>& alphas) {
  check_levels(alphas);
  CredalReport report;
  report.worst_margin = kInf;
  for (double alpha : alphas) {
    const PlausibilityRegion region = contour.region(alpha);
    const double outside = 1.0 - q.probability(region);
    const double outside_star = 1.0 - q_star.probability(region);
    report.masses.push_back(outside);
    const double margin = outside_star - outside;
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_alpha = alpha;
    }
  }
  report.pass = report.worst_margin >= -kCredalSlack;
  return report;
}

double eta(const Distribution& aux_law, double z) {
  const AuxiliaryContour aux(aux_law);
  const double peak = aux_law.density(aux.mode());
  if (std::isnan(z) || z < 0.0 || z > peak * (1.0 + 1e-12)) {
    throw DomainError("eta: density level outside [0, sup f]");
  }
  if (z == 0.0) return 0.0;
  if (z >= peak) return 1.0;
  const Interval cut = aux.density_cut(z);
  return std::min(1.0, aux_law.cdf(cut.lo) + aux_law.ccdf(cut.hi));
}

double eta_inverse(const Distribution& aux_law, double p) {
  if (std::isnan(p) || p < 0.0 || p > 1.0) throw DomainError("eta_inverse: level outside [0, 1]");
  const double peak = aux_law.density(aux_law.mode());
  if (p == 0.0) return 0.0;
  if (p == 1.0) return peak;
  auto g = [&](double z) { return eta(aux_law, z) - p; };
  return numeric::bisect_from(g, 0.0, peak, -p, 0.0, 1e-15);
}

}  // namespace imdecide
