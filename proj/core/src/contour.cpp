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

#include "imdecide/contour.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "imdecide/error.hpp"
#include "imdecide/quadrature.hpp"
#include "imdecide/roots.hpp"
#include "imdecide/special.hpp"

namespace imdecide {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEndpointTol = 1e-12;

void require_level(double alpha) {
  if (std::isnan(alpha)) throw DomainError("level must not be NaN");
}

PlausibilityRegion empty_region(double alpha) {
  PlausibilityRegion r;
  r.alpha = alpha;
  return r;
}

}  // namespace

// ---- AuxiliaryContour -------------------------------------------------------

AuxiliaryContour::AuxiliaryContour(Distribution law) : law_(std::move(law)) {
  if (!law_.is_continuous() || !law_.is_unimodal()) {
    throw UnsupportedModelError("auxiliary contour needs a continuous unimodal law, got " +
                                law_.describe());
  }
  mode_ = law_.mode();
  symmetric_ = law_.is_symmetric();
  log_peak_ = law_.log_density(mode_);
  support_ = law_.support();
}

double AuxiliaryContour::operator()(double u) const {
  if (std::isnan(u)) throw DomainError("auxiliary contour: NaN argument");
  if (u <= support_.first || u >= support_.second) return 0.0;
  if (u == mode_) return 1.0;
  if (symmetric_) {
    return std::min(1.0, 2.0 * law_.ccdf(mode_ + std::fabs(u - mode_)));
  }
  const double v = conjugate(u);
  const double lo = std::min(u, v);
  const double hi = std::max(u, v);
  return std::min(1.0, law_.cdf(lo) + law_.ccdf(hi));
}

double AuxiliaryContour::log_value(double u) const {
  const double p = (*this)(u);
  if (p > 1e-250) return std::log(p);
  if (u <= support_.first || u >= support_.second) return -kInf;
  const double v = conjugate(u);
  // log of the tail mass beyond x, relative to the density at x
  auto log_tail = [&](double x, double dir) {
    const double log_fx = law_.log_density(x);
    if (!std::isfinite(log_fx)) return -kInf;
    const double reach = dir > 0 ? support_.second - x : x - support_.first;
    numeric::QuadratureOptions opts;
    opts.abs_tol = 1e-300;
    opts.rel_tol = 1e-10;
    const auto r = numeric::integrate(
        [&](double s) { return std::exp(law_.log_density(x + dir * s) - log_fx); }, 0.0, reach,
        opts, 0.0);
    return log_fx + std::log(r.value);
  };
  const double a = log_tail(std::min(u, v), -1.0);
  const double b = log_tail(std::max(u, v), 1.0);
  const double top = std::max(a, b);
  if (top == -kInf) return -kInf;
  return top + std::log1p(std::exp(std::min(a, b) - top));
}

double AuxiliaryContour::conjugate(double u) const {
  if (!std::isfinite(u)) throw DomainError("conjugate: argument must be finite");
  if (u == mode_) return mode_;
  if (symmetric_) return 2.0 * mode_ - u;
  const double target = law_.log_density(u);
  auto g = [&](double x) { return law_.log_density(x) - target; };
  if (u > mode_) {
    double lo = support_.first;
    if (!std::isfinite(lo)) {
      lo = numeric::expand_left([&](double x) { return g(x) > 0.0; }, mode_, 1.0);
    } else if (g(lo) >= 0.0) {
      return lo;
    }
    return numeric::bisect(g, lo, mode_, kEndpointTol * 1e-1);
  }
  double hi = support_.second;
  if (!std::isfinite(hi)) {
    hi = numeric::expand_right([&](double x) { return g(x) > 0.0; }, mode_, 1.0);
  } else if (g(hi) >= 0.0) {
    return hi;
  }
  return numeric::bisect(g, mode_, hi, kEndpointTol * 1e-1);
}

Interval AuxiliaryContour::density_cut(double z) const {
  if (std::isnan(z) || z < 0.0) throw DomainError("density_cut: level must be >= 0");
  if (z == 0.0) return {support_.first, support_.second};
  const double target = std::log(z);
  if (target >= log_peak_) return Interval::empty_set();
  auto g = [&](double x) { return law_.log_density(x) - target; };
  double hi = support_.second;
  if (!std::isfinite(hi)) hi = numeric::expand_right([&](double x) { return g(x) > 0.0; }, mode_, 1.0);
  double lo = support_.first;
  if (!std::isfinite(lo)) lo = numeric::expand_left([&](double x) { return g(x) > 0.0; }, mode_, 1.0);
  const double right = g(hi) >= 0.0 ? hi : numeric::bisect(g, mode_, hi, kEndpointTol * 1e-1);
  const double left = g(lo) >= 0.0 ? lo : numeric::bisect(g, lo, mode_, kEndpointTol * 1e-1);
  return {left, right};
}

Interval AuxiliaryContour::level_set(double alpha) const {
  require_level(alpha);
  if (alpha <= 0.0) return {support_.first, support_.second};
  if (alpha >= 1.0) return Interval::empty_set();
  return cache_.get(alpha, [this](double a) { return solve_level_set(a); });
}

Interval AuxiliaryContour::solve_level_set(double alpha) const {
  if (symmetric_) {
    const double q = law_.upper_quantile(0.5 * alpha);
    return {2.0 * mode_ - q, q};
  }
  auto excess = [&](double r) { return (*this)(r) - alpha; };
  double hi = support_.second;
  if (!std::isfinite(hi)) {
    hi = numeric::expand_right([&](double r) { return excess(r) > 0.0; }, mode_, 1.0);
  }
  // On the right branch d pi / dr = f(r) (s(r) / s(l) - 1) with s the score
  // d log f / du and l the conjugate point.
  auto score = [&](double x) {
    const double h = 1e-6 * (1.0 + std::fabs(x));
    return (law_.log_density(x + h) - law_.log_density(x - h)) / (2.0 * h);
  };
  auto eval = [&](double r, double& g, double& dg) {
    if (r <= mode_) {
      g = 1.0 - alpha;
      dg = 0.0;
      return;
    }
    const double l = conjugate(r);
    g = std::min(1.0, law_.cdf(l) + law_.ccdf(r)) - alpha;
    const double s_l = score(l);
    dg = s_l != 0.0 ? law_.density(r) * (score(r) / s_l - 1.0) : 0.0;
  };
  const double right = numeric::newton_bisect(eval, mode_, hi, 0.5 * (mode_ + hi), kEndpointTol);
  return {conjugate(right), right};
}

std::size_t AuxiliaryContour::cache_size() const { return cache_.size(); }

std::shared_ptr<const AuxiliaryContour> make_auxiliary(const Distribution& law) {
  return std::make_shared<const AuxiliaryContour>(law);
}

double auxiliary_contour(const Distribution& law, double u) {
  const AuxiliaryContour aux(law);
  return aux(u);
}

// ---- contour models ---------------------------------------------------------

const char* to_string(ContourModel model) {
  switch (model) {
    case ContourModel::SymmetricLocation: return "symmetric-location";
    case ContourModel::SkewNormalLocation: return "skew-normal-location";
    case ContourModel::Binomial: return "binomial";
    case ContourModel::Custom: return "custom";
  }
  return "unknown";
}

namespace {

class LocationImpl final : public PossibilityContour::Impl {
 public:
  LocationImpl(std::shared_ptr<const AuxiliaryContour> aux, double y)
      : aux_(std::move(aux)), y_(y) {}

  ContourModel model() const override {
    return aux_->symmetric() ? ContourModel::SymmetricLocation : ContourModel::SkewNormalLocation;
  }
  double observed() const override { return y_; }
  double evaluate(double theta) const override {
    if (std::isnan(theta)) throw DomainError("contour: NaN argument");
    if (!std::isfinite(theta)) return 0.0;
    return (*aux_)(y_ - theta);
  }
  Interval mode_interval() const override {
    const double m = y_ - aux_->mode();
    return {m, m};
  }
  Interval domain() const override {
    const auto [s_lo, s_hi] = aux_->law().support();
    return {y_ - s_hi, y_ - s_lo};
  }
  PlausibilityRegion region(double alpha) const override {
    const Interval u = aux_->level_set(alpha);
    if (u.empty()) return empty_region(alpha);
    PlausibilityRegion r;
    r.alpha = alpha;
    r.lo = y_ - u.hi;
    r.hi = y_ - u.lo;
    return r;
  }
  std::shared_ptr<const AuxiliaryContour> auxiliary() const override { return aux_; }

 private:
  std::shared_ptr<const AuxiliaryContour> aux_;
  double y_;
};

class BinomialImpl final : public PossibilityContour::Impl {
 public:
  BinomialImpl(int n, int y) : n_(n), y_(y) {
    plateau_.lo = y_ > 0 ? special::ibeta_inv(y_, n_ - y_ + 1.0, 0.5) : 0.0;
    plateau_.hi = y_ < n_ ? special::ibeta_inv(y_ + 1.0, n_ - y_, 0.5) : 1.0;
  }

  ContourModel model() const override { return ContourModel::Binomial; }
  double observed() const override { return y_; }
  int trials() const override { return n_; }

  double evaluate(double theta) const override {
    if (std::isnan(theta)) throw DomainError("contour: NaN argument");
    if (theta < 0.0 || theta > 1.0) return 0.0;
    double value = 1.0;
    // P_theta(Y >= y) side, increasing in theta.
    if (y_ > 0) value = std::min(value, 2.0 * special::ibeta(y_, n_ - y_ + 1.0, theta));
    // P_theta(Y <= y) side, decreasing in theta.
    if (y_ < n_) value = std::min(value, 2.0 * special::ibetac(y_ + 1.0, n_ - y_, theta));
    return value;
  }

  Interval mode_interval() const override { return plateau_; }
  Interval domain() const override { return {0.0, 1.0}; }

  PlausibilityRegion region(double alpha) const override {
    require_level(alpha);
    if (alpha >= 1.0) return empty_region(alpha);
    PlausibilityRegion r;
    r.alpha = alpha;
    if (alpha <= 0.0) {
      r.lo = 0.0;
      r.hi = 1.0;
      r.lo_closed = y_ == 0;
      r.hi_closed = y_ == n_;
      return r;
    }
    const Interval ends = cache_.get(alpha, [this](double a) { return solve(a); });
    r.lo = ends.lo;
    r.hi = ends.hi;
    r.lo_closed = y_ == 0;
    r.hi_closed = y_ == n_;
    return r;
  }

 private:
  Interval solve(double alpha) const {
    return {y_ > 0 ? special::ibeta_inv(y_, n_ - y_ + 1.0, 0.5 * alpha) : 0.0,
            y_ < n_ ? special::ibetac_inv(y_ + 1.0, n_ - y_, 0.5 * alpha) : 1.0};
  }

  int n_;
  int y_;
  Interval plateau_;
  detail::LevelCache cache_;
};

class CustomImpl final : public PossibilityContour::Impl {
 public:
  CustomImpl(std::function<double(double)> f, Interval mode, Interval domain, double observed)
      : f_(std::move(f)), mode_(mode), domain_(domain), observed_(observed) {}

  ContourModel model() const override { return ContourModel::Custom; }
  double observed() const override { return observed_; }
  double evaluate(double theta) const override {
    if (std::isnan(theta)) throw DomainError("contour: NaN argument");
    if (theta < domain_.lo || theta > domain_.hi) return 0.0;
    return std::clamp(f_(theta), 0.0, 1.0);
  }
  Interval mode_interval() const override { return mode_; }
  Interval domain() const override { return domain_; }

  PlausibilityRegion region(double alpha) const override {
    require_level(alpha);
    if (alpha >= 1.0) return empty_region(alpha);
    auto above = [&](double x) { return evaluate(x) > alpha; };
    auto excess = [&](double x) { return evaluate(x) - alpha; };
    PlausibilityRegion r;
    r.alpha = alpha;
    if (std::isfinite(domain_.lo)) {
      if (above(domain_.lo)) {
        r.lo = domain_.lo;
        r.lo_closed = true;
      } else {
        r.lo = numeric::bisect(excess, domain_.lo, mode_.lo, kEndpointTol);
      }
    } else {
      const double lo = numeric::expand_left(above, mode_.lo, 1.0);
      r.lo = std::isfinite(lo) && lo > std::numeric_limits<double>::lowest()
                 ? numeric::bisect(excess, lo, mode_.lo, kEndpointTol)
                 : -kInf;
    }
    if (std::isfinite(domain_.hi)) {
      if (above(domain_.hi)) {
        r.hi = domain_.hi;
        r.hi_closed = true;
      } else {
        r.hi = numeric::bisect(excess, mode_.hi, domain_.hi, kEndpointTol);
      }
    } else {
      const double hi = numeric::expand_right(above, mode_.hi, 1.0);
      r.hi = hi < std::numeric_limits<double>::max()
                 ? numeric::bisect(excess, mode_.hi, hi, kEndpointTol)
                 : kInf;
    }
    return r;
  }

 private:
  std::function<double(double)> f_;
  Interval mode_;
  Interval domain_;
  double observed_;
};

}  // namespace

PossibilityContour::PossibilityContour(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {
  if (!impl_) throw InvalidArgumentError("contour: null implementation");
}

ContourModel PossibilityContour::model() const { return impl_->model(); }
double PossibilityContour::observed() const { return impl_->observed(); }
int PossibilityContour::trials() const { return impl_->trials(); }
double PossibilityContour::operator()(double theta) const { return impl_->evaluate(theta); }
Interval PossibilityContour::mode_interval() const { return impl_->mode_interval(); }
Interval PossibilityContour::domain() const { return impl_->domain(); }
PlausibilityRegion PossibilityContour::region(double alpha) const { return impl_->region(alpha); }
std::shared_ptr<const AuxiliaryContour> PossibilityContour::auxiliary() const {
  return impl_->auxiliary();
}

PossibilityContour location_contour(const Distribution& law, double y) {
  return location_contour(make_auxiliary(law), y);
}

PossibilityContour location_contour(std::shared_ptr<const AuxiliaryContour> aux, double y) {
  if (!aux) throw InvalidArgumentError("location_contour: null auxiliary contour");
  if (!std::isfinite(y)) throw DomainError("location_contour: observation must be finite");
  const Family family = aux->law().family();
  if (family != Family::Normal && family != Family::StudentT && family != Family::SkewNormal) {
    throw UnsupportedModelError("location_contour: unsupported auxiliary law " +
                                aux->law().describe());
  }
  return PossibilityContour(std::make_shared<const LocationImpl>(std::move(aux), y));
}

PossibilityContour binomial_contour(int n, int y) {
  if (n < 1) throw InvalidArgumentError("binomial_contour: need n >= 1");
  if (y < 0 || y > n) {
    throw DomainError("binomial_contour: count " + std::to_string(y) + " outside [0, " +
                      std::to_string(n) + "]");
  }
  return PossibilityContour(std::make_shared<const BinomialImpl>(n, y));
}

PossibilityContour custom_contour(std::function<double(double)> evaluator, Interval mode,
                                  Interval domain, double observed) {
  if (!evaluator) throw InvalidArgumentError("custom_contour: empty evaluator");
  if (mode.empty() || domain.empty() || mode.lo < domain.lo || mode.hi > domain.hi) {
    throw InvalidArgumentError("custom_contour: mode interval must lie inside the domain");
  }
  return PossibilityContour(
      std::make_shared<const CustomImpl>(std::move(evaluator), mode, domain, observed));
}

PlausibilityRegion plausibility_region(const PossibilityContour& contour, double alpha) {
  if (std::isnan(alpha) || alpha < 0.0 || alpha > 1.0) {
    throw DomainError("plausibility_region: level must lie in [0, 1]");
  }
  return contour.region(alpha);
}

ConvexityReport check_directional_convexity(const PossibilityContour& contour,
                                            const std::vector<double>& grid, double tolerance) {
  if (grid.size() < 3) throw DomainError("convexity check: grid needs at least 3 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw DomainError("convexity check: grid must be finite and strictly increasing");
    }
  }
  const Interval mode = contour.mode_interval();
  std::vector<double> left;
  std::vector<double> right;
  for (double x : grid) {
    if (x <= mode.lo) left.push_back(x);
    if (x >= mode.hi) right.push_back(x);
  }
  if ((grid.front() < mode.lo && left.size() < 3) || (grid.back() > mode.hi && right.size() < 3)) {
    throw DomainError("convexity check: each monotone branch needs at least 3 grid points");
  }

  ConvexityReport report;
  auto scan = [&](const std::vector<double>& xs) {
    if (xs.size() < 3) return;
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = contour(xs[i]);
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
      const double h1 = xs[i] - xs[i - 1];
      const double h2 = xs[i + 1] - xs[i];
      const double second =
          ((v[i + 1] - v[i]) / h2 - (v[i] - v[i - 1]) / h1) * 0.5 * (h1 + h2);
      ++report.triples_checked;
      if (second < report.worst_second_difference) {
        report.worst_second_difference = second;
        report.worst_at = xs[i];
      }
    }
  };
  scan(left);
  scan(right);
  report.convex = report.worst_second_difference >= -tolerance;
  return report;
}

}  // namespace imdecide
