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

#include "imdecide/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "imdecide/error.hpp"
#include "imdecide/quadrature.hpp"
#include "imdecide/roots.hpp"
#include "imdecide/special.hpp"

namespace imdecide {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(double u, const char* what) {
  if (!std::isfinite(u)) throw DomainError(std::string(what) + ": argument must be finite");
}

void require_open_unit(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(std::string(what) + ": probability must lie in (0, 1)");
  }
}

// ---- Student t -------------------------------------------------------------

double t_log_density(double nu, double t) {
  return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
         0.5 * std::log(nu * std::numbers::pi) - 0.5 * (nu + 1.0) * std::log1p(t * t / nu);
}

// Upper tail P(T > t) for t >= 0.
double t_upper_tail(double nu, double t) {
  const double r = t / std::sqrt(nu);
  double x;
  double y;
  if (r > 1e100) {
    x = (1.0 / r) * (1.0 / r);
    y = 1.0;
  } else {
    const double r2 = r * r;
    x = 1.0 / (1.0 + r2);
    y = r2 / (1.0 + r2);
  }
  return 0.5 * special::ibeta(0.5 * nu, 0.5, x, y);
}

double t_cdf(double nu, double t) {
  if (std::isnan(t)) throw DomainError("cdf: NaN argument");
  return t >= 0.0 ? 1.0 - t_upper_tail(nu, t) : t_upper_tail(nu, -t);
}

double t_ccdf(double nu, double t) {
  if (std::isnan(t)) throw DomainError("ccdf: NaN argument");
  return t >= 0.0 ? t_upper_tail(nu, t) : 1.0 - t_upper_tail(nu, -t);
}

// Solves P(T > t) = q for q in (0, 1/2].
double t_upper_quantile_half(double nu, double q) {
  const double two_q = 2.0 * q;
  if (two_q < 0.5) {
    const double x = special::ibeta_inv(0.5 * nu, 0.5, two_q);
    return std::sqrt(nu * (1.0 - x) / x);
  }
  const double y = special::ibeta_inv(0.5, 0.5 * nu, 1.0 - two_q);
  return std::sqrt(nu * y / (1.0 - y));
}

// ---- Normal ----------------------------------------------------------------

// Standard normal lower quantile for p <= 1/2, Newton on log Phi.
double std_normal_lower_quantile(double p) {
  const double log_p = std::log(p);
  auto eval = [&](double x, double& g, double& dg) {
    const double log_cdf = special::normal_log_cdf(x);
    g = log_cdf - log_p;
    dg = std::exp(special::normal_log_pdf(x) - log_cdf);
  };
  // Start from the leading term of the tail expansion.
  double guess = -std::sqrt(-2.0 * log_p);
  if (p > 0.2) guess = -1.0;
  return numeric::newton_bisect(eval, -40.0, 0.0, guess, 1e-15, 1e-16);
}

// ---- Skew normal -----------------------------------------------------------

double sn_log_density(double slant, double u) {
  return std::log(2.0) + special::normal_log_pdf(u) + special::normal_log_cdf(slant * u);
}

double sn_mode(double slant) {
  if (slant == 0.0) return 0.0;
  if (slant < 0.0) return -sn_mode(-slant);
  // d/du log f = -u + slant * phi(slant u) / Phi(slant u)
  auto score = [slant](double u) {
    const double z = slant * u;
    return -u + slant * std::exp(special::normal_log_pdf(z) - special::normal_log_cdf(z));
  };
  return numeric::bisect(score, 0.0, 1.0, 1e-15, 1e-16);
}

numeric::QuadratureOptions sn_tail_options() {
  numeric::QuadratureOptions opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = 1e-13;
  opts.max_panels = 200;
  return opts;
}

// For slant k > 0 and x < 0:
//   F(x) = (1/pi) int_0^{1/k} exp(-x^2 (1 + s^-2) / 2) / (1 + s^2) ds
double sn_lower_tail_positive(double slant, double x) {
  const double h2 = x * x;
  auto integrand = [h2](double s) {
    if (s == 0.0) return 0.0;
    return std::exp(-0.5 * h2 * (1.0 + 1.0 / (s * s))) / (1.0 + s * s);
  };
  return numeric::integrate_finite(integrand, 0.0, 1.0 / slant, sn_tail_options()).value /
         std::numbers::pi;
}

// For slant k > 0 and x >= 0:
//   1 - F(x) = Q(x) + (1/pi) int_0^k exp(-x^2 (1 + t^2) / 2) / (1 + t^2) dt
double sn_upper_tail_positive(double slant, double x) {
  const double h2 = x * x;
  auto integrand = [h2](double t) { return std::exp(-0.5 * h2 * (1.0 + t * t)) / (1.0 + t * t); };
  const double owen =
      numeric::integrate_finite(integrand, 0.0, slant, sn_tail_options()).value / std::numbers::pi;
  return special::normal_ccdf(x) + owen;
}

double sn_cdf_positive(double slant, double x) {
  return x < 0.0 ? sn_lower_tail_positive(slant, x) : 1.0 - sn_upper_tail_positive(slant, x);
}

double sn_ccdf_positive(double slant, double x) {
  return x < 0.0 ? 1.0 - sn_lower_tail_positive(slant, x) : sn_upper_tail_positive(slant, x);
}

// X with slant -k is -X' with slant k.
double sn_cdf(double slant, double x) {
  if (x == -kInf) return 0.0;
  if (x == kInf) return 1.0;
  if (slant == 0.0) return special::normal_cdf(x);
  return slant > 0.0 ? sn_cdf_positive(slant, x) : sn_ccdf_positive(-slant, -x);
}

double sn_ccdf(double slant, double x) {
  if (x == -kInf) return 1.0;
  if (x == kInf) return 0.0;
  if (slant == 0.0) return special::normal_ccdf(x);
  return slant > 0.0 ? sn_ccdf_positive(slant, x) : sn_cdf_positive(-slant, -x);
}

// ---- Binomial --------------------------------------------------------------

double binomial_log_pmf(int n, double p, int k) {
  if (k < 0 || k > n) return -kInf;
  const double log_choose =
      std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  double log_mass = log_choose;
  if (k > 0) log_mass += k * std::log(p);
  if (n - k > 0) log_mass += (n - k) * std::log1p(-p);
  return log_mass;
}

// P(Y <= k)
double binomial_cdf(int n, double p, double u) {
  if (u < 0.0) return 0.0;
  if (u >= n) return 1.0;
  const int k = static_cast<int>(std::floor(u));
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  return special::ibeta(n - k, k + 1.0, 1.0 - p, p);
}

double binomial_ccdf(int n, double p, double u) {
  if (u < 0.0) return 1.0;
  if (u >= n) return 0.0;
  const int k = static_cast<int>(std::floor(u));
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return special::ibetac(n - k, k + 1.0, 1.0 - p, p);
}

// Bracketed inversion for continuous laws: solves cdf(x) = p, or ccdf(x) = p
// when `upper` is set.
template <class Dist>
double invert_continuous(const Dist& d, double p, bool upper) {
  auto tail = [&](double x) { return upper ? d.ccdf(x) : d.cdf(x); };
  auto short_of = [&](double x) { return upper ? tail(x) > p : tail(x) < p; };
  const double center = d.mode();
  double lo;
  double hi;
  if (short_of(center)) {
    lo = center;
    hi = numeric::expand_right(short_of, center, 1.0);
  } else {
    hi = center;
    lo = numeric::expand_left([&](double x) { return !short_of(x); }, center, 1.0);
  }
  auto eval = [&](double x, double& g, double& dg) {
    g = upper ? p - d.ccdf(x) : d.cdf(x) - p;
    dg = d.density(x);
  };
  return numeric::newton_bisect(eval, lo, hi, 0.5 * (lo + hi), 1e-14, 1e-15);
}

}  // namespace

Distribution::Distribution(Law law) : law_(std::move(law)) {
  std::visit(Overloaded{
                 [](const laws::Normal& n) {
                   if (!std::isfinite(n.mean) || !(n.sd > 0.0) || !std::isfinite(n.sd)) {
                     throw InvalidArgumentError("Normal: need finite mean and sd > 0");
                   }
                 },
                 [](const laws::StudentT& t) {
                   if (!(t.dof > 0.0) || !std::isfinite(t.dof)) {
                     throw InvalidArgumentError("StudentT: degrees of freedom must be > 0");
                   }
                 },
                 [this](const laws::SkewNormal& s) {
                   if (!std::isfinite(s.slant)) {
                     throw InvalidArgumentError("SkewNormal: slant must be finite");
                   }
                   mode_ = sn_mode(s.slant);
                 },
                 [](const laws::Beta& b) {
                   if (!(b.a > 0.0) || !(b.b > 0.0) || !std::isfinite(b.a) || !std::isfinite(b.b)) {
                     throw InvalidArgumentError("Beta: shapes must be positive and finite");
                   }
                 },
                 [](const laws::Binomial& b) {
                   if (b.trials < 0 || !(b.p >= 0.0 && b.p <= 1.0)) {
                     throw InvalidArgumentError("Binomial: need trials >= 0 and p in [0, 1]");
                   }
                 },
                 [](const laws::Uniform01&) {},
             },
             law_);
}

Family Distribution::family() const {
  return static_cast<Family>(law_.index());
}

std::string Distribution::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{
                 [&](const laws::Normal& n) { out << "Normal(" << n.mean << ", " << n.sd << ")"; },
                 [&](const laws::StudentT& t) { out << "StudentT(" << t.dof << ")"; },
                 [&](const laws::SkewNormal& s) { out << "SkewNormal(" << s.slant << ")"; },
                 [&](const laws::Beta& b) { out << "Beta(" << b.a << ", " << b.b << ")"; },
                 [&](const laws::Binomial& b) {
                   out << "Binomial(" << b.trials << ", " << b.p << ")";
                 },
                 [&](const laws::Uniform01&) { out << "Uniform01"; },
             },
             law_);
  return out.str();
}

bool Distribution::is_continuous() const { return family() != Family::Binomial; }

bool Distribution::is_unimodal() const {
  return std::visit(Overloaded{
                        [](const laws::Beta& b) { return b.a >= 1.0 && b.b >= 1.0 && b.a + b.b > 2.0; },
                        [](const laws::Binomial&) { return false; },
                        [](const laws::Uniform01&) { return false; },
                        [](const auto&) { return true; },
                    },
                    law_);
}

bool Distribution::is_symmetric() const {
  return std::visit(Overloaded{
                        [](const laws::SkewNormal& s) { return s.slant == 0.0; },
                        [](const laws::Beta& b) { return b.a == b.b; },
                        [](const laws::Binomial& b) { return b.p == 0.5; },
                        [](const auto&) { return true; },
                    },
                    law_);
}

std::pair<double, double> Distribution::support() const {
  return std::visit(Overloaded{
                        [](const laws::Beta&) { return std::pair{0.0, 1.0}; },
                        [](const laws::Uniform01&) { return std::pair{0.0, 1.0}; },
                        [](const laws::Binomial& b) { return std::pair{0.0, double(b.trials)}; },
                        [](const auto&) { return std::pair{-kInf, kInf}; },
                    },
                    law_);
}

double Distribution::log_density(double u) const {
  require_finite(u, "density");
  return std::visit(
      Overloaded{
          [u](const laws::Normal& n) {
            return special::normal_log_pdf((u - n.mean) / n.sd) - std::log(n.sd);
          },
          [u](const laws::StudentT& t) { return t_log_density(t.dof, u); },
          [u](const laws::SkewNormal& s) { return sn_log_density(s.slant, u); },
          [u](const laws::Beta& b) {
            if (u < 0.0 || u > 1.0) return -kInf;
            if ((u == 0.0 && b.a > 1.0) || (u == 1.0 && b.b > 1.0)) return -kInf;
            if ((u == 0.0 && b.a < 1.0) || (u == 1.0 && b.b < 1.0)) return kInf;
            const double la = b.a == 1.0 ? 0.0 : (b.a - 1.0) * std::log(u);
            const double lb = b.b == 1.0 ? 0.0 : (b.b - 1.0) * std::log1p(-u);
            return la + lb - special::log_beta(b.a, b.b);
          },
          [u](const laws::Binomial& b) {
            if (u != std::floor(u)) return -kInf;
            return binomial_log_pmf(b.trials, b.p, static_cast<int>(u));
          },
          [u](const laws::Uniform01&) { return (u >= 0.0 && u <= 1.0) ? 0.0 : -kInf; },
      },
      law_);
}

double Distribution::density(double u) const { return std::exp(log_density(u)); }

double Distribution::cdf(double u) const {
  if (std::isnan(u)) throw DomainError("cdf: NaN argument");
  return std::visit(Overloaded{
                        [u](const laws::Normal& n) { return special::normal_cdf((u - n.mean) / n.sd); },
                        [u](const laws::StudentT& t) { return t_cdf(t.dof, u); },
                        [u](const laws::SkewNormal& s) { return sn_cdf(s.slant, u); },
                        [u](const laws::Beta& b) {
                          if (u <= 0.0) return 0.0;
                          if (u >= 1.0) return 1.0;
                          return special::ibeta(b.a, b.b, u);
                        },
                        [u](const laws::Binomial& b) { return binomial_cdf(b.trials, b.p, u); },
                        [u](const laws::Uniform01&) { return std::clamp(u, 0.0, 1.0); },
                    },
                    law_);
}

double Distribution::ccdf(double u) const {
  if (std::isnan(u)) throw DomainError("ccdf: NaN argument");
  return std::visit(Overloaded{
                        [u](const laws::Normal& n) { return special::normal_ccdf((u - n.mean) / n.sd); },
                        [u](const laws::StudentT& t) { return t_ccdf(t.dof, u); },
                        [u](const laws::SkewNormal& s) { return sn_ccdf(s.slant, u); },
                        [u](const laws::Beta& b) {
                          if (u <= 0.0) return 1.0;
                          if (u >= 1.0) return 0.0;
                          return special::ibetac(b.a, b.b, u);
                        },
                        [u](const laws::Binomial& b) { return binomial_ccdf(b.trials, b.p, u); },
                        [u](const laws::Uniform01&) { return 1.0 - std::clamp(u, 0.0, 1.0); },
                    },
                    law_);
}

double Distribution::quantile(double p) const {
  require_open_unit(p, "quantile");
  return std::visit(
      Overloaded{
          [p](const laws::Normal& n) {
            const double z = p <= 0.5 ? std_normal_lower_quantile(p)
                                      : -std_normal_lower_quantile(1.0 - p);
            return n.mean + n.sd * z;
          },
          [p](const laws::StudentT& t) {
            if (p == 0.5) return 0.0;
            return p < 0.5 ? -t_upper_quantile_half(t.dof, p)
                           : t_upper_quantile_half(t.dof, 1.0 - p);
          },
          [this, p](const laws::SkewNormal&) {
            return p <= 0.5 ? invert_continuous(*this, p, false)
                            : invert_continuous(*this, 1.0 - p, true);
          },
          [p](const laws::Beta& b) { return special::ibeta_inv(b.a, b.b, p); },
          [this, p](const laws::Binomial& b) {
            // Smallest k with cdf(k) >= p.
            int lo = -1;
            int hi = b.trials;
            while (hi - lo > 1) {
              const int mid = lo + (hi - lo) / 2;
              if (cdf(mid) >= p) {
                hi = mid;
              } else {
                lo = mid;
              }
            }
            return static_cast<double>(hi);
          },
          [p](const laws::Uniform01&) { return p; },
      },
      law_);
}

double Distribution::upper_quantile(double q) const {
  require_open_unit(q, "upper_quantile");
  return std::visit(
      Overloaded{
          [q](const laws::Normal& n) {
            const double z = q <= 0.5 ? -std_normal_lower_quantile(q)
                                      : std_normal_lower_quantile(1.0 - q);
            return n.mean + n.sd * z;
          },
          [q](const laws::StudentT& t) {
            if (q == 0.5) return 0.0;
            return q < 0.5 ? t_upper_quantile_half(t.dof, q)
                           : -t_upper_quantile_half(t.dof, 1.0 - q);
          },
          [this, q](const laws::SkewNormal&) {
            return q <= 0.5 ? invert_continuous(*this, q, true)
                            : invert_continuous(*this, 1.0 - q, false);
          },
          [q](const laws::Beta& b) { return special::ibetac_inv(b.a, b.b, q); },
          [this, q](const laws::Binomial&) { return quantile(1.0 - q); },
          [q](const laws::Uniform01&) { return 1.0 - q; },
      },
      law_);
}

double Distribution::mode() const {
  return std::visit(
      Overloaded{
          [](const laws::Normal& n) { return n.mean; },
          [](const laws::StudentT&) { return 0.0; },
          [this](const laws::SkewNormal&) { return mode_; },
          [this](const laws::Beta& b) {
            if (!is_unimodal()) throw UnsupportedModelError("Beta: no single mode for these shapes");
            if (b.a == 1.0) return 0.0;
            if (b.b == 1.0) return 1.0;
            return (b.a - 1.0) / (b.a + b.b - 2.0);
          },
          [](const laws::Binomial& b) {
            return std::min<double>(b.trials, std::floor((b.trials + 1) * b.p));
          },
          [](const laws::Uniform01&) -> double {
            throw UnsupportedModelError("Uniform01: density is flat, no mode");
          },
      },
      law_);
}

double Distribution::mean() const {
  return std::visit(Overloaded{
                        [](const laws::Normal& n) { return n.mean; },
                        [](const laws::StudentT& t) {
                          return t.dof > 1.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
                        },
                        [](const laws::SkewNormal& s) {
                          const double delta = s.slant / std::sqrt(1.0 + s.slant * s.slant);
                          return delta * std::sqrt(2.0 / std::numbers::pi);
                        },
                        [](const laws::Beta& b) { return b.a / (b.a + b.b); },
                        [](const laws::Binomial& b) { return b.trials * b.p; },
                        [](const laws::Uniform01&) { return 0.5; },
                    },
                    law_);
}

double Distribution::variance() const {
  return std::visit(Overloaded{
                        [](const laws::Normal& n) { return n.sd * n.sd; },
                        [](const laws::StudentT& t) {
                          if (t.dof > 2.0) return t.dof / (t.dof - 2.0);
                          return t.dof > 1.0 ? kInf : std::numeric_limits<double>::quiet_NaN();
                        },
                        [](const laws::SkewNormal& s) {
                          const double d2 = s.slant * s.slant / (1.0 + s.slant * s.slant);
                          return 1.0 - 2.0 * d2 / std::numbers::pi;
                        },
                        [](const laws::Beta& b) {
                          const double sum = b.a + b.b;
                          return b.a * b.b / (sum * sum * (sum + 1.0));
                        },
                        [](const laws::Binomial& b) { return b.trials * b.p * (1.0 - b.p); },
                        [](const laws::Uniform01&) { return 1.0 / 12.0; },
                    },
                    law_);
}

double Distribution::sample(Rng& rng) const {
  return std::visit(
      Overloaded{
          [&](const laws::Normal& n) { return n.mean + n.sd * rng.normal(); },
          [&](const laws::StudentT& t) {
            const double z = rng.normal();
            const double chi2 = 2.0 * rng.gamma(0.5 * t.dof);
            return z / std::sqrt(chi2 / t.dof);
          },
          [&](const laws::SkewNormal& s) {
            // U = delta |Z1| + sqrt(1 - delta^2) Z2
            const double delta = s.slant / std::sqrt(1.0 + s.slant * s.slant);
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            return delta * std::fabs(z1) + std::sqrt(1.0 - delta * delta) * z2;
          },
          [&](const laws::Beta& b) {
            const double x = rng.gamma(b.a);
            const double y = rng.gamma(b.b);
            return x / (x + y);
          },
          [&](const laws::Binomial& b) {
            if (b.trials <= 1000) {
              int successes = 0;
              for (int i = 0; i < b.trials; ++i) successes += rng.uniform() < b.p ? 1 : 0;
              return static_cast<double>(successes);
            }
            return quantile(rng.uniform());
          },
          [&](const laws::Uniform01&) { return rng.uniform(); },
      },
      law_);
}

std::vector<double> Distribution::sample(Rng& rng, std::size_t m) const {
  if (m == 0) throw EmptyRequestError("sample: requested zero draws");
  std::vector<double> out(m);
  for (auto& v : out) v = sample(rng);
  return out;
}

bool Distribution::operator==(const Distribution& other) const {
  if (law_.index() != other.law_.index()) return false;
  return std::visit(
      Overloaded{
          [&](const laws::Normal& a) {
            const auto& b = std::get<laws::Normal>(other.law_);
            return a.mean == b.mean && a.sd == b.sd;
          },
          [&](const laws::StudentT& a) { return a.dof == std::get<laws::StudentT>(other.law_).dof; },
          [&](const laws::SkewNormal& a) {
            return a.slant == std::get<laws::SkewNormal>(other.law_).slant;
          },
          [&](const laws::Beta& a) {
            const auto& b = std::get<laws::Beta>(other.law_);
            return a.a == b.a && a.b == b.b;
          },
          [&](const laws::Binomial& a) {
            const auto& b = std::get<laws::Binomial>(other.law_);
            return a.trials == b.trials && a.p == b.p;
          },
          [](const laws::Uniform01&) { return true; },
      },
      law_);
}

}  // namespace imdecide
