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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "imdecide/rng.hpp"

namespace imdecide {

// Parameter records for the supported univariate laws.
namespace laws {

struct Normal {
  double mean = 0.0;
  double sd = 1.0;
};

struct StudentT {
  double dof = 1.0;
};

// Azzalini skew-normal with density 2 phi(u) Phi(slant * u).
struct SkewNormal {
  double slant = 0.0;
};

struct Beta {
  double a = 1.0;
  double b = 1.0;
};

struct Binomial {
  int trials = 1;
  double p = 0.5;
};

struct Uniform01 {};

}  // namespace laws

enum class Family { Normal, StudentT, SkewNormal, Beta, Binomial, Uniform01 };

// A univariate law: density (pmf for the binomial), distribution function,
// quantile function and sampler. Immutable; every member is safe to call
// concurrently.
class Distribution {
 public:
  using Law = std::variant<laws::Normal, laws::StudentT, laws::SkewNormal, laws::Beta,
                           laws::Binomial, laws::Uniform01>;

  // Validates the parameters; throws InvalidArgumentError.
  explicit Distribution(Law law);

  static Distribution normal(double mean = 0.0, double sd = 1.0) {
    return Distribution(laws::Normal{mean, sd});
  }
  static Distribution student_t(double dof) { return Distribution(laws::StudentT{dof}); }
  static Distribution skew_normal(double slant) { return Distribution(laws::SkewNormal{slant}); }
  static Distribution beta(double a, double b) { return Distribution(laws::Beta{a, b}); }
  static Distribution binomial(int trials, double p) {
    return Distribution(laws::Binomial{trials, p});
  }
  static Distribution uniform01() { return Distribution(laws::Uniform01{}); }

  Family family() const;
  const Law& law() const { return law_; }
  std::string describe() const;

  bool is_continuous() const;
  // Strictly decreasing density on both sides of a single mode.
  bool is_unimodal() const;
  // Density symmetric about the mode.
  bool is_symmetric() const;

  std::pair<double, double> support() const;

  // Throws DomainError for non-finite u. Zero outside the support.
  double density(double u) const;
  double log_density(double u) const;

  double cdf(double u) const;
  // 1 - cdf(u), accurate in the upper tail.
  double ccdf(double u) const;

  // Inverse of cdf for p in (0, 1); throws DomainError otherwise. For the
  // binomial, the smallest k with cdf(k) >= p.
  double quantile(double p) const;
  // Inverse of ccdf for q in (0, 1), accurate for small q.
  double upper_quantile(double q) const;

  // Throws UnsupportedModelError when the law has no single mode.
  double mode() const;
  double mean() const;
  double variance() const;

  double sample(Rng& rng) const;
  // Throws EmptyRequestError for m == 0.
  std::vector<double> sample(Rng& rng, std::size_t m) const;

  bool operator==(const Distribution& other) const;

 private:
  Law law_;
  double mode_ = 0.0;  // cached for laws where it is computed numerically
};

}  // namespace imdecide
