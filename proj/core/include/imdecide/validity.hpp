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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imdecide/contour.hpp"
#include "imdecide/decision.hpp"
#include "imdecide/dist.hpp"
#include "imdecide/fiducial.hpp"
#include "imdecide/oracle.hpp"

namespace imdecide {

enum class ModelKind { Location, Binomial };

// Y = theta + U with U from `aux_law`, or Y ~ Binomial(trials, theta).
struct ModelSpec {
  ModelKind kind = ModelKind::Location;
  Distribution aux_law = Distribution::student_t(3.0);
  int trials = 0;

  static ModelSpec location(const Distribution& law) { return {ModelKind::Location, law, 0}; }
  static ModelSpec binomial(int n) { return {ModelKind::Binomial, Distribution::uniform01(), n}; }

  std::string describe() const;
};

enum class SimulationMethod { Auto, MonteCarlo, Exact };

const char* to_string(SimulationMethod method);

inline constexpr std::size_t kExactOutcomeLimit = 10000;

// 0.01, 0.02, ..., 0.99
std::vector<double> default_alpha_grid();

struct ExperimentConfig {
  ModelSpec model;
  double theta = 0.0;
  std::size_t replications = 10000;
  std::uint64_t seed = 20260101;
  SimulationMethod method = SimulationMethod::Auto;
  std::vector<double> alphas = default_alpha_grid();
  RatioVariant variant = RatioVariant::Modified;
  std::string loss = "squared";
  LossParams loss_params;
  int ratio_points = kDefaultRatioPoints;
  double risk_tol = 1e-6;
  bool include_im = true;
  bool include_fiducial = true;
  // Zero means default_thread_count().
  unsigned threads = 0;

  // Throws InvalidArgumentError or DomainError on bad settings.
  void validate() const;
};

struct CdfReport {
  std::string comparator;
  bool exact = false;
  std::size_t replications = 0;
  std::vector<double> alphas;
  std::vector<double> cdf;
  std::vector<double> se;
  // cdf <= alpha + 3 se at every level (exact: cdf <= alpha + 1e-12).
  bool below_diagonal = true;
  // cdf > alpha + 3 se at some level (exact: cdf > alpha + 1e-12).
  bool exceeds_diagonal = false;
  double max_excess = 0.0;
  double max_excess_alpha = 0.0;
};

// One report per requested comparator: "im" then "fiducial".
std::vector<CdfReport> simulate_ratio_cdf(const ExperimentConfig& cfg);

struct CoverageReport {
  double coverage = 0.0;
  double se = 0.0;
  bool exact = false;
  std::size_t replications = 0;
};

CoverageReport coverage_check(const ModelSpec& model, double theta, double alpha,
                              std::size_t replications, std::uint64_t seed,
                              SimulationMethod method = SimulationMethod::Auto,
                              unsigned threads = 0);

// Empirical CDF of pi_Y(theta). Throws EmptyRequestError for zero replications.
CdfReport contour_validity_cdf(const ModelSpec& model, double theta, std::size_t replications,
                               std::uint64_t seed, const std::vector<double>& alphas,
                               SimulationMethod method = SimulationMethod::Auto,
                               unsigned threads = 0);

}  // namespace imdecide
