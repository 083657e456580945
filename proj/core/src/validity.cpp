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

#include "imdecide/validity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>

#include "imdecide/error.hpp"
#include "imdecide/parallel.hpp"

namespace imdecide {
namespace {

constexpr double kExactSlack = 1e-12;

// Sample of outcomes with weights: either M equally weighted draws or the
// full binomial support weighted by the pmf.
struct Outcomes {
  std::vector<double> y;
  std::vector<double> weight;
  bool exact = false;
};

bool use_exact(const ModelSpec& model, SimulationMethod method) {
  const bool possible = model.kind == ModelKind::Binomial &&
                        static_cast<std::size_t>(model.trials) + 1 <= kExactOutcomeLimit;
  if (method == SimulationMethod::Exact && !possible) {
    throw InvalidArgumentError("exact enumeration needs a binomial model with at most " +
                               std::to_string(kExactOutcomeLimit) + " outcomes");
  }
  return method == SimulationMethod::Exact || (method == SimulationMethod::Auto && possible);
}

void check_model(const ModelSpec& model, double theta) {
  if (model.kind == ModelKind::Binomial) {
    if (model.trials < 1) throw InvalidArgumentError("binomial model: need n >= 1");
    if (!(theta >= 0.0 && theta <= 1.0)) {
      throw DomainError("binomial model: theta must lie in [0, 1]");
    }
  } else if (!std::isfinite(theta)) {
    throw DomainError("location model: theta must be finite");
  }
}

Outcomes draw(const ModelSpec& model, double theta, std::size_t m, std::uint64_t seed,
              SimulationMethod method) {
  check_model(model, theta);
  if (m == 0) throw EmptyRequestError("experiment: zero replications");
  Outcomes out;
  if (use_exact(model, method)) {
    out.exact = true;
    const Distribution law = Distribution::binomial(model.trials, theta);
    for (int k = 0; k <= model.trials; ++k) {
      const double w = law.density(k);
      if (w == 0.0) continue;
      out.y.push_back(k);
      out.weight.push_back(w);
    }
    return out;
  }
  const Distribution law = model.kind == ModelKind::Binomial
                               ? Distribution::binomial(model.trials, theta)
                               : model.aux_law;
  out.y.resize(m);
  out.weight.assign(m, 1.0 / static_cast<double>(m));
  for (std::size_t r = 0; r < m; ++r) {
    Rng rng(seed, r);
    const double u = law.sample(rng);
    out.y[r] = model.kind == ModelKind::Binomial ? u : theta + u;
  }
  return out;
}

// Share of outcomes where hit(i) holds; Monte Carlo counts, then divides once.
template <class Hit>
double share(const Outcomes& outcomes, Hit&& hit) {
  if (!outcomes.exact) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < outcomes.y.size(); ++i) count += hit(i) ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(outcomes.y.size());
  }
  double p = 0.0;
  for (std::size_t i = 0; i < outcomes.y.size(); ++i) {
    if (hit(i)) p += outcomes.weight[i];
  }
  return std::clamp(p, 0.0, 1.0);
}

PossibilityContour contour_at(const ModelSpec& model,
                              const std::shared_ptr<const AuxiliaryContour>& aux, double y) {
  if (model.kind == ModelKind::Binomial) return binomial_contour(model.trials, static_cast<int>(y));
  return location_contour(aux, y);
}

ConfidenceDistribution fiducial_at(const ModelSpec& model, double y) {
  if (model.kind == ModelKind::Binomial) return binomial_fiducial(model.trials, static_cast<int>(y));
  return location_fiducial(model.aux_law, y);
}

CdfReport tabulate(const std::string& name, const Outcomes& outcomes,
                   const std::vector<double>& values, const std::vector<double>& alphas) {
  CdfReport report;
  report.comparator = name;
  report.exact = outcomes.exact;
  report.replications = outcomes.exact ? 0 : outcomes.y.size();
  report.alphas = alphas;
  const double m = static_cast<double>(outcomes.y.size());
  report.max_excess = -std::numeric_limits<double>::infinity();
  for (double alpha : alphas) {
    const double p = share(outcomes, [&](std::size_t i) { return values[i] <= alpha; });
    const double se = outcomes.exact ? 0.0 : std::sqrt(p * (1.0 - p) / m);
    report.cdf.push_back(p);
    report.se.push_back(se);
    const double slack = outcomes.exact ? kExactSlack : 3.0 * se;
    if (p > alpha + slack) {
      report.below_diagonal = false;
      report.exceeds_diagonal = true;
    }
    if (p - alpha > report.max_excess) {
      report.max_excess = p - alpha;
      report.max_excess_alpha = alpha;
    }
  }
  return report;
}

void check_alphas(const std::vector<double>& alphas) {
  if (alphas.empty()) throw EmptyRequestError("experiment: empty level grid");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] >= 0.0 && alphas[i] <= 1.0) || (i > 0 && alphas[i] < alphas[i - 1])) {
      throw InvalidArgumentError("experiment: levels must be sorted and lie in [0, 1]");
    }
  }
}

unsigned threads_or_default(unsigned threads) {
  return threads == 0 ? default_thread_count() : threads;
}

}  // namespace

std::string ModelSpec::describe() const {
  std::ostringstream out;
  if (kind == ModelKind::Binomial) {
    out << "binomial(n=" << trials << ")";
  } else {
    out << "location(" << aux_law.describe() << ")";
  }
  return out.str();
}

const char* to_string(SimulationMethod method) {
  switch (method) {
    case SimulationMethod::Auto: return "auto";
    case SimulationMethod::MonteCarlo: return "monte-carlo";
    case SimulationMethod::Exact: return "exact";
  }
  return "unknown";
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid(99);
  for (int i = 0; i < 99; ++i) grid[i] = (i + 1) / 100.0;
  return grid;
}

void ExperimentConfig::validate() const {
  check_model(model, theta);
  if (replications == 0) throw EmptyRequestError("experiment: zero replications");
  check_alphas(alphas);
  if (ratio_points < 1) throw InvalidArgumentError("experiment: need at least one action");
  if (!(risk_tol > 0.0)) throw InvalidArgumentError("experiment: risk tolerance must be > 0");
  if (!include_im && !include_fiducial) {
    throw InvalidArgumentError("experiment: no comparator selected");
  }
  use_exact(model, method);
}

std::vector<CdfReport> simulate_ratio_cdf(const ExperimentConfig& cfg) {
  cfg.validate();
  const Outcomes outcomes = draw(cfg.model, cfg.theta, cfg.replications, cfg.seed, cfg.method);
  std::shared_ptr<const AuxiliaryContour> aux;
  if (cfg.model.kind == ModelKind::Location) aux = make_auxiliary(cfg.model.aux_law);
  LossParams params = cfg.loss_params;
  if (!params.base && aux) params.base = aux;
  const LossFunction loss = make_loss(cfg.loss, params);

  const std::size_t n = outcomes.y.size();
  std::vector<double> im(n);
  std::vector<double> fid(n);
  parallel_for(n, threads_or_default(cfg.threads), [&](std::size_t i) {
    const double y = outcomes.y[i];
    const PossibilityContour contour = contour_at(cfg.model, aux, y);
    RatioSpec spec = default_ratio_spec(contour, cfg.variant, cfg.ratio_points);
    spec.risk_tol = cfg.risk_tol;
    if (cfg.include_im) im[i] = min_ratio(contour, loss, spec, cfg.theta);
    if (cfg.include_fiducial) {
      fid[i] = fiducial_min_ratio(fiducial_at(cfg.model, y), loss, spec, cfg.theta, contour);
    }
  });

  std::vector<CdfReport> reports;
  if (cfg.include_im) reports.push_back(tabulate("im", outcomes, im, cfg.alphas));
  if (cfg.include_fiducial) reports.push_back(tabulate("fiducial", outcomes, fid, cfg.alphas));
  return reports;
}

CoverageReport coverage_check(const ModelSpec& model, double theta, double alpha,
                              std::size_t replications, std::uint64_t seed,
                              SimulationMethod method, unsigned threads) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("coverage_check: alpha must lie in [0, 1)");
  const Outcomes outcomes = draw(model, theta, replications, seed, method);
  std::shared_ptr<const AuxiliaryContour> aux;
  if (model.kind == ModelKind::Location) aux = make_auxiliary(model.aux_law);
  std::vector<char> covered(outcomes.y.size());
  parallel_for(outcomes.y.size(), threads_or_default(threads), [&](std::size_t i) {
    covered[i] = contour_at(model, aux, outcomes.y[i]).region(alpha).contains(theta) ? 1 : 0;
  });
  CoverageReport report;
  report.exact = outcomes.exact;
  report.replications = outcomes.exact ? 0 : outcomes.y.size();
  report.coverage = share(outcomes, [&](std::size_t i) { return covered[i] != 0; });
  if (!outcomes.exact) {
    report.se = std::sqrt(report.coverage * (1.0 - report.coverage) /
                          static_cast<double>(outcomes.y.size()));
  }
  return report;
}

CdfReport contour_validity_cdf(const ModelSpec& model, double theta, std::size_t replications,
                               std::uint64_t seed, const std::vector<double>& alphas,
                               SimulationMethod method, unsigned threads) {
  check_alphas(alphas);
  const Outcomes outcomes = draw(model, theta, replications, seed, method);
  std::shared_ptr<const AuxiliaryContour> aux;
  if (model.kind == ModelKind::Location) aux = make_auxiliary(model.aux_law);
  std::vector<double> values(outcomes.y.size());
  parallel_for(outcomes.y.size(), threads_or_default(threads), [&](std::size_t i) {
    values[i] = contour_at(model, aux, outcomes.y[i])(theta);
  });
  return tabulate("contour", outcomes, values, alphas);
}

}  // namespace imdecide
