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

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "csv.hpp"

#include "imdecide/choquet.hpp"
#include "imdecide/contour.hpp"
#include "imdecide/decision.hpp"
#include "imdecide/error.hpp"
#include "imdecide/fiducial.hpp"
#include "imdecide/version.hpp"

namespace imdecide::cli {

using nlohmann::json;

namespace {

struct Model {
  PossibilityContour contour;
  ConfidenceDistribution fiducial;
  std::shared_ptr<const AuxiliaryContour> aux;
  bool binomial = false;
};

Distribution location_law(const json& m) {
  const std::string name = m.at("name");
  if (name == "t-location") return Distribution::student_t(m.at("df").get<double>());
  if (name == "normal-location") return Distribution::normal();
  if (name == "skew-normal") return Distribution::skew_normal(m.at("slant").get<double>());
  throw UsageError("unknown model '" + name + "'");
}

Model build_model(const json& m) {
  const double y = m.at("y");
  if (m.at("name") == "binomial") {
    const int n = m.at("n");
    if (y != std::floor(y)) throw UsageError("binomial --y must be an integer count");
    const int count = static_cast<int>(y);
    return {binomial_contour(n, count), binomial_fiducial(n, count), nullptr, true};
  }
  const auto aux = make_auxiliary(location_law(m));
  return {location_contour(aux, y), location_fiducial(aux->law(), y), aux, false};
}

LossFunction build_loss(const json& l, const Model& model) {
  const std::string name = l.at("name");
  LossParams p;
  if (l.contains("c")) p.c = l.at("c");
  if (l.contains("hypothesis")) p.hypothesis = {l.at("hypothesis")[0], l.at("hypothesis")[1]};
  if (name == "group-invariant") {
    if (!model.aux) throw UsageError("group-invariant loss needs a location model");
    p.base = model.aux;
  }
  return make_loss(name, p);
}

std::vector<double> linear_grid(double from, double to, long long points) {
  if (points <= 0) throw EmptyRequestError("empty grid: --points must be positive");
  if (!std::isfinite(from) || !std::isfinite(to)) throw UsageError("grid bounds must be finite");
  if (points == 1) return {from};
  if (!(from < to)) throw UsageError("grid needs --from < --to");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (long long i = 0; i < points; ++i) g[i] = from + (to - from) * static_cast<double>(i) / (points - 1);
  g.back() = to;
  return g;
}

CommandOutput run_contour(const json& cfg) {
  const Model model = build_model(cfg.at("model"));
  const json& g = cfg.at("grid");
  CsvWriter csv({"theta", "plausibility"});
  for (double t : linear_grid(g.at("from"), g.at("to"), g.at("points"))) csv.row({t, model.contour(t)});
  return {csv.str(), ""};
}

CommandOutput run_risk_curve(const json& cfg) {
  const Model model = build_model(cfg.at("model"));
  const LossFunction loss = build_loss(cfg.at("loss"), model);
  const auto actions = cfg.at("actions").get<std::vector<double>>();
  if (actions.empty()) throw EmptyRequestError("empty action grid");
  const double tol = cfg.at("tol");
  CsvWriter csv({"action", "upper_risk", "fiducial_risk"});
  std::size_t skipped = 0;
  for (double a : actions) {
    double upper = std::numeric_limits<double>::infinity();
    double fid = upper;
    try {
      upper = choquet_upper(model.contour, loss, a, tol).value;
    } catch (const NonPrevisibleError&) {
      ++skipped;
    }
    try {
      fid = expected_loss(model.fiducial, loss, a);
    } catch (const NonPrevisibleError&) {
      ++skipped;
    }
    csv.row({a, upper, fid});
  }
  std::string note;
  if (skipped) note = std::to_string(skipped) + " non-previsible risk value(s) written as inf\n";
  return {csv.str(), note};
}

CommandOutput run_decide(const json& cfg) {
  const Model model = build_model(cfg.at("model"));
  const LossFunction loss = build_loss(cfg.at("loss"), model);
  const json& b = cfg.at("bracket");
  ActionSearchSpec spec = default_search_spec(model.contour);
  spec.lo = b.at("lo");
  spec.hi = b.at("hi");
  spec.tol = b.at("tol");
  spec.validate();
  const auto upper = minimize_upper_loss(model.contour, loss, spec);
  const auto fid = minimize_expected_loss(model.fiducial, loss, spec);
  json r = {{"action", upper.action},
            {"upper_risk", upper.value},
            {"fiducial_action", fid.action},
            {"fiducial_risk", fid.value}};
  const std::string body = r.dump(2) + "\n";
  return {body, body};
}

CommandOutput run_validity(const json& cfg) {
  const ExperimentConfig exp = experiment_from_json(cfg);
  const auto reports = simulate_ratio_cdf(exp);
  const CdfReport& im = reports.at(0);
  const CdfReport& fid = reports.at(1);
  CsvWriter csv({"alpha", "cdf_im", "se_im", "cdf_fiducial", "se_fiducial"});
  for (std::size_t i = 0; i < exp.alphas.size(); ++i) {
    csv.row({exp.alphas[i], im.cdf[i], im.se[i], fid.cdf[i], fid.se[i]});
  }
  std::ostringstream note;
  for (const CdfReport* r : {&im, &fid}) {
    note << r->comparator << ": " << (r->exact ? "exact" : "monte-carlo") << ", "
         << (r->below_diagonal ? "below diagonal" : "not below diagonal");
    if (r->exceeds_diagonal) note << ", exceeds diagonal by " << r->max_excess << " at alpha " << r->max_excess_alpha;
    note << "\n";
  }
  return {csv.str(), note.str()};
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << bytes;
  if (!f.flush()) throw UsageError("write to '" + path + "' failed");
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

void emit(const std::string& command, const json& cfg, const CommandOutput& result, std::ostream& out) {
  const std::string path = cfg.at("out");
  write_file(path, result.body);
  write_file(manifest_path(path), make_manifest(command, cfg).dump(2) + "\n");
  out << result.console;
  if (command != "decide") out << "wrote " << path << "\n";
}

// ---- flags

struct ModelFlags {
  std::string name = "t-location";
  double df = 3.0;
  double slant = 3.0;
  int n = -1;
  double y = 0.0;
};

struct LossFlags {
  std::string name;
  double c = LossParams{}.c;
  double h_lo = 0.0;
  double h_hi = 0.5;
};

struct GridFlags {
  std::optional<double> from;
  std::optional<double> to;
  long long points = 401;
};

void add_model_flags(CLI::App* app, ModelFlags& f) {
  app->add_option("--model", f.name, "t-location, normal-location, skew-normal or binomial")
      ->check(CLI::IsMember({"t-location", "normal-location", "skew-normal", "binomial"}))
      ->capture_default_str();
  app->add_option("--df", f.df, "Student t degrees of freedom")->capture_default_str();
  app->add_option("--slant", f.slant, "skew-normal slant")->capture_default_str();
  app->add_option("--n", f.n, "binomial trials");
  app->add_option("--y", f.y, "observed value")->required();
}

void add_loss_flags(CLI::App* app, LossFlags& f) {
  app->add_option("--loss", f.name, "squared, weighted-squared, zero-one, group-invariant or constant")
      ->check(CLI::IsMember({"squared", "weighted-squared", "zero-one", "group-invariant", "constant"}));
  app->add_option("--c", f.c, "group-invariant coefficient or constant loss value")->capture_default_str();
  app->add_option("--h-lo", f.h_lo, "zero-one hypothesis lower end")->capture_default_str();
  app->add_option("--h-hi", f.h_hi, "zero-one hypothesis upper end")->capture_default_str();
}

void add_grid_flags(CLI::App* app, GridFlags& f, long long points) {
  f.points = points;
  app->add_option("--from", f.from, "grid start");
  app->add_option("--to", f.to, "grid end");
  app->add_option("--points", f.points, "grid size")->capture_default_str();
}

json resolve_model(const ModelFlags& f) {
  json m = {{"name", f.name}};
  if (f.name == "binomial") {
    if (f.n < 0) throw UsageError("binomial model needs --n");
    m["n"] = f.n;
  } else if (f.name == "t-location") {
    m["df"] = f.df;
  } else if (f.name == "skew-normal") {
    m["slant"] = f.slant;
  }
  if (!std::isfinite(f.y)) throw UsageError("--y must be finite");
  m["y"] = f.y;
  build_model(m);
  return m;
}

json resolve_loss(const LossFlags& f, const json& model) {
  std::string name = f.name;
  if (name.empty()) name = model.at("name") == "binomial" ? "weighted-squared" : "squared";
  json l = {{"name", name}};
  if (name == "group-invariant" || name == "constant") l["c"] = f.c;
  if (name == "zero-one") l["hypothesis"] = {f.h_lo, f.h_hi};
  return l;
}

std::pair<double, double> default_range(const json& model, bool actions) {
  const Model m = build_model(model);
  if (m.binomial && !actions) return {0.0, 1.0};
  const auto s = default_search_spec(m.contour);
  return {s.lo, s.hi};
}

json resolve_grid(const GridFlags& f, const json& model, bool actions) {
  const auto [lo, hi] = default_range(model, actions);
  return {{"from", f.from.value_or(lo)}, {"to", f.to.value_or(hi)}, {"points", f.points}};
}

const std::set<std::string> kModelKeys{"kind", "law", "df", "slant", "trials"};
const std::set<std::string> kExperimentKeys{"theta",   "replications", "seed",         "method",
                                            "loss",    "loss_c",       "hypothesis",   "variant",
                                            "ratio_points", "risk_tol", "threads",     "alphas"};
const std::set<std::string> kOutputKeys{"path"};

class TableReader {
 public:
  TableReader(const TomlDocument& doc, const std::string& section, const std::set<std::string>& keys)
      : doc_(doc), section_(section) {
    if (!doc.data.contains(section)) {
      table_ = json::object();
      return;
    }
    table_ = doc.data.at(section);
    for (const auto& [k, v] : table_.items()) {
      if (!keys.count(k)) doc.fail(section + "." + k, "unknown key '" + k + "' in [" + section + "]");
    }
  }

  bool has(const std::string& key) const { return table_.contains(key); }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    doc_.fail(section_ + "." + key, message);
  }

  const json& raw(const std::string& key) const {
    if (!has(key)) fail(key, "missing required key '" + key + "' in [" + section_ + "]");
    return table_.at(key);
  }

  double number(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_number()) fail(key, "'" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key, "'" + key + "' must be finite");
    return x;
  }
  double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  long long integer(const std::string& key, long long min) const {
    const json& v = raw(key);
    if (!v.is_number_integer()) fail(key, "'" + key + "' must be an integer");
    const long long x = v.get<long long>();
    if (x < min) fail(key, "'" + key + "' must be at least " + std::to_string(min));
    return x;
  }
  long long integer(const std::string& key, long long min, long long fallback) const {
    return has(key) ? integer(key, min) : fallback;
  }

  std::string string(const std::string& key, const std::set<std::string>& allowed) const {
    const json& v = raw(key);
    if (!v.is_string()) fail(key, "'" + key + "' must be a string");
    const std::string s = v;
    if (!allowed.empty() && !allowed.count(s)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(key, "'" + key + "' must be one of: " + list);
    }
    return s;
  }
  std::string string(const std::string& key, const std::set<std::string>& allowed,
                     const std::string& fallback) const {
    return has(key) ? string(key, allowed) : fallback;
  }

  std::vector<double> numbers(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_array()) fail(key, "'" + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) fail(key, "'" + key + "' must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

 private:
  const TomlDocument& doc_;
  std::string section_;
  json table_;
};

SimulationMethod method_from(const std::string& s) {
  if (s == "exact") return SimulationMethod::Exact;
  if (s == "monte-carlo") return SimulationMethod::MonteCarlo;
  if (s == "auto") return SimulationMethod::Auto;
  throw UsageError("unknown method '" + s + "'");
}

int failure(std::ostream& err, int code, const std::string& message) {
  err << "error: " << message << "\n";
  return code;
}

}  // namespace

CommandOutput execute(const std::string& command, const json& config) {
  if (command == "contour") return run_contour(config);
  if (command == "risk-curve") return run_risk_curve(config);
  if (command == "decide") return run_decide(config);
  if (command == "validity") return run_validity(config);
  throw UsageError("unknown command '" + command + "'");
}

json make_manifest(const std::string& command, const json& config) {
  json seed = nullptr;
  if (config.contains("experiment")) seed = config.at("experiment").at("seed");
  return {{"command", command},
          {"config", config},
          {"seed", seed},
          {"version", kVersion},
          {"outputs", json::array({config.at("out")})}};
}

json validity_config(const TomlDocument& doc) {
  for (const auto& [k, v] : doc.data.items()) {
    if (k != "model" && k != "experiment" && k != "output") doc.fail(k, "unknown table [" + k + "]");
  }
  const TableReader m(doc, "model", kModelKeys);
  const TableReader e(doc, "experiment", kExperimentKeys);
  const TableReader o(doc, "output", kOutputKeys);

  json model = {{"kind", m.string("kind", {"location", "binomial"})}};
  if (model["kind"] == "binomial") {
    model["trials"] = m.integer("trials", 1);
  } else {
    const std::string law = m.string("law", {"student-t", "normal", "skew-normal"}, "student-t");
    model["law"] = law;
    if (law == "student-t") model["df"] = m.number("df", 3.0);
    if (law == "skew-normal") model["slant"] = m.number("slant", 3.0);
  }

  const ExperimentConfig defaults;
  json exp;
  exp["theta"] = e.number("theta");
  exp["replications"] = e.integer("replications", 1, static_cast<long long>(defaults.replications));
  exp["seed"] = static_cast<std::uint64_t>(e.integer("seed", 0, static_cast<long long>(defaults.seed)));
  exp["method"] = e.string("method", {"auto", "monte-carlo", "exact"}, "auto");
  const std::string binomial_default = model["kind"] == "binomial" ? "weighted-squared" : "squared";
  exp["loss"] = e.string("loss", {"squared", "weighted-squared", "zero-one", "group-invariant", "constant"},
                         binomial_default);
  exp["loss_c"] = e.number("loss_c", defaults.loss_params.c);
  if (e.has("hypothesis")) {
    const auto h = e.numbers("hypothesis");
    if (h.size() != 2) e.fail("hypothesis", "'hypothesis' must be [lo, hi]");
    exp["hypothesis"] = h;
  } else {
    exp["hypothesis"] = {defaults.loss_params.hypothesis.lo, defaults.loss_params.hypothesis.hi};
  }
  exp["variant"] = e.string("variant", {"plain", "modified"}, "modified");
  exp["ratio_points"] = e.integer("ratio_points", 2, defaults.ratio_points);
  exp["risk_tol"] = e.number("risk_tol", defaults.risk_tol);
  exp["threads"] = e.integer("threads", 0, 0);
  exp["alphas"] = e.has("alphas") ? e.numbers("alphas") : defaults.alphas;

  json cfg = {{"model", model}, {"experiment", exp}};
  cfg["out"] = o.has("path") ? o.string("path", {}) : std::string("validity.csv");
  try {
    experiment_from_json(cfg).validate();
  } catch (const Error& ex) {
    doc.fail("experiment", ex.what());
  }
  return cfg;
}

ExperimentConfig experiment_from_json(const json& config) {
  const json& m = config.at("model");
  const json& e = config.at("experiment");
  ExperimentConfig cfg;
  if (m.at("kind") == "binomial") {
    cfg.model = ModelSpec::binomial(m.at("trials").get<int>());
  } else {
    const std::string law = m.at("law");
    if (law == "student-t") {
      cfg.model = ModelSpec::location(Distribution::student_t(m.at("df").get<double>()));
    } else if (law == "skew-normal") {
      cfg.model = ModelSpec::location(Distribution::skew_normal(m.at("slant").get<double>()));
    } else if (law == "normal") {
      cfg.model = ModelSpec::location(Distribution::normal());
    } else {
      throw UsageError("unknown law '" + law + "'");
    }
  }
  cfg.theta = e.at("theta");
  cfg.replications = e.at("replications");
  cfg.seed = e.at("seed");
  cfg.method = method_from(e.at("method"));
  cfg.loss = e.at("loss");
  cfg.loss_params.c = e.at("loss_c");
  cfg.loss_params.hypothesis = {e.at("hypothesis")[0], e.at("hypothesis")[1]};
  cfg.variant = e.at("variant") == "plain" ? RatioVariant::Plain : RatioVariant::Modified;
  cfg.ratio_points = e.at("ratio_points");
  cfg.risk_tol = e.at("risk_tol");
  cfg.threads = e.at("threads");
  cfg.alphas = e.at("alphas").get<std::vector<double>>();
  return cfg;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Valid inferential models for statistical decisions", "imdecide"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  ModelFlags model;
  LossFlags loss;
  GridFlags grid;
  std::string out_path;
  double tol = kDefaultChoquetTolerance;
  std::vector<std::string> actions;
  std::optional<double> lo, hi;
  double action_tol = 1e-8;

  auto* contour = app.add_subcommand("contour", "tabulate the possibility contour");
  add_model_flags(contour, model);
  add_grid_flags(contour, grid, 401);
  contour->add_option("--out", out_path, "CSV path (default contour.csv)");

  auto* risk = app.add_subcommand("risk-curve", "upper and fiducial risk over an action grid");
  add_model_flags(risk, model);
  add_loss_flags(risk, loss);
  add_grid_flags(risk, grid, 201);
  risk->add_option("--actions", actions, "explicit actions, comma separated")->delimiter(',');
  risk->add_option("--tol", tol, "relative Choquet tolerance")->capture_default_str();
  risk->add_option("--out", out_path, "CSV path (default risk-curve.csv)");

  auto* decide = app.add_subcommand("decide", "minimize upper and fiducial risk");
  add_model_flags(decide, model);
  add_loss_flags(decide, loss);
  decide->add_option("--lo", lo, "action bracket lower end");
  decide->add_option("--hi", hi, "action bracket upper end");
  decide->add_option("--action-tol", action_tol, "absolute tolerance on the action")->capture_default_str();
  decide->add_option("--out", out_path, "JSON path (default decide.json)");

  std::string config_path, method;
  std::optional<long long> replications, seed, threads;
  std::optional<double> theta;
  auto* validity = app.add_subcommand("validity", "distribution of the risk ratio by simulation");
  validity->add_option("--config", config_path, "TOML experiment config")->required();
  validity->add_option("--replications", replications, "override replications");
  validity->add_option("--seed", seed, "override seed");
  validity->add_option("--threads", threads, "override worker count (0: IMDECIDE_THREADS or all cores)");
  validity->add_option("--method", method, "override method")
      ->check(CLI::IsMember({"auto", "monte-carlo", "exact"}));
  validity->add_option("--theta", theta, "override true parameter");
  validity->add_option("--out", out_path, "CSV path (default from config, else validity.csv)");

  std::string manifest;
  bool check = false;
  auto* replay = app.add_subcommand("replay", "rerun a manifest");
  replay->add_option("manifest", manifest, "manifest JSON")->required();
  replay->add_flag("--check", check, "compare regenerated bytes with the recorded outputs");

  std::vector<std::string> argv_store{"imdecide"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::string command;
  try {
    json cfg;
    if (*contour) {
      command = "contour";
      cfg["model"] = resolve_model(model);
      cfg["grid"] = resolve_grid(grid, cfg["model"], false);
    } else if (*risk) {
      command = "risk-curve";
      cfg["model"] = resolve_model(model);
      cfg["loss"] = resolve_loss(loss, cfg["model"]);
      if (risk->count("--actions")) {
        if (risk->count("--from") || risk->count("--to") || risk->count("--points")) {
          throw UsageError("--actions excludes --from, --to and --points");
        }
        std::vector<double> values;
        for (const auto& a : actions) {
          if (a.empty()) continue;
          double v;
          if (!CLI::detail::lexical_cast(a, v) || !std::isfinite(v)) throw UsageError("bad action '" + a + "'");
          values.push_back(v);
        }
        if (values.empty()) throw EmptyRequestError("empty action grid");
        cfg["actions"] = values;
      } else {
        const json g = resolve_grid(grid, cfg["model"], true);
        cfg["actions"] = linear_grid(g["from"], g["to"], g["points"]);
      }
      cfg["tol"] = tol;
    } else if (*decide) {
      command = "decide";
      cfg["model"] = resolve_model(model);
      cfg["loss"] = resolve_loss(loss, cfg["model"]);
      const auto [dlo, dhi] = default_range(cfg["model"], true);
      cfg["bracket"] = {{"lo", lo.value_or(dlo)}, {"hi", hi.value_or(dhi)}, {"tol", action_tol}};
    } else if (*validity) {
      command = "validity";
      cfg = validity_config(load_toml(config_path));
      json& e = cfg["experiment"];
      if (replications) {
        if (*replications < 1) throw UsageError("--replications must be positive");
        e["replications"] = *replications;
      }
      if (seed) {
        if (*seed < 0) throw UsageError("--seed must be non-negative");
        e["seed"] = static_cast<std::uint64_t>(*seed);
      }
      if (threads) {
        if (*threads < 0) throw UsageError("--threads must be non-negative");
        e["threads"] = *threads;
      }
      if (!method.empty()) e["method"] = method;
      if (theta) e["theta"] = *theta;
      experiment_from_json(cfg).validate();
    } else {
      command = "replay";
      const auto text = read_file(manifest);
      if (!text) throw UsageError("cannot read manifest '" + manifest + "'");
      const json m = json::parse(*text);
      const std::string recorded = m.at("command");
      const json& rcfg = m.at("config");
      if (m.at("version") != kVersion) {
        err << "warning: manifest written by version " << m.at("version").get<std::string>() << ", running "
            << kVersion << "\n";
      }
      command = recorded;
      const CommandOutput result = execute(recorded, rcfg);
      if (!check) {
        emit(recorded, rcfg, result, out);
        return kExitOk;
      }
      const std::string path = rcfg.at("out");
      const auto existing = read_file(path);
      if (existing && *existing == result.body) {
        out << "identical: " << path << "\n";
        return kExitOk;
      }
      out << (existing ? "differs: " : "missing: ") << path << "\n";
      return kExitFailure;
    }
    if (out_path.empty() && !cfg.contains("out")) out_path = command + (command == "decide" ? ".json" : ".csv");
    if (!out_path.empty()) cfg["out"] = out_path;
    emit(command, cfg, execute(command, cfg), out);
    return kExitOk;
  } catch (const ConfigError& e) {
    return failure(err, kExitUsage, e.what());
  } catch (const NonPrevisibleError& e) {
    if (command == "decide") {
      out << json{{"error", "non-previsible"}, {"command", command}, {"message", e.what()}}.dump(2) << "\n";
    }
    return failure(err, kExitNumerical, e.what());
  } catch (const InvalidArgumentError& e) {
    return failure(err, kExitUsage, e.what());
  } catch (const DomainError& e) {
    return failure(err, kExitUsage, e.what());
  } catch (const EmptyRequestError& e) {
    return failure(err, kExitUsage, e.what());
  } catch (const UnsupportedModelError& e) {
    return failure(err, kExitUsage, e.what());
  } catch (const Error& e) {
    return failure(err, kExitNumerical, e.what());
  } catch (const UsageError& e) {
    return failure(err, kExitUsage, e.what());
  } catch (const json::exception& e) {
    return failure(err, kExitUsage, std::string("malformed manifest or config: ") + e.what());
  } catch (const std::exception& e) {
    return failure(err, kExitFailure, e.what());
  }
}

}  // namespace imdecide::cli
