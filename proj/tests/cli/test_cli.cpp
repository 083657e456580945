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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "csv.hpp"
#include "oracles.hpp"
#include "toml.hpp"

namespace fs = std::filesystem;
using namespace imdecide::cli;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    old_ = fs::current_path();
    dir_ = fs::temp_directory_path() /
           ("imdecide_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    fs::current_path(dir_);
  }
  void TearDown() override {
    fs::current_path(old_);
    fs::remove_all(dir_);
  }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }

  fs::path old_, dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST(Toml, Values) {
  const auto doc = parse_toml(
      "# top\n"
      "name = \"a \\\"b\\\"\"  # trailing\n"
      "[model]\n"
      "df = 3\n"
      "x = -1.5e-3\n"
      "big = 1_000\n"
      "flag = true\n"
      "grid = [0.1, 2, 3,]\n"
      "[a.b]\n"
      "k = \"v\"\n");
  EXPECT_EQ(doc.data["name"], "a \"b\"");
  EXPECT_TRUE(doc.data["model"]["df"].is_number_integer());
  EXPECT_EQ(doc.data["model"]["df"], 3);
  EXPECT_DOUBLE_EQ(doc.data["model"]["x"].get<double>(), -1.5e-3);
  EXPECT_EQ(doc.data["model"]["big"], 1000);
  EXPECT_EQ(doc.data["model"]["flag"], true);
  EXPECT_EQ(doc.data["model"]["grid"].size(), 3u);
  EXPECT_EQ(doc.data["a"]["b"]["k"], "v");
  EXPECT_EQ(doc.positions.at("model.x"), std::make_pair(std::size_t{5}, std::size_t{1}));
}

TEST(Toml, ErrorsCarryLineAndColumn) {
  const auto where = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_toml(text);
    } catch (const ConfigError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  EXPECT_EQ(where("[model]\ndf = \"three\n"), std::make_pair(std::size_t{2}, std::size_t{6}));
  EXPECT_EQ(where("a = 1\na = 2\n"), std::make_pair(std::size_t{2}, std::size_t{1}));
  EXPECT_EQ(where("x = 1.2.3\n"), std::make_pair(std::size_t{1}, std::size_t{5}));
  EXPECT_EQ(where("  = 4\n"), std::make_pair(std::size_t{1}, std::size_t{3}));
  EXPECT_EQ(where("[m]\n[m]\n"), std::make_pair(std::size_t{2}, std::size_t{1}));
  EXPECT_EQ(where("k = [1, 2\n"), std::make_pair(std::size_t{1}, std::size_t{10}));
  EXPECT_EQ(where("k = 1 2\n"), std::make_pair(std::size_t{1}, std::size_t{7}));
}

TEST(Csv, Formatting) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(3.0), "3");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  CsvWriter w({"x", "y"});
  w.row({1.0, 0.5});
  EXPECT_EQ(w.str(), "x,y\n1,0.5\n");
}

TEST(ShippedConfigs, Resolve) {
  const json f2 = validity_config(load_toml(IMDECIDE_CONFIG_DIR "/fig2.toml"));
  EXPECT_EQ(f2["model"]["law"], "student-t");
  EXPECT_EQ(f2["experiment"]["replications"], 10000);
  EXPECT_EQ(f2["experiment"]["theta"], 0.0);
  EXPECT_EQ(f2["experiment"]["alphas"].size(), 99u);
  const json f4 = validity_config(load_toml(IMDECIDE_CONFIG_DIR "/fig4.toml"));
  EXPECT_EQ(f4["model"]["trials"], 50);
  EXPECT_EQ(f4["experiment"]["method"], "exact");
  const auto cfg = experiment_from_json(f4);
  EXPECT_EQ(cfg.model.trials, 50);
  EXPECT_DOUBLE_EQ(cfg.theta, 0.3);
  EXPECT_EQ(cfg.loss, "weighted-squared");
}

TEST_F(Cli, ContourStudentT3) {
  ASSERT_EQ(run({"contour", "--model", "t-location", "--df", "3", "--y", "0", "--from", "-4", "--to", "4",
                 "--points", "81"}),
            0)
      << err_.str();
  const auto rows = read_csv("contour.csv");
  ASSERT_EQ(rows.size(), 82u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "plausibility"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t = std::stod(rows[i][0]);
    EXPECT_NEAR(std::stod(rows[i][1]), oracle::t_contour(3.0, -t), 1e-12) << t;
  }
  EXPECT_TRUE(fs::exists("contour.csv.manifest.json"));
  EXPECT_EQ(slurp("contour.csv").find('\r'), std::string::npos);
}

TEST_F(Cli, ContourBinomial) {
  ASSERT_EQ(run({"contour", "--model", "binomial", "--n", "18", "--y", "7", "--points", "101", "--out", "b.csv"}), 0)
      << err_.str();
  const auto rows = read_csv("b.csv");
  ASSERT_EQ(rows.size(), 102u);
  EXPECT_EQ(std::stod(rows[1][0]), 0.0);
  EXPECT_EQ(std::stod(rows[101][0]), 1.0);
  for (std::size_t i = 2; i < rows.size() - 1; ++i) {
    const double t = std::stod(rows[i][0]);
    EXPECT_NEAR(std::stod(rows[i][1]), oracle::binomial_contour(18, 7, t), 1e-12) << t;
  }
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({"contour", "--model", "t-location"}), 2);
  EXPECT_EQ(run({"contour", "--model", "binomial", "--y", "3"}), 2);
  EXPECT_EQ(run({"contour", "--model", "binomial", "--n", "5", "--y", "2.5"}), 2);
  EXPECT_EQ(run({"contour", "--model", "binomial", "--n", "5", "--y", "7"}), 2);
  EXPECT_EQ(run({"contour", "--model", "cauchy", "--y", "0"}), 2);
  EXPECT_EQ(run({"risk-curve", "--y", "0", "--points", "0"}), 2);
  EXPECT_EQ(run({"risk-curve", "--y", "0", "--actions", ""}), 2);
  EXPECT_EQ(run({"risk-curve", "--model", "binomial", "--n", "5", "--y", "2", "--loss", "group-invariant"}), 2);
  EXPECT_EQ(run({"decide", "--y", "0", "--lo", "1", "--hi", "0"}), 2);
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"--help"}), 0);
}

TEST_F(Cli, RiskCurveStudentT3) {
  ASSERT_EQ(run({"risk-curve", "--y", "0.5", "--actions", "0.5,1.5"}), 0) << err_.str();
  const auto rows = read_csv("risk-curve.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"action", "upper_risk", "fiducial_risk"}));
  for (int i = 1; i <= 2; ++i) {
    const double a = std::stod(rows[i][0]);
    const double d = std::abs(a - 0.5);
    const double upper = oracle::integrate(
        [&](double alpha) {
          const double q = oracle::t_upper(3.0, alpha / 2.0);
          return (d + q) * (d + q);
        },
        0.0, 1.0);
    EXPECT_NEAR(std::stod(rows[i][1]), upper, 1e-5 * upper);
    EXPECT_NEAR(std::stod(rows[i][2]), d * d + 3.0, 1e-8);
  }
}

TEST_F(Cli, DecideStudentT3) {
  ASSERT_EQ(run({"decide", "--model", "t-location", "--df", "3", "--y", "1.3", "--loss", "squared"}), 0)
      << err_.str();
  const json r = json::parse(slurp("decide.json"));
  EXPECT_NEAR(r["action"].get<double>(), 1.3, 1e-6);
  EXPECT_NEAR(r["fiducial_action"].get<double>(), 1.3, 1e-6);
  EXPECT_NEAR(r["fiducial_risk"].get<double>(), 3.0, 1e-8);
  EXPECT_EQ(json::parse(out_.str()), r);
}

TEST_F(Cli, DecideBinomialMinimizersClose) {
  ASSERT_EQ(run({"decide", "--model", "binomial", "--n", "18", "--y", "7"}), 0) << err_.str();
  const json r = json::parse(slurp("decide.json"));
  const double a = r["action"], f = r["fiducial_action"];
  EXPECT_NEAR(a, f, 0.02);
  // Bayes action of Beta(7.5, 11.5) under weighted loss
  EXPECT_NEAR(f, 6.5 / 17.0, 1e-6);
}

TEST_F(Cli, DecideNonPrevisible) {
  EXPECT_EQ(run({"decide", "--model", "t-location", "--df", "2", "--y", "0", "--lo", "-1", "--hi", "1"}), 3);
  const json e = json::parse(out_.str());
  EXPECT_EQ(e["error"], "non-previsible");
  EXPECT_FALSE(e["message"].get<std::string>().empty());
  EXPECT_FALSE(fs::exists("decide.json"));
}

TEST_F(Cli, MalformedConfigReportsPosition) {
  write("bad.toml", "[model]\nkind = \"location\"\n\n[experiment]\ntheta = zero\n");
  EXPECT_EQ(run({"validity", "--config", "bad.toml"}), 2);
  EXPECT_NE(err_.str().find("bad.toml:5:9:"), std::string::npos) << err_.str();
  write("unknown.toml", "[model]\nkind = \"location\"\nlaww = \"normal\"\n[experiment]\ntheta = 0\n");
  EXPECT_EQ(run({"validity", "--config", "unknown.toml"}), 2);
  EXPECT_NE(err_.str().find("unknown.toml:3:1:"), std::string::npos) << err_.str();
  write("range.toml", "[model]\nkind = \"binomial\"\ntrials = 10\n[experiment]\ntheta = 1.5\n");
  EXPECT_EQ(run({"validity", "--config", "range.toml"}), 2);
  EXPECT_NE(err_.str().find("range.toml:4:1:"), std::string::npos) << err_.str();
  EXPECT_EQ(run({"validity", "--config", "missing.toml"}), 2);
}

TEST_F(Cli, ValidityAndReplay) {
  write("small.toml",
        "[model]\nkind = \"location\"\nlaw = \"student-t\"\ndf = 3\n"
        "[experiment]\ntheta = 0\nreplications = 50\nseed = 9\nratio_points = 21\n"
        "alphas = [0.1, 0.5, 0.9]\n");
  ASSERT_EQ(run({"validity", "--config", "small.toml", "--threads", "2", "--out", "v.csv"}), 0) << err_.str();
  const auto rows = read_csv("v.csv");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"alpha", "cdf_im", "se_im", "cdf_fiducial", "se_fiducial"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double p = std::stod(rows[i][1]);
    EXPECT_NEAR(std::stod(rows[i][2]), oracle::mc_se(p, 50.0), 1e-15);
  }
  const json m = json::parse(slurp("v.csv.manifest.json"));
  EXPECT_EQ(m["command"], "validity");
  EXPECT_EQ(m["seed"], 9);
  EXPECT_EQ(m["outputs"], json::array({"v.csv"}));
  EXPECT_EQ(m["config"]["experiment"]["threads"], 2);

  EXPECT_EQ(run({"replay", "v.csv.manifest.json", "--check"}), 0) << out_.str() << err_.str();
  EXPECT_NE(out_.str().find("identical"), std::string::npos);
  const std::string before = slurp("v.csv");
  std::ofstream("v.csv", std::ios::app) << "x\n";
  EXPECT_EQ(run({"replay", "v.csv.manifest.json", "--check"}), 1);
  EXPECT_EQ(run({"replay", "v.csv.manifest.json"}), 0);
  EXPECT_EQ(slurp("v.csv"), before);
}

TEST_F(Cli, ReplayEveryCommand) {
  ASSERT_EQ(run({"contour", "--model", "skew-normal", "--y", "0", "--points", "51"}), 0);
  ASSERT_EQ(run({"risk-curve", "--model", "binomial", "--n", "18", "--y", "7", "--points", "11"}), 0);
  ASSERT_EQ(run({"decide", "--model", "skew-normal", "--y", "0", "--loss", "group-invariant"}), 0);
  for (const char* m : {"contour.csv.manifest.json", "risk-curve.csv.manifest.json", "decide.json.manifest.json"}) {
    EXPECT_EQ(run({"replay", m, "--check"}), 0) << m << " " << out_.str() << err_.str();
  }
  write("broken.json", "{\"command\": ");
  EXPECT_EQ(run({"replay", "broken.json"}), 2);
}

TEST_F(Cli, BinaryExitCodes) {
  const auto code = [](const std::string& args) {
    const int status = std::system((std::string(IMDECIDE_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  EXPECT_EQ(code("contour --model t-location --df 3 --y 0 --points 5"), 0);
  EXPECT_EQ(code("contour --model t-location --df 3"), 2);
  EXPECT_EQ(code("risk-curve --y 0 --points 0"), 2);
  EXPECT_EQ(code("decide --model t-location --df 2 --y 0 --lo -1 --hi 1"), 3);
  EXPECT_EQ(code("--version"), 0);
}
