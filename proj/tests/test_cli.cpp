/* Copyright 2026 The msgcert Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// End-to-end tests of the command-line tool on the two-block fixture.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "msgcert/detail/text.hpp"
#include "support.hpp"

namespace msgcert {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int run(const std::string& args) {
  const std::string cmd = std::string(MSGCERT_CLI_PATH) + " " + args + " >> cli_test.log 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json read_json(const fs::path& p) { return json::parse(detail::read_file(p)); }

void write_json(const fs::path& p, const json& j) { detail::write_file(p, j.dump(2)); }

/// Rows of a CSV produced by the tool; the "# config=" comment line is skipped.
std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  const auto text = detail::read_file(p);
  for (const auto& [no, line] : detail::content_lines(text)) {
    std::vector<std::string> cells;
    for (auto c : detail::split(line, ',')) cells.emplace_back(c);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::runtime_error("missing column " + name);
  return static_cast<std::size_t>(it - header.begin());
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = testing::temp_dir("cli");
    ASSERT_EQ(run("synth --out " + dir_.string() + " --seed 7"), 0);
    auto cfg = read_json(dir_ / "config.json");
    cfg["train"]["epochs"] = 150;
    cfg["estimate"]["n0"] = 200;
    cfg["estimate"]["n1"] = 600;
    cfg["derandomize"]["k_rel"] = 0.1;
    write_json(dir_ / "config.json", cfg);
    ASSERT_EQ(run("train --config " + (dir_ / "config.json").string()), 0);
  }

  /// Variant of the base config written next to it.
  static fs::path variant(const std::string& name, const std::function<void(json&)>& edit) {
    auto cfg = read_json(dir_ / "config.json");
    cfg["model"] = "run/model.json";
    cfg["output_dir"] = name;
    edit(cfg);
    const auto path = dir_ / (name + ".json");
    write_json(path, cfg);
    return path;
  }

  static inline fs::path dir_;
};

TEST_F(Cli, TrainWritesCheckpointAndLog) {
  EXPECT_TRUE(fs::exists(dir_ / "run" / "model.json"));
  const auto log = read_csv(dir_ / "run" / "train_log.csv");
  ASSERT_GE(log.size(), 2u);
  EXPECT_EQ(detail::read_file(dir_ / "run" / "train_log.csv").rfind("# config=", 0), 0u);
  const auto col = column(log[0], "val_accuracy");
  double best = 0.0;
  for (std::size_t i = 1; i < log.size(); ++i) best = std::max(best, std::stod(log[i][col]));
  EXPECT_GT(best, 0.85);
}

TEST_F(Cli, TrainIsByteReproducible) {
  const auto cfg = variant("retrain", [](json&) {});
  auto j = read_json(cfg);
  j.erase("model");
  write_json(cfg, j);
  ASSERT_EQ(run("train --config " + cfg.string()), 0);
  // Only the echoed run config names the output paths.
  auto retrained = read_json(dir_ / "retrain" / "model.json");
  auto original = read_json(dir_ / "run" / "model.json");
  retrained.erase("run_config");
  original.erase("run_config");
  EXPECT_EQ(retrained.dump(), original.dump());
  const auto a = detail::read_file(dir_ / "retrain" / "train_log.csv");
  const auto b = detail::read_file(dir_ / "run" / "train_log.csv");
  EXPECT_EQ(a.substr(a.find('\n')), b.substr(b.find('\n')));
}

TEST_F(Cli, TrainWithoutLabelsIsAConfigError) {
  const auto cfg = variant("nolabels", [](json& j) { j["graph"].erase("labels"); });
  EXPECT_EQ(run("train --config " + cfg.string()), 2);
  EXPECT_FALSE(fs::exists(dir_ / "nolabels"));
}

TEST_F(Cli, CertifyRespectsTheAblationRadiusLimit) {
  const auto cfg = variant("cert", [](json& j) { j["certify"]["d_min"] = {1}; });
  ASSERT_EQ(run("certify --config " + cfg.string()), 0);
  const auto rows = read_csv(dir_ / "cert" / "results.csv");
  const auto& header = rows[0];
  const auto rad = column(header, "radius_d1");
  std::size_t certified = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int r = std::stoi(rows[i][rad]);
    EXPECT_LE(r, 4);
    certified += r > 0;
  }
  EXPECT_GT(certified, 0u);
  const auto summary = read_json(dir_ / "cert" / "summary.json");
  EXPECT_EQ(summary["config"]["smoothing"]["p_abl"], 0.85);
  EXPECT_TRUE(summary["conventions"].contains("aucrc"));
}

TEST_F(Cli, CertifyIsIndependentOfWorkerCount) {
  const auto cfg = variant("cert_workers", [](json&) {});
  ASSERT_EQ(run("certify --config " + cfg.string() + " --workers 1 --out " + (dir_ / "w1").string()), 0);
  ASSERT_EQ(run("certify --config " + cfg.string() + " --workers 3 --out " + (dir_ / "w3").string()), 0);
  const auto a = detail::read_file(dir_ / "w1" / "results.csv");
  const auto b = detail::read_file(dir_ / "w3" / "results.csv");
  // The echoed config names the output directory; everything else must match.
  EXPECT_EQ(a.substr(a.find('\n')), b.substr(b.find('\n')));
  ASSERT_EQ(run("certify --config " + cfg.string() + " --workers 2 --out " + (dir_ / "w1").string()), 0);
  EXPECT_EQ(detail::read_file(dir_ / "w1" / "results.csv"), a);
}

TEST_F(Cli, TinySampleCountsMostlyAbstain) {
  const auto cfg = variant("tiny", [](json& j) {
    j["estimate"]["n0"] = 3;
    j["estimate"]["n1"] = 3;
    j["smoothing"]["p_abl"] = 0.95;
  });
  ASSERT_EQ(run("certify --config " + cfg.string()), 0);
  const auto summary = read_json(dir_ / "tiny" / "summary.json");
  EXPECT_GT(summary["per_d_min"][0]["abstain_rate"].get<double>(), 0.5);
}

TEST_F(Cli, LargeDeltaEverywhereMeansNoCertificates) {
  const auto cfg = variant("weak", [](json& j) { j["smoothing"]["p_abl"] = 0.4; });
  ASSERT_EQ(run("certify --config " + cfg.string()), 0);
  const auto rows = read_csv(dir_ / "weak" / "results.csv");
  for (const char* name : {"radius_d1", "radius_d2"}) {
    const auto c = column(rows[0], name);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][c], "0");
  }
}

TEST_F(Cli, CertifyFromVoteFile) {
  std::string votes = "node_id,sample_index,class\n";
  for (int v : {3, 5})
    for (int s = 0; s < 800; ++s) votes += std::to_string(v) + "," + std::to_string(s) + ",1\n";
  detail::write_file(dir_ / "votes.csv", votes);
  const auto cfg = variant("votes", [](json& j) {
    j["votes"] = "votes.csv";
    j["targets"] = {{"mode", "list"}, {"nodes", {3, 5, 7}}};
  });
  // Node 7 has no votes: a per-node failure, reported with a distinct exit code.
  EXPECT_EQ(run("certify --config " + cfg.string()), 3);
  const auto rows = read_csv(dir_ / "votes" / "results.csv");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1][column(rows[0], "prediction")], "1");
  EXPECT_FALSE(rows[3][column(rows[0], "error")].empty());
}

TEST_F(Cli, DerandomizeSmallRetention) {
  const auto cfg = variant("derand", [](json&) {});
  ASSERT_EQ(run("derandomize --config " + cfg.string()), 0);
  const auto summary = read_json(dir_ / "derand" / "derandomize_summary.json");
  EXPECT_GT(summary["derandomized_ratio"].get<double>(), 0.6);
  const auto rows = read_csv(dir_ / "derand" / "derandomize.csv");
  const auto p0 = column(rows[0], "p_0");
  EXPECT_FALSE(rows[1][p0].empty());
}

TEST_F(Cli, DerandomizeWithUnitBudgetRefusesEverything) {
  const auto cfg = variant("derand_tau", [](json& j) { j["derandomize"]["tau"] = 1; j["derandomize"]["k_rel"] = 0.5; });
  ASSERT_EQ(run("derandomize --config " + cfg.string()), 0);
  const auto summary = read_json(dir_ / "derand_tau" / "derandomize_summary.json");
  EXPECT_EQ(summary["derandomized_ratio"].get<double>(), 0.0);
}

TEST_F(Cli, PathsDumpsFieldStatistics) {
  const auto cfg = variant("paths", [](json&) {});
  ASSERT_EQ(run("paths --config " + cfg.string()), 0);
  const auto rows = read_csv(dir_ / "paths" / "paths.csv");
  EXPECT_GT(rows.size(), 2u);
  EXPECT_NO_THROW(column(rows[0], "surface_d2"));
}

TEST_F(Cli, ReportSingleAndPairedRuns) {
  const auto a = variant("rep_a", [](json&) {});
  const auto b = variant("rep_b", [](json& j) { j["smoothing"]["p_abl"] = 0.9; });
  ASSERT_EQ(run("certify --config " + a.string()), 0);
  ASSERT_EQ(run("certify --config " + b.string()), 0);
  const auto one = dir_ / "report_one";
  ASSERT_EQ(run("report " + (dir_ / "rep_a" / "results.csv").string() + " --out " + one.string()), 0);
  EXPECT_TRUE(fs::exists(one / "curves.csv"));
  EXPECT_TRUE(fs::exists(one / "normalized_curves.csv"));
  const auto two = dir_ / "report_two";
  ASSERT_EQ(run("report " + (dir_ / "rep_a" / "results.csv").string() + " " +
                (dir_ / "rep_b" / "results.csv").string() + " --out " + two.string()),
            0);
  const auto table = detail::read_file(two / "aucrc.csv");
  EXPECT_NE(table.find("difference(rep_b_d1 - rep_a_d1)"), std::string::npos);
  const auto curves = read_csv(two / "curves.csv");
  EXPECT_EQ(curves[0].size(), 9u);  // radius + 2 runs x 2 d_min x (ratio, accuracy)
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("report"), 2);
  EXPECT_EQ(run("report " + (dir_ / "missing.csv").string()), 2);
  EXPECT_EQ(run("certify"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  detail::write_file(dir_ / "broken.json", "{");
  EXPECT_EQ(run("certify --config " + (dir_ / "broken.json").string()), 2);
  const auto bad = variant("bad_p", [](json& j) { j["smoothing"]["p_abl"] = 1.5; });
  EXPECT_EQ(run("certify --config " + bad.string()), 2);
}

}  // namespace
}  // namespace msgcert
