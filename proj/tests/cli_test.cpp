// Copyright 2026 The areaot Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

#include <gtest/gtest.h>

#include "areaot/areaot.hpp"

namespace areaot {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(AREAOT_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("areaot_cli_" + std::string(
        ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  std::string at(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(Cli, SolvePrintsConfigAndWritesFiles) {
  const CliRun r = run_cli("solve --n 4 --seed 3 --epsilon 0.1 --trace " + at("t.csv") + " --out " + at("s.json"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("config {", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("\"max_outer\":\"auto\""), std::string::npos);
  const auto j = nlohmann::json::parse(read_text_file(at("s.json")));
  EXPECT_LE(j.at("gap").get<double>(), 0.1);
  EXPECT_EQ(j.at("config").at("max_inner").get<int>(), inner_iteration_budget(1.0, 4, 0.1));
  EXPECT_TRUE(fs::exists(at("s.plan.csv")));
  EXPECT_EQ(read_text_file(at("t.csv")).rfind("iter,matvecs,primal,dual,gap,elapsed_ms\n", 0), 0u);
}

TEST_F(Cli, SolveFromFilesMatchesLibrary) {
  ASSERT_EQ(run_cli("gen --n 5 --seed 11 --prefix " + at("inst")).code, 0);
  const CliRun r = run_cli("solve --cost " + at("inst.cost.csv") + " --r " + at("inst.r.csv") + " --c " +
                        at("inst.c.csv") + " --solver sinkhorn --eta 200 --out " + at("s.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(read_text_file(at("s.json")));
  const double opt = exact_oracle(gen_random_instance(5, 11)).optimum;
  EXPECT_NEAR(j.at("objective").get<double>(), opt, 0.05);
  const CliRun o = run_cli("oracle --cost " + at("inst.cost.csv") + " --r " + at("inst.r.csv") + " --c " + at("inst.c.csv"));
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("\"optimum\""), std::string::npos);
}

TEST_F(Cli, ImagesAndGrids) {
  ASSERT_EQ(run_cli("gen --seed 1 --stroke-image " + at("a.pgm")).code, 0);
  ASSERT_EQ(run_cli("gen --seed 2 --stroke-image " + at("b.pgm")).code, 0);
  const CliRun r = run_cli("solve --images " + at("a.pgm") + " " + at("b.pgm") +
                        " --downsample --preset optimized --epsilon 0.5 --relative-epsilon --max-inner 8");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("manhattan:14x14"), std::string::npos);
  const CliRun e = run_cli("solve --cost euclidean:3x2 --seed 4 --solver mirrorprox --epsilon 0.2");
  EXPECT_EQ(e.code, 0) << e.out;
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("solve --n 5 --seed 1 --epsilon 0.001 --max-outer 3").code, 2);
  EXPECT_EQ(run_cli("solve --cost " + at("missing.csv")).code, 3);
  EXPECT_EQ(run_cli("solve --cost manhattan:0x3").code, 3);
  EXPECT_EQ(run_cli("solve --n 3 --epsilon -1").code, 3);
  EXPECT_EQ(run_cli("solve --n 3 --preset turbo").code, 3);
  EXPECT_EQ(run_cli("solve").code, 3);
  EXPECT_EQ(run_cli("oracle --n 17").code, 3);
  EXPECT_EQ(run_cli("bench --instance random:x").code, 3);
  write_text_file(at("neg.csv"), "0,-1\n1,0\n");
  EXPECT_EQ(run_cli("solve --cost " + at("neg.csv")).code, 3);
  EXPECT_EQ(run_cli("solve --n 3 --out /nonexistent/dir/s.json").code, 1);
}

TEST_F(Cli, BenchCsv) {
  const CliRun r = run_cli("bench --instance random:4 --seeds 1,2 --solvers dualex,sinkhorn --presets provable,optimized "
                        "--etas 5 --epsilon 0.1 --jobs 2 --out " + at("bench.csv"));
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string csv = read_text_file(at("bench.csv"));
  EXPECT_EQ(csv.rfind("instance,seed,n,solver,preset,eta,epsilon,status,outer_iterations,matvecs,gap,objective\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 3);
}

TEST_F(Cli, Audit) {
  const CliRun r = run_cli("audit --n 3 --probes 500");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"violation_found\":false"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace areaot
