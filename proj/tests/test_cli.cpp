/*
 * Copyright 2026 The CHIME Simulator Authors
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

#include "chime/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <filesystem>

namespace fs = std::filesystem;
using namespace chime;

namespace {

struct Run {
  int status;
  std::string out;
};

Run chime_cli(const std::string &args)
{
  std::string cmd = std::string(CHIME_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r{-1, {}};
  FILE *p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch(const std::string &name)
{
  auto d = fs::temp_directory_path() / ("chime_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::size_t data_lines(const std::string &csv)
{
  std::size_t n = 0;
  std::istringstream is(csv);
  for (std::string l; std::getline(is, l);)
    if (!l.empty() && l[0] != '#') ++n;
  return n - 1;
}

} // namespace

TEST(Exit, Usage)
{
  EXPECT_EQ(chime_cli("--help").status, 0);
  EXPECT_EQ(chime_cli("").status, 1);
  EXPECT_EQ(chime_cli("frobnicate").status, 1);
  EXPECT_EQ(chime_cli("sim --no-such-flag").status, 1);
  EXPECT_EQ(chime_cli("gen --kernel fft").status, 1);
  EXPECT_EQ(chime_cli("sim --mode WARP").status, 1);
  EXPECT_EQ(chime_cli("map --strategy best").status, 1);
  EXPECT_EQ(chime_cli("report").status, 1);
}

TEST(Exit, Config)
{
  auto d = scratch("cfg");
  write_file((d / "bad.json").string(), R"({"levels":[{"name":"L1"}]})");
  write_file((d / "broken.json").string(), "{");
  EXPECT_EQ(chime_cli("map --config " + (d / "bad.json").string()).status, 2);
  EXPECT_EQ(chime_cli("map --config " + (d / "broken.json").string()).status, 2);
  EXPECT_EQ(chime_cli("map --config " + (d / "missing.json").string()).status, 2);
  fs::remove_all(d);
}

TEST(Exit, Simulation)
{
  auto d = scratch("sim");
  write_file((d / "bad.trace").string(), "0 MULT 32 0x100:32 0x0:32 0x4:32\n");
  EXPECT_EQ(chime_cli("sim --trace " + (d / "bad.trace").string()).status, 3);
  EXPECT_EQ(chime_cli("sim --trace " + (d / "none.trace").string()).status, 3);
  fs::remove_all(d);
}

TEST(Commands, DefaultConfigFileMatchesBuiltIns)
{
  auto s = load_setup(std::string(CHIME_SOURCE_DIR) + "/configs/default.json");
  EXPECT_EQ(setup_to_json(s).dump(), setup_to_json(chime::Setup{}).dump());
}

TEST(Commands, MapPrintsAllStrategies)
{
  auto r = chime_cli("map --config " + std::string(CHIME_SOURCE_DIR) + "/configs/default.json");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("throughput  mult-shift    add-comp      log-sub"), std::string::npos) << r.out;
}

TEST(Commands, GroupJson)
{
  auto r = chime_cli("group");
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["m"], 3);
  EXPECT_EQ(j["groups"].size(), 3u);
  EXPECT_EQ(j["sorted_pairs"][0]["a"], "ADD");
  EXPECT_EQ(j["sorted_pairs"][0]["b"], "ADD");
}

TEST(Commands, GenThenGroupFromFiles)
{
  auto d = scratch("gen");
  ASSERT_EQ(chime_cli("gen --out " + d.string()).status, 0);
  std::size_t n = 0;
  for (const auto &e : fs::directory_iterator(d)) n += e.path().extension() == ".trace";
  EXPECT_EQ(n, 8u);
  auto r = chime_cli("group --m 2 --traces " + d.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["groups"].size(), 2u);
  fs::remove_all(d);
}

TEST(Commands, SimKernelAndTrace)
{
  auto d = scratch("simk");
  auto a = chime_cli("sim --kernel mat_add --n 8 --mode CHIME CPU --strategy rc units");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(data_lines(a.out), 4u);
  ASSERT_EQ(chime_cli("gen --kernel mat_add --n 8 --out " + (d / "m.json").string()).status, 0);
  auto b = chime_cli("sim --trace " + (d / "m.json").string() + " --mode CHIME");
  ASSERT_EQ(b.status, 0);
  auto ra = parse_results_csv(a.out), rb = parse_results_csv(b.out);
  EXPECT_EQ(ra[0].result.makespan_cycles, rb[0].result.makespan_cycles);
  fs::remove_all(d);
}

TEST(Sweep, MinimalPlanHasTwoRows)
{
  auto d = scratch("min");
  auto r = chime_cli("sweep --kernels mat_add --modes CHIME CPU --strategies rc --out " + d.string());
  ASSERT_EQ(r.status, 0);
  auto csv = read_file((d / "results.csv").string());
  EXPECT_EQ(data_lines(csv), 2u);
  for (const char *f : {"summary.json", "groups.json", "mapping.txt", "config.json"}) EXPECT_TRUE(fs::exists(d / f));
  EXPECT_FALSE(fs::exists(d / "traces"));
  auto rep = chime_cli("report --results " + (d / "results.csv").string());
  ASSERT_EQ(rep.status, 0);
  EXPECT_EQ(json::parse(rep.out)["runs"].size(), 2u);
  fs::remove_all(d);
}

TEST(Sweep, Deterministic)
{
  auto a = scratch("det_a"), b = scratch("det_b");
  std::string args = "sweep --kernels mat_add mac gray --seed 5 ";
  ASSERT_EQ(chime_cli(args + "--threads 4 --out " + a.string()).status, 0);
  ASSERT_EQ(chime_cli(args + "--threads 1 --write-traces --out " + b.string()).status, 0);
  EXPECT_EQ(read_file((a / "results.csv").string()), read_file((b / "results.csv").string()));
  EXPECT_EQ(read_file((a / "summary.json").string()), read_file((b / "summary.json").string()));
  EXPECT_TRUE(fs::exists(b / "traces" / "mac.trace"));
  fs::remove_all(a);
  fs::remove_all(b);
}
