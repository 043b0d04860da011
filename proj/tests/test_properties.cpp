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
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace chime;

namespace {

const Setup &setup()
{
  static const Setup s;
  return s;
}

const Design &design()
{
  static const Design d = derive_design(suite(false), setup());
  return d;
}

} // namespace

class Seeded : public ::testing::TestWithParam<int> {};

TEST_P(Seeded, PipelinedNeverSlower)
{
  std::mt19937_64 rng(GetParam());
  std::uniform_int_distribution<int> len(1, 50);
  for (Strategy st : {Strategy::UNITS, Strategy::THROUGHPUT, Strategy::RC_THROUGHPUT})
    for (Mode mode : {Mode::CHIME, Mode::STT_CIM_L2, Mode::STT_CIM_MEM}) {
      auto t = oracle::random_trace(rng, len(rng), oracle::small_kinds());
      auto m = machine(mode, design(), st, setup());
      EXPECT_LE(simulate(t, m).makespan_cycles, simulate_nonpipelined(t, m).makespan_cycles);
    }
  auto t = oracle::random_trace(rng, len(rng), oracle::small_kinds());
  auto m = oracle::small_machine();
  EXPECT_LE(simulate(t, m).makespan_cycles, simulate_nonpipelined(t, m).makespan_cycles);
}

TEST_P(Seeded, SchedulerMatchesBruteForce)
{
  std::mt19937_64 rng(1000 + GetParam());
  std::uniform_int_distribution<int> len(1, 6);
  auto m = oracle::small_machine();
  for (int i = 0; i < 10; ++i) {
    auto t = oracle::random_trace(rng, len(rng), oracle::small_kinds(), 4);
    EXPECT_EQ(simulate(t, m).makespan_cycles, oracle::brute_force_makespan(t, m)) << trace_to_text(t);
  }
}

TEST_P(Seeded, EnergyAccounting)
{
  std::mt19937_64 rng(2000 + GetParam());
  auto t = oracle::random_trace(rng, 30, oracle::small_kinds());
  for (Mode mode : {Mode::CHIME, Mode::STT_CIM_L2, Mode::STT_CIM_MEM, Mode::CPU}) {
    auto r = simulate(t, machine(mode, design(), Strategy::RC_THROUGHPUT, setup()));
    const auto &e = r.energy_pj;
    EXPECT_NEAR(e.compute + e.static_ + e.transfer + e.cpu, e.total(), 1e-6 * e.total());
    EXPECT_NEAR(e.static_, oracle::static_energy(setup().levels, r.makespan_cycles, 2.0), 1e-9 * e.static_);
    for (double x : {e.compute, e.static_, e.transfer, e.cpu}) EXPECT_GE(x, 0.0);
  }
}

INSTANTIATE_TEST_SUITE_P(Random, Seeded, ::testing::Range(1, 21));

TEST(Mapping, GreedyIsUniqueExhaustiveOptimum)
{
  for (Strategy s : {Strategy::UNITS, Strategy::THROUGHPUT, Strategy::RC_THROUGHPUT}) {
    auto ex = oracle::exhaustive_mapping(s, design().groups, setup().levels, design().usage, 32, setup().tech);
    ASSERT_EQ(ex.best.size(), 1u) << strategy_name(s);
    EXPECT_EQ(ex.best[0], design().mapping.at(s).level_of) << strategy_name(s);
  }
}

TEST(Mapping, RippleCarryBound)
{
  std::vector<ComputeGroup> gs = design().groups;
  gs.push_back({"logic", {OpKind::AND, OpKind::NOT}, 180, 0.1, {}});
  gs.push_back({"shift-cmp", {OpKind::SHIFT, OpKind::CMP_EQ}, 400, 0.1, {}});
  for (const auto &g : gs)
    for (const auto &l : setup().levels)
      for (std::uint32_t w = 1; w <= 32; ++w) {
        double e2 = throughput(g, l, setup().tech), e5 = throughput_ripple_carry(g, l, w, setup().tech);
        EXPECT_LE(e5, e2);
        EXPECT_EQ(e5 == e2, !has_ripple_carry(g, setup().tech)) << g.name << " " << l.name << " " << w;
      }
}

TEST(Determinism, GridCsvIsByteIdentical)
{
  chime::Setup s;
  Design d = derive_design(suite(false), s);
  d.specs = {{KernelId::MAT_ADD, 16}, {KernelId::MAC, 1024}, {KernelId::BNN, 8}};
  std::vector<Mode> modes = {Mode::CHIME, Mode::STT_CIM_L2, Mode::STT_CIM_MEM, Mode::CPU};
  std::vector<Strategy> st = {Strategy::UNITS, Strategy::THROUGHPUT, Strategy::RC_THROUGHPUT};
  auto a = results_csv(run_grid(d, s, modes, st, 4));
  Design d2 = derive_design(suite(false), s);
  d2.specs = d.specs;
  EXPECT_EQ(a, results_csv(run_grid(d2, s, modes, st, 1)));
}
