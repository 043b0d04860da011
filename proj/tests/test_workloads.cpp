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

#include "chime/grouping.hpp"

#include <gtest/gtest.h>

using namespace chime;

namespace {

std::map<PairKey, std::uint64_t> counted_pairs(const Trace &t)
{
  std::map<PairKey, std::uint64_t> m;
  for (const auto &p : extract_instruction_pairs(t)) ++m[p];
  return m;
}

} // namespace

TEST(Names, RoundTrip)
{
  for (auto k : kAllKernels) EXPECT_EQ(kernel_from_name(kernel_name(k)), k);
  EXPECT_FALSE(kernel_from_name("fft"));
}

TEST(MatAdd, TwoByTwo)
{
  auto t = generate({KernelId::MAT_ADD, 2});
  ASSERT_EQ(t.instrs.size(), 4u);
  for (const auto &in : t.instrs) {
    EXPECT_EQ(in.kind, OpKind::ADD);
    EXPECT_EQ(in.nsrc, 2);
  }
  EXPECT_TRUE(t.deps.empty());
  EXPECT_TRUE(validate_trace(t).empty());
}

TEST(Mac, ThreeElements)
{
  auto t = generate({KernelId::MAC, 3});
  auto h = kind_histogram(t);
  EXPECT_EQ(h[OpKind::MULT], 3u);
  EXPECT_EQ(h[OpKind::ADD], 3u);
  auto p = counted_pairs(t);
  EXPECT_EQ((p[{OpKind::MULT, OpKind::ADD}]), 3u);
  EXPECT_EQ((p[{OpKind::ADD, OpKind::ADD}]), 2u);
  for (const auto &in : t.instrs)
    if (in.kind == OpKind::MULT) {
      EXPECT_EQ(in.width_bits, 16u);
      EXPECT_EQ(in.dest->size_bits, 32u);
    }
}

TEST(Bnn, PairsAreXorAddAndCompare)
{
  auto p = counted_pairs(generate({KernelId::BNN, 4}));
  std::set<PairKey> want = {{OpKind::XOR, OpKind::ADD}, {OpKind::ADD, OpKind::ADD}, {OpKind::ADD, OpKind::CMP_GT}};
  std::set<PairKey> got;
  for (auto &[k, c] : p) got.insert(k);
  EXPECT_EQ(got, want);
  EXPECT_EQ((p[{OpKind::XOR, OpKind::ADD}]), 4u * 16u);
  EXPECT_EQ((p[{OpKind::ADD, OpKind::CMP_GT}]), 16u);
}

TEST(Rmse, TailRunsOnCpu)
{
  auto t = generate({KernelId::RMSE, 10});
  EXPECT_EQ(t.instrs.back().kind, OpKind::CPU_OP);
  EXPECT_EQ(kind_histogram(t)[OpKind::CPU_OP], 2u);
}

// The closed forms feed the full-size statistics, so they must agree with the
// generator wherever both can be evaluated.
class ClosedForm : public ::testing::TestWithParam<std::tuple<KernelId, std::uint64_t>> {};

TEST_P(ClosedForm, MatchesGeneratedTrace)
{
  auto [k, n] = GetParam();
  KernelSpec s{k, n};
  auto t = generate(s);
  auto kh = kind_histogram(s);
  EXPECT_EQ(kind_histogram(t), kh);
  EXPECT_EQ(instruction_count(s), t.instrs.size());
  EXPECT_EQ(counted_pairs(t), pair_histogram(s));
  EXPECT_TRUE(validate_trace(t).empty());
}

INSTANTIATE_TEST_SUITE_P(
    Sizes, ClosedForm,
    ::testing::Combine(::testing::ValuesIn(kAllKernels.begin(), kAllKernels.end()),
                       ::testing::Values<std::uint64_t>(1, 2, 3, 5, 8, 17, 63, 64, 65, 130)),
    [](const auto &info) {
      return std::string(kernel_name(std::get<0>(info.param))) + "_" + std::to_string(std::get<1>(info.param));
    });

TEST(ClosedForm, LongChains)
{
  for (auto k : {KernelId::MAC, KernelId::WORDCOUNT, KernelId::RMSE}) {
    KernelSpec s{k, 4096 + 37};
    auto t = generate(s);
    EXPECT_EQ(counted_pairs(t), pair_histogram(s)) << kernel_name(k);
  }
}

TEST(Determinism, SameSeedSameTrace)
{
  for (auto k : kAllKernels) {
    KernelSpec s{k, 6, 32, 42};
    EXPECT_EQ(trace_to_text(generate(s)), trace_to_text(generate(s)));
  }
  auto a = generate({KernelId::MAT_ADD, 4, 32, 1});
  auto b = generate({KernelId::MAT_ADD, 4, 32, 2});
  EXPECT_EQ(kind_histogram(a), kind_histogram(b));
}

TEST(Scaling, CubicKernelsGrowEightfold)
{
  for (auto k : {KernelId::MAT_MULT, KernelId::BNN}) {
    double small = double(instruction_count({k, 32})), big = double(instruction_count({k, 64}));
    EXPECT_NEAR(big / small, 8.0, 0.35) << kernel_name(k);
  }
  for (auto k : {KernelId::MAT_ADD, KernelId::GRAY, KernelId::THRESHOLDING})
    EXPECT_DOUBLE_EQ(double(instruction_count({k, 64})) / double(instruction_count({k, 32})), 4.0);
  for (auto k : {KernelId::MAC, KernelId::RMSE, KernelId::WORDCOUNT})
    EXPECT_NEAR(double(instruction_count({k, 8192})) / double(instruction_count({k, 4096})), 2.0, 0.01);
}

TEST(Sizes, FullAndDesk)
{
  EXPECT_EQ(full_size(KernelId::MAC), 1048576u);
  EXPECT_EQ(full_size(KernelId::RMSE), 100000u);
  EXPECT_EQ(full_size(KernelId::WORDCOUNT), 20000u);
  EXPECT_EQ(full_size(KernelId::MAT_MULT), 1024u);
  for (auto k : kAllKernels) EXPECT_LE(desk_size(k), full_size(k));
}

TEST(Errors, SizeLimits)
{
  EXPECT_THROW(generate({KernelId::MAT_ADD, 0}), SizeError);
  EXPECT_THROW(generate({KernelId::MAT_ADD, 4, 64}), SizeError);
  EXPECT_THROW(generate({KernelId::MAT_MULT, 1024}), SizeError);
  EXPECT_THROW(generate({KernelId::MAT_ADD, 64}, 1024), SizeError);
  EXPECT_NO_THROW(generate({KernelId::MAT_ADD, 4}, 1 << 20));
}
