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

// Independent reference implementations used by the tests and the
// acceptance runner. Deliberately slow and simple.

#ifndef CHIME_TESTS_ORACLES_HPP
#define CHIME_TESTS_ORACLES_HPP

#include "chime/io.hpp"

#include <functional>
#include <random>

namespace oracle {

using namespace chime;

inline std::int64_t ceil_int(double x) { return static_cast<std::int64_t>(std::ceil(x - 1e-9)); }

// Hop-by-hop latency, written out directly from the level table.
inline std::int64_t hop_latency(const std::vector<MemoryLevel> &lv, int from, int to)
{
  double c = 0;
  if (from < to)
    for (int i = from; i < to; ++i) c += lv[i].total_read_latency + lv[i + 1].total_write_latency;
  else
    for (int i = from; i > to; --i) c += lv[i].total_read_latency + lv[i - 1].total_write_latency;
  return ceil_int(c);
}

inline double carry_per_bit(OpKind k, const TechParams &t)
{
  if (k == OpKind::ADD) return t.p_add;
  if (k == OpKind::SUB) return t.p_sub;
  if (k == OpKind::MULT) return t.p_mult;
  return 0;
}

// Occupancy of one CHIME op: carry + critical path + subarray access.
inline std::int64_t op_cycles(const Instruction &in, const ComputeGroup &g, const MemoryLevel &l, const TechParams &t)
{
  double w = in.kind == OpKind::MULT ? std::min<double>(in.width_bits, t.mult_input_bits) : in.width_bits;
  return ceil_int(carry_per_bit(in.kind, t) * w + g.critical_path_ps * t.clock_ghz / 1000.0 +
                  l.subarray_read_latency + l.subarray_write_latency);
}

// Minimum makespan over every legal in-order interleaving (and every unit
// choice) of a CHIME-mode trace of compute ops.
inline std::int64_t brute_force_makespan(const Trace &t, const MachineConfig &m)
{
  const auto &lv = m.levels;
  const int nl = static_cast<int>(lv.size());
  const std::size_t n = t.instrs.size();
  std::vector<int> loc(n), grp(n);
  for (std::size_t i = 0; i < n; ++i) {
    grp[i] = -1;
    for (std::size_t g = 0; g < m.groups.size() && grp[i] < 0; ++g)
      if (m.groups[g].members.count(t.instrs[i].kind)) grp[i] = static_cast<int>(g);
    if (grp[i] < 0) throw std::invalid_argument("oracle: kind without a group");
    loc[i] = m.assignment.level_of[grp[i]];
  }
  std::vector<std::vector<std::size_t>> queue(nl);
  for (std::size_t i = 0; i < n; ++i) queue[loc[i]].push_back(i);
  // producer of each source operand (latest earlier writer of the address)
  std::vector<std::vector<long>> prod(n);
  for (std::size_t i = 0; i < n; ++i)
    for (int s = 0; s < t.instrs[i].nsrc; ++s) {
      long p = -1;
      for (std::size_t j = 0; j < i; ++j)
        if (t.instrs[j].dest && t.instrs[j].dest->address == t.instrs[i].src[s].address) p = static_cast<long>(j);
      prod[i].push_back(p);
    }
  const int home_in = nl - 1;
  std::vector<std::size_t> units(nl);
  for (int l = 0; l < nl; ++l) {
    std::uint64_t lanes = std::max<std::uint64_t>(1, lv[l].subarray_cols / m.tech.lane_bits);
    units[l] = lv[l].num_compute_units() * lanes;
  }

  std::vector<std::int64_t> finish(n, -1);
  std::vector<std::size_t> head(nl, 0);
  std::vector<std::int64_t> last(nl, 0);
  std::vector<std::vector<std::int64_t>> free(nl);
  for (int l = 0; l < nl; ++l) free[l].assign(std::min<std::size_t>(units[l], n), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();

  std::function<void(std::size_t, std::int64_t)> dfs = [&](std::size_t done, std::int64_t span) {
    if (span >= best) return;
    if (done == n) {
      best = span;
      return;
    }
    for (int l = 0; l < nl; ++l) {
      if (head[l] == queue[l].size()) continue;
      std::size_t i = queue[l][head[l]];
      std::int64_t ready = last[l];
      bool blocked = false;
      for (long p : prod[i]) {
        if (p >= 0 && finish[p] < 0) blocked = true;
        if (blocked) break;
        int h = p >= 0 ? loc[p] : home_in;
        std::int64_t at = p >= 0 ? finish[p] : 0;
        ready = std::max(ready, at + (h == l ? 0 : hop_latency(lv, h, l)));
      }
      if (blocked) continue;
      const auto occ = op_cycles(t.instrs[i], m.groups[grp[i]], lv[l], m.tech);
      std::set<std::int64_t> tried;
      for (std::size_t u = 0; u < free[l].size(); ++u) {
        if (!tried.insert(free[l][u]).second) continue;
        std::int64_t st = std::max(ready, free[l][u]);
        auto saved_free = free[l][u];
        auto saved_last = last[l];
        free[l][u] = st + occ;
        last[l] = st;
        finish[i] = st + occ;
        ++head[l];
        dfs(done + 1, std::max(span, st + occ));
        --head[l];
        finish[i] = -1;
        last[l] = saved_last;
        free[l][u] = saved_free;
      }
    }
  };
  dfs(0, 0);
  return n == 0 ? 0 : best;
}

// Random straight-line trace of compute ops drawn from `kinds`.
inline Trace random_trace(std::mt19937_64 &rng, std::size_t n, const std::vector<OpKind> &kinds,
                          std::size_t input_pool = 6)
{
  std::vector<Instruction> ins;
  std::vector<std::uint64_t> inputs, produced;
  for (std::size_t k = 0; k < input_pool; ++k) inputs.push_back(0x10000 + 64 * (k / 2) + 4 * (k % 2));
  std::uniform_int_distribution<std::size_t> pick_kind(0, kinds.size() - 1);
  std::uniform_int_distribution<int> coin(0, 99);
  for (std::size_t i = 0; i < n; ++i) {
    Instruction in;
    in.kind = kinds[pick_kind(rng)];
    in.width_bits = in.kind == OpKind::MULT ? 16 : (coin(rng) < 50 ? 16 : 32);
    std::uint32_t bits = in.kind == OpKind::MULT ? 16 : in.width_bits;
    int nsrc = in.kind == OpKind::NOT || in.kind == OpKind::SHIFT ? 1 : 2;
    for (int s = 0; s < nsrc; ++s) {
      bool use_prod = !produced.empty() && coin(rng) < 60;
      auto &pool = use_prod ? produced : inputs;
      std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
      in.add_src({pool[d(rng)], bits});
    }
    std::uint64_t dst = 0x100000 + 64 * i;
    in.dest = BlockAddr{dst, in.kind == OpKind::MULT ? 32u : bits};
    produced.push_back(dst);
    ins.push_back(in);
  }
  return make_trace("random", std::move(ins));
}

// Exhaustive search over injective group->level assignments.
struct Search {
  std::vector<std::vector<int>> best;  // all optimal assignments
  std::vector<double> objective;
};

inline std::vector<double> objective_of(Strategy s, const std::vector<int> &level_of,
                                        const std::vector<ComputeGroup> &groups, const std::vector<MemoryLevel> &lv,
                                        const std::vector<double> &weight, std::uint32_t width, const TechParams &t)
{
  std::vector<double> v;
  if (s == Strategy::UNITS) {
    // units of the level given to each group, most frequent group first
    std::vector<std::size_t> order(groups.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return weight[a] > weight[b]; });
    for (auto g : order) v.push_back(double(lv[level_of[g]].num_compute_units()));
    return v;
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto &l = lv[level_of[g]];
    double lat = groups[g].critical_path_ps * t.clock_ghz / 1000.0 + l.subarray_read_latency + l.subarray_write_latency;
    if (s == Strategy::RC_THROUGHPUT) {
      double c = 0;
      for (OpKind k : groups[g].members) {
        double w = k == OpKind::MULT ? std::min<double>(width, t.mult_input_bits) : width;
        c = std::max(c, carry_per_bit(k, t) * w);
      }
      lat += c;
    }
    v.push_back(double(l.num_compute_units()) / lat);
  }
  std::sort(v.rbegin(), v.rend());
  return v;
}

inline Search exhaustive_mapping(Strategy s, const std::vector<ComputeGroup> &groups,
                                 const std::vector<MemoryLevel> &lv, const std::vector<double> &weight,
                                 std::uint32_t width, const TechParams &t)
{
  Search out;
  std::vector<int> levels(lv.size());
  for (std::size_t i = 0; i < lv.size(); ++i) levels[i] = static_cast<int>(i);
  std::set<std::vector<int>> seen;
  do {
    std::vector<int> a(levels.begin(), levels.begin() + groups.size());
    if (!seen.insert(a).second) continue;
    auto obj = objective_of(s, a, groups, lv, weight, width, t);
    if (out.best.empty() || obj > out.objective) {
      out.objective = obj;
      out.best = {a};
    } else if (obj == out.objective) {
      out.best.push_back(a);
    }
  } while (std::next_permutation(levels.begin(), levels.end()));
  return out;
}

// Sum of leakage x elapsed time, from the level table.
inline double static_energy(const std::vector<MemoryLevel> &lv, std::int64_t cycles, double ghz)
{
  double seconds = double(cycles) / (ghz * 1e9);
  double pj = 0;
  for (const auto &l : lv) pj += l.leakage_mw * 1e-3 * seconds * 1e12;
  return pj;
}

// Two-level machine with few units so that contention shows up.
inline MachineConfig small_machine()
{
  MachineConfig m;
  auto d = default_levels();
  MemoryLevel top = d[1], bottom = d[2];
  top.capacity_bytes = 64 << 10;  // 2 subarrays
  bottom.max_active_subarrays = 1;
  m.levels = {top, bottom};
  ComputeGroup a{"add-comp", {OpKind::ADD, OpKind::SUB, OpKind::XOR, OpKind::CMP_GT}, 265, 0.17, {}};
  ComputeGroup b{"mult-shift", {OpKind::MULT, OpKind::SHIFT}, 452, 0.17, {}};
  m.groups = {a, b};
  m.assignment = {Strategy::RC_THROUGHPUT, {0, 1}};
  return m;
}

inline const std::vector<OpKind> &small_kinds()
{
  static const std::vector<OpKind> k = {OpKind::ADD, OpKind::SUB, OpKind::XOR, OpKind::CMP_GT, OpKind::MULT,
                                        OpKind::SHIFT};
  return k;
}

} // namespace oracle

#endif
