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

#ifndef CHIME_MAPPING_HPP
#define CHIME_MAPPING_HPP

#include "chime/grouping.hpp"
#include "chime/hierarchy.hpp"

namespace chime {

struct TechParams {
  double clock_ghz = 2.0;
  double p_add = 1.0;   // carry cycles per bit
  double p_sub = 4.0;
  double p_mult = 6.0;
  std::uint32_t mult_input_bits = 16;
  // combined-unit baseline
  double stt_critical_path_ps = 692.0;
  double stt_carry_scale = 692.0 / 265.0;
  double stt_penalty_l1 = 2.7;
  double stt_penalty_l2 = 1.58;
  double stt_penalty_mem = 1.53;
  bool stt_penalty_energy = true;
  std::uint32_t lane_bits = 512;
  unsigned retention_counter_bits = 2;
};

inline double compute_cycles(double critical_path_ps, const TechParams &t)
{
  return critical_path_ps * t.clock_ghz / 1000.0;
}

inline double latency_total(const ComputeGroup &g, const MemoryLevel &l, const TechParams &t)
{
  return compute_cycles(g.critical_path_ps, t) + l.subarray_read_latency + l.subarray_write_latency;
}

inline double throughput(const ComputeGroup &g, const MemoryLevel &l, const TechParams &t)
{
  return static_cast<double>(l.num_compute_units()) / latency_total(g, l, t);
}

inline double carry_delay(OpKind k, const TechParams &t)
{
  switch (k) {
  case OpKind::ADD: return t.p_add;
  case OpKind::SUB: return t.p_sub;
  case OpKind::MULT: return t.p_mult;
  default: return 0.0;
  }
}

// multipliers only ever see mult_input_bits-wide operands
inline double carry_cycles(OpKind k, std::uint32_t width, const TechParams &t)
{
  std::uint32_t w = k == OpKind::MULT ? std::min(width, t.mult_input_bits) : width;
  return carry_delay(k, t) * w;
}

inline double group_carry_cycles(const ComputeGroup &g, std::uint32_t width, const TechParams &t)
{
  double c = 0;
  for (OpKind k : g.members) c = std::max(c, carry_cycles(k, width, t));
  return c;
}

inline bool has_ripple_carry(const ComputeGroup &g, const TechParams &t)
{
  for (OpKind k : g.members)
    if (carry_delay(k, t) > 0) return true;
  return false;
}

inline double latency_ripple_carry(const ComputeGroup &g, const MemoryLevel &l, std::uint32_t width,
                                   const TechParams &t)
{
  return group_carry_cycles(g, width, t) + latency_total(g, l, t);
}

inline double throughput_ripple_carry(const ComputeGroup &g, const MemoryLevel &l, std::uint32_t width,
                                      const TechParams &t)
{
  return static_cast<double>(l.num_compute_units()) / latency_ripple_carry(g, l, width, t);
}

enum class Strategy { UNITS, THROUGHPUT, RC_THROUGHPUT };

inline const char *strategy_name(Strategy s)
{
  switch (s) {
  case Strategy::UNITS: return "units";
  case Strategy::THROUGHPUT: return "throughput";
  default: return "rc";
  }
}

inline std::optional<Strategy> strategy_from_name(const std::string &s)
{
  if (s == "units") return Strategy::UNITS;
  if (s == "throughput") return Strategy::THROUGHPUT;
  if (s == "rc" || s == "rc_throughput" || s == "rc-throughput") return Strategy::RC_THROUGHPUT;
  return std::nullopt;
}

// level_of[g] = index into the level list
struct Assignment {
  Strategy strategy = Strategy::UNITS;
  std::vector<int> level_of;
};

// Groups ordered by descending frequency weight, ties by index.
inline std::vector<std::size_t> frequency_order(const std::vector<double> &weight)
{
  std::vector<std::size_t> o(weight.size());
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = i;
  std::stable_sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) { return weight[a] > weight[b]; });
  return o;
}

inline void check_mappable(const std::vector<ComputeGroup> &groups, const std::vector<MemoryLevel> &lv,
                           const std::vector<double> &weight)
{
  if (groups.size() > lv.size())
    throw ConfigError(std::to_string(groups.size()) + " groups but only " + std::to_string(lv.size()) + " levels");
  if (weight.size() != groups.size()) throw std::invalid_argument("one frequency weight per group required");
}

inline Assignment map_by_units(const std::vector<ComputeGroup> &groups, const std::vector<MemoryLevel> &lv,
                               const std::vector<double> &weight)
{
  check_mappable(groups, lv, weight);
  std::vector<int> levels(lv.size());
  for (std::size_t i = 0; i < lv.size(); ++i) levels[i] = static_cast<int>(i);
  std::stable_sort(levels.begin(), levels.end(),
                   [&](int a, int b) { return lv[a].num_compute_units() > lv[b].num_compute_units(); });
  Assignment a{Strategy::UNITS, std::vector<int>(groups.size(), -1)};
  auto order = frequency_order(weight);
  for (std::size_t r = 0; r < order.size(); ++r) a.level_of[order[r]] = levels[r];
  return a;
}

// Repeatedly commit the best remaining (group, level) pair. Ties go to the
// more frequent group, then to the level listed first.
template <class Score>
Assignment greedy_best_pair(const std::vector<ComputeGroup> &groups, const std::vector<MemoryLevel> &lv,
                            const std::vector<double> &weight, Strategy s, Score score)
{
  check_mappable(groups, lv, weight);
  auto order = frequency_order(weight);
  std::vector<std::size_t> rank(groups.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  Assignment a{s, std::vector<int>(groups.size(), -1)};
  std::vector<bool> used(lv.size(), false);
  for (std::size_t step = 0; step < groups.size(); ++step) {
    int bg = -1, bl = -1;
    double bs = -1;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (a.level_of[g] >= 0) continue;
      for (std::size_t l = 0; l < lv.size(); ++l) {
        if (used[l]) continue;
        double v = score(groups[g], lv[l]);
        if (bg < 0 || v > bs || (v == bs && (rank[g] < rank[bg] || (rank[g] == rank[bg] && int(l) < bl)))) {
          bg = int(g);
          bl = int(l);
          bs = v;
        }
      }
    }
    a.level_of[bg] = bl;
    used[bl] = true;
  }
  return a;
}

inline Assignment map_by_throughput(const std::vector<ComputeGroup> &groups, const std::vector<MemoryLevel> &lv,
                                    const std::vector<double> &weight, const TechParams &t)
{
  return greedy_best_pair(groups, lv, weight, Strategy::THROUGHPUT,
                          [&](const ComputeGroup &g, const MemoryLevel &l) { return throughput(g, l, t); });
}

inline Assignment map_by_rc_throughput(const std::vector<ComputeGroup> &groups, const std::vector<MemoryLevel> &lv,
                                       const std::vector<double> &weight, std::uint32_t width, const TechParams &t)
{
  return greedy_best_pair(groups, lv, weight, Strategy::RC_THROUGHPUT, [&](const ComputeGroup &g, const MemoryLevel &l) {
    return throughput_ripple_carry(g, l, width, t);
  });
}

inline Assignment map_groups(Strategy s, const std::vector<ComputeGroup> &groups, const std::vector<MemoryLevel> &lv,
                             const std::vector<double> &weight, std::uint32_t width, const TechParams &t)
{
  switch (s) {
  case Strategy::UNITS: return map_by_units(groups, lv, weight);
  case Strategy::THROUGHPUT: return map_by_throughput(groups, lv, weight, t);
  default: return map_by_rc_throughput(groups, lv, weight, width, t);
  }
}

// Mean per-workload usage of each group; the weight the mappers rank by.
inline std::vector<double> average_usage(const std::vector<ComputeGroup> &groups, const std::vector<KernelSpec> &specs)
{
  std::vector<double> avg(groups.size(), 0.0);
  for (const auto &s : specs) {
    auto f = group_frequency(groups, kind_histogram(s));
    for (std::size_t g = 0; g < groups.size(); ++g) avg[g] += f[g] / static_cast<double>(specs.size());
  }
  return avg;
}

} // namespace chime

#endif // CHIME_MAPPING_HPP
