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

#ifndef CHIME_GROUPING_HPP
#define CHIME_GROUPING_HPP

#include "chime/workloads.hpp"

namespace chime {

struct PairCount {
  OpKind a;
  OpKind b;
  std::uint64_t count;
};

// Default per-group figures; names follow the dominant members.
struct GroupSpec {
  std::string name;
  double critical_path_ps;
  double area_overhead;
};

inline const std::vector<GroupSpec> &default_group_specs()
{
  static const std::vector<GroupSpec> g = {
      {"log-sub", 294.0, 0.147}, {"add-comp", 265.0, 0.1712}, {"mult-shift", 452.0, 0.1745}};
  return g;
}

struct ComputeGroup {
  std::string name;
  std::set<OpKind> members;
  double critical_path_ps = 0;
  double area_overhead = 0;
  std::vector<PairCount> pairs;

  bool hosts(OpKind k) const { return members.count(k) != 0; }
};

inline bool pair_before(const PairCount &x, const PairCount &y)
{
  if (x.count != y.count) return x.count > y.count;
  std::string xa = kind_name(x.a), ya = kind_name(y.a);
  if (xa != ya) return xa < ya;
  return std::string(kind_name(x.b)) < kind_name(y.b);
}

inline std::vector<PairCount> sort_pairs(const std::map<PairKey, std::uint64_t> &m)
{
  std::vector<PairCount> v;
  for (const auto &[k, c] : m) v.push_back({k.first, k.second, c});
  std::sort(v.begin(), v.end(), pair_before);
  return v;
}

inline std::vector<PairCount> count_pairs(const std::vector<Trace> &traces)
{
  std::map<PairKey, std::uint64_t> m;
  for (const auto &t : traces)
    for (const auto &p : extract_instruction_pairs(t)) ++m[p];
  return sort_pairs(m);
}

inline std::vector<PairCount> count_pairs(const std::vector<KernelSpec> &specs)
{
  std::map<PairKey, std::uint64_t> m;
  for (const auto &s : specs)
    for (const auto &[k, c] : pair_histogram(s)) m[k] += c;
  return sort_pairs(m);
}

// Label a member set after the reference group it resembles.
inline const GroupSpec &classify_group(const std::set<OpKind> &members)
{
  const auto &g = default_group_specs();
  for (OpKind k : members)
    if (k == OpKind::MULT || k == OpKind::SHIFT || k == OpKind::ROTATE) return g[2];
  for (OpKind k : members)
    if (k == OpKind::ADD || k == OpKind::CMP_LT || k == OpKind::CMP_GT || k == OpKind::CMP_EQ) return g[1];
  return g[0];
}

// Round-robin pairs into m groups; each kind is hosted by the group that
// holds its most frequent pair.
inline std::vector<ComputeGroup> form_groups(const std::vector<PairCount> &sorted_pairs, std::size_t m)
{
  if (m == 0) throw std::invalid_argument("group count must be positive");
  std::vector<ComputeGroup> groups(m);
  std::map<OpKind, std::size_t> host;
  for (std::size_t k = 0; k < sorted_pairs.size(); ++k) {
    const auto &p = sorted_pairs[k];
    if (p.count == 0) continue;
    std::size_t g = k % m;
    groups[g].pairs.push_back(p);
    host.emplace(p.a, g);
    host.emplace(p.b, g);
  }
  for (const auto &[kind, g] : host) groups[g].members.insert(kind);
  std::map<std::string, int> seen;
  for (std::size_t g = 0; g < m; ++g) {
    const auto &spec = classify_group(groups[g].members);
    groups[g].critical_path_ps = spec.critical_path_ps;
    groups[g].area_overhead = spec.area_overhead;
    int dup = seen[spec.name]++;
    groups[g].name = dup ? spec.name + "#" + std::to_string(dup + 1) : spec.name;
    if (groups[g].members.empty()) groups[g].name = "empty#" + std::to_string(g);
  }
  return groups;
}

inline std::optional<std::size_t> host_group(const std::vector<ComputeGroup> &groups, OpKind k)
{
  for (std::size_t g = 0; g < groups.size(); ++g)
    if (groups[g].hosts(k)) return g;
  return std::nullopt;
}

// Fraction of a workload's instructions executed by each group; the last
// entry is the CPU fallback. Data-management instructions are not counted.
inline std::vector<double> group_frequency(const std::vector<ComputeGroup> &groups,
                                           const std::map<OpKind, std::uint64_t> &hist)
{
  std::vector<double> f(groups.size() + 1, 0.0);
  std::uint64_t total = 0;
  for (const auto &[k, c] : hist) {
    if (is_data_management(k) || c == 0) continue;
    total += c;
    auto g = is_compute(k) ? host_group(groups, k) : std::nullopt;
    f[g ? *g : groups.size()] += static_cast<double>(c);
  }
  if (total)
    for (auto &x : f) x /= static_cast<double>(total);
  return f;
}

inline std::map<OpKind, std::uint64_t> kind_histogram(const Trace &t)
{
  std::map<OpKind, std::uint64_t> h;
  for (const auto &in : t.instrs) ++h[in.kind];
  return h;
}

inline std::vector<double> group_frequency(const std::vector<ComputeGroup> &groups, const Trace &t)
{
  return group_frequency(groups, kind_histogram(t));
}

inline std::vector<KernelSpec> suite(bool full_sizes, std::uint32_t width = 32, std::uint64_t seed = 1)
{
  std::vector<KernelSpec> v;
  for (auto k : kAllKernels) v.push_back({k, full_sizes ? full_size(k) : desk_size(k), width, seed});
  return v;
}

} // namespace chime

#endif // CHIME_GROUPING_HPP
