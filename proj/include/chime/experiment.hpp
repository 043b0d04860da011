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

#ifndef CHIME_EXPERIMENT_HPP
#define CHIME_EXPERIMENT_HPP

#include "chime/engine.hpp"

#include <cstdio>
#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

namespace chime {

struct Setup {
  std::vector<MemoryLevel> levels = default_levels();
  TechParams tech;
  CpuParams cpu;
  std::size_t num_groups = 3;
  std::uint32_t width_bits = 32;
  bool full_sizes_for_grouping = false;
};

// Groups, usage weights and the three mappings derived from one suite.
struct Design {
  std::vector<KernelSpec> specs;
  std::vector<PairCount> pairs;
  std::vector<ComputeGroup> groups;
  std::vector<double> usage;
  std::map<Strategy, Assignment> mapping;
};

inline Design derive_design(const std::vector<KernelSpec> &specs, const Setup &s)
{
  check_levels(s.levels);
  Design d;
  d.specs = specs;
  d.pairs = count_pairs(specs);
  d.groups = form_groups(d.pairs, s.num_groups);
  d.usage = average_usage(d.groups, specs);
  for (Strategy st : {Strategy::UNITS, Strategy::THROUGHPUT, Strategy::RC_THROUGHPUT})
    d.mapping[st] = map_groups(st, d.groups, s.levels, d.usage, s.width_bits, s.tech);
  return d;
}

inline MachineConfig machine(Mode mode, const Design &d, Strategy st, const Setup &s)
{
  MachineConfig m;
  m.mode = mode;
  m.levels = s.levels;
  m.tech = s.tech;
  m.cpu = s.cpu;
  m.groups = d.groups;
  m.assignment = d.mapping.at(st);
  return m;
}

struct Row {
  std::string kernel;
  std::uint64_t n = 0;
  Mode mode = Mode::CHIME;
  Strategy strategy = Strategy::RC_THROUGHPUT;
  SimResult result;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

// All kernels x modes x strategies. Mapping-independent modes are simulated
// once per kernel and repeated across strategies.
inline std::vector<Row> run_grid(const Design &d, const Setup &s, const std::vector<Mode> &modes,
                                 const std::vector<Strategy> &strategies, unsigned threads = 0)
{
  struct Job {
    std::size_t spec;
    Mode mode;
    Strategy strategy;
  };
  std::vector<Job> jobs;
  for (std::size_t k = 0; k < d.specs.size(); ++k)
    for (Mode m : modes) {
      if (m == Mode::CHIME)
        for (Strategy st : strategies) jobs.push_back({k, m, st});
      else
        jobs.push_back({k, m, strategies.front()});
    }
  std::vector<Trace> traces(d.specs.size());
  std::vector<std::string> gen_error(d.specs.size());
  for (std::size_t k = 0; k < d.specs.size(); ++k) {
    try {
      traces[k] = generate(d.specs[k], s.levels.back().capacity_bytes);
    } catch (const std::exception &e) {
      gen_error[k] = e.what();
    }
  }
  std::vector<SimResult> out(jobs.size());
  std::vector<std::string> err(jobs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j; (j = next++) < jobs.size();) {
      if (!gen_error[jobs[j].spec].empty()) {
        err[j] = gen_error[jobs[j].spec];
        continue;
      }
      try {
        out[j] = simulate(traces[jobs[j].spec], machine(jobs[j].mode, d, jobs[j].strategy, s));
      } catch (const std::exception &e) {
        err[j] = e.what();
      }
    }
  };
  std::vector<std::future<void>> pool;
  for (unsigned i = 0; i < threads; ++i) pool.push_back(std::async(std::launch::async, work));
  for (auto &f : pool) f.get();
  std::vector<Row> rows;
  for (std::size_t k = 0; k < d.specs.size(); ++k)
    for (Mode m : modes)
      for (Strategy st : strategies)
        for (std::size_t j = 0; j < jobs.size(); ++j)
          if (jobs[j].spec == k && jobs[j].mode == m && (m != Mode::CHIME ? true : jobs[j].strategy == st))
            rows.push_back({kernel_name(d.specs[k].id), d.specs[k].n, m, st, out[j], err[j]});
  return rows;
}

inline const Row *find_row(const std::vector<Row> &rows, const std::string &kernel, Mode m, Strategy st)
{
  for (const auto &r : rows)
    if (r.kernel == kernel && r.mode == m && r.strategy == st) return &r;
  return nullptr;
}

// Ratios of one run against the CPU run of the same kernel.
struct Comparison {
  std::string kernel;
  Mode mode = Mode::CHIME;
  Strategy strategy = Strategy::RC_THROUGHPUT;
  double speedup = 0;         // cpu cycles / cycles
  double energy_savings = 0;  // 1 - energy / cpu energy
  double pct_compute = 0, pct_static = 0, pct_transfer = 0, pct_cpu = 0;
};

inline std::vector<Comparison> compare(const std::vector<Row> &rows)
{
  std::vector<Comparison> out;
  for (const auto &r : rows) {
    if (!r.ok()) continue;
    Comparison c{r.kernel, r.mode, r.strategy};
    const Row *cpu = find_row(rows, r.kernel, Mode::CPU, r.strategy);
    if (cpu && cpu->ok() && r.result.makespan_cycles > 0) {
      c.speedup = double(cpu->result.makespan_cycles) / double(r.result.makespan_cycles);
      double ec = cpu->result.energy_pj.total();
      c.energy_savings = ec > 0 ? 1.0 - r.result.energy_pj.total() / ec : 0.0;
    }
    const auto &e = r.result.energy_pj;
    double tot = e.total();
    if (tot > 0) {
      c.pct_compute = 100.0 * e.compute / tot;
      c.pct_static = 100.0 * e.static_ / tot;
      c.pct_transfer = 100.0 * e.transfer / tot;
      c.pct_cpu = 100.0 * e.cpu / tot;
    }
    out.push_back(c);
  }
  return out;
}

} // namespace chime

#endif // CHIME_EXPERIMENT_HPP
