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

#ifndef CHIME_ENGINE_HPP
#define CHIME_ENGINE_HPP

#include "chime/mapping.hpp"

#include <functional>
#include <queue>
#include <unordered_map>

namespace chime {

enum class Mode { CHIME, STT_CIM_L2, STT_CIM_MEM, CPU };

inline const char *mode_name(Mode m)
{
  switch (m) {
  case Mode::CHIME: return "CHIME";
  case Mode::STT_CIM_L2: return "STT_CIM_L2";
  case Mode::STT_CIM_MEM: return "STT_CIM_MEM";
  default: return "CPU";
  }
}

inline std::optional<Mode> mode_from_name(const std::string &s)
{
  for (Mode m : {Mode::CHIME, Mode::STT_CIM_L2, Mode::STT_CIM_MEM, Mode::CPU})
    if (s == mode_name(m)) return m;
  return std::nullopt;
}

struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CpuParams {
  std::array<double, kNumKinds> cost_cycles{};
  double energy_pj_per_cycle = 250.0;

  CpuParams()
  {
    cost_cycles.fill(1.0);
    cost_cycles[static_cast<int>(OpKind::MULT)] = 3.0;
    cost_cycles[static_cast<int>(OpKind::CPU_OP)] = 20.0;
    for (OpKind k : {OpKind::MOVE, OpKind::COPY, OpKind::INVALIDATE}) cost_cycles[static_cast<int>(k)] = 0.0;
  }
  double cost(OpKind k) const { return cost_cycles[static_cast<int>(k)]; }
};

struct MachineConfig {
  Mode mode = Mode::CHIME;
  std::vector<MemoryLevel> levels = default_levels();
  TechParams tech;
  CpuParams cpu;
  std::vector<ComputeGroup> groups;
  Assignment assignment;
  int input_level = -1;  // -1: lowest level
  bool record_schedule = false;

  int inputs_at() const { return input_level < 0 ? static_cast<int>(levels.size()) - 1 : input_level; }
};

struct EnergyBreakdown {
  double compute = 0;
  double static_ = 0;
  double transfer = 0;
  double cpu = 0;
  double total() const { return compute + static_ + transfer + cpu; }
};

struct SimResult {
  std::int64_t makespan_cycles = 0;
  EnergyBreakdown energy_pj;
  std::vector<std::string> level_names;
  std::vector<std::int64_t> busy_cycles;  // per level, then CPU
  std::int64_t stall_unit = 0;
  std::int64_t stall_transfer = 0;
  std::int64_t stall_dependence = 0;
  std::uint64_t instructions = 0;
  std::uint64_t transfers = 0;
  std::uint64_t refills = 0;
  std::uint64_t writebacks = 0;
  std::vector<std::int64_t> start, finish;  // filled when record_schedule
  std::vector<int> location;                // level index, -1 for CPU
};

inline double static_energy_pj(const std::vector<MemoryLevel> &lv, std::int64_t cycles, double clock_ghz)
{
  double mw = 0;
  for (const auto &l : lv) mw += l.leakage_mw;
  return mw * static_cast<double>(cycles) / clock_ghz;
}

namespace detail {

inline double stt_penalty(const TechParams &t, const std::string &level)
{
  if (level == "L1") return t.stt_penalty_l1;
  if (level == "L2") return t.stt_penalty_l2;
  if (level == "MEM") return t.stt_penalty_mem;
  return 1.0;
}

// Levels as the simulator sees them: the combined-unit baselines slow down
// (and, optionally, make costlier) every access to their host level.
inline std::vector<MemoryLevel> effective_levels(const MachineConfig &m, int stt_level)
{
  auto lv = m.levels;
  if (stt_level < 0) return lv;
  auto &l = lv[stt_level];
  double f = stt_penalty(m.tech, l.name);
  l.total_read_latency *= f;
  l.total_write_latency *= f;
  l.subarray_read_latency *= f;
  l.subarray_write_latency *= f;
  if (m.tech.stt_penalty_energy) {
    l.read_energy_pj_per_bit *= f;
    l.write_energy_pj_per_bit *= f;
  }
  return lv;
}

inline std::int64_t ceil_cycles(double x) { return static_cast<std::int64_t>(std::ceil(x - 1e-9)); }

struct Copy {
  std::int64_t ready = -1;  // arrival; -1 when absent
  std::int64_t written = 0;
};

} // namespace detail

// Where each instruction runs: level index, or -1 for the CPU.
inline std::vector<int> placement(const Trace &t, const MachineConfig &m)
{
  std::vector<int> loc(t.instrs.size(), -1);
  int stt = -1;
  if (m.mode == Mode::STT_CIM_L2) stt = level_index(m.levels, "L2");
  if (m.mode == Mode::STT_CIM_MEM) stt = level_index(m.levels, "MEM");
  if ((m.mode == Mode::STT_CIM_L2 || m.mode == Mode::STT_CIM_MEM) && stt < 0)
    throw ConfigError(std::string(mode_name(m.mode)) + " needs a level named " +
                      (m.mode == Mode::STT_CIM_L2 ? "L2" : "MEM"));
  std::array<int, kNumKinds> host;
  host.fill(-1);
  if (m.mode == Mode::CHIME) {
    if (m.assignment.level_of.size() != m.groups.size()) throw ConfigError("assignment does not cover every group");
    for (std::size_t g = 0; g < m.groups.size(); ++g) {
      int l = m.assignment.level_of[g];
      if (l < 0 || l >= static_cast<int>(m.levels.size())) throw ConfigError("group mapped to an unknown level");
      for (OpKind k : m.groups[g].members)
        if (host[static_cast<int>(k)] < 0) host[static_cast<int>(k)] = l;
    }
  }
  for (std::size_t i = 0; i < t.instrs.size(); ++i) {
    OpKind k = t.instrs[i].kind;
    if (m.mode == Mode::CPU || !is_compute(k)) continue;
    loc[i] = m.mode == Mode::CHIME ? host[static_cast<int>(k)] : stt;
  }
  return loc;
}

namespace detail {

class InMemorySim {
public:
  InMemorySim(const Trace &t, const MachineConfig &m, bool pipelined) : t_(t), m_(m), pipelined_(pipelined)
  {
    if (m.levels.empty()) throw ConfigError("no memory levels");
    int stt = -1;
    if (m.mode == Mode::STT_CIM_L2) stt = level_index(m.levels, "L2");
    if (m.mode == Mode::STT_CIM_MEM) stt = level_index(m.levels, "MEM");
    stt_ = m.mode == Mode::STT_CIM_L2 || m.mode == Mode::STT_CIM_MEM;
    lv_ = effective_levels(m, stt);
    loc_ = placement(t, m);
    nl_ = static_cast<int>(lv_.size());
    home_in_ = m.inputs_at();
    lat_.assign(nl_, std::vector<std::int64_t>(nl_, 0));
    epb_.assign(nl_, std::vector<double>(nl_, 0.0));
    for (int a = 0; a < nl_; ++a)
      for (int b = 0; b < nl_; ++b) {
        auto c = transfer_cost(lv_, a, b, 1);
        lat_[a][b] = ceil_cycles(c.latency);
        epb_[a][b] = c.energy_pj;
      }
    ret_.resize(nl_);
    for (int l = 0; l < nl_; ++l) ret_[l] = cycles_of(lv_[l].retention_s, m.tech.clock_ghz);
    units_.resize(nl_ + 1);
    for (int l = 0; l < nl_; ++l) {
      std::uint64_t lanes = std::max<std::uint64_t>(1, lv_[l].subarray_cols / std::max<std::uint32_t>(1, m.tech.lane_bits));
      units_[l].assign(lv_[l].num_compute_units() * lanes, 0);
    }
    units_[nl_].assign(1, 0);
    group_of_.fill(-1);
    for (std::size_t g = 0; g < m.groups.size(); ++g)
      for (OpKind k : m.groups[g].members)
        if (group_of_[static_cast<int>(k)] < 0) group_of_[static_cast<int>(k)] = static_cast<int>(g);
  }

  SimResult run()
  {
    const auto n = t_.instrs.size();
    vals_.assign(n, Value{});
    last_start_.assign(nl_ + 1, 0);
    SimResult r;
    r.instructions = n;
    busy_.assign(nl_ + 1, 0);
    if (m_.record_schedule) {
      r.start.assign(n, 0);
      r.finish.assign(n, 0);
      r.location = loc_;
    }
    std::int64_t barrier = 0, end = 0;
    int prev_stage = INT32_MIN;
    std::unordered_map<std::uint64_t, std::uint32_t> writer;
    for (std::size_t i = 0; i < n; ++i) {
      const auto &in = t_.instrs[i];
      const int stage = is_data_management(in.kind) ? -2 : loc_[i];
      if (!pipelined_ && stage != prev_stage) barrier = end;
      prev_stage = stage;
      if (is_compute(in.kind) && loc_[i] >= 0 && group_of_[static_cast<int>(in.kind)] < 0 && !stt_)
        throw SimulationError("instruction " + std::to_string(i) + " placed on a level without a group");

      std::vector<Operand> ops;
      for (int s = 0; s < in.nsrc; ++s) {
        Operand o;
        auto it = writer.find(in.src[s].address);
        o.producer = it == writer.end() ? -1 : static_cast<std::int64_t>(it->second);
        o.block = in.src[s].block();
        o.bits = in.src[s].size_bits;
        bool dup = false;
        for (const auto &p : ops) dup = dup || (o.producer >= 0 ? p.producer == o.producer : p.producer < 0 && p.block == o.block);
        if (!dup) ops.push_back(o);
      }

      std::int64_t st = 0, fin = 0;
      switch (in.kind) {
      case OpKind::MOVE: {
        int to = level_index(lv_, in.to_level);
        if (to < 0) throw SimulationError("MOVE to unknown level '" + in.to_level + "'");
        std::int64_t ready = std::max(barrier, operand_home_ready(ops[0]));
        st = ready;
        fin = fetch(ops[0], to, ready, true);
        break;
      }
      case OpKind::COPY: {
        int h = operand_home(ops[0]);
        st = std::max(barrier, operand_home_ready(ops[0]));
        fin = st + ceil_cycles(lv_[h].subarray_read_latency + lv_[h].subarray_write_latency);
        r.energy_pj.transfer += in.dest->size_bits * (lv_[h].read_energy_pj_per_bit + lv_[h].write_energy_pj_per_bit);
        produce(i, h, fin, in.dest->size_bits);
        break;
      }
      case OpKind::INVALIDATE: {
        st = std::max(barrier, operand_home_ready(ops[0]));
        fin = st;
        invalidate(ops[0], st);
        break;
      }
      default: {
        const int L = loc_[i];
        const int at = L < 0 ? 0 : L;  // the CPU works out of the top level
        const int slot = L < 0 ? nl_ : L;
        std::int64_t dep = 0, xfer = 0;
        for (auto &o : ops) {
          bool local = false;
          std::int64_t rd = operand_ready(o, at, local);
          (local ? dep : xfer) = std::max(local ? dep : xfer, rd);
        }
        auto &heap = units_[slot];
        std::pop_heap(heap.begin(), heap.end(), std::greater<>());
        std::int64_t unit = heap.back();
        std::int64_t base = std::max(barrier, last_start_[slot]);
        st = std::max({base, unit, dep, xfer});
        if (st > base) {
          std::int64_t &cause = st == dep ? r.stall_dependence : st == xfer ? r.stall_transfer : r.stall_unit;
          cause += st - base;
        }
        for (auto &o : ops) touch(o, at, st);
        std::int64_t occ = L < 0 ? cpu_occupancy(in, ops.size()) : occupancy(in, L);
        heap.back() = st + occ;
        std::push_heap(heap.begin(), heap.end(), std::greater<>());
        last_start_[slot] = st;
        fin = st + occ;
        busy_[slot] += occ;
        if (L < 0) {
          r.energy_pj.cpu += m_.cpu.cost(in.kind) * m_.cpu.energy_pj_per_cycle;
          for (const auto &o : ops) r.energy_pj.cpu += o.bits * lv_[0].read_energy_pj_per_bit;
          if (in.dest) r.energy_pj.cpu += in.dest->size_bits * lv_[0].write_energy_pj_per_bit;
        } else {
          r.energy_pj.compute += in.width_bits * (lv_[L].read_energy_pj_per_bit + lv_[L].write_energy_pj_per_bit);
        }
        if (in.dest) produce(i, at, fin, in.dest->size_bits);
        break;
      }
      }
      if (in.dest) writer[in.dest->address] = static_cast<std::uint32_t>(i);
      if (m_.record_schedule) {
        r.start[i] = st;
        r.finish[i] = fin;
      }
      end = std::max(end, fin);
    }
    r.makespan_cycles = end;
    // dirty results whose cells expired before the run ended were written back
    for (std::size_t i = 0; i < n; ++i) {
      auto &v = vals_[i];
      if (v.home < 0 || !v.dirty || v.home + 1 >= nl_) continue;
      if (v.home_written + ret_[v.home] <= end) {
        energy_transfer_ += v.bits * epb_[v.home][v.home + 1];
        ++writebacks_;
      }
    }
    r.energy_pj.transfer += energy_transfer_;
    r.energy_pj.static_ = static_energy_pj(lv_, end, m_.tech.clock_ghz);
    r.transfers = transfers_;
    r.refills = refills_;
    r.writebacks = writebacks_;
    for (const auto &l : lv_) r.level_names.push_back(l.name);
    r.level_names.push_back("CPU");
    r.busy_cycles = busy_;
    return r;
  }

private:
  struct Operand {
    std::int64_t producer = -1;
    std::uint64_t block = 0;
    std::uint32_t bits = 0;
  };
  struct Value {
    int home = -1;
    std::int64_t ready = 0;
    std::int64_t home_written = 0;
    bool dirty = false;
    std::uint32_t bits = 0;
    std::array<Copy, 4> copy{};
  };
  struct InputBlock {
    std::array<Copy, 4> copy{};
  };

  std::int64_t occupancy(const Instruction &in, int L) const
  {
    const auto &l = lv_[L];
    double carry = carry_cycles(in.kind, in.width_bits, m_.tech);
    double crit;
    if (stt_) {
      carry *= m_.tech.stt_carry_scale;
      crit = m_.tech.stt_critical_path_ps;
    } else {
      crit = m_.groups[group_of_[static_cast<int>(in.kind)]].critical_path_ps;
    }
    return ceil_cycles(carry + compute_cycles(crit, m_.tech) + l.subarray_read_latency + l.subarray_write_latency);
  }

  std::int64_t cpu_occupancy(const Instruction &in, std::size_t nops) const
  {
    double c = m_.cpu.cost(in.kind) + static_cast<double>(nops) * lv_[0].total_read_latency;
    if (in.dest) c += lv_[0].total_write_latency;
    return ceil_cycles(c);
  }

  void produce(std::size_t i, int level, std::int64_t at, std::uint32_t bits)
  {
    auto &v = vals_[i];
    v.home = level;
    v.ready = at;
    v.home_written = at;
    v.dirty = lv_[level].volatile_cells();
    v.bits = bits;
  }

  int operand_home(const Operand &o) const { return o.producer >= 0 ? vals_[o.producer].home : home_in_; }
  std::int64_t operand_home_ready(const Operand &o) const { return o.producer >= 0 ? vals_[o.producer].ready : 0; }

  Copy &copy_slot(const Operand &o, int level)
  {
    if (o.producer >= 0) return vals_[o.producer].copy[level];
    return inputs_[o.block].copy[level];
  }

  // Earliest time the operand can be read at `level`. Produced values are
  // streamed on completion; input blocks arrive just in time.
  std::int64_t operand_ready(const Operand &o, int level, bool &local)
  {
    int h = operand_home(o);
    local = h == level;
    if (local) return operand_home_ready(o);
    return fetch(o, level, operand_home_ready(o), false);
  }

  std::int64_t fetch(const Operand &o, int level, std::int64_t from, bool explicit_move)
  {
    int h = operand_home(o);
    if (h == level) return from;
    Copy &c = copy_slot(o, level);
    if (c.ready >= 0) return c.ready;
    std::uint32_t bits = o.producer >= 0 ? o.bits : kBlockBytes * 8;
    energy_transfer_ += bits * epb_[h][level];
    ++transfers_;
    c.ready = from + lat_[h][level];
    c.written = o.producer >= 0 || explicit_move ? c.ready : -1;  // inputs: stamped on first use
    return c.ready;
  }

  // The operand is read at `level` at time t; expired cells get refilled.
  void touch(const Operand &o, int level, std::int64_t t)
  {
    int h = operand_home(o);
    if (h == level) {
      if (o.producer < 0) return;
      auto &v = vals_[o.producer];
      if (t < v.home_written + ret_[level] || !lv_[level].volatile_cells()) return;
      // write back, then bring it back from the level below
      energy_transfer_ += v.bits * (epb_[level][level + 1] * (v.dirty ? 2 : 1));
      writebacks_ += v.dirty ? 1 : 0;
      ++refills_;
      v.dirty = false;
      v.home_written = t;
      return;
    }
    Copy &c = copy_slot(o, level);
    if (c.written < 0) {
      c.written = t;
      return;
    }
    if (!lv_[level].volatile_cells() || t < c.written + ret_[level]) return;
    std::uint32_t bits = o.producer >= 0 ? o.bits : kBlockBytes * 8;
    energy_transfer_ += bits * epb_[std::max(h, level + 1)][level];
    ++refills_;
    c.written = t;
  }

  void invalidate(const Operand &o, std::int64_t t)
  {
    if (o.producer >= 0) {
      auto &v = vals_[o.producer];
      for (auto &c : v.copy) c = Copy{};
      if (v.home >= 0 && lv_[v.home].volatile_cells() && v.home + 1 < nl_) {
        if (v.dirty) {
          energy_transfer_ += v.bits * epb_[v.home][v.home + 1];
          ++writebacks_;
        }
        v.ready = std::max(v.ready, t) + lat_[v.home][v.home + 1];
        v.home += 1;
        v.home_written = v.ready;
        v.dirty = lv_[v.home].volatile_cells();
      }
    } else {
      auto it = inputs_.find(o.block);
      if (it != inputs_.end()) it->second = InputBlock{};
    }
  }

  const Trace &t_;
  const MachineConfig &m_;
  bool pipelined_;
  bool stt_ = false;
  std::vector<MemoryLevel> lv_;
  std::vector<int> loc_;
  int nl_ = 0;
  int home_in_ = 0;
  std::vector<std::vector<std::int64_t>> lat_;
  std::vector<std::vector<double>> epb_;
  std::vector<std::int64_t> ret_;
  std::vector<std::vector<std::int64_t>> units_;
  std::vector<std::int64_t> last_start_;
  std::vector<std::int64_t> busy_;
  std::array<int, kNumKinds> group_of_{};
  std::vector<Value> vals_;
  std::unordered_map<std::uint64_t, InputBlock> inputs_;
  double energy_transfer_ = 0;
  std::uint64_t transfers_ = 0, refills_ = 0, writebacks_ = 0;
};

} // namespace detail

SimResult simulate_cpu(const Trace &t, const MachineConfig &m);

inline SimResult simulate(const Trace &t, const MachineConfig &m)
{
  if (m.mode == Mode::CPU) return simulate_cpu(t, m);
  return detail::InMemorySim(t, m, true).run();
}

inline SimResult simulate_nonpipelined(const Trace &t, const MachineConfig &m)
{
  if (m.mode == Mode::CPU) return simulate_cpu(t, m);
  return detail::InMemorySim(t, m, false).run();
}

// Serial core behind the cache hierarchy. Lines are filled on first touch
// and written back when their retention runs out.
inline SimResult simulate_cpu(const Trace &t, const MachineConfig &m)
{
  const auto &lv = m.levels;
  const int nl = static_cast<int>(lv.size());
  if (nl == 0) throw ConfigError("no memory levels");
  const double ghz = m.tech.clock_ghz;
  const int home = m.inputs_at();
  SimResult r;
  r.instructions = t.instrs.size();
  if (m.record_schedule) {
    r.start.assign(t.instrs.size(), 0);
    r.finish.assign(t.instrs.size(), 0);
    r.location.assign(t.instrs.size(), -1);
  }
  // per level: block -> state
  std::vector<std::unordered_map<std::uint64_t, BlockState>> res(nl);
  std::vector<std::int64_t> ret(nl);
  for (int l = 0; l < nl; ++l) ret[l] = cycles_of(lv[l].retention_s, ghz);
  double now = 0;
  double cpu_cycles = 0;

  auto valid_at = [&](int l, std::uint64_t b) -> BlockState * {
    if (l == nl - 1) return nullptr;
    auto it = res[l].find(b);
    if (it == res[l].end() || !it->second.valid) return nullptr;
    auto &s = it->second;
    if (lv[l].volatile_cells() && now >= s.last_write + static_cast<double>(ret[l])) {
      s.valid = false;
      if (s.dirty && l + 1 < nl) {
        r.energy_pj.transfer += transfer_cost(lv, l, l + 1, kBlockBytes * 8).energy_pj;
        ++r.writebacks;
        if (l + 1 < nl - 1) res[l + 1][b] = BlockState{b, l + 1, true, true, s.last_write + static_cast<double>(ret[l])};
      }
      return nullptr;
    }
    return &s;
  };
  // bring block b into the top level
  auto fill = [&](std::uint64_t b) {
    if (valid_at(0, b)) return;
    int src = nl - 1;
    for (int l = 1; l < nl - 1; ++l)
      if (valid_at(l, b)) {
        src = l;
        break;
      }
    auto c = transfer_cost(lv, src, 0, kBlockBytes * 8);
    now += std::ceil(c.latency);
    r.energy_pj.transfer += c.energy_pj;
    ++r.transfers;
    for (int l = 0; l < src; ++l) res[l][b] = BlockState{b, l, true, false, now};
  };

  // inputs placed above main memory start resident and clean
  if (home < nl - 1)
    for (const auto &in : t.instrs)
      for (int s = 0; s < in.nsrc; ++s)
        for (int l = home; l < nl - 1; ++l) res[l].emplace(in.src[s].block(), BlockState{in.src[s].block(), l, true, false, 0});

  for (std::size_t i = 0; i < t.instrs.size(); ++i) {
    const auto &in = t.instrs[i];
    double st = now;
    if (in.kind == OpKind::INVALIDATE) {
      for (int l = 0; l < nl - 1; ++l) {
        auto it = res[l].find(in.src[0].block());
        if (it == res[l].end() || !it->second.valid) continue;
        if (it->second.dirty) {
          r.energy_pj.transfer += transfer_cost(lv, l, nl - 1, kBlockBytes * 8).energy_pj;
          ++r.writebacks;
        }
        it->second.valid = false;
      }
    } else if (in.kind != OpKind::MOVE) {
      for (int s = 0; s < in.nsrc; ++s) {
        fill(in.src[s].block());
        now += lv[0].total_read_latency;
        r.energy_pj.transfer += in.src[s].size_bits * lv[0].read_energy_pj_per_bit;
      }
      double c = m.cpu.cost(in.kind);
      now += c;
      cpu_cycles += c;
      if (in.dest) {
        now += lv[0].total_write_latency;
        r.energy_pj.transfer += in.dest->size_bits * lv[0].write_energy_pj_per_bit;
        std::uint64_t b = in.dest->block();
        if (nl > 1) {
          auto &s = res[0][b];
          s = BlockState{b, 0, true, true, now};
        }
      }
    }
    if (m.record_schedule) {
      r.start[i] = static_cast<std::int64_t>(st);
      r.finish[i] = static_cast<std::int64_t>(now);
    }
  }
  // lines that expired dirty before the end were written back
  for (int l = 0; l < nl - 1; ++l)
    for (auto &[b, s] : res[l])
      if (s.valid && s.dirty && now >= s.last_write + static_cast<double>(ret[l])) {
        r.energy_pj.transfer += transfer_cost(lv, l, l + 1, kBlockBytes * 8).energy_pj;
        ++r.writebacks;
      }
  r.makespan_cycles = detail::ceil_cycles(now);
  r.energy_pj.cpu = cpu_cycles * m.cpu.energy_pj_per_cycle;
  r.energy_pj.static_ = static_energy_pj(lv, r.makespan_cycles, ghz);
  for (const auto &l : lv) r.level_names.push_back(l.name);
  r.level_names.push_back("CPU");
  r.busy_cycles.assign(nl + 1, 0);
  r.busy_cycles[nl] = r.makespan_cycles;
  return r;
}

} // namespace chime

#endif // CHIME_ENGINE_HPP
