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

#ifndef CHIME_HIERARCHY_HPP
#define CHIME_HIERARCHY_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace chime {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kNever = std::numeric_limits<double>::infinity();

struct MemoryLevel {
  std::string name;
  std::uint64_t capacity_bytes = 0;
  std::uint32_t block_bytes = 64;
  std::uint32_t associativity = 1;
  double retention_s = kNever;  // infinity: never expires
  double total_read_latency = 1;
  double total_write_latency = 1;
  double subarray_read_latency = 1;
  double subarray_write_latency = 1;
  double read_energy_pj_per_bit = 0;
  double write_energy_pj_per_bit = 0;
  double leakage_mw = 0;
  std::uint32_t subarray_rows = 512;
  std::uint32_t subarray_cols = 512;
  std::uint64_t max_active_subarrays = 0;  // 0: no cap

  std::uint64_t subarrays() const
  {
    std::uint64_t bits = capacity_bytes * 8, per = std::uint64_t(subarray_rows) * subarray_cols;
    return per ? bits / per : 0;
  }
  std::uint64_t num_compute_units() const
  {
    std::uint64_t s = subarrays();
    return max_active_subarrays ? std::min(s, max_active_subarrays) : s;
  }
  bool volatile_cells() const { return std::isfinite(retention_s); }
};

// Default hierarchy at 2 GHz. L1 uses 64-row subarrays and main memory caps the
// number of concurrently computing subarrays.
inline std::vector<MemoryLevel> default_levels()
{
  MemoryLevel l1{"L1", 32ull << 10, 64, 4, 75e-6, 1, 2, 1, 2, 0.26, 3.30, 15.93, 64, 512, 0};
  MemoryLevel l2{"L2", 1ull << 20, 64, 8, 10e-3, 2, 4, 2, 4, 0.88, 6.13, 281.63, 512, 512, 0};
  MemoryLevel mem{"MEM", 8ull << 30, 64, 1, kNever, 154, 110, 4, 5, 25.59, 6.42, 808.07, 512, 512, 33};
  return {l1, l2, mem};
}

inline void check_levels(const std::vector<MemoryLevel> &lv)
{
  if (lv.empty()) throw ConfigError("hierarchy has no levels");
  for (std::size_t i = 0; i < lv.size(); ++i) {
    const auto &l = lv[i];
    auto fail = [&](const std::string &what) { throw ConfigError("level " + l.name + ": " + what); };
    if (l.name.empty()) throw ConfigError("level " + std::to_string(i) + " has no name");
    if (l.block_bytes != 64) fail("block size must be 64 bytes");
    if (l.capacity_bytes < l.block_bytes) fail("capacity smaller than one block");
    if (!(l.retention_s > 0)) fail("retention must be positive");
    for (double x : {l.total_read_latency, l.total_write_latency, l.subarray_read_latency, l.subarray_write_latency})
      if (!(x >= 0)) fail("negative latency");
    for (double x : {l.read_energy_pj_per_bit, l.write_energy_pj_per_bit, l.leakage_mw})
      if (!(x >= 0)) fail("negative energy");
    if (l.subarray_cols < 32 || l.subarray_rows == 0) fail("bad subarray geometry");
    if (l.num_compute_units() == 0) fail("no compute units");
    for (std::size_t j = 0; j < i; ++j)
      if (lv[j].name == l.name) fail("duplicate level name");
  }
  if (lv.back().volatile_cells()) throw ConfigError("lowest level must be non-volatile");
}

inline int level_index(const std::vector<MemoryLevel> &lv, const std::string &name)
{
  for (std::size_t i = 0; i < lv.size(); ++i)
    if (lv[i].name == name) return static_cast<int>(i);
  return -1;
}

// N-bit retention counter: ticks every retention / 2^N and expires once it
// has counted 2^N ticks since the last write.
class RetentionCounter {
public:
  RetentionCounter(double retention_s, unsigned bits = 2) : retention_(retention_s), bits_(bits) {}

  double tick_seconds() const { return retention_ / double(1u << bits_); }
  unsigned max_value() const { return (1u << bits_) - 1; }

  void write(double t) { last_write_ = t; }
  double last_write() const { return last_write_; }
  double expiry_time() const { return last_write_ + retention_; }
  bool expired(double t) const { return std::isfinite(retention_) && t >= expiry_time(); }
  unsigned value(double t) const
  {
    if (!std::isfinite(retention_)) return 0;
    double ticks = std::floor((t - last_write_) / tick_seconds());
    if (ticks < 0) return 0;
    return ticks > max_value() ? max_value() : static_cast<unsigned>(ticks);
  }

private:
  double retention_;
  unsigned bits_;
  double last_write_ = 0;
};

inline std::int64_t cycles_of(double seconds, double clock_ghz)
{
  if (!std::isfinite(seconds)) return std::numeric_limits<std::int64_t>::max();
  return std::llround(seconds * clock_ghz * 1e9);
}

enum class Access { Read, Write, Compute };

struct Cost {
  double latency = 0;
  double energy_pj = 0;

  Cost &operator+=(const Cost &o)
  {
    latency += o.latency;
    energy_pj += o.energy_pj;
    return *this;
  }
};

inline Cost access_cost(const MemoryLevel &l, Access a, std::uint64_t bits)
{
  const double b = static_cast<double>(bits);
  switch (a) {
  case Access::Read: return {l.total_read_latency, b * l.read_energy_pj_per_bit};
  case Access::Write: return {l.total_write_latency, b * l.write_energy_pj_per_bit};
  case Access::Compute:
    return {l.subarray_read_latency + l.subarray_write_latency,
            b * (l.read_energy_pj_per_bit + l.write_energy_pj_per_bit)};
  }
  return {};
}

// Moves walk through every intermediate level: read at the source of each
// hop, write at its destination.
inline Cost transfer_cost(const std::vector<MemoryLevel> &lv, int from, int to, std::uint64_t bits)
{
  Cost c;
  if (from == to) return c;
  int step = from < to ? 1 : -1;
  for (int i = from; i != to; i += step) {
    c += access_cost(lv[i], Access::Read, bits);
    c += access_cost(lv[i + step], Access::Write, bits);
  }
  return c;
}

struct BlockState {
  std::uint64_t block = 0;
  int level = 0;
  bool valid = true;
  bool dirty = false;
  double last_write = 0;  // seconds
};

struct WriteBack {
  std::uint64_t block;
  int from;
  int to;
  double at;
  double energy_pj;
};

// Expire every block whose retention ran out by `now`. Dirty blocks are
// written to the next lower level at their expiry instant; that copy may
// itself expire later within the same call.
inline std::vector<WriteBack> tick_counters(std::vector<BlockState> &blocks, const std::vector<MemoryLevel> &lv,
                                            double now)
{
  std::vector<WriteBack> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto &b = blocks[i];
    if (!b.valid) continue;
    const auto &l = lv[b.level];
    if (!l.volatile_cells() || now < b.last_write + l.retention_s) continue;
    double at = b.last_write + l.retention_s;
    b.valid = false;
    if (!b.dirty || b.level + 1 >= static_cast<int>(lv.size())) continue;
    int to = b.level + 1;
    std::uint64_t bits = std::uint64_t(l.block_bytes) * 8;
    out.push_back({b.block, b.level, to, at, transfer_cost(lv, b.level, to, bits).energy_pj});
    BlockState lower{b.block, to, true, true, at};
    bool merged = false;
    for (auto &o : blocks)
      if (&o != &blocks[i] && o.valid && o.block == lower.block && o.level == to) {
        o.dirty = true;
        o.last_write = at;
        merged = true;
      }
    if (!merged) blocks.push_back(lower);
  }
  return out;
}

} // namespace chime

#endif // CHIME_HIERARCHY_HPP
