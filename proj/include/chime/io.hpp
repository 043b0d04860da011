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

#ifndef CHIME_IO_HPP
#define CHIME_IO_HPP

#include "chime/experiment.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>

#include "json.hpp"

namespace chime {

using json = nlohmann::ordered_json;

inline constexpr int kResultsSchemaVersion = 1;

namespace detail {

inline std::string lower(std::string s)
{
  for (auto &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline double number_with_suffix(const std::string &text, const std::vector<std::pair<std::string, double>> &units,
                                 const char *what)
{
  std::string s = lower(text);
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  for (const auto &[suffix, scale] : units) {
    if (s.size() <= suffix.size() || s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
    std::string num = s.substr(0, s.size() - suffix.size());
    double v = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec == std::errc() && p == num.data() + num.size()) return v * scale;
  }
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && p == s.data() + s.size() && !s.empty()) return v;
  throw ConfigError(std::string("bad ") + what + " '" + text + "'");
}

} // namespace detail

// "32kB", "1MB", "8GB", "64B" or a plain byte count
inline std::uint64_t parse_size(const json &j)
{
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<std::uint64_t>();
  if (!j.is_string()) throw ConfigError("size must be a string or a byte count");
  double v = detail::number_with_suffix(j.get<std::string>(),
                                        {{"kib", 1024.0}, {"mib", 1048576.0}, {"gib", 1073741824.0},
                                         {"kb", 1024.0}, {"mb", 1048576.0}, {"gb", 1073741824.0}, {"b", 1.0}},
                                        "size");
  if (v < 0 || v != std::floor(v)) throw ConfigError("size must be a whole number of bytes");
  return static_cast<std::uint64_t>(v);
}

// "75us", "10ms", "2s", "never" or seconds
inline double parse_duration(const json &j)
{
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) throw ConfigError("duration must be a string or seconds");
  auto s = detail::lower(j.get<std::string>());
  if (s == "never" || s == "inf") return kNever;
  return detail::number_with_suffix(s, {{"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}}, "duration");
}

inline std::string format_duration(double s)
{
  if (!std::isfinite(s)) return "never";
  std::ostringstream os;
  if (s < 1e-3)
    os << s * 1e6 << "us";
  else if (s < 1)
    os << s * 1e3 << "ms";
  else
    os << s << "s";
  return os.str();
}

inline std::string format_size(std::uint64_t b)
{
  if (b && b % (1ull << 30) == 0) return std::to_string(b >> 30) + "GB";
  if (b && b % (1ull << 20) == 0) return std::to_string(b >> 20) + "MB";
  if (b && b % (1ull << 10) == 0) return std::to_string(b >> 10) + "kB";
  return std::to_string(b) + "B";
}

inline json level_to_json(const MemoryLevel &l)
{
  return {{"name", l.name},
          {"size", format_size(l.capacity_bytes)},
          {"block", format_size(l.block_bytes)},
          {"associativity", l.associativity},
          {"retention_time", format_duration(l.retention_s)},
          {"total_read_latency", l.total_read_latency},
          {"total_write_latency", l.total_write_latency},
          {"subarray_read_latency", l.subarray_read_latency},
          {"subarray_write_latency", l.subarray_write_latency},
          {"read_energy_per_bit", l.read_energy_pj_per_bit},
          {"write_energy_per_bit", l.write_energy_pj_per_bit},
          {"leakage_power", l.leakage_mw},
          {"subarray_rows", l.subarray_rows},
          {"subarray_cols", l.subarray_cols},
          {"max_active_subarrays", l.max_active_subarrays}};
}

inline MemoryLevel level_from_json(const json &j)
{
  if (!j.is_object()) throw ConfigError("level entry must be an object");
  if (!j.contains("name")) throw ConfigError("level entry without a name");
  MemoryLevel l;
  l.name = j.at("name").get<std::string>();
  for (const auto &d : default_levels())
    if (d.name == l.name) l = d;
  for (const auto &[k, v] : j.items()) {
    if (k == "name") continue;
    else if (k == "size") l.capacity_bytes = parse_size(v);
    else if (k == "block") l.block_bytes = static_cast<std::uint32_t>(parse_size(v));
    else if (k == "associativity") l.associativity = v.get<std::uint32_t>();
    else if (k == "retention_time") l.retention_s = parse_duration(v);
    else if (k == "total_read_latency") l.total_read_latency = v.get<double>();
    else if (k == "total_write_latency") l.total_write_latency = v.get<double>();
    else if (k == "subarray_read_latency") l.subarray_read_latency = v.get<double>();
    else if (k == "subarray_write_latency") l.subarray_write_latency = v.get<double>();
    else if (k == "read_energy_per_bit") l.read_energy_pj_per_bit = v.get<double>();
    else if (k == "write_energy_per_bit") l.write_energy_pj_per_bit = v.get<double>();
    else if (k == "leakage_power") l.leakage_mw = v.get<double>();
    else if (k == "subarray_rows") l.subarray_rows = v.get<std::uint32_t>();
    else if (k == "subarray_cols") l.subarray_cols = v.get<std::uint32_t>();
    else if (k == "max_active_subarrays") l.max_active_subarrays = v.get<std::uint64_t>();
    else throw ConfigError("level " + l.name + ": unknown key '" + k + "'");
  }
  return l;
}

inline json tech_to_json(const TechParams &t)
{
  return {{"clock_ghz", t.clock_ghz},
          {"p_add", t.p_add},
          {"p_sub", t.p_sub},
          {"p_mult", t.p_mult},
          {"mult_input_bits", t.mult_input_bits},
          {"stt_critical_path_ps", t.stt_critical_path_ps},
          {"stt_carry_scale", t.stt_carry_scale},
          {"stt_penalty_l1", t.stt_penalty_l1},
          {"stt_penalty_l2", t.stt_penalty_l2},
          {"stt_penalty_mem", t.stt_penalty_mem},
          {"stt_penalty_energy", t.stt_penalty_energy},
          {"lane_bits", t.lane_bits},
          {"retention_counter_bits", t.retention_counter_bits}};
}

inline TechParams tech_from_json(const json &j)
{
  TechParams t;
  for (const auto &[k, v] : j.items()) {
    if (k == "clock_ghz") t.clock_ghz = v.get<double>();
    else if (k == "p_add") t.p_add = v.get<double>();
    else if (k == "p_sub") t.p_sub = v.get<double>();
    else if (k == "p_mult") t.p_mult = v.get<double>();
    else if (k == "mult_input_bits") t.mult_input_bits = v.get<std::uint32_t>();
    else if (k == "stt_critical_path_ps") t.stt_critical_path_ps = v.get<double>();
    else if (k == "stt_carry_scale") t.stt_carry_scale = v.get<double>();
    else if (k == "stt_penalty_l1") t.stt_penalty_l1 = v.get<double>();
    else if (k == "stt_penalty_l2") t.stt_penalty_l2 = v.get<double>();
    else if (k == "stt_penalty_mem") t.stt_penalty_mem = v.get<double>();
    else if (k == "stt_penalty_energy") t.stt_penalty_energy = v.get<bool>();
    else if (k == "lane_bits") t.lane_bits = v.get<std::uint32_t>();
    else if (k == "retention_counter_bits") t.retention_counter_bits = v.get<unsigned>();
    else throw ConfigError("tech: unknown key '" + k + "'");
  }
  if (!(t.clock_ghz > 0)) throw ConfigError("tech: clock_ghz must be positive");
  if (t.p_add < 0 || t.p_sub < 0 || t.p_mult < 0) throw ConfigError("tech: negative carry delay");
  if (t.lane_bits == 0) throw ConfigError("tech: lane_bits must be positive");
  return t;
}

inline json cpu_to_json(const CpuParams &c)
{
  json costs = json::object();
  for (std::size_t i = 0; i < kNumKinds; ++i) costs[kKindNames[i]] = c.cost_cycles[i];
  return {{"energy_per_cycle", c.energy_pj_per_cycle}, {"cost_cycles", costs}};
}

inline CpuParams cpu_from_json(const json &j)
{
  CpuParams c;
  for (const auto &[k, v] : j.items()) {
    if (k == "energy_per_cycle") {
      c.energy_pj_per_cycle = v.get<double>();
    } else if (k == "cost_cycles") {
      for (const auto &[kind, cyc] : v.items()) {
        auto op = kind_from_name(kind);
        if (!op) throw ConfigError("cpu: unknown kind '" + kind + "'");
        c.cost_cycles[static_cast<int>(*op)] = cyc.get<double>();
      }
    } else {
      throw ConfigError("cpu: unknown key '" + k + "'");
    }
  }
  return c;
}

inline json setup_to_json(const Setup &s)
{
  json lv = json::array();
  for (const auto &l : s.levels) lv.push_back(level_to_json(l));
  return {{"levels", lv},
          {"tech", tech_to_json(s.tech)},
          {"cpu", cpu_to_json(s.cpu)},
          {"num_groups", s.num_groups},
          {"width_bits", s.width_bits}};
}

inline Setup setup_from_json(const json &j)
{
  Setup s;
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto &[k, v] : j.items()) {
      if (k == "levels") {
        s.levels.clear();
        for (const auto &e : v) s.levels.push_back(level_from_json(e));
      } else if (k == "tech") {
        s.tech = tech_from_json(v);
      } else if (k == "cpu") {
        s.cpu = cpu_from_json(v);
      } else if (k == "num_groups") {
        s.num_groups = v.get<std::size_t>();
      } else if (k == "width_bits") {
        s.width_bits = v.get<std::uint32_t>();
      } else if (k == "full_sizes_for_grouping") {
        s.full_sizes_for_grouping = v.get<bool>();
      } else if (k != "comment") {
        throw ConfigError("unknown key '" + k + "'");
      }
    }
  } catch (const json::exception &e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  check_levels(s.levels);
  if (s.num_groups == 0) throw ConfigError("num_groups must be positive");
  if (s.width_bits < 1 || s.width_bits > 32) throw ConfigError("width_bits must be in 1..32");
  return s;
}

inline std::string read_file(const std::string &path)
{
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline void write_file(const std::string &path, const std::string &data)
{
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << data;
  if (!f) throw std::runtime_error("write failed: " + path);
}

inline Setup load_setup(const std::string &path)
{
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception &e) {
    throw ConfigError(e.what());
  }
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::exception &e) {
    throw ConfigError(path + ": " + e.what());
  }
  return setup_from_json(j);
}

// Structured trace: same field names as the text form.
inline json trace_to_json(const Trace &t)
{
  json ins = json::array();
  for (const auto &in : t.instrs) {
    json o = {{"id", in.id}, {"kind", kind_name(in.kind)}, {"width", in.width_bits}};
    o["dest"] = in.dest ? json(detail::fmt_block(*in.dest)) : json(nullptr);
    if (in.nsrc > 0) o["src1"] = detail::fmt_block(in.src[0]);
    if (in.nsrc > 1) o["src2"] = detail::fmt_block(in.src[1]);
    if (!in.to_level.empty()) o["level"] = in.to_level;
    ins.push_back(std::move(o));
  }
  return {{"name", t.name}, {"instructions", ins}};
}

inline Trace trace_from_json(const json &j)
{
  std::vector<Instruction> ins;
  try {
    std::size_t n = 0;
    for (const auto &o : j.at("instructions")) {
      ++n;
      Instruction in;
      in.id = o.at("id").get<std::uint32_t>();
      auto k = kind_from_name(o.at("kind").get<std::string>());
      if (!k) throw std::runtime_error("instruction " + std::to_string(n) + ": unknown kind");
      in.kind = *k;
      in.width_bits = o.value("width", 32u);
      if (o.contains("dest") && !o["dest"].is_null()) in.dest = detail::parse_block(o["dest"].get<std::string>(), n);
      for (const char *key : {"src1", "src2"})
        if (o.contains(key)) in.add_src(detail::parse_block(o[key].get<std::string>(), n));
      in.to_level = o.value("level", std::string());
      ins.push_back(std::move(in));
    }
  } catch (const json::exception &e) {
    throw std::runtime_error(std::string("trace json: ") + e.what());
  }
  Trace t{j.value("name", std::string()), std::move(ins), {}};
  t.deps = dependence_edges(t.instrs);
  return t;
}

inline bool ends_with(const std::string &s, const std::string &suffix)
{
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline Trace load_trace(const std::string &path)
{
  auto text = read_file(path);
  if (ends_with(path, ".json")) return trace_from_json(json::parse(text));
  return trace_from_text(text);
}

inline void save_trace(const std::string &path, const Trace &t)
{
  write_file(path, ends_with(path, ".json") ? trace_to_json(t).dump(1) + "\n" : trace_to_text(t));
}

// Results CSV, schema v1. Energies in pJ, times in cycles.
inline const std::vector<std::string> &results_columns()
{
  static const std::vector<std::string> c = {
      "kernel",           "n",           "mode",         "strategy",        "makespan_cycles",
      "energy_total_pj",  "energy_compute_pj", "energy_static_pj", "energy_transfer_pj", "energy_cpu_pj",
      "stall_unit",       "stall_transfer",    "stall_dependence", "instructions",       "transfers",
      "refills",          "writebacks",        "status"};
  return c;
}

namespace detail {

inline std::string fixed(double v, int prec = 3)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

inline std::string csv_field(const std::string &s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c == '\n' ? ' ' : c;
  }
  return o + "\"";
}

inline std::vector<std::string> split_csv(const std::string &line)
{
  std::vector<std::string> out(1);
  bool q = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (q) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        q = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      q = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

} // namespace detail

inline std::string results_csv(const std::vector<Row> &rows)
{
  std::ostringstream os;
  os << "# chime results schema v" << kResultsSchemaVersion << '\n';
  const auto &cols = results_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto &r : rows) {
    const auto &x = r.result;
    const auto &e = x.energy_pj;
    os << r.kernel << ',' << r.n << ',' << mode_name(r.mode) << ',' << strategy_name(r.strategy) << ','
       << x.makespan_cycles << ',' << detail::fixed(e.total()) << ',' << detail::fixed(e.compute) << ','
       << detail::fixed(e.static_) << ',' << detail::fixed(e.transfer) << ',' << detail::fixed(e.cpu) << ','
       << x.stall_unit << ',' << x.stall_transfer << ',' << x.stall_dependence << ',' << x.instructions << ','
       << x.transfers << ',' << x.refills << ',' << x.writebacks << ','
       << (r.ok() ? std::string("ok") : detail::csv_field("error: " + r.error)) << '\n';
  }
  return os.str();
}

inline std::vector<Row> parse_results_csv(const std::string &text)
{
  std::istringstream is(text);
  std::string line;
  std::vector<Row> rows;
  std::vector<std::string> header;
  std::size_t ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    if (line.empty() || line[0] == '#') {
      if (line.rfind("# chime results schema v", 0) == 0 &&
          std::stoi(line.substr(24)) != kResultsSchemaVersion)
        throw std::runtime_error("unsupported results schema: " + line);
      continue;
    }
    auto f = detail::split_csv(line);
    if (header.empty()) {
      header = f;
      if (header != results_columns()) throw std::runtime_error("results header does not match schema v1");
      continue;
    }
    if (f.size() != header.size()) throw std::runtime_error("line " + std::to_string(ln) + ": wrong field count");
    auto mode = mode_from_name(f[2]);
    auto strat = strategy_from_name(f[3]);
    if (!mode || !strat) throw std::runtime_error("line " + std::to_string(ln) + ": bad mode or strategy");
    Row r;
    r.kernel = f[0];
    r.n = std::stoull(f[1]);
    r.mode = *mode;
    r.strategy = *strat;
    auto &x = r.result;
    x.makespan_cycles = std::stoll(f[4]);
    x.energy_pj.compute = std::stod(f[6]);
    x.energy_pj.static_ = std::stod(f[7]);
    x.energy_pj.transfer = std::stod(f[8]);
    x.energy_pj.cpu = std::stod(f[9]);
    x.stall_unit = std::stoll(f[10]);
    x.stall_transfer = std::stoll(f[11]);
    x.stall_dependence = std::stoll(f[12]);
    x.instructions = std::stoull(f[13]);
    x.transfers = std::stoull(f[14]);
    x.refills = std::stoull(f[15]);
    x.writebacks = std::stoull(f[16]);
    if (f[17] != "ok") r.error = f[17].rfind("error: ", 0) == 0 ? f[17].substr(7) : f[17];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline json groups_to_json(const std::vector<ComputeGroup> &groups, const std::vector<double> &usage)
{
  json out = json::array();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    json members = json::array(), pairs = json::array();
    for (OpKind k : groups[g].members) members.push_back(kind_name(k));
    for (const auto &p : groups[g].pairs)
      pairs.push_back({{"a", kind_name(p.a)}, {"b", kind_name(p.b)}, {"count", p.count}});
    json o = {{"name", groups[g].name},
              {"members", members},
              {"critical_path_ps", groups[g].critical_path_ps},
              {"area_overhead", groups[g].area_overhead},
              {"pairs", pairs}};
    if (g < usage.size()) o["average_usage"] = std::round(usage[g] * 1e6) / 1e6;
    out.push_back(std::move(o));
  }
  return out;
}

// One line per strategy, groups listed under their level.
inline std::string mapping_report(const Design &d, const Setup &s)
{
  std::ostringstream os;
  os << std::left << std::setw(12) << "strategy";
  for (const auto &l : s.levels) os << std::setw(14) << l.name;
  os << '\n';
  for (const auto &[st, a] : d.mapping) {
    os << std::setw(12) << strategy_name(st);
    for (std::size_t l = 0; l < s.levels.size(); ++l) {
      std::string cell = "-";
      for (std::size_t g = 0; g < a.level_of.size(); ++g)
        if (a.level_of[g] == static_cast<int>(l)) cell = d.groups[g].name;
      os << std::setw(14) << cell;
    }
    os << '\n';
  }
  return os.str();
}

inline json summary_json(const std::vector<Row> &rows)
{
  json runs = json::array();
  std::map<std::string, std::pair<double, int>> geo;
  for (const auto &c : compare(rows)) {
    std::string key = std::string(mode_name(c.mode)) + "/" + strategy_name(c.strategy);
    runs.push_back({{"kernel", c.kernel},
                    {"mode", mode_name(c.mode)},
                    {"strategy", strategy_name(c.strategy)},
                    {"speedup_vs_cpu", std::stod(detail::fixed(c.speedup, 6))},
                    {"energy_savings_vs_cpu", std::stod(detail::fixed(c.energy_savings, 6))},
                    {"energy_breakdown_pct",
                     {{"compute", std::stod(detail::fixed(c.pct_compute, 4))},
                      {"static", std::stod(detail::fixed(c.pct_static, 4))},
                      {"transfer", std::stod(detail::fixed(c.pct_transfer, 4))},
                      {"cpu", std::stod(detail::fixed(c.pct_cpu, 4))}}}});
    if (c.speedup > 0) {
      geo[key].first += std::log(c.speedup);
      geo[key].second += 1;
    }
  }
  json mean = json::object();
  for (const auto &[k, v] : geo) mean[k] = std::stod(detail::fixed(std::exp(v.first / v.second), 6));
  json failed = json::array();
  for (const auto &r : rows)
    if (!r.ok()) failed.push_back({{"kernel", r.kernel}, {"mode", mode_name(r.mode)}, {"error", r.error}});
  return {{"schema", kResultsSchemaVersion}, {"geomean_speedup_vs_cpu", mean}, {"runs", runs}, {"failed", failed}};
}

} // namespace chime

#endif // CHIME_IO_HPP
