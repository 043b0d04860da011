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

// chime: trace generation, grouping, mapping and simulation sweeps.
//
// exit status: 0 ok, 1 usage, 2 config, 3 simulation

#include "chime/io.hpp"

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

namespace fs = std::filesystem;
using namespace chime;

namespace {

enum Exit { kOk = 0, kUsage = 1, kConfig = 2, kSim = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
};

void add_common(CLI::App *c, Common &o)
{
  c->add_option("--config", o.config, "hierarchy/technology config (JSON)");
  c->add_option("--out", o.out, "output file or directory");
  c->add_option("--seed", o.seed, "seed for address layout");
}

Setup setup_of(const Common &o) { return o.config.empty() ? Setup{} : load_setup(o.config); }

void emit(const std::string &out, const std::string &text)
{
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
}

KernelId kernel_arg(const std::string &s)
{
  auto k = kernel_from_name(s);
  if (!k) throw UsageError("unknown kernel '" + s + "'");
  return *k;
}

template <class T, class F>
std::vector<T> list_arg(const std::vector<std::string> &names, F parse, const char *what)
{
  std::vector<T> v;
  for (const auto &n : names) {
    auto x = parse(n);
    if (!x) throw UsageError(std::string("unknown ") + what + " '" + n + "'");
    v.push_back(*x);
  }
  return v;
}

std::vector<KernelSpec> specs_for(const std::vector<std::string> &kernels, std::uint64_t n, bool full,
                                  const Setup &s, std::uint64_t seed)
{
  std::vector<KernelSpec> v;
  if (kernels.empty() || (kernels.size() == 1 && kernels[0] == "all"))
    return suite(full, s.width_bits, seed);
  for (const auto &name : kernels) {
    KernelId k = kernel_arg(name);
    v.push_back({k, n ? n : (full ? full_size(k) : desk_size(k)), s.width_bits, seed});
  }
  return v;
}

Design design_for(const Setup &s, std::uint64_t seed)
{
  return derive_design(suite(s.full_sizes_for_grouping, s.width_bits, seed), s);
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"CHIME hierarchical in-memory computing simulator"};
  app.require_subcommand(1);
  Common common;

  auto *gen = app.add_subcommand("gen", "generate a kernel trace");
  std::string gen_kernel = "all";
  std::uint64_t gen_n = 0;
  bool gen_full = false;
  gen->add_option("--kernel", gen_kernel, "kernel name or 'all'");
  gen->add_option("--n", gen_n, "input size (default: desk scale)");
  gen->add_flag("--full-sizes", gen_full, "use the full evaluation sizes");
  add_common(gen, common);

  auto *grp = app.add_subcommand("group", "form compute groups from traces");
  std::string grp_traces;
  std::size_t grp_m = 0;
  grp->add_option("--traces", grp_traces, "directory of .trace/.json files (default: built-in suite)");
  grp->add_option("--m", grp_m, "number of groups (default: config num_groups)");
  add_common(grp, common);

  auto *map = app.add_subcommand("map", "map groups onto levels");
  std::string map_strategy = "all";
  map->add_option("--strategy", map_strategy, "units | throughput | rc | all");
  add_common(map, common);

  auto *sim = app.add_subcommand("sim", "simulate one trace or kernel");
  std::string sim_trace, sim_kernel = "mat_add";
  std::uint64_t sim_n = 0;
  std::vector<std::string> sim_modes{"CHIME"}, sim_strats{"rc"};
  sim->add_option("--trace", sim_trace, "trace file (.trace or .json)");
  sim->add_option("--kernel", sim_kernel, "kernel to generate when no trace is given");
  sim->add_option("--n", sim_n, "input size");
  sim->add_option("--mode", sim_modes, "CHIME | STT_CIM_L2 | STT_CIM_MEM | CPU");
  sim->add_option("--strategy", sim_strats, "units | throughput | rc");
  add_common(sim, common);

  auto *sweep = app.add_subcommand("sweep", "kernels x modes x strategies");
  std::vector<std::string> sw_kernels{"all"};
  std::vector<std::string> sw_modes{"CHIME", "STT_CIM_L2", "STT_CIM_MEM", "CPU"};
  std::vector<std::string> sw_strats{"units", "throughput", "rc"};
  bool sw_full = false, sw_traces = false;
  unsigned sw_threads = 0;
  sweep->add_option("--kernels", sw_kernels, "kernel names or 'all'");
  sweep->add_option("--modes", sw_modes, "modes to compare");
  sweep->add_option("--strategies", sw_strats, "mapping strategies");
  sweep->add_flag("--full-sizes", sw_full, "use the full evaluation sizes");
  sweep->add_flag("--write-traces", sw_traces, "also write every generated trace");
  sweep->add_option("--threads", sw_threads, "worker threads (0: all cores)");
  add_common(sweep, common);

  auto *rep = app.add_subcommand("report", "summarise a results CSV");
  std::string rep_results;
  rep->add_option("--results", rep_results, "results.csv from sweep")->required();
  add_common(rep, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Setup setup = setup_of(common);

    if (*gen) {
      auto specs = specs_for({gen_kernel}, gen_n, gen_full, setup, common.seed);
      if (specs.size() == 1 && gen_kernel != "all") {
        auto t = generate(specs[0], setup.levels.back().capacity_bytes);
        if (common.out.empty())
          std::cout << trace_to_text(t);
        else
          save_trace(common.out, t);
        return kOk;
      }
      fs::path dir = common.out.empty() ? fs::path("traces") : fs::path(common.out);
      fs::create_directories(dir);
      for (const auto &s : specs) {
        auto t = generate(s, setup.levels.back().capacity_bytes);
        save_trace((dir / (std::string(kernel_name(s.id)) + ".trace")).string(), t);
      }
      return kOk;
    }

    if (*grp) {
      std::size_t m = grp_m ? grp_m : setup.num_groups;
      std::vector<PairCount> pairs;
      std::vector<double> usage;
      std::vector<ComputeGroup> groups;
      if (grp_traces.empty()) {
        auto specs = suite(setup.full_sizes_for_grouping, setup.width_bits, common.seed);
        pairs = count_pairs(specs);
        groups = form_groups(pairs, m);
        usage = average_usage(groups, specs);
      } else {
        std::vector<fs::path> files;
        for (const auto &e : fs::directory_iterator(grp_traces))
          if (e.is_regular_file() && (e.path().extension() == ".trace" || e.path().extension() == ".json"))
            files.push_back(e.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw UsageError("no traces in " + grp_traces);
        std::vector<Trace> traces;
        for (const auto &f : files) traces.push_back(load_trace(f.string()));
        pairs = count_pairs(traces);
        groups = form_groups(pairs, m);
        usage.assign(groups.size(), 0.0);
        for (const auto &t : traces) {
          auto f = group_frequency(groups, t);
          for (std::size_t g = 0; g < groups.size(); ++g) usage[g] += f[g] / double(traces.size());
        }
      }
      json sorted = json::array();
      for (const auto &p : pairs) sorted.push_back({{"a", kind_name(p.a)}, {"b", kind_name(p.b)}, {"count", p.count}});
      json out = {{"m", m}, {"groups", groups_to_json(groups, usage)}, {"sorted_pairs", sorted}};
      emit(common.out, out.dump(2) + "\n");
      return kOk;
    }

    if (*map) {
      Design d = design_for(setup, common.seed);
      if (map_strategy != "all") {
        auto st = strategy_from_name(map_strategy);
        if (!st) throw UsageError("unknown strategy '" + map_strategy + "'");
        Assignment a = d.mapping.at(*st);
        d.mapping.clear();
        d.mapping[*st] = a;
      }
      emit(common.out, mapping_report(d, setup));
      return kOk;
    }

    if (*sim) {
      auto modes = list_arg<Mode>(sim_modes, mode_from_name, "mode");
      auto strats = list_arg<Strategy>(sim_strats, strategy_from_name, "strategy");
      Design d = design_for(setup, common.seed);
      Trace t;
      std::uint64_t n = 0;
      if (!sim_trace.empty()) {
        t = load_trace(sim_trace);
        auto bad = validate_trace(t);
        if (!bad.empty())
          throw SimulationError("invalid trace: instruction " + std::to_string(bad[0].id) + " " + bad[0].rule + ": " +
                                bad[0].detail);
      } else {
        auto spec = specs_for({sim_kernel}, sim_n, false, setup, common.seed).at(0);
        t = generate(spec, setup.levels.back().capacity_bytes);
        n = spec.n;
      }
      std::vector<Row> rows;
      for (Mode m : modes)
        for (Strategy st : strats) rows.push_back({t.name, n, m, st, simulate(t, machine(m, d, st, setup)), {}});
      emit(common.out, results_csv(rows));
      return kOk;
    }

    if (*sweep) {
      auto modes = list_arg<Mode>(sw_modes, mode_from_name, "mode");
      auto strats = list_arg<Strategy>(sw_strats, strategy_from_name, "strategy");
      Design d = design_for(setup, common.seed);
      d.specs = specs_for(sw_kernels, 0, sw_full, setup, common.seed);
      fs::path dir = common.out.empty() ? fs::path("results") : fs::path(common.out);
      fs::create_directories(dir);
      auto rows = run_grid(d, setup, modes, strats, sw_threads);
      write_file((dir / "results.csv").string(), results_csv(rows));
      write_file((dir / "summary.json").string(), summary_json(rows).dump(2) + "\n");
      write_file((dir / "groups.json").string(), groups_to_json(d.groups, d.usage).dump(2) + "\n");
      write_file((dir / "mapping.txt").string(), mapping_report(d, setup));
      write_file((dir / "config.json").string(), setup_to_json(setup).dump(2) + "\n");
      if (sw_traces) {
        fs::create_directories(dir / "traces");
        for (const auto &s : d.specs)
          save_trace((dir / "traces" / (std::string(kernel_name(s.id)) + ".trace")).string(),
                     generate(s, setup.levels.back().capacity_bytes));
      }
      std::size_t failed = 0;
      for (const auto &r : rows)
        if (!r.ok()) {
          ++failed;
          std::cerr << "chime: " << r.kernel << " " << mode_name(r.mode) << ": " << r.error << "\n";
        }
      std::cout << rows.size() << " rows written to " << (dir / "results.csv").string() << "\n";
      return failed ? kSim : kOk;
    }

    if (*rep) {
      auto rows = parse_results_csv(read_file(rep_results));
      emit(common.out, summary_json(rows).dump(2) + "\n");
      return kOk;
    }
  } catch (const UsageError &e) {
    std::cerr << "chime: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError &e) {
    std::cerr << "chime: config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception &e) {
    std::cerr << "chime: " << e.what() << "\n";
    return kSim;
  }
  return kUsage;
}
