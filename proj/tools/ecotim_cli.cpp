// Command line front end: single runs, six-scenario comparisons and track
// export. Every run writes a trace CSV, a summary CSV and a manifest that
// replays the run byte for byte.

#include "ecotim/config_json.hpp"
#include "ecotim/report.hpp"
#include "ecotim/scenario.hpp"
#include "ecotim/sim.hpp"
#include "ecotim/track.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace ecotim;

namespace {

std::string default_out_dir() {
  if (const char* env = std::getenv("ECOTIM_OUT_DIR"); env && *env) return env;
  return "out";
}

Scenario resolve_scenario(const std::string& ref) {
  if (fs::exists(ref) && !fs::is_directory(ref)) return load_scenario_file(ref);
  return scenario_by_id(ref);
}

RunResult execute(const Manifest& m, const Track& track) {
  if (m.mode == "ecotim")
    return run_ecotim(m.scenario, track, m.tractor, m.optimizer, m.sim);
  if (m.mode == "baseline")
    return run_baseline(m.scenario, track, m.tractor, m.v_set_kmh, m.sim);
  throw std::runtime_error("unknown mode '" + m.mode + "'");
}

std::string write_run(const std::string& out_dir, const std::string& stem,
                      const Manifest& m, const RunResult& run) {
  fs::create_directories(out_dir);
  const std::string base = out_dir + "/" + stem;
  write_trace_csv(base + "_trace.csv", run);
  write_summary_csv(base + "_summary.csv", run.summary);
  write_manifest_json(base + "_manifest.json", m);
  return base;
}

void print_summary(const RunSummary& s) {
  std::printf("scenario %s  mode %s  v_set %.2f km/h\n", s.scenario_id.c_str(),
              mode_name(s.mode).c_str(), s.v_set_kmh);
  if (s.aborted) {
    std::printf("  run aborted: %s\n", s.abort_reason.c_str());
    return;
  }
  std::printf("  fuel   %8.3f L/ha   time %8.2f min/ha   mean speed %.2f km/h\n",
              s.fuel_l_per_ha, s.time_min_per_ha, s.v_mean_kmh);
  std::printf("  energy [L/ha]  thermal %.3f  transmission %.3f  rolling %.3f"
              "  slip %.3f  tillage %.3f  (closure %.2e)\n",
              s.thermal_l_per_ha, s.transmission_l_per_ha, s.rolling_l_per_ha,
              s.slip_l_per_ha, s.tillage_l_per_ha, s.closure_rel_err);
}

nlohmann::json summary_json(const RunSummary& s) {
  return {{"scenario", s.scenario_id},
          {"mode", mode_name(s.mode)},
          {"v_set_kmh", s.v_set_kmh},
          {"aborted", s.aborted},
          {"fuel_l_per_ha", s.fuel_l_per_ha},
          {"time_min_per_ha", s.time_min_per_ha},
          {"v_mean_kmh", s.v_mean_kmh},
          {"thermal_l_per_ha", s.thermal_l_per_ha},
          {"transmission_l_per_ha", s.transmission_l_per_ha},
          {"rolling_l_per_ha", s.rolling_l_per_ha},
          {"slip_l_per_ha", s.slip_l_per_ha},
          {"tillage_l_per_ha", s.tillage_l_per_ha},
          {"closure_rel_err", s.closure_rel_err}};
}

int cmd_run(const std::string& scenario_ref, const std::string& mode,
            double speed, std::uint64_t seed, const std::string& out_dir,
            const std::string& manifest_path, bool as_json) {
  Manifest m;
  if (!manifest_path.empty()) {
    m = manifest_from_file(manifest_path);
  } else {
    m.scenario = resolve_scenario(scenario_ref);
    m.mode = mode;
    m.v_set_kmh = speed > 0.0 ? speed : m.scenario.v_baseline_kmh;
    m.sim.seed = seed;
    m.tractor = TractorParams::standard();
    m.optimizer = OptimizerConfig{};
    m.optimizer.v_min_kmh = m.scenario.v_min_kmh;
    m.optimizer.v_max_kmh = m.scenario.v_max_kmh;
  }

  const Track track = Track::generate(m.sim.seed);
  const RunResult run = execute(m, track);

  std::string stem = m.scenario.id + "_" + m.mode;
  if (m.mode == "baseline") {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "_%.4g", m.v_set_kmh);
    stem += buf;
  }
  const std::string base = write_run(out_dir, stem, m, run);

  if (as_json)
    std::printf("%s\n", summary_json(run.summary).dump(2).c_str());
  else
    print_summary(run.summary);
  std::printf("wrote %s_{trace.csv,summary.csv,manifest.json}\n", base.c_str());
  return run.summary.aborted ? 1 : 0;
}

int cmd_compare(std::uint64_t seed, const std::string& out_dir, bool as_json) {
  const Track track = Track::generate(seed);
  const TractorParams tractor = TractorParams::standard();
  fs::create_directories(out_dir);

  struct Row {
    std::string id, name;
    double v_bl, fuel_base, fuel_eco, dfuel_pct, time_base, time_eco, dtime_pct;
  };
  std::vector<Row> rows;
  bool any_aborted = false;

  std::ofstream cmp(out_dir + "/compare_summary.csv");
  cmp << "scenario,name,v_baseline_kmh,fuel_base_l_per_ha,fuel_ecotim_l_per_ha,"
         "dfuel_pct,time_base_min_per_ha,time_ecotim_min_per_ha,dtime_pct\n";

  for (const auto& sc : standard_scenarios()) {
    Manifest m;
    m.scenario = sc;
    m.sim.seed = seed;
    m.tractor = tractor;
    m.optimizer = OptimizerConfig{};
    m.optimizer.v_min_kmh = sc.v_min_kmh;
    m.optimizer.v_max_kmh = sc.v_max_kmh;

    m.mode = "baseline";
    m.v_set_kmh = sc.v_baseline_kmh;
    const RunResult base = execute(m, track);
    write_run(out_dir, sc.id + "_baseline", m, base);

    m.mode = "ecotim";
    const RunResult eco = execute(m, track);
    write_run(out_dir, sc.id + "_ecotim", m, eco);

    any_aborted |= base.summary.aborted || eco.summary.aborted;

    // operating map: fuel/time over the whole operator speed window
    std::ofstream sweep(out_dir + "/" + sc.id + "_sweep.csv");
    sweep << "scenario,v_set_kmh,fuel_l_per_ha,time_min_per_ha,power_limited_ticks\n";
    for (int v = 4; v <= 12; ++v) {
      const RunResult r = run_baseline(sc, track, tractor, v, m.sim);
      char line[160];
      std::snprintf(line, sizeof(line), "%s,%d,%.10g,%.10g,%d\n", sc.id.c_str(),
                    v, r.summary.fuel_l_per_ha, r.summary.time_min_per_ha,
                    r.summary.power_limited_ticks);
      sweep << line;
    }

    Row row;
    row.id = sc.id;
    row.name = sc.name;
    row.v_bl = sc.v_baseline_kmh;
    row.fuel_base = base.summary.fuel_l_per_ha;
    row.fuel_eco = eco.summary.fuel_l_per_ha;
    row.dfuel_pct = (eco.summary.fuel_l_per_ha / base.summary.fuel_l_per_ha - 1.0) * 100.0;
    row.time_base = base.summary.time_min_per_ha;
    row.time_eco = eco.summary.time_min_per_ha;
    row.dtime_pct = (eco.summary.time_min_per_ha / base.summary.time_min_per_ha - 1.0) * 100.0;
    rows.push_back(row);

    char line[256];
    std::snprintf(line, sizeof(line), "%s,\"%s\",%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                  row.id.c_str(), row.name.c_str(), row.v_bl, row.fuel_base,
                  row.fuel_eco, row.dfuel_pct, row.time_base, row.time_eco,
                  row.dtime_pct);
    cmp << line;
  }

  if (as_json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows)
      j.push_back({{"scenario", r.id},
                   {"name", r.name},
                   {"v_baseline_kmh", r.v_bl},
                   {"fuel_base_l_per_ha", r.fuel_base},
                   {"fuel_ecotim_l_per_ha", r.fuel_eco},
                   {"dfuel_pct", r.dfuel_pct},
                   {"time_base_min_per_ha", r.time_base},
                   {"time_ecotim_min_per_ha", r.time_eco},
                   {"dtime_pct", r.dtime_pct}});
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("%-4s %-28s %6s %11s %11s %8s %11s %11s %8s\n", "id", "name",
                "v_bl", "fuel_base", "fuel_eco", "dfuel%", "time_base",
                "time_eco", "dtime%");
    for (const auto& r : rows)
      std::printf("%-4s %-28s %6.1f %11.3f %11.3f %+8.2f %11.2f %11.2f %+8.2f\n",
                  r.id.c_str(), r.name.c_str(), r.v_bl, r.fuel_base, r.fuel_eco,
                  r.dfuel_pct, r.time_base, r.time_eco, r.dtime_pct);
  }
  std::printf("results in %s\n", out_dir.c_str());
  return any_aborted ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuel-per-hectare co-simulation of a tractor and a speed-"
               "commanding implement"};
  app.require_subcommand(1);

  std::string scenario_ref = "S1", mode = "ecotim", out_dir = default_out_dir();
  std::string manifest_path;
  double speed = 0.0;
  std::uint64_t seed = 42;
  bool as_json = false;

  auto* run = app.add_subcommand("run", "simulate one scenario pass");
  run->add_option("scenario", scenario_ref, "scenario id (S1..S6) or JSON file");
  run->add_option("--mode", mode, "ecotim or baseline")
      ->check(CLI::IsMember({"ecotim", "baseline"}));
  run->add_option("--speed", speed, "baseline setpoint in km/h");
  run->add_option("--seed", seed, "track seed");
  run->add_option("--out-dir", out_dir, "output directory");
  run->add_option("--manifest", manifest_path, "replay a recorded manifest");
  run->add_flag("--json", as_json, "print the summary as JSON");

  auto* compare = app.add_subcommand(
      "compare", "run all six scenarios in both modes plus speed sweeps");
  bool all = false;
  compare->add_flag("--all", all, "accepted for compatibility; always runs all");
  compare->add_option("--seed", seed, "track seed");
  compare->add_option("--out-dir", out_dir, "output directory");
  compare->add_flag("--json", as_json, "print the comparison as JSON");

  auto* track_cmd = app.add_subcommand("track", "export the generated track");
  track_cmd->add_option("--seed", seed, "track seed");
  track_cmd->add_option("--out-dir", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(scenario_ref, mode, speed, seed, out_dir, manifest_path, as_json);
    if (compare->parsed()) return cmd_compare(seed, out_dir, as_json);
    if (track_cmd->parsed()) {
      const Track t = Track::generate(seed);
      fs::create_directories(out_dir);
      const std::string path = out_dir + "/track_" + std::to_string(seed) + ".csv";
      write_track_csv(path, t);
      std::printf("wrote %s\n", path.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
