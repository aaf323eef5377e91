#include "ecotim/report.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

namespace ecotim {

namespace {

struct File {
  std::FILE* f;
  explicit File(const std::string& path) : f(std::fopen(path.c_str(), "wb")) {
    if (!f) throw std::runtime_error("cannot write " + path);
  }
  ~File() { std::fclose(f); }
  File(const File&) = delete;
  File& operator=(const File&) = delete;
};

} // namespace

std::string mode_name(Mode m) {
  return m == Mode::ecotim ? "ecotim" : "baseline";
}

void write_trace_csv(const std::string& path, const RunResult& run) {
  File out(path);
  std::fputs(
      "t_s,x_m,v_ms,v_cmd_ms,a_cmd_ms2,draft_n,slip_front,slip_rear,"
      "eta_engine_rel,eta_transmission,eta_tractive,eta_tractor,"
      "deta_dv_per_ms,rpm,p_crank_kw,fuel_g_per_h,power_limited,"
      "e_thermal_j,e_transmission_j,e_rolling_j,e_slip_j,e_tillage_j,"
      "e_grade_j\n",
      out.f);
  for (const auto& r : run.steps) {
    std::fprintf(out.f,
                 "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,"
                 "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%d,%.10g,%.10g,"
                 "%.10g,%.10g,%.10g,%.10g\n",
                 r.t_s, r.x_m, r.v_ms, r.v_cmd_ms, r.a_cmd_ms2, r.draft_n,
                 r.slip_front, r.slip_rear, r.eta_engine_rel,
                 r.eta_transmission, r.eta_tractive, r.eta_tractor,
                 r.deta_dv_per_ms, r.rpm, r.p_crank_kw, r.fuel_g_per_h,
                 r.power_limited ? 1 : 0, r.e_thermal_j, r.e_transmission_j,
                 r.e_rolling_j, r.e_slip_j, r.e_tillage_j, r.e_grade_j);
  }
}

void write_summary_csv(const std::string& path, const RunSummary& s) {
  File out(path);
  std::fputs(
      "scenario,mode,v_set_kmh,aborted,distance_m,area_ha,time_s,"
      "time_min_per_ha,fuel_l,fuel_l_per_ha,thermal_l_per_ha,"
      "transmission_l_per_ha,rolling_l_per_ha,slip_l_per_ha,tillage_l_per_ha,"
      "closure_rel_err,v_mean_kmh,v_min_obs_kmh,v_max_obs_kmh,"
      "power_limited_ticks,max_fixed_point_iters,fault_hold_ticks\n",
      out.f);
  std::fprintf(out.f,
               "%s,%s,%.10g,%d,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,"
               "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%d,%d,%d\n",
               s.scenario_id.c_str(), mode_name(s.mode).c_str(), s.v_set_kmh,
               s.aborted ? 1 : 0, s.distance_m, s.area_ha, s.time_s,
               s.time_min_per_ha, s.fuel_l, s.fuel_l_per_ha, s.thermal_l_per_ha,
               s.transmission_l_per_ha, s.rolling_l_per_ha, s.slip_l_per_ha,
               s.tillage_l_per_ha, s.closure_rel_err, s.v_mean_kmh,
               s.v_min_obs_kmh, s.v_max_obs_kmh, s.power_limited_ticks,
               s.max_fixed_point_iters, s.fault_hold_ticks);
}

void write_manifest_json(const std::string& path, const Manifest& m) {
  File out(path);
  const std::string text = manifest_to_string(m);
  std::fwrite(text.data(), 1, text.size(), out.f);
}

void write_track_csv(const std::string& path, const Track& track) {
  File out(path);
  std::fputs("x_m,ci_kpa,elevation_m,grade\n", out.f);
  const auto& ci = track.ci_grid();
  const auto& el = track.elevation_grid();
  const auto& gr = track.grade_grid();
  for (std::size_t i = 0; i < el.size(); ++i)
    std::fprintf(out.f, "%zu,%.10g,%.10g,%.10g\n", i, ci[i], el[i], gr[i]);
}

} // namespace ecotim
