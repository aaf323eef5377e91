#include "ecotim/config_json.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>

namespace ecotim {

using nlohmann::json;

void to_json(json& j, const DraftCoefficients& c) {
  j = {{"a", c.a},
       {"b", c.b},
       {"c", c.c},
       {"soil_factor", c.soil_factor},
       {"width_m", c.width_m},
       {"depth_cm", c.depth_cm}};
}

void from_json(const json& j, DraftCoefficients& c) {
  j.at("a").get_to(c.a);
  j.at("b").get_to(c.b);
  j.at("c").get_to(c.c);
  j.at("soil_factor").get_to(c.soil_factor);
  j.at("width_m").get_to(c.width_m);
  j.at("depth_cm").get_to(c.depth_cm);
}

void to_json(json& j, const Scenario& s) {
  j = {{"id", s.id},
       {"name", s.name},
       {"draft", s.draft},
       {"width_eff_m", s.width_eff_m},
       {"v_min_kmh", s.v_min_kmh},
       {"v_baseline_kmh", s.v_baseline_kmh},
       {"v_max_kmh", s.v_max_kmh}};
}

void from_json(const json& j, Scenario& s) {
  j.at("id").get_to(s.id);
  j.at("name").get_to(s.name);
  j.at("draft").get_to(s.draft);
  s.width_eff_m = j.value("width_eff_m", s.draft.width_m);
  j.at("v_min_kmh").get_to(s.v_min_kmh);
  j.at("v_baseline_kmh").get_to(s.v_baseline_kmh);
  j.at("v_max_kmh").get_to(s.v_max_kmh);
}

void to_json(json& j, const TyreConfig& t) {
  j = {{"section_width_m", t.section_width_m},
       {"overall_diameter_m", t.overall_diameter_m},
       {"deflection_ratio", t.deflection_ratio},
       {"k_mp", t.k_mp}};
}

void from_json(const json& j, TyreConfig& t) {
  j.at("section_width_m").get_to(t.section_width_m);
  j.at("overall_diameter_m").get_to(t.overall_diameter_m);
  j.at("deflection_ratio").get_to(t.deflection_ratio);
  j.at("k_mp").get_to(t.k_mp);
}

void to_json(json& j, const TransmissionParams& t) {
  j = {{"v_sync_kmh", t.v_sync_kmh},
       {"eta_spur", t.eta_spur},
       {"eta_planetary", t.eta_planetary},
       {"eta_variator", t.eta_variator},
       {"eta_final_drive", t.eta_final_drive},
       {"peak_eta", t.peak_eta},
       {"hydro_weight", t.hydro_weight},
       {"parasitic_zeta", t.parasitic_zeta}};
}

void from_json(const json& j, TransmissionParams& t) {
  j.at("v_sync_kmh").get_to(t.v_sync_kmh);
  j.at("eta_spur").get_to(t.eta_spur);
  j.at("eta_planetary").get_to(t.eta_planetary);
  j.at("eta_variator").get_to(t.eta_variator);
  j.at("eta_final_drive").get_to(t.eta_final_drive);
  j.at("peak_eta").get_to(t.peak_eta);
  j.at("hydro_weight").get_to(t.hydro_weight);
  j.at("parasitic_zeta").get_to(t.parasitic_zeta);
}

void to_json(json& j, const DynoPoint& p) {
  j = {{"rpm", p.rpm}, {"power_pto_kw", p.power_pto_kw}, {"fuel_g_per_h", p.fuel_g_per_h}};
}

void from_json(const json& j, DynoPoint& p) {
  j.at("rpm").get_to(p.rpm);
  j.at("power_pto_kw").get_to(p.power_pto_kw);
  j.at("fuel_g_per_h").get_to(p.fuel_g_per_h);
}

void to_json(json& j, const EnvelopeKnot& k) {
  j = {{"rpm", k.rpm}, {"power_kw", k.power_kw}};
}

void from_json(const json& j, EnvelopeKnot& k) {
  j.at("rpm").get_to(k.rpm);
  j.at("power_kw").get_to(k.power_kw);
}

void to_json(json& j, const TractorParams& t) {
  j = {{"mass_kg", t.mass_kg},
       {"front_weight_share", t.front_weight_share},
       {"front_tyre", t.front_tyre},
       {"rear_tyre", t.rear_tyre},
       {"dyno", t.dyno},
       {"eta_pto", t.eta_pto},
       {"n_idle", t.n_idle},
       {"n_torque_peak", t.n_torque_peak},
       {"n_rated", t.n_rated},
       {"envelope_pto", t.envelope_pto},
       {"transmission", t.transmission},
       {"p_rated_kw", t.p_rated_kw},
       {"tau_s", t.tau_s},
       {"delta_v_kmh", t.delta_v_kmh},
       {"s_max", t.s_max},
       {"rpm_step", t.rpm_step}};
}

void from_json(const json& j, TractorParams& t) {
  j.at("mass_kg").get_to(t.mass_kg);
  j.at("front_weight_share").get_to(t.front_weight_share);
  j.at("front_tyre").get_to(t.front_tyre);
  j.at("rear_tyre").get_to(t.rear_tyre);
  j.at("dyno").get_to(t.dyno);
  j.at("eta_pto").get_to(t.eta_pto);
  j.at("n_idle").get_to(t.n_idle);
  j.at("n_torque_peak").get_to(t.n_torque_peak);
  j.at("n_rated").get_to(t.n_rated);
  j.at("envelope_pto").get_to(t.envelope_pto);
  j.at("transmission").get_to(t.transmission);
  j.at("p_rated_kw").get_to(t.p_rated_kw);
  j.at("tau_s").get_to(t.tau_s);
  j.at("delta_v_kmh").get_to(t.delta_v_kmh);
  j.at("s_max").get_to(t.s_max);
  j.at("rpm_step").get_to(t.rpm_step);
}

void to_json(json& j, const OptimizerConfig& o) {
  j = {{"probe_kmh", o.probe_kmh},
       {"k_v", o.k_v},
       {"dv_max_kmh", o.dv_max_kmh},
       {"k_a", o.k_a},
       {"a_max_ms2", o.a_max_ms2},
       {"v_min_kmh", o.v_min_kmh},
       {"v_max_kmh", o.v_max_kmh},
       {"eta_floor", o.eta_floor},
       {"capability_timeout_ticks", o.capability_timeout_ticks},
       {"cycle_divisor", o.cycle_divisor}};
}

void from_json(const json& j, OptimizerConfig& o) {
  j.at("probe_kmh").get_to(o.probe_kmh);
  j.at("k_v").get_to(o.k_v);
  j.at("dv_max_kmh").get_to(o.dv_max_kmh);
  j.at("k_a").get_to(o.k_a);
  j.at("a_max_ms2").get_to(o.a_max_ms2);
  j.at("v_min_kmh").get_to(o.v_min_kmh);
  j.at("v_max_kmh").get_to(o.v_max_kmh);
  j.at("eta_floor").get_to(o.eta_floor);
  j.at("capability_timeout_ticks").get_to(o.capability_timeout_ticks);
  j.at("cycle_divisor").get_to(o.cycle_divisor);
}

void to_json(json& j, const SimConfig& s) {
  j = {{"dt_s", s.dt_s}, {"seed", s.seed}};
}

void from_json(const json& j, SimConfig& s) {
  j.at("dt_s").get_to(s.dt_s);
  j.at("seed").get_to(s.seed);
}

void to_json(json& j, const Manifest& m) {
  j = {{"mode", m.mode},
       {"v_set_kmh", m.v_set_kmh},
       {"sim", m.sim},
       {"scenario", m.scenario},
       {"tractor", m.tractor},
       {"optimizer", m.optimizer}};
}

void from_json(const json& j, Manifest& m) {
  j.at("mode").get_to(m.mode);
  j.at("v_set_kmh").get_to(m.v_set_kmh);
  j.at("sim").get_to(m.sim);
  j.at("scenario").get_to(m.scenario);
  j.at("tractor").get_to(m.tractor);
  j.at("optimizer").get_to(m.optimizer);
}

std::string manifest_to_string(const Manifest& m) {
  return json(m).dump(2) + "\n";
}

Manifest manifest_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path);
  json j;
  in >> j;
  return j.get<Manifest>();
}

} // namespace ecotim
