#include "ecotim/scenario.hpp"

#include "ecotim/config_json.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ecotim {

const std::vector<Scenario>& standard_scenarios() {
  auto make = [](std::string id, std::string name, double a, double b, double c,
                 double w, double d, double v_min, double v_bl, double v_max) {
    Scenario s;
    s.id = std::move(id);
    s.name = std::move(name);
    s.draft = {a, b, c, 0.70, w, d};
    s.width_eff_m = w;
    s.v_min_kmh = v_min;
    s.v_baseline_kmh = v_bl;
    s.v_max_kmh = v_max;
    return s;
  };
  static const std::vector<Scenario> scenarios = {
      make("S1", "mouldboard plough, 4 furrows", 652.0, 0.0, 5.1, 1.6, 20.0, 4.0, 8.0, 10.0),
      make("S2", "mouldboard plough, 6 furrows", 652.0, 0.0, 5.1, 2.4, 20.0, 4.0, 8.0, 10.0),
      make("S3", "mouldboard plough, 3 furrows", 652.0, 0.0, 5.1, 1.2, 20.0, 4.0, 10.0, 10.0),
      make("S4", "subsoiler", 226.0, 0.0, 1.8, 2.0, 40.0, 2.5, 6.0, 8.0),
      make("S5", "S-tine harrow", 328.0, 28.0, 0.0, 6.0, 5.0, 4.0, 12.0, 12.0),
      make("S6", "disc cultivator", 480.0, 12.0, 0.0, 4.0, 8.0, 4.0, 12.0, 12.0),
  };
  return scenarios;
}

const Scenario& scenario_by_id(const std::string& id) {
  for (const auto& s : standard_scenarios())
    if (s.id == id) return s;
  throw std::runtime_error("unknown scenario '" + id + "'");
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  nlohmann::json j;
  in >> j;
  return j.get<Scenario>();
}

std::vector<DynoPoint> load_dyno_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dyno table " + path);
  std::vector<DynoPoint> points;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_not_of("0123456789.,+-eE \t\r") != std::string::npos)
      continue; // header
    std::stringstream row(line);
    DynoPoint p;
    char sep = 0;
    if (row >> p.rpm >> sep >> p.power_pto_kw >> sep >> p.fuel_g_per_h)
      points.push_back(p);
  }
  if (points.empty())
    throw std::runtime_error("dyno table " + path + " holds no data rows");
  return points;
}

} // namespace ecotim
