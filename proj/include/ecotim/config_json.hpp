#pragma once

#include "ecotim/implement_ecu.hpp"
#include "ecotim/scenario.hpp"
#include "ecotim/sim.hpp"
#include "ecotim/tractor_ecu.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace ecotim {

// JSON (de)serialisation for every configuration type, used both for config
// files and for the run manifest. A manifest pins everything a run depends
// on, so replaying it reproduces the output byte for byte.
struct Manifest {
  std::string mode;         // "ecotim" or "baseline"
  double v_set_kmh = 0.0;   // baseline setpoint / ecotim start speed
  SimConfig sim;
  Scenario scenario;
  TractorParams tractor;
  OptimizerConfig optimizer;
};

void to_json(nlohmann::json& j, const DraftCoefficients& c);
void from_json(const nlohmann::json& j, DraftCoefficients& c);
void to_json(nlohmann::json& j, const Scenario& s);
void from_json(const nlohmann::json& j, Scenario& s);
void to_json(nlohmann::json& j, const TyreConfig& t);
void from_json(const nlohmann::json& j, TyreConfig& t);
void to_json(nlohmann::json& j, const TransmissionParams& t);
void from_json(const nlohmann::json& j, TransmissionParams& t);
void to_json(nlohmann::json& j, const DynoPoint& p);
void from_json(const nlohmann::json& j, DynoPoint& p);
void to_json(nlohmann::json& j, const EnvelopeKnot& k);
void from_json(const nlohmann::json& j, EnvelopeKnot& k);
void to_json(nlohmann::json& j, const TractorParams& t);
void from_json(const nlohmann::json& j, TractorParams& t);
void to_json(nlohmann::json& j, const OptimizerConfig& o);
void from_json(const nlohmann::json& j, OptimizerConfig& o);
void to_json(nlohmann::json& j, const SimConfig& s);
void from_json(const nlohmann::json& j, SimConfig& s);
void to_json(nlohmann::json& j, const Manifest& m);
void from_json(const nlohmann::json& j, Manifest& m);

std::string manifest_to_string(const Manifest& m);
Manifest manifest_from_file(const std::string& path);

} // namespace ecotim
