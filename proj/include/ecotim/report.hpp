#pragma once

#include "ecotim/config_json.hpp"
#include "ecotim/sim.hpp"
#include "ecotim/track.hpp"

#include <string>

namespace ecotim {

// Deterministic text writers: numbers are formatted with a fixed printf
// recipe so equal runs produce byte-identical files.
void write_trace_csv(const std::string& path, const RunResult& run);
void write_summary_csv(const std::string& path, const RunSummary& s);
void write_manifest_json(const std::string& path, const Manifest& m);
void write_track_csv(const std::string& path, const Track& track);

std::string mode_name(Mode m);

} // namespace ecotim
