#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace ecotim {

struct TrackZone {
  int soil_id = 0;     // 1 = softest .. 5 = firmest
  double ci_kpa = 0.0; // zone cone index
};

struct TrackSample {
  double ci_kpa = 0.0;
  double grade = 0.0; // rise over run, signed
  double elevation_m = 0.0;
};

// 1 km test track: ten 100 m management zones holding five cone index levels
// (two zones each), and two disjoint raised-cosine hills. The firmest soils
// are assigned to the zones with the highest mean elevation, the softest to
// the valley. All geometry is derived from one seed; regeneration is
// bit identical.
class Track {
 public:
  static Track generate(std::uint64_t seed);
  // synthetic flat track with constant cone index, for oracle sweeps
  static Track uniform(double ci_kpa, double length_m = 1000.0);

  // samples by linear interpolation on the 1 m grid; x in [0, length]
  TrackSample sample(double x_m) const;

  double length_m() const { return length_; }
  std::uint64_t seed() const { return seed_; }
  const std::array<TrackZone, 10>& zones() const { return zones_; }
  const std::vector<double>& elevation_grid() const { return elevation_; }
  const std::vector<double>& grade_grid() const { return grade_; }
  const std::vector<double>& ci_grid() const { return ci_; }

 private:
  Track() = default;

  double length_ = 1000.0;
  std::uint64_t seed_ = 0;
  std::array<TrackZone, 10> zones_{};
  // node i sits at x = i metres; grade is the forward difference of elevation
  std::vector<double> elevation_, grade_, ci_;
};

} // namespace ecotim
