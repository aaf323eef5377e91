#include "ecotim/track.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ecotim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kZoneLen = 100.0;
constexpr double kBlendHalfWidth = 5.0; // cone index blends over 10 m bands
constexpr std::array<double, 5> kCiLevels{800.0, 925.0, 1050.0, 1175.0, 1300.0};

// uniform double in [lo, hi) built from the top 53 bits of the generator
// output; avoids std::uniform_real_distribution, whose stream is not pinned
// by the standard
double draw(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

struct Hill {
  double centre = 0.0, radius = 0.0, peak_grade = 0.0;
  double height() const { return 2.0 * peak_grade * radius / kPi; }
  double elevation(double x) const {
    const double d = x - centre;
    if (std::fabs(d) >= radius) return 0.0;
    return 0.5 * height() * (1.0 + std::cos(kPi * d / radius));
  }
};

} // namespace

Track Track::generate(std::uint64_t seed) {
  Track t;
  t.seed_ = seed;
  t.length_ = 1000.0;

  std::mt19937_64 rng(seed);
  Hill h1, h2;
  h1.centre = draw(rng, 215.0, 285.0);
  h1.radius = draw(rng, 140.0, 175.0);
  h1.peak_grade = draw(rng, 0.066, 0.075);
  h2.centre = draw(rng, 665.0, 745.0);
  h2.radius = draw(rng, 140.0, 175.0);
  h2.peak_grade = draw(rng, 0.066, 0.075);

  const int nodes = static_cast<int>(t.length_) + 1;
  t.elevation_.resize(nodes);
  for (int i = 0; i < nodes; ++i)
    t.elevation_[i] = h1.elevation(i) + h2.elevation(i);

  t.grade_.resize(nodes);
  for (int i = 0; i + 1 < nodes; ++i)
    t.grade_[i] = t.elevation_[i + 1] - t.elevation_[i]; // 1 m spacing
  t.grade_[nodes - 1] = t.grade_[nodes - 2];

  // rank zones by mean elevation; ties (flat zones) rank the ones farther
  // from the track centre higher, which leaves the softest soil in the
  // central valley between the hills
  std::array<double, 10> mean{};
  for (int z = 0; z < 10; ++z) {
    const int start = z * 100;
    mean[z] = std::accumulate(t.elevation_.begin() + start,
                              t.elevation_.begin() + start + 100, 0.0) / 100.0;
  }
  std::array<int, 10> order{};
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (mean[a] != mean[b]) return mean[a] > mean[b];
    const double da = std::fabs(a * kZoneLen + 50.0 - 500.0);
    const double db = std::fabs(b * kZoneLen + 50.0 - 500.0);
    if (da != db) return da > db;
    return a < b;
  });
  for (int rank = 0; rank < 10; ++rank) {
    const int level = 4 - rank / 2; // two highest-ranked zones get the firmest level
    t.zones_[order[rank]] = {level + 1, kCiLevels[level]};
  }

  // cone index on the grid: zone value with a raised-cosine blend across
  // each boundary band
  t.ci_.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double x = i;
    const int z = std::min(9, i / 100);
    double ci = t.zones_[z].ci_kpa;
    for (int b = 1; b <= 9; ++b) {
      const double edge = b * kZoneLen;
      if (x >= edge - kBlendHalfWidth && x <= edge + kBlendHalfWidth) {
        const double u = (x - (edge - kBlendHalfWidth)) / (2.0 * kBlendHalfWidth);
        const double a = t.zones_[b - 1].ci_kpa;
        const double c = t.zones_[b].ci_kpa;
        ci = a + (c - a) * 0.5 * (1.0 - std::cos(kPi * u));
        break;
      }
    }
    t.ci_[i] = ci;
  }
  return t;
}

Track Track::uniform(double ci_kpa, double length_m) {
  if (ci_kpa <= 0.0 || length_m <= 0.0)
    throw std::domain_error("track: cone index and length must be positive");
  Track t;
  t.length_ = length_m;
  const int nodes = static_cast<int>(std::ceil(length_m)) + 1;
  t.elevation_.assign(nodes, 0.0);
  t.grade_.assign(nodes, 0.0);
  t.ci_.assign(nodes, ci_kpa);
  for (auto& z : t.zones_) z = {3, ci_kpa};
  return t;
}

TrackSample Track::sample(double x_m) const {
  if (x_m < 0.0 || x_m > length_)
    throw std::domain_error("track: sample position outside the track");
  const auto last = static_cast<double>(elevation_.size() - 1);
  const double xe = std::min(x_m, last);
  const auto i = static_cast<std::size_t>(xe);
  if (i + 1 >= elevation_.size())
    return {ci_.back(), grade_.back(), elevation_.back()};
  const double f = xe - static_cast<double>(i);
  auto lerp = [f](double a, double b) { return a + f * (b - a); };
  return {lerp(ci_[i], ci_[i + 1]), lerp(grade_[i], grade_[i + 1]),
          lerp(elevation_[i], elevation_[i + 1])};
}

} // namespace ecotim
