#pragma once

namespace ecotim {

// Physical constants and unit conversions shared across modules.
inline constexpr double kGravity = 9.80665;        // m/s^2
inline constexpr double kDieselDensity = 840.0;    // g/L
inline constexpr double kDieselLhvJPerG = 42600.0; // lower heating value, J/g

// chemical energy content of one litre of diesel, J/L
inline constexpr double kDieselEnergyPerLitre = kDieselLhvJPerG * kDieselDensity;

inline constexpr double kMsToKmh = 3.6;
inline constexpr double kKmhToMs = 1.0 / 3.6;

// CAN accounting: worst-case 29-bit-identifier data frame size including
// stuffing, and the ISOBUS implement bus bitrate.
inline constexpr int kCanFrameBits = 134;
inline constexpr double kCanBitrate = 250000.0; // bit/s

} // namespace ecotim
