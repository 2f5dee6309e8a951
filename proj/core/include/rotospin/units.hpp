#pragma once

namespace rotospin::units {

/// Speed of light in vacuum, cm/s (Gaussian CGS).
inline constexpr double kSpeedOfLight = 2.99792458e10;

}  // namespace rotospin::units
