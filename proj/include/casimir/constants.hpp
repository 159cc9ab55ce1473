#pragma once

namespace casimir {

inline constexpr double kSpeedOfLight = 299792458.0;       // m/s
inline constexpr double kHbar = 1.054571817e-34;           // J s
inline constexpr double kBoltzmann = 1.380649e-23;         // J/K
inline constexpr double kPi = 3.141592653589793238462643;

}  // namespace casimir
