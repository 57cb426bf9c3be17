#ifndef MWDIFF_CONSTANTS_HPP
#define MWDIFF_CONSTANTS_HPP

#include <numbers>

namespace mwdiff::constants {

/// h, the Planck constant [J·s], exact by SI definition.
inline constexpr double planck = 6.62607015e-34;

/// hbar = h/2pi [J·s].
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);

/// Unified atomic mass unit [kg], CODATA 2018.
inline constexpr double atomic_mass_unit = 1.66053906660e-27;

inline constexpr double pi = std::numbers::pi;

} // namespace mwdiff::constants

#endif
