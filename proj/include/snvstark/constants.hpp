#pragma once

// Physical constants (CODATA) and the unit conversions used throughout.
// Internal working units: energy shifts in GHz, fields in MV/m, widths in
// MHz, dipoles in Debye, polarizability volumes in Angstrom^3.

namespace snvstark {

inline constexpr double kPlanckJs = 6.62607015e-34;    // J s
inline constexpr double kDebyeCm = 3.33564e-30;        // C m per Debye
inline constexpr double kFourPiEps0 = 1.112650e-10;    // F/m

// 1 GHz/(MV/m) expressed as a dipole moment:
//   1e9 Hz / 1e6 (V/m) * h / (1 D)  =  h * 1e3 / kDebyeCm  ~ 0.198645 D
inline constexpr double kDebyePerGhzMvm = kPlanckJs * 1e3 / kDebyeCm;
inline constexpr double kGhzMvmPerDebye = 1.0 / kDebyePerGhzMvm;

// 1 GHz/(MV/m)^2 expressed as a polarizability volume in A^3:
//   alpha_SI = h * 1e9 / (1e6)^2 [C m^2 / V], volume = alpha_SI / (4 pi eps0)
inline constexpr double kVolA3PerGhzMvm2 = kPlanckJs * 1e-3 / kFourPiEps0 * 1e30;

}  // namespace snvstark
