#pragma once

namespace snvstark {

// Polynomial coefficients of the transition-energy shift versus local field,
//   shift(F) = c1 F + c2 F^2 + c3 F^3 + c4 F^4
// with F in MV/m and the shift in GHz. This is the fit space; sign and
// factorial conventions of the physical response coefficients live only in
// the PhysicalStarkParams conversion below.
struct StarkCoefficients {
    double c1 = 0.0;  // GHz/(MV/m)
    double c2 = 0.0;  // GHz/(MV/m)^2
    double c3 = 0.0;  // GHz/(MV/m)^3
    double c4 = 0.0;  // GHz/(MV/m)^4
};

// Physical response parameters under the convention
//   shift(F) = -(dmu F + dalpha F^2 / 2 + dbeta F^3 / 6 + dgamma F^4 / 24)
// i.e. dmu = -c1 * kDebyePerGhzMvm, dalpha = -2 c2 * kVolA3PerGhzMvm2, etc.
// Values are signed so the coefficient round trip is exact; quoted magnitudes
// are up to the caller.
struct PhysicalStarkParams {
    double delta_mu = 0.0;     // Debye
    double delta_alpha = 0.0;  // A^3 (polarizability volume)
    double delta_beta = 0.0;   // A^3 / (MV/m)
    double delta_gamma = 0.0;  // A^3 / (MV/m)^2
};

// shift(F) in GHz; shift(0) == 0 exactly.
double stark_shift(const StarkCoefficients& c, double f_mvm);

// Local slope d(shift)/dF in GHz/(MV/m). This is the derivative form (not
// the secant shift/F); the first-order broadening model requires the slope.
double induced_dipole(const StarkCoefficients& c, double f_mvm);

PhysicalStarkParams coeffs_to_physical(const StarkCoefficients& c);
StarkCoefficients physical_to_coeffs(const PhysicalStarkParams& p);

// Lorentz local-field correction F = F_ext (eps + 2) / 3. Throws
// std::invalid_argument for eps < 1.
double lorentz_local_field(double f_ext_mvm, double epsilon);

// Default relative permittivity used for the diamond substrate.
inline constexpr double kDiamondEpsilon = 5.7;

}  // namespace snvstark
