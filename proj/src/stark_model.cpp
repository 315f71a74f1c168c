#include "snvstark/stark_model.hpp"

#include <stdexcept>

#include "snvstark/constants.hpp"

namespace snvstark {

double stark_shift(const StarkCoefficients& c, double f_mvm) {
    // Horner form without constant term
    return f_mvm * (c.c1 + f_mvm * (c.c2 + f_mvm * (c.c3 + f_mvm * c.c4)));
}

double induced_dipole(const StarkCoefficients& c, double f_mvm) {
    return c.c1 + f_mvm * (2.0 * c.c2 + f_mvm * (3.0 * c.c3 + f_mvm * 4.0 * c.c4));
}

PhysicalStarkParams coeffs_to_physical(const StarkCoefficients& c) {
    PhysicalStarkParams p;
    p.delta_mu = -c.c1 * kDebyePerGhzMvm;
    p.delta_alpha = -2.0 * c.c2 * kVolA3PerGhzMvm2;
    p.delta_beta = -6.0 * c.c3 * kVolA3PerGhzMvm2;
    p.delta_gamma = -24.0 * c.c4 * kVolA3PerGhzMvm2;
    return p;
}

StarkCoefficients physical_to_coeffs(const PhysicalStarkParams& p) {
    StarkCoefficients c;
    c.c1 = -p.delta_mu * kGhzMvmPerDebye;
    c.c2 = -p.delta_alpha / (2.0 * kVolA3PerGhzMvm2);
    c.c3 = -p.delta_beta / (6.0 * kVolA3PerGhzMvm2);
    c.c4 = -p.delta_gamma / (24.0 * kVolA3PerGhzMvm2);
    return c;
}

double lorentz_local_field(double f_ext_mvm, double epsilon) {
    if (epsilon < 1.0)
        throw std::invalid_argument("lorentz_local_field: epsilon must be >= 1");
    return f_ext_mvm * (epsilon + 2.0) / 3.0;
}

}  // namespace snvstark
