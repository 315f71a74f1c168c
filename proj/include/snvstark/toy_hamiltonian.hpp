#pragma once

#include <Eigen/Dense>

namespace snvstark {

// Minimal level model demonstrating why linear Stark shifts vanish for an
// inversion-symmetric emitter: levels with definite parity have zero diagonal
// dipole matrix elements, so only cross-manifold couplings survive.
//
// Levels 0..n_ground-1 are the ground manifold (even parity), the rest the
// excited manifold (odd parity). Energies in GHz, dipole matrix in Debye.
struct ToyHamiltonian {
    Eigen::VectorXd energies_ghz;
    Eigen::MatrixXd dipole_debye;  // symmetric
    int n_ground = 2;

    int dim() const { return static_cast<int>(energies_ghz.size()); }

    // True when every diagonal and intra-manifold dipole element vanishes.
    bool is_centrosymmetric(double tol = 0.0) const;

    // Four-level defaults: 850 GHz ground splitting, 3000 GHz excited
    // splitting, 4.84e5 GHz optical gap, O(1 D) cross couplings.
    static ToyHamiltonian make_default();
};

// Diagonal dipole element <i|mu|i> in Debye; the first-order Stark slope is
// -<i|mu|i> per unit field. Throws std::out_of_range on a bad index.
double toy_first_order_shift(const ToyHamiltonian& h, int level);

// Second-order perturbative shift F^2 K^2 sum_{j!=i} |mu_ij|^2 / (E_i - E_j)
// in GHz, with K the Debye -> GHz/(MV/m) conversion. Throws on a coupled
// degenerate pair (tolerance 1 MHz).
double toy_second_order_shift(const ToyHamiltonian& h, int level, double f_mvm);

// Eigenvalue shift of the tracked level of H0 - mu K F relative to F = 0,
// tracked by eigenvector overlap with the zero-field eigenstate. Throws when
// the maximum overlap is below 0.5.
double toy_exact_shift(const ToyHamiltonian& h, int level, double f_mvm);

}  // namespace snvstark
