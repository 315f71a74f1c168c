#include "snvstark/toy_hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include "snvstark/constants.hpp"

namespace snvstark {

namespace {
constexpr double kDegeneracyTolGhz = 1e-3;  // 1 MHz

void check_level(const ToyHamiltonian& h, int level) {
    if (level < 0 || level >= h.dim())
        throw std::out_of_range("toy hamiltonian: level index out of range");
    if (h.dipole_debye.rows() != h.dim() || h.dipole_debye.cols() != h.dim())
        throw std::invalid_argument("toy hamiltonian: dipole matrix shape mismatch");
}
}  // namespace

bool ToyHamiltonian::is_centrosymmetric(double tol) const {
    const int n = dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const bool cross = (i < n_ground) != (j < n_ground);
            if (!cross && std::abs(dipole_debye(i, j)) > tol) return false;
        }
    }
    return true;
}

ToyHamiltonian ToyHamiltonian::make_default() {
    ToyHamiltonian h;
    h.energies_ghz = Eigen::Vector4d(0.0, 850.0, 4.84e5, 4.84e5 + 3000.0);
    h.dipole_debye = Eigen::Matrix4d::Zero();
    h.dipole_debye(0, 2) = h.dipole_debye(2, 0) = 1.0;
    h.dipole_debye(0, 3) = h.dipole_debye(3, 0) = 0.7;
    h.dipole_debye(1, 2) = h.dipole_debye(2, 1) = 0.7;
    h.dipole_debye(1, 3) = h.dipole_debye(3, 1) = 1.2;
    h.n_ground = 2;
    return h;
}

double toy_first_order_shift(const ToyHamiltonian& h, int level) {
    check_level(h, level);
    return h.dipole_debye(level, level);
}

double toy_second_order_shift(const ToyHamiltonian& h, int level, double f_mvm) {
    check_level(h, level);
    const double k = kGhzMvmPerDebye;
    double sum = 0.0;
    for (int j = 0; j < h.dim(); ++j) {
        if (j == level) continue;
        const double mu = h.dipole_debye(level, j);
        if (mu == 0.0) continue;
        const double de = h.energies_ghz(level) - h.energies_ghz(j);
        if (std::abs(de) < kDegeneracyTolGhz)
            throw std::runtime_error(
                "toy_second_order_shift: coupled levels are degenerate");
        sum += (mu * k) * (mu * k) / de;
    }
    return f_mvm * f_mvm * sum;
}

double toy_exact_shift(const ToyHamiltonian& h, int level, double f_mvm) {
    check_level(h, level);
    const int n = h.dim();
    Eigen::MatrixXd h0 = h.energies_ghz.asDiagonal();
    Eigen::MatrixXd hf = h0 - kGhzMvmPerDebye * f_mvm * h.dipole_debye;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> at_field(hf);
    // zero-field eigenbasis is the level basis itself
    Eigen::VectorXd ref = Eigen::VectorXd::Unit(n, level);

    int best = -1;
    double best_overlap = 0.0;
    for (int j = 0; j < n; ++j) {
        const double ov = std::abs(at_field.eigenvectors().col(j).dot(ref));
        if (ov > best_overlap) {
            best_overlap = ov;
            best = j;
        }
    }
    if (best_overlap < 0.5)
        throw std::runtime_error(
            "toy_exact_shift: ambiguous eigenstate tracking (overlap < 0.5)");
    return at_field.eigenvalues()(best) - h.energies_ghz(level);
}

}  // namespace snvstark
