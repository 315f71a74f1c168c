#include "snvstark/lineshape.hpp"

#include <cmath>
#include <stdexcept>

namespace snvstark {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

void LineshapeParams::validate() const {
    if (!(gamma_l_mhz >= 0.0) || !(gamma_g_mhz >= 0.0))
        throw std::invalid_argument("lineshape: widths must be >= 0");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("lineshape: eta must be in [0, 1]");
    if (!(amplitude >= 0.0) || !(background >= 0.0))
        throw std::invalid_argument("lineshape: amplitude and background must be >= 0");
}

double lorentzian_peak(double x_ghz, double fwhm_mhz) {
    if (!(fwhm_mhz > 0.0))
        throw std::invalid_argument("lorentzian: FWHM must be > 0");
    const double hw = 0.5e-3 * fwhm_mhz;  // half width in GHz
    return hw * hw / (x_ghz * x_ghz + hw * hw);
}

double gaussian_peak(double x_ghz, double fwhm_mhz) {
    if (!(fwhm_mhz > 0.0))
        throw std::invalid_argument("gaussian: FWHM must be > 0");
    const double fwhm_ghz = 1e-3 * fwhm_mhz;
    return std::exp(-4.0 * kLn2 * x_ghz * x_ghz / (fwhm_ghz * fwhm_ghz));
}

double pseudo_voigt_peak(double x_ghz, double fwhm_l_mhz, double fwhm_g_mhz,
                         double eta) {
    if (eta >= 1.0) return lorentzian_peak(x_ghz, fwhm_l_mhz);
    if (eta <= 0.0) return gaussian_peak(x_ghz, fwhm_g_mhz);
    return eta * lorentzian_peak(x_ghz, fwhm_l_mhz) +
           (1.0 - eta) * gaussian_peak(x_ghz, fwhm_g_mhz);
}

double lorentzian(double x_ghz, const LineshapeParams& p) {
    return p.background +
           p.amplitude * lorentzian_peak(x_ghz - p.center_ghz, p.gamma_l_mhz);
}

double gaussian(double x_ghz, const LineshapeParams& p) {
    return p.background +
           p.amplitude * gaussian_peak(x_ghz - p.center_ghz, p.gamma_g_mhz);
}

double pseudo_voigt(double x_ghz, const LineshapeParams& p) {
    return p.background +
           p.amplitude * pseudo_voigt_peak(x_ghz - p.center_ghz, p.gamma_l_mhz,
                                           p.gamma_g_mhz, p.eta);
}

double evaluate_shape(PeakShape shape, double x_ghz, const LineshapeParams& p) {
    switch (shape) {
        case PeakShape::Lorentzian: return lorentzian(x_ghz, p);
        case PeakShape::Gaussian: return gaussian(x_ghz, p);
        case PeakShape::PseudoVoigt: return pseudo_voigt(x_ghz, p);
    }
    throw std::invalid_argument("unknown peak shape");
}

double voigt_width_whiting(double gamma_l_mhz, double gamma_g_mhz) {
    const double hl = 0.5 * gamma_l_mhz;
    return hl + std::sqrt(hl * hl + gamma_g_mhz * gamma_g_mhz);
}

double gaussian_fwhm_from_sigma(double sigma) {
    return 2.0 * std::sqrt(2.0 * kLn2) * sigma;
}

double gaussian_sigma_from_fwhm(double fwhm) {
    return fwhm / (2.0 * std::sqrt(2.0 * kLn2));
}

double expected_linewidth(double gamma_l_mhz, double f_rms_mvm,
                          const StarkCoefficients& coeffs, double f_dc_mvm) {
    // induced dipole in GHz/(MV/m); sigma_G in MHz
    const double sigma_g = std::abs(induced_dipole(coeffs, f_dc_mvm)) * f_rms_mvm * 1e3;
    const double hl = 0.5 * gamma_l_mhz;
    return hl + std::sqrt(hl * hl + 8.0 * kLn2 * sigma_g * sigma_g);
}

}  // namespace snvstark
