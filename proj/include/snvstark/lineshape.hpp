#pragma once

#include "snvstark/stark_model.hpp"

namespace snvstark {

enum class PeakShape { Lorentzian, Gaussian, PseudoVoigt };

struct LineshapeParams {
    double center_ghz = 0.0;   // detuning of the peak center
    double gamma_l_mhz = 0.0;  // Lorentzian FWHM
    double gamma_g_mhz = 0.0;  // Gaussian FWHM
    double eta = 1.0;          // pseudo-Voigt mixing in [0,1]
    double amplitude = 1.0;    // counts above background at the center
    double background = 0.0;   // counts

    void validate() const;  // throws std::invalid_argument
};

// Unit-peak profiles, FWHM in MHz, detuning x relative to the center in GHz.
double lorentzian_peak(double x_ghz, double fwhm_mhz);
double gaussian_peak(double x_ghz, double fwhm_mhz);
double pseudo_voigt_peak(double x_ghz, double fwhm_l_mhz, double fwhm_g_mhz,
                         double eta);

// Profiles in counts: background + amplitude * unit peak. The pseudo-Voigt is
// the linear mix eta * Lorentzian(gamma_l) + (1 - eta) * Gaussian(gamma_g);
// the shared-FWHM fitting convention constrains gamma_l == gamma_g.
double lorentzian(double x_ghz, const LineshapeParams& p);
double gaussian(double x_ghz, const LineshapeParams& p);
double pseudo_voigt(double x_ghz, const LineshapeParams& p);

double evaluate_shape(PeakShape shape, double x_ghz, const LineshapeParams& p);

// Whiting approximation to the Voigt FWHM,
//   Gv = Gl/2 + sqrt((Gl/2)^2 + Gg^2).
double voigt_width_whiting(double gamma_l_mhz, double gamma_g_mhz);

// Gaussian FWHM <-> standard deviation, Gg = 2 sqrt(2 ln 2) sigma.
double gaussian_fwhm_from_sigma(double sigma);
double gaussian_sigma_from_fwhm(double fwhm);

// Field-noise broadening model: the r.m.s. field noise shifts the line by
// sigma_G = |induced_dipole(F_dc)| * F_rms, giving
//   G = Gl/2 + sqrt((Gl/2)^2 + 8 ln 2 (F_rms * dmu_ind)^2)   [MHz].
double expected_linewidth(double gamma_l_mhz, double f_rms_mvm,
                          const StarkCoefficients& coeffs, double f_dc_mvm);

}  // namespace snvstark
