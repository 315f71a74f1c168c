#pragma once

#include <optional>
#include <vector>

#include "snvstark/least_squares.hpp"
#include "snvstark/lineshape.hpp"
#include "snvstark/simulate.hpp"
#include "snvstark/spectrum.hpp"
#include "snvstark/stark_model.hpp"

namespace snvstark {

struct PeakFit {
    LineshapeParams params;
    FitResult fit;
    bool significant = false;  // false: no peak above 3 sigma of background

    double fwhm_mhz() const;      // shape-appropriate fitted FWHM
    double center_sigma_ghz() const;
    double fwhm_sigma_mhz() const;
};

// Moment-initialized peak fit. Poisson weights sigma_i = sqrt(max(counts, 1)).
PeakFit fit_peak(const Spectrum& spectrum, PeakShape shape);

struct StarkPoint {
    double field_mvm;
    double center_ghz;
    double sigma_ghz = 1e-3;
};

struct StarkFitReport {
    StarkCoefficients coeffs;
    StarkCoefficients sigmas;     // 1-sigma uncertainties per coefficient
    double offset_ghz = 0.0;      // free reference offset of the trajectory
    int order = 4;                // 2 or 4
    double higher_order_fraction = 0.0;  // max |c3 F^3 + c4 F^4| / |shift(F)|
    FitResult fit;
};

// Polynomial trajectory fit with a free additive offset; fields are scaled
// by 1/100 internally to condition the quartic design matrix.
StarkFitReport fit_stark_trajectory(const std::vector<StarkPoint>& points,
                                    int order);

struct LinewidthPoint {
    double field_mvm;
    double width_mhz;
    double sigma_mhz = 1.0;
};

struct NoiseInversionResult {
    double f_rms_mvm = 0.0;
    double gamma_l_mhz = 0.0;
    double f_rms_sigma = 0.0;
    double gamma_l_sigma = 0.0;
    FitResult fit;
};

// Two-parameter fit of the broadening model to width-vs-field data, with the
// Stark coefficients held fixed.
NoiseInversionResult fit_linewidth_vs_field(const std::vector<LinewidthPoint>& points,
                                            const StarkCoefficients& coeffs);

struct G2FitResult {
    TwoLevelParams params;
    TwoLevelParams sigmas;
    FitResult fit;
};

// Fit the measured g2 curve with the driven two-level model. The normalized
// curve is exactly 1 - e^{-s tau}(cos w tau + (s/w) sin w tau) with
// s = (1/t1 + 1/t2)/2 and w the generalized Rabi frequency, so it determines
// only two shape parameters: t1 is held fixed at init.t1_ns (e.g. from a
// lifetime measurement) and (t2, rabi, signal_purity) are fitted.
G2FitResult fit_g2(const std::vector<double>& tau_ns,
                   const std::vector<double>& g2,
                   const std::vector<double>& sigma,
                   const TwoLevelParams& init);

struct DiffusionReport {
    double mean_scan_fwhm_mhz = 0.0;   // mean per-scan Lorentzian FWHM
    double center_std_mhz = 0.0;       // std of per-scan centers
    double predicted_voigt_mhz = 0.0;  // Whiting width from the two above
    int n_scans_used = 0;
    int n_scans_failed = 0;
};

// Per-scan Lorentzian fits over a scan series; requires >= 10 usable scans.
DiffusionReport analyze_scan_series(const ScanSeries& series);

struct ScanTimePoint {
    double scan_time_s;
    double mean_fwhm_mhz;
    int n_scans;
};

// Mean fitted single-scan FWHM as a function of total scan time at a fixed
// frequency span. Each point averages n_scans independent scans.
std::vector<ScanTimePoint> linewidth_vs_scan_time(
    const EmitterModel& emitter, double f_dc_mvm, const NoiseModel& noise,
    const ScanConfig& base, const std::vector<double>& scan_times_s,
    int n_scans = 100);

}  // namespace snvstark
