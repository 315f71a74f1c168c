#pragma once

#include <cstdint>
#include <random>

#include "snvstark/lineshape.hpp"
#include "snvstark/spectrum.hpp"
#include "snvstark/stark_model.hpp"

namespace snvstark {

struct ScanConfig {
    double f_start_ghz = -1.0;
    double f_stop_ghz = 1.0;
    int n_bins = 200;
    double scan_rate_ghz_per_s = 0.8;
    double peak_count_rate = 2000.0;  // counts/s at line center
    double background_rate = 20.0;    // counts/s
    std::uint64_t rng_seed = 0;
    bool sample_counts = true;  // false: return expected counts, no Poisson

    double dwell_s() const;
    double scan_duration_s() const;
    void validate() const;
};

// Scalar Ornstein-Uhlenbeck field noise along the inter-electrode axis:
// stationary std f_rms, correlation time tau_c.
struct NoiseModel {
    double f_rms_mvm = 0.0;
    double tau_c_s = 0.05;

    void validate() const;
};

struct EmitterModel {
    StarkCoefficients coeffs;
    LineshapeParams line;  // zero-field lineshape; center is the detuning origin
    PeakShape shape = PeakShape::Lorentzian;
};

class OrnsteinUhlenbeck {
  public:
    OrnsteinUhlenbeck(const NoiseModel& model, std::mt19937_64& rng);

    // Advance by dt seconds and return the new field deviation in MV/m.
    double step(double dt_s, std::mt19937_64& rng);
    double current() const { return value_; }

  private:
    double f_rms_;
    double tau_c_;
    double value_;
};

// One PLE sweep: per-bin expected counts
//   dwell * (background_rate + peak_rate * profile(f_bin - line_shift))
// with the line shift stark_shift(f_dc + dF(t)) - stark_shift(f_dc) sampled
// from the OU process at each bin time. Deterministic for a given seed.
Spectrum simulate_ple_scan(const EmitterModel& emitter, double f_dc_mvm,
                           const ScanConfig& scan, const NoiseModel& noise,
                           std::mt19937_64& rng);

// Convenience overload seeding a fresh generator from scan.rng_seed.
Spectrum simulate_ple_scan(const EmitterModel& emitter, double f_dc_mvm,
                           const ScanConfig& scan, const NoiseModel& noise);

// Repeated scans sharing one continuous OU trajectory, so noise slower than
// the scan duration shows up as scan-to-scan center jitter.
ScanSeries simulate_scan_series(int n_scans, double inter_scan_gap_s,
                                const EmitterModel& emitter, double f_dc_mvm,
                                const ScanConfig& scan, const NoiseModel& noise);

struct TwoLevelParams {
    double t1_ns = 6.0;
    double t2_ns = 4.0;          // must satisfy 0 < t2 <= 2 t1
    double rabi_mhz = 200.0;
    double signal_purity = 1.0;  // in [0, 1]

    void validate() const;
};

struct G2Curve {
    std::vector<double> tau_ns;
    std::vector<double> ideal;     // P_e(tau) / P_e(inf), 0 at tau = 0
    std::vector<double> measured;  // 1 - purity^2 (1 - ideal)
};

// Resonantly driven two-level system from the ground state; fixed-step RK4
// with step <= step_scale * min(t2, 1/rabi)/50 (step_scale < 1 refines, used
// for convergence checks).
G2Curve simulate_g2(const TwoLevelParams& p, const std::vector<double>& tau_ns,
                    double step_scale = 1.0);

// Lifetime-limited linewidth 1/(2 pi T1) in MHz for T1 in ns.
double lifetime_limit_mhz(double t1_ns);

}  // namespace snvstark
