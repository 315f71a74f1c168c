#include "snvstark/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace snvstark {

double ScanConfig::dwell_s() const {
    return (f_stop_ghz - f_start_ghz) / n_bins / scan_rate_ghz_per_s;
}

double ScanConfig::scan_duration_s() const {
    return (f_stop_ghz - f_start_ghz) / scan_rate_ghz_per_s;
}

void ScanConfig::validate() const {
    if (!(f_stop_ghz > f_start_ghz))
        throw std::invalid_argument("scan: f_stop must exceed f_start");
    if (n_bins < 8) throw std::invalid_argument("scan: need at least 8 bins");
    if (!(scan_rate_ghz_per_s > 0.0))
        throw std::invalid_argument("scan: scan rate must be > 0");
    if (!(peak_count_rate >= 0.0) || !(background_rate >= 0.0))
        throw std::invalid_argument("scan: rates must be >= 0");
}

void NoiseModel::validate() const {
    if (!(f_rms_mvm >= 0.0)) throw std::invalid_argument("noise: f_rms must be >= 0");
    if (!(tau_c_s > 0.0)) throw std::invalid_argument("noise: tau_c must be > 0");
}

OrnsteinUhlenbeck::OrnsteinUhlenbeck(const NoiseModel& model, std::mt19937_64& rng)
    : f_rms_(model.f_rms_mvm), tau_c_(model.tau_c_s) {
    model.validate();
    // start in the stationary distribution
    std::normal_distribution<double> normal(0.0, 1.0);
    value_ = f_rms_ > 0.0 ? f_rms_ * normal(rng) : 0.0;
}

double OrnsteinUhlenbeck::step(double dt_s, std::mt19937_64& rng) {
    if (f_rms_ == 0.0) return value_;
    const double decay = std::exp(-dt_s / tau_c_);
    std::normal_distribution<double> normal(0.0, 1.0);
    value_ = value_ * decay + f_rms_ * std::sqrt(1.0 - decay * decay) * normal(rng);
    return value_;
}

namespace {

Spectrum run_scan(const EmitterModel& emitter, double f_dc, const ScanConfig& scan,
                  OrnsteinUhlenbeck& ou, std::mt19937_64& rng) {
    const double dwell = scan.dwell_s();
    const double shift0 = stark_shift(emitter.coeffs, f_dc);

    Spectrum out;
    out.dwell_s = dwell;
    out.frequency_ghz.resize(scan.n_bins);
    out.counts.resize(scan.n_bins);
    for (int i = 0; i < scan.n_bins; ++i) {
        const double f_bin =
            scan.f_start_ghz +
            (scan.f_stop_ghz - scan.f_start_ghz) * (i + 0.5) / scan.n_bins;
        out.frequency_ghz[i] = f_bin;
        const double df = ou.step(dwell, rng);
        const double line_center = emitter.line.center_ghz +
                                   stark_shift(emitter.coeffs, f_dc + df) - shift0;
        LineshapeParams p = emitter.line;
        p.center_ghz = line_center;
        p.amplitude = 1.0;
        p.background = 0.0;
        const double expected =
            dwell * (scan.background_rate +
                     scan.peak_count_rate * evaluate_shape(emitter.shape, f_bin, p));
        if (scan.sample_counts) {
            std::poisson_distribution<long> poisson(expected);
            out.counts[i] = static_cast<double>(poisson(rng));
        } else {
            out.counts[i] = expected;
        }
    }
    return out;
}

}  // namespace

Spectrum simulate_ple_scan(const EmitterModel& emitter, double f_dc_mvm,
                           const ScanConfig& scan, const NoiseModel& noise,
                           std::mt19937_64& rng) {
    scan.validate();
    emitter.line.validate();
    OrnsteinUhlenbeck ou(noise, rng);
    return run_scan(emitter, f_dc_mvm, scan, ou, rng);
}

Spectrum simulate_ple_scan(const EmitterModel& emitter, double f_dc_mvm,
                           const ScanConfig& scan, const NoiseModel& noise) {
    std::mt19937_64 rng(scan.rng_seed);
    return simulate_ple_scan(emitter, f_dc_mvm, scan, noise, rng);
}

ScanSeries simulate_scan_series(int n_scans, double inter_scan_gap_s,
                                const EmitterModel& emitter, double f_dc_mvm,
                                const ScanConfig& scan, const NoiseModel& noise) {
    if (n_scans < 2)
        throw std::invalid_argument("scan series: need at least 2 scans");
    if (!(inter_scan_gap_s >= 0.0))
        throw std::invalid_argument("scan series: gap must be >= 0");
    scan.validate();
    emitter.line.validate();

    std::mt19937_64 rng(scan.rng_seed);
    OrnsteinUhlenbeck ou(noise, rng);

    ScanSeries series;
    series.bias_field_mvm = f_dc_mvm;
    double t = 0.0;
    for (int s = 0; s < n_scans; ++s) {
        series.timestamps_s.push_back(t);
        series.scans.push_back(run_scan(emitter, f_dc_mvm, scan, ou, rng));
        ou.step(inter_scan_gap_s, rng);
        t += scan.scan_duration_s() + inter_scan_gap_s;
    }
    return series;
}

double lifetime_limit_mhz(double t1_ns) {
    if (!(t1_ns > 0.0)) throw std::invalid_argument("lifetime_limit: t1 must be > 0");
    return 1e3 / (2.0 * M_PI * t1_ns);
}

}  // namespace snvstark
