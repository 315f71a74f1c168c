#include "snvstark/fit_models.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace snvstark {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double safe_fwhm(double p) { return std::max(std::abs(p), 1e-6); }

// smooth bijections onto the open unit interval; hard clamps would zero the
// numeric gradient and let LM stall at the boundary
double eta_from_raw(double p) { return 0.5 + 0.5 * p / std::sqrt(1.0 + p * p); }

double raw_from_eta(double eta) {
    const double u = std::clamp(2.0 * eta - 1.0, -0.999, 0.999);
    return u / std::sqrt(1.0 - u * u);
}

double purity_from_raw(double p) { return std::abs(p) / std::sqrt(1.0 + p * p); }

double raw_from_purity(double purity) {
    // cap the start inside the interior: at purity -> 1 the map's gradient
    // vanishes and the fit could not move the parameter at all
    const double u = std::clamp(purity, 0.0, 0.99);
    return u / std::sqrt(1.0 - u * u);
}

double sample_mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = sample_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (v.size() - 1));
}

}  // namespace

double PeakFit::fwhm_mhz() const { return params.gamma_l_mhz; }

double PeakFit::center_sigma_ghz() const {
    return fit.covariance.size() > 0 ? std::sqrt(std::max(fit.covariance(0, 0), 0.0))
                                     : 0.0;
}

double PeakFit::fwhm_sigma_mhz() const {
    return fit.covariance.size() > 1 ? std::sqrt(std::max(fit.covariance(1, 1), 0.0))
                                     : 0.0;
}

PeakFit fit_peak(const Spectrum& spectrum, PeakShape shape) {
    const size_t n = spectrum.size();
    if (n < 8) throw std::invalid_argument("fit_peak: need at least 8 bins");

    // moment initialization
    std::vector<double> sorted = spectrum.counts;
    std::sort(sorted.begin(), sorted.end());
    const size_t n_low = std::max<size_t>(1, n / 10);
    double bg0 = 0.0;
    for (size_t i = 0; i < n_low; ++i) bg0 += sorted[i];
    bg0 /= n_low;
    const double peak = sorted.back();
    const double amp0 = peak - bg0;

    PeakFit out;
    out.significant = amp0 > 3.0 * std::sqrt(std::max(bg0, 1.0));
    if (!out.significant) {
        out.params.background = bg0;
        out.params.amplitude = std::max(amp0, 0.0);
        return out;
    }

    double wsum = 0.0, c0 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double w = std::max(spectrum.counts[i] - bg0, 0.0);
        wsum += w;
        c0 += w * spectrum.frequency_ghz[i];
    }
    c0 /= wsum;
    double var = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double w = std::max(spectrum.counts[i] - bg0, 0.0);
        var += w * (spectrum.frequency_ghz[i] - c0) * (spectrum.frequency_ghz[i] - c0);
    }
    var /= wsum;
    const double span_ghz = spectrum.frequency_ghz.back() - spectrum.frequency_ghz.front();
    double fwhm0 = 2.355 * std::sqrt(var) * 1e3;  // MHz
    fwhm0 = std::clamp(fwhm0, 2e3 * span_ghz / n, 1e3 * span_ghz);

    std::vector<double> sigma(n);
    for (size_t i = 0; i < n; ++i)
        sigma[i] = std::sqrt(std::max(spectrum.counts[i], 1.0));

    ModelFunction model;
    Eigen::VectorXd init;
    if (shape == PeakShape::PseudoVoigt) {
        init = Eigen::VectorXd(5);
        init << c0, fwhm0, raw_from_eta(0.5), amp0, bg0;
        model = [](double x, const Eigen::VectorXd& p) {
            LineshapeParams lp;
            lp.center_ghz = p(0);
            lp.gamma_l_mhz = lp.gamma_g_mhz = safe_fwhm(p(1));
            lp.eta = eta_from_raw(p(2));
            lp.amplitude = p(3);
            lp.background = p(4);
            return pseudo_voigt(x, lp);
        };
    } else {
        init = Eigen::VectorXd(4);
        init << c0, fwhm0, amp0, bg0;
        const bool lorentz = shape == PeakShape::Lorentzian;
        model = [lorentz](double x, const Eigen::VectorXd& p) {
            const double peak_val =
                lorentz ? lorentzian_peak(x - p(0), safe_fwhm(p(1)))
                        : gaussian_peak(x - p(0), safe_fwhm(p(1)));
            return p(3) + p(2) * peak_val;
        };
    }

    out.fit = least_squares_fit(model, spectrum.frequency_ghz, spectrum.counts,
                                sigma, init);
    // reweight with model-predicted variances and refit once: weighting by
    // observed counts biases amplitudes and widths low at small counts
    for (size_t i = 0; i < n; ++i)
        sigma[i] = std::sqrt(
            std::max(model(spectrum.frequency_ghz[i], out.fit.params), 1.0));
    out.fit = least_squares_fit(model, spectrum.frequency_ghz, spectrum.counts,
                                sigma, out.fit.params);
    const auto& p = out.fit.params;
    out.params.center_ghz = p(0);
    const double fwhm = safe_fwhm(p(1));
    out.params.gamma_l_mhz = fwhm;
    out.params.gamma_g_mhz = shape == PeakShape::Gaussian ? fwhm
                             : shape == PeakShape::PseudoVoigt ? fwhm
                                                               : 0.0;
    if (shape == PeakShape::Lorentzian) out.params.gamma_g_mhz = 0.0;
    if (shape == PeakShape::Gaussian) out.params.gamma_l_mhz = 0.0;
    int amp_idx;
    if (shape == PeakShape::PseudoVoigt) {
        out.params.eta = eta_from_raw(p(2));
        out.params.amplitude = std::max(p(3), 0.0);
        out.params.background = std::max(p(4), 0.0);
        amp_idx = 3;
    } else {
        out.params.eta = shape == PeakShape::Lorentzian ? 1.0 : 0.0;
        out.params.amplitude = std::max(p(2), 0.0);
        out.params.background = std::max(p(3), 0.0);
        amp_idx = 2;
    }

    // post-fit screen: demote spurious spikes the moment screen let through.
    // a real peak is resolved (wider than a bin) and exceeds 3 sigma of its
    // own fitted amplitude uncertainty
    const double bin_mhz = 1e3 * span_ghz / (n - 1);
    const double amp_sigma =
        std::sqrt(std::max(out.fit.covariance(amp_idx, amp_idx), 0.0));
    if (!(out.params.amplitude > 3.0 * amp_sigma) || fwhm < bin_mhz)
        out.significant = false;
    return out;
}

StarkFitReport fit_stark_trajectory(const std::vector<StarkPoint>& points,
                                    int order) {
    if (order != 2 && order != 4)
        throw std::invalid_argument("fit_stark_trajectory: order must be 2 or 4");
    if (static_cast<int>(points.size()) < order + 2)
        throw std::invalid_argument("fit_stark_trajectory: too few points");
    const double f0 = points.front().field_mvm;
    if (std::all_of(points.begin(), points.end(),
                    [f0](const StarkPoint& p) { return p.field_mvm == f0; }))
        throw std::runtime_error("fit_stark_trajectory: degenerate field values");

    constexpr double kFieldScale = 100.0;  // conditioning of the design matrix
    std::vector<double> x, y, s;
    for (const auto& p : points) {
        x.push_back(p.field_mvm / kFieldScale);
        y.push_back(p.center_ghz);
        s.push_back(p.sigma_ghz > 0.0 ? p.sigma_ghz : 1e-3);
    }

    const int np = order + 1;  // offset + c1..c_order
    const auto model = [np](double u, const Eigen::VectorXd& q) {
        double acc = 0.0;
        for (int k = np - 1; k >= 1; --k) acc = (acc + q(k)) * u;
        return q(0) + acc;
    };
    FitOptions opt;
    const FitResult fit =
        least_squares_fit(model, x, y, s, Eigen::VectorXd::Zero(np), opt);

    StarkFitReport report;
    report.order = order;
    report.fit = fit;
    report.offset_ghz = fit.params(0);
    const Eigen::VectorXd unc = fit.uncertainties();
    double* coeff[4] = {&report.coeffs.c1, &report.coeffs.c2, &report.coeffs.c3,
                        &report.coeffs.c4};
    double* sig[4] = {&report.sigmas.c1, &report.sigmas.c2, &report.sigmas.c3,
                      &report.sigmas.c4};
    double scale = kFieldScale;
    for (int k = 1; k < np; ++k) {
        *coeff[k - 1] = fit.params(k) / scale;
        *sig[k - 1] = unc(k) / scale;
        scale *= kFieldScale;
    }

    if (order == 4) {
        double max_shift = 0.0;
        for (const auto& p : points)
            max_shift = std::max(max_shift,
                                 std::abs(stark_shift(report.coeffs, p.field_mvm)));
        double frac = 0.0;
        for (const auto& p : points) {
            const double f = p.field_mvm;
            const double total = stark_shift(report.coeffs, f);
            if (std::abs(total) < 1e-3 * max_shift) continue;
            const double high =
                report.coeffs.c3 * f * f * f + report.coeffs.c4 * f * f * f * f;
            frac = std::max(frac, std::abs(high) / std::abs(total));
        }
        report.higher_order_fraction = frac;
    }
    return report;
}

NoiseInversionResult fit_linewidth_vs_field(const std::vector<LinewidthPoint>& points,
                                            const StarkCoefficients& coeffs) {
    if (points.size() < 4)
        throw std::invalid_argument("fit_linewidth_vs_field: need >= 4 points");
    double fmin = points.front().field_mvm, fmax = fmin;
    double wmin = points.front().width_mhz, wmax = wmin;
    double f_at_wmax = fmin;
    for (const auto& p : points) {
        fmin = std::min(fmin, p.field_mvm);
        fmax = std::max(fmax, p.field_mvm);
        wmin = std::min(wmin, p.width_mhz);
        if (p.width_mhz > wmax) {
            wmax = p.width_mhz;
            f_at_wmax = p.field_mvm;
        }
    }
    if (fmin == fmax)
        throw std::runtime_error("fit_linewidth_vs_field: degenerate field values");

    // invert the broadening relation at the widest point for the initial noise
    const double hl = 0.5 * wmin;
    const double sigma_g2 =
        std::max((wmax - hl) * (wmax - hl) - hl * hl, 0.0) / (8.0 * M_LN2);
    const double slope = std::abs(induced_dipole(coeffs, f_at_wmax)) * 1e3;
    const double f_rms0 = slope > 0.0 ? std::sqrt(sigma_g2) / slope : 1.0;

    std::vector<double> x, y, s;
    for (const auto& p : points) {
        x.push_back(p.field_mvm);
        y.push_back(p.width_mhz);
        s.push_back(p.sigma_mhz > 0.0 ? p.sigma_mhz : 1.0);
    }
    const auto model = [&coeffs](double f, const Eigen::VectorXd& p) {
        return expected_linewidth(std::abs(p(1)), std::abs(p(0)), coeffs, f);
    };
    Eigen::VectorXd init(2);
    init << std::max(f_rms0, 1e-3), wmin;
    const FitResult fit = least_squares_fit(model, x, y, s, init);

    NoiseInversionResult out;
    out.fit = fit;
    out.f_rms_mvm = std::abs(fit.params(0));
    out.gamma_l_mhz = std::abs(fit.params(1));
    const Eigen::VectorXd unc = fit.uncertainties();
    out.f_rms_sigma = unc(0);
    out.gamma_l_sigma = unc(1);
    return out;
}

G2FitResult fit_g2(const std::vector<double>& tau_ns,
                   const std::vector<double>& g2,
                   const std::vector<double>& sigma,
                   const TwoLevelParams& init) {
    if (tau_ns.size() != g2.size() || tau_ns.size() != sigma.size())
        throw std::invalid_argument("fit_g2: size mismatch");
    init.validate();

    const double t1_fixed = init.t1_ns;
    const auto constrain = [t1_fixed](const Eigen::VectorXd& p) {
        TwoLevelParams t;
        t.t1_ns = t1_fixed;
        t.t2_ns = std::clamp(std::abs(p(0)), 1e-3, 2.0 * t.t1_ns);
        t.rabi_mhz = std::abs(p(1));
        t.signal_purity = purity_from_raw(p(2));
        return t;
    };

    // the model is evaluated point-by-point; cache the full curve per
    // parameter vector since one integration covers the whole grid
    struct Cache {
        Eigen::VectorXd params;
        std::vector<double> values;
    };
    auto cache = std::make_shared<Cache>();
    const auto model = [tau_ns, constrain, cache](double x,
                                                  const Eigen::VectorXd& p) {
        if (cache->params.size() == 0 || cache->params != p) {
            const G2Curve curve = simulate_g2(constrain(p), tau_ns);
            cache->params = p;
            cache->values = curve.measured;
        }
        const auto it = std::lower_bound(tau_ns.begin(), tau_ns.end(), x - 1e-12);
        return cache->values[it - tau_ns.begin()];
    };

    Eigen::VectorXd p0(3);
    p0 << init.t2_ns, init.rabi_mhz, raw_from_purity(init.signal_purity);
    FitOptions opt;
    opt.fd_rel_step = 1e-6;
    const FitResult fit = least_squares_fit(model, tau_ns, g2, sigma, p0, opt);

    G2FitResult out;
    out.fit = fit;
    out.params = constrain(fit.params);
    const Eigen::VectorXd unc = fit.uncertainties();
    out.sigmas.t1_ns = 0.0;  // held fixed
    out.sigmas.t2_ns = unc(0);
    out.sigmas.rabi_mhz = unc(1);
    // chain rule through the purity reparameterization
    const double pr = fit.params(2);
    out.sigmas.signal_purity = unc(2) / std::pow(1.0 + pr * pr, 1.5);
    return out;
}

DiffusionReport analyze_scan_series(const ScanSeries& series) {
    DiffusionReport report;
    std::vector<double> widths, centers;
    for (const auto& scan : series.scans) {
        try {
            const PeakFit pf = fit_peak(scan, PeakShape::Lorentzian);
            const double span_mhz =
                (scan.frequency_ghz.back() - scan.frequency_ghz.front()) * 1e3;
            if (pf.significant && pf.fwhm_mhz() > 0.0 && pf.fwhm_mhz() < span_mhz &&
                pf.params.center_ghz > scan.frequency_ghz.front() &&
                pf.params.center_ghz < scan.frequency_ghz.back()) {
                widths.push_back(pf.fwhm_mhz());
                centers.push_back(pf.params.center_ghz);
            } else {
                ++report.n_scans_failed;
            }
        } catch (const std::exception&) {
            ++report.n_scans_failed;
        }
    }
    report.n_scans_used = static_cast<int>(widths.size());
    if (report.n_scans_used < 10)
        throw std::runtime_error("analyze_scan_series: fewer than 10 usable scans");

    report.mean_scan_fwhm_mhz = sample_mean(widths);
    report.center_std_mhz = sample_std(centers) * 1e3;
    report.predicted_voigt_mhz = voigt_width_whiting(
        report.mean_scan_fwhm_mhz, gaussian_fwhm_from_sigma(report.center_std_mhz));
    return report;
}

std::vector<ScanTimePoint> linewidth_vs_scan_time(
    const EmitterModel& emitter, double f_dc_mvm, const NoiseModel& noise,
    const ScanConfig& base, const std::vector<double>& scan_times_s,
    int n_scans) {
    std::vector<ScanTimePoint> out;
    const double span = base.f_stop_ghz - base.f_start_ghz;
    std::mt19937_64 rng(base.rng_seed);
    for (double t : scan_times_s) {
        if (!(t > 0.0))
            throw std::invalid_argument("linewidth_vs_scan_time: scan time <= 0");
        ScanConfig cfg = base;
        cfg.scan_rate_ghz_per_s = span / t;
        std::vector<double> widths;
        for (int s = 0; s < n_scans; ++s) {
            const Spectrum spec =
                simulate_ple_scan(emitter, f_dc_mvm, cfg, noise, rng);
            try {
                const PeakFit pf = fit_peak(spec, PeakShape::Lorentzian);
                if (pf.significant && pf.fwhm_mhz() < span * 1e3)
                    widths.push_back(pf.fwhm_mhz());
            } catch (const std::exception&) {
            }
        }
        if (widths.empty())
            throw std::runtime_error("linewidth_vs_scan_time: no usable fits");
        out.push_back({t, sample_mean(widths), static_cast<int>(widths.size())});
    }
    return out;
}

}  // namespace snvstark
