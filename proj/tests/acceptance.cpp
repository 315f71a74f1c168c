// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and seeded for reproducibility.
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "snvstark/field_map.hpp"
#include "snvstark/fit_models.hpp"
#include "snvstark/io.hpp"
#include "snvstark/constants.hpp"
#include "snvstark/toy_hamiltonian.hpp"

using namespace snvstark;

namespace {

const StarkCoefficients kRef{6.1e-4, -5.1e-5, -5.5e-8, -2.2e-10};
int g_failures = 0;

void report(int n, bool pass, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", n,
                what.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

void criterion_1_lifetime_limits() {
    const double l6 = lifetime_limit_mhz(6.0);
    const double l4 = lifetime_limit_mhz(4.0);
    const bool pass = std::abs(l6 - 26.5) <= 0.1 && std::abs(l4 - 39.8) <= 0.1;
    report(1, pass,
           fmt("lifetime limits %.3f / %.3f MHz vs 26.5 / 39.8 (tol 0.1)", l6,
               l4));
}

void criterion_2_dipole_conversion() {
    const PhysicalStarkParams phys = coeffs_to_physical(kRef);
    const double dmu = std::abs(phys.delta_mu);
    const bool pass = std::abs(dmu - 1.21e-4) / 1.21e-4 < 0.02;
    report(2, pass,
           fmt("|delta mu| = %.4e D vs 1.21e-4 D (tol 2%%)", dmu));
}

void criterion_3_whiting() {
    const double w = voigt_width_whiting(60.0, 124.0);
    const double el = expected_linewidth(60.0, 2.4, kRef, 150.0);
    const bool pass =
        std::abs(w - 157.6) <= 0.1 && el >= 140.0 && el <= 170.0;
    report(3, pass,
           fmt("whiting(60,124) = %.2f MHz; expected_linewidth@150 MV/m = "
               "%.1f MHz in [140,170]",
               w, el));
}

void criterion_4_zero_field() {
    const double el = expected_linewidth(49.0, 2.4, kRef, 0.0);
    const bool pass = el - 49.0 < 1.0 && el >= 49.0;
    report(4, pass,
           fmt("zero-bias broadening %.3f MHz above 49 (tol 1)", el - 49.0));
}

void criterion_5_stark_round_trip() {
    int pass_seeds = 0;
    const int n_seeds = 20;
    for (int seed = 0; seed < n_seeds; ++seed) {
        std::mt19937_64 rng(4000 + seed);
        std::vector<StarkPoint> pts;
        for (int i = 0; i <= 25; ++i) {
            const double f = -250.0 + 20.0 * i;
            const double truth = stark_shift(kRef, f);
            EmitterModel e;
            e.coeffs = kRef;
            e.line.center_ghz = truth;  // window tracks the shifted line
            e.line.gamma_l_mhz = 50.0;
            ScanConfig cfg;
            cfg.f_start_ghz = truth - 0.5;
            cfg.f_stop_ghz = truth + 0.5;
            cfg.n_bins = 200;
            cfg.peak_count_rate = 5000.0;
            cfg.background_rate = 20.0;
            const Spectrum s =
                simulate_ple_scan(e, 0.0, cfg, NoiseModel{0.0, 0.05}, rng);
            const PeakFit pf = fit_peak(s, PeakShape::Lorentzian);
            if (!pf.significant) continue;
            pts.push_back({f, pf.params.center_ghz, pf.center_sigma_ghz()});
        }
        if (pts.size() < 20) continue;
        const StarkFitReport rep = fit_stark_trajectory(pts, 4);
        const bool covered =
            std::abs(rep.coeffs.c1 - kRef.c1) < 3.0 * rep.sigmas.c1 &&
            std::abs(rep.coeffs.c2 - kRef.c2) < 3.0 * rep.sigmas.c2 &&
            std::abs(rep.coeffs.c3 - kRef.c3) < 3.0 * rep.sigmas.c3 &&
            std::abs(rep.coeffs.c4 - kRef.c4) < 3.0 * rep.sigmas.c4;
        if (covered) ++pass_seeds;
    }
    const bool pass = pass_seeds >= 18;
    report(5, pass,
           fmt("stark round trip 3-sigma coverage %d/%d seeds (need >= 18)",
               pass_seeds, n_seeds));
}

void criterion_6_higher_order_fraction() {
    std::vector<StarkPoint> pts;
    for (int i = 0; i <= 24; ++i) {
        const double f = -180.0 + 15.0 * i;
        pts.push_back({f, stark_shift(kRef, f), 1e-3});
    }
    const StarkFitReport rep = fit_stark_trajectory(pts, 4);
    const bool pass = rep.higher_order_fraction >= 0.15 &&
                      rep.higher_order_fraction <= 0.30;
    report(6, pass,
           fmt("higher-order fraction %.3f in [0.15, 0.30] over +/-180 MV/m",
               rep.higher_order_fraction));
}

void criterion_7_noise_inversion() {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> mult(1.0, 0.05);
    std::vector<double> f_rec, g_rec;
    for (int seed = 0; seed < 50; ++seed) {
        std::vector<LinewidthPoint> pts;
        for (double f = 0.0; f <= 250.0; f += 25.0) {
            const double w = expected_linewidth(60.0, 2.4, kRef, f);
            pts.push_back({f, w * mult(rng), 0.05 * w});
        }
        const NoiseInversionResult r = fit_linewidth_vs_field(pts, kRef);
        f_rec.push_back(r.f_rms_mvm);
        g_rec.push_back(r.gamma_l_mhz);
    }
    double mf = 0.0, mg = 0.0;
    for (size_t i = 0; i < f_rec.size(); ++i) {
        mf += f_rec[i];
        mg += g_rec[i];
    }
    mf /= f_rec.size();
    mg /= g_rec.size();
    double sf = 0.0, sg = 0.0;
    for (size_t i = 0; i < f_rec.size(); ++i) {
        sf += (f_rec[i] - mf) * (f_rec[i] - mf);
        sg += (g_rec[i] - mg) * (g_rec[i] - mg);
    }
    sf = std::sqrt(sf / (f_rec.size() - 1));
    sg = std::sqrt(sg / (g_rec.size() - 1));
    const bool pass = std::abs(mf - 2.4) < 0.2 && sf < 0.2 &&
                      std::abs(mg - 60.0) < 4.0 && sg < 4.0;
    report(7, pass,
           fmt("noise inversion F_rms %.3f +/- %.3f MV/m, gamma %.2f +/- %.2f "
               "MHz (need 2.4 +/- 0.2, 60 +/- 4)",
               mf, sf, mg, sg));
}

ToyHamiltonian random_centrosymmetric(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mu(-2.0, 2.0);
    std::uniform_real_distribution<double> split(200.0, 5000.0);
    ToyHamiltonian h = ToyHamiltonian::make_default();
    h.energies_ghz(1) = split(rng);
    h.energies_ghz(2) = 4.0e5 + split(rng);
    h.energies_ghz(3) = h.energies_ghz(2) + split(rng);
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j)
            h.dipole_debye(i, j) = h.dipole_debye(j, i) = mu(rng);
    return h;
}

void criterion_8_toy_symmetry() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> du(0.1, 1.5);
    bool pass = true;
    std::string detail = "100 centrosymmetric + broken toy models OK";
    for (int rep = 0; rep < 100 && pass; ++rep) {
        const ToyHamiltonian h = random_centrosymmetric(rng);
        for (int level = 0; level < 4 && pass; ++level) {
            if (toy_first_order_shift(h, level) != 0.0) {
                pass = false;
                detail = fmt("first-order shift nonzero at rep %d", rep);
                break;
            }
            const double plus = toy_exact_shift(h, level, 50.0);
            const double minus = toy_exact_shift(h, level, -50.0);
            if (std::abs(plus - minus) >
                1e-10 * std::max(1.0, std::abs(plus))) {
                pass = false;
                detail = fmt("exact shift not even at rep %d (%.3e)", rep,
                             std::abs(plus - minus));
            }
        }
        // symmetry-broken variant: the linear term equals the injected
        // diagonal dipole element (slope -d K)
        ToyHamiltonian broken = h;
        const double d = du(rng);
        broken.dipole_debye(0, 0) = d;
        const double step = 1e-3;
        const double slope = (toy_exact_shift(broken, 0, step) -
                              toy_exact_shift(broken, 0, -step)) /
                             (2.0 * step);
        const double expect = -d * kGhzMvmPerDebye;
        if (std::abs(slope - expect) > 1e-6 * std::abs(expect)) {
            pass = false;
            detail = fmt("broken slope %.8e vs %.8e at rep %d", slope, expect,
                         rep);
        }
    }
    report(8, pass, detail);
}

void criterion_9_fast_scan_dichotomy() {
    // f_rms is not pinned by the criterion; 1.0 MV/m with tau_c = 50 ms
    // reproduces the dichotomy at 20 GHz/s (at 2.4 MV/m the drift during the
    // ~2.5 ms line crossing already broadens the high-field scans)
    EmitterModel e;
    e.coeffs = kRef;
    e.line.gamma_l_mhz = 50.0;
    ScanConfig cfg;
    cfg.f_start_ghz = -0.5;
    cfg.f_stop_ghz = 0.5;
    cfg.n_bins = 125;
    cfg.scan_rate_ghz_per_s = 20.0;
    cfg.peak_count_rate = 1e5;
    cfg.background_rate = 200.0;
    const NoiseModel noise{1.0, 0.05};

    cfg.rng_seed = 901;
    const ScanSeries low = simulate_scan_series(200, 0.1, e, 0.0, cfg, noise);
    cfg.rng_seed = 902;
    const ScanSeries high = simulate_scan_series(200, 0.1, e, 250.0, cfg, noise);
    const DiffusionReport rl = analyze_scan_series(low);
    const DiffusionReport rh = analyze_scan_series(high);

    const double width_change =
        std::abs(rh.mean_scan_fwhm_mhz - rl.mean_scan_fwhm_mhz) /
        rl.mean_scan_fwhm_mhz;
    const double ratio = rh.center_std_mhz / std::max(rl.center_std_mhz, 1e-12);
    const bool pass = width_change < 0.10 && ratio >= 5.0;
    report(9, pass,
           fmt("fast scans: FWHM %.1f -> %.1f MHz (%.1f%% change, need < "
               "10%%), center std x%.1f (need >= 5)",
               rl.mean_scan_fwhm_mhz, rh.mean_scan_fwhm_mhz,
               100.0 * width_change, ratio));
}

void criterion_10_g2_round_trip() {
    TwoLevelParams truth;
    truth.t1_ns = 6.0;
    truth.t2_ns = 4.0;
    truth.rabi_mhz = 200.0;
    truth.signal_purity = std::sqrt(0.97);
    std::vector<double> tau;
    for (int i = 0; i <= 300; ++i) tau.push_back(0.15 * i);
    const G2Curve curve = simulate_g2(truth, tau);

    bool pass = curve.ideal.front() == 0.0 &&
                std::abs(curve.measured.front() - 0.03) < 1e-9;

    TwoLevelParams init;
    init.t1_ns = 6.0;  // held fixed by the fit
    init.t2_ns = 3.0;
    init.rabi_mhz = 230.0;
    init.signal_purity = 0.9;
    std::vector<double> sigma(tau.size(), 0.01);
    const G2FitResult clean = fit_g2(tau, curve.measured, sigma, init);
    const double t2_err = std::abs(clean.params.t2_ns - 4.0) / 4.0;
    const double rabi_err = std::abs(clean.params.rabi_mhz - 200.0) / 200.0;
    pass = pass && t2_err < 1e-4 && rabi_err < 1e-4;

    // counting noise: n coincidences per bin at g2 = 1
    const double n_ref = 2000.0;
    std::mt19937_64 rng(1717);
    int ok = 0;
    const int n_seeds = 10;
    for (int seed = 0; seed < n_seeds; ++seed) {
        std::vector<double> noisy(tau.size()), sig(tau.size());
        for (size_t i = 0; i < tau.size(); ++i) {
            std::poisson_distribution<long> pois(n_ref * curve.measured[i]);
            noisy[i] = pois(rng) / n_ref;
            sig[i] = std::sqrt(std::max(n_ref * curve.measured[i], 1.0)) / n_ref;
        }
        const G2FitResult f = fit_g2(tau, noisy, sig, init);
        if (std::abs(f.params.t2_ns - 4.0) <= 0.5) ++ok;
    }
    pass = pass && ok >= 9;
    report(10, pass,
           fmt("g2: clean t2/rabi rel err %.1e / %.1e, noisy t2 within 0.5 ns "
               "for %d/%d seeds",
               t2_err, rabi_err, ok, n_seeds));
}

void criterion_11_field_solver() {
    // parallel plates: uniform interior field V/d
    FieldProblem plates;
    const double d = 4.0, v = 100.0, height = 2.0;
    const int nx = 41, ny = 21;
    for (int i = 0; i < nx; ++i)
        plates.xs_um.push_back(-d / 2.0 + d * i / (nx - 1));
    for (int j = 0; j < ny; ++j) plates.ys_um.push_back(height * j / (ny - 1));
    plates.cell_epsilon.assign((nx - 1) * (ny - 1), 1.0);
    plates.electrodes.push_back({-d / 2.0, -d / 2.0, 0.0, height, -v / 2.0});
    plates.electrodes.push_back({d / 2.0, d / 2.0, 0.0, height, v / 2.0});
    const FieldMap pm = solve_problem(plates);
    const auto [pfx, pfy] = field_at(pm, 0.3, 1.0);
    bool pass = std::abs(std::abs(pfx) - v / d) / (v / d) < 0.005;

    // linearity and superposition
    ElectrodeGeometry geom;
    const FieldMap m1 = solve_potential(geom, 0.1);
    geom.applied_voltage_v = 400.0;
    const FieldMap m2 = solve_potential(geom, 0.1);
    double vref = 0.0;
    for (double val : m2.potential_v) vref = std::max(vref, std::abs(val));
    for (size_t k = 0; k < m1.potential_v.size(); ++k)
        if (std::abs(2.0 * m1.potential_v[k] - m2.potential_v[k]) >
            1e-10 * vref)
            pass = false;

    // grid halving stability plus the frozen golden value
    const double coarse = bias_to_local_field(ElectrodeGeometry{}, 200.0, 0.08);
    const double fine = bias_to_local_field(ElectrodeGeometry{}, 200.0, 0.04);
    const double drift = std::abs(coarse - fine) / fine;
    pass = pass && drift < 0.02 && std::abs(fine - 167.87) / 167.87 < 0.01;
    report(11, pass,
           fmt("field solver: plate err %.2e, grid drift %.2f%%, emitter "
               "field %.2f MV/m (golden 167.87)",
               std::abs(std::abs(pfx) - v / d) / (v / d), 100.0 * drift, fine));
}

void criterion_12_lm_engine() {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    bool pass = true;
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const double a = u(rng), b = u(rng), c = u(rng);
        const auto model = [a, b, c](double xi, const Eigen::VectorXd& p) {
            return p(0) * std::sin(a * xi + p(1)) +
                   p(2) * std::exp(b * xi * p(2) * 0.1) + c * xi;
        };
        std::vector<double> x, sigma;
        for (int i = 0; i < 15; ++i) {
            x.push_back(-1.5 + 0.2 * i);
            sigma.push_back(1.0);
        }
        Eigen::VectorXd p(3);
        p << 1.0 + 0.3 * u(rng), 0.4 * u(rng), 1.0 + 0.2 * u(rng);
        const Eigen::MatrixXd jf = numeric_jacobian(model, x, sigma, p);
        Eigen::MatrixXd jc(x.size(), 3);
        for (int k = 0; k < 3; ++k) {
            const double h = 1e-6 * (1.0 + std::abs(p(k)));
            Eigen::VectorXd pp = p, pm = p;
            pp(k) += h;
            pm(k) -= h;
            for (size_t i = 0; i < x.size(); ++i)
                jc(i, k) = (model(x[i], pp) - model(x[i], pm)) / (2.0 * h);
        }
        const double rel = (jf - jc).cwiseAbs().maxCoeff() /
                           jc.cwiseAbs().maxCoeff();
        worst = std::max(worst, rel);
        if (rel > 1e-5) pass = false;
    }

    // closed-form linear regression to 1e-12
    std::mt19937_64 rng2(5);
    std::normal_distribution<double> noise(0.0, 0.3);
    std::vector<double> x, y, s;
    for (int i = 0; i < 40; ++i) {
        x.push_back(0.25 * i);
        y.push_back(2.0 + 0.7 * x.back() + noise(rng2));
        s.push_back(1.0);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double a = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double b = (sy - a * sx) / n;
    const auto lin = [](double xi, const Eigen::VectorXd& p) {
        return p(0) * xi + p(1);
    };
    FitOptions tight;
    tight.chi2_rel_tol = 0.0;
    tight.step_tol = 0.0;
    tight.max_iterations = 60;
    tight.fd_rel_step = 1e-2;  // exact for a linear model
    const FitResult fit =
        least_squares_fit(lin, x, y, s, Eigen::Vector2d(0.0, 0.0), tight);
    const double lin_err =
        std::max(std::abs(fit.params(0) - a) / std::abs(a),
                 std::abs(fit.params(1) - b) / std::abs(b));
    pass = pass && lin_err < 1e-12;
    report(12, pass,
           fmt("LM engine: worst jacobian rel dev %.1e (tol 1e-5), linear "
               "closed-form rel err %.1e (tol 1e-12)",
               worst, lin_err));
}

}  // namespace

int main() {
    criterion_1_lifetime_limits();
    criterion_2_dipole_conversion();
    criterion_3_whiting();
    criterion_4_zero_field();
    criterion_5_stark_round_trip();
    criterion_6_higher_order_fraction();
    criterion_7_noise_inversion();
    criterion_8_toy_symmetry();
    criterion_9_fast_scan_dichotomy();
    criterion_10_g2_round_trip();
    criterion_11_field_solver();
    criterion_12_lm_engine();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 12 criteria passed\n");
    return 0;
}
