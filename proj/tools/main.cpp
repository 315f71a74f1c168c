// snvstark command-line tool: simulate datasets, run the inference
// pipelines, and batch-process emitter populations. All outputs are CSV with
// a JSON sidecar carrying the full configuration and tool version.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snvstark/constants.hpp"
#include "snvstark/field_map.hpp"
#include "snvstark/fit_models.hpp"
#include "snvstark/io.hpp"

namespace fs = std::filesystem;
using namespace snvstark;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Sweep {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    std::vector<double> values() const {
        std::vector<double> v;
        if (count == 1) {
            v.push_back(start);
            return v;
        }
        for (int i = 0; i < count; ++i)
            v.push_back(start + (stop - start) * i / (count - 1));
        return v;
    }
};

// "start:stop:count" or a single number
Sweep parse_sweep(const std::string& text) {
    Sweep s;
    const auto a = text.find(':');
    if (a == std::string::npos) {
        s.start = s.stop = std::stod(text);
        return s;
    }
    const auto b = text.find(':', a + 1);
    if (b == std::string::npos)
        throw CLI::ValidationError("sweep", "expected start:stop:count");
    s.start = std::stod(text.substr(0, a));
    s.stop = std::stod(text.substr(a + 1, b - a - 1));
    s.count = std::stoi(text.substr(b + 1));
    if (s.count < 1)
        throw CLI::ValidationError("sweep", "count must be >= 1");
    return s;
}

std::string default_outdir() {
    if (const char* env = std::getenv("SNVSTARK_OUTDIR")) return env;
    return ".";
}

std::string out_path(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

json sidecar_base(const std::string& command) {
    json j;
    j["tool"] = "snvstark";
    j["version"] = kVersion;
    j["command"] = command;
    return j;
}

json scan_config_json(const ScanConfig& cfg, const NoiseModel& noise) {
    json j;
    j["f_start_ghz"] = cfg.f_start_ghz;
    j["f_stop_ghz"] = cfg.f_stop_ghz;
    j["n_bins"] = cfg.n_bins;
    j["scan_rate_ghz_per_s"] = cfg.scan_rate_ghz_per_s;
    j["peak_count_rate"] = cfg.peak_count_rate;
    j["background_rate"] = cfg.background_rate;
    j["rng_seed"] = cfg.rng_seed;
    j["f_rms_mvm"] = noise.f_rms_mvm;
    j["tau_c_s"] = noise.tau_c_s;
    return j;
}

struct EmitterFlags {
    double c1 = 6.1e-4;
    double c2 = -5.1e-5;
    double c3 = -5.5e-8;
    double c4 = -2.2e-10;
    double gamma_l_mhz = 50.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--c1", c1, "Linear Stark coefficient, GHz/(MV/m)");
        cmd->add_option("--c2", c2, "Quadratic coefficient, GHz/(MV/m)^2");
        cmd->add_option("--c3", c3, "Cubic coefficient, GHz/(MV/m)^3");
        cmd->add_option("--c4", c4, "Quartic coefficient, GHz/(MV/m)^4");
        cmd->add_option("--gamma-l-mhz", gamma_l_mhz,
                        "Homogeneous Lorentzian FWHM, MHz");
    }
    EmitterModel emitter() const {
        EmitterModel e;
        e.coeffs = {c1, c2, c3, c4};
        e.line.gamma_l_mhz = gamma_l_mhz;
        e.shape = PeakShape::Lorentzian;
        return e;
    }
    json to_json() const {
        json j;
        j["coeffs_ghz_mvm"] = {c1, c2, c3, c4};
        j["gamma_l_mhz"] = gamma_l_mhz;
        return j;
    }
};

// ---------------------------------------------------------------- field ----

int cmd_field(const ElectrodeGeometry& geom, const Sweep& voltages,
              double spacing_um, const std::string& outdir) {
    ElectrodeGeometry g = geom;
    const std::vector<double> volts = voltages.values();

    g.applied_voltage_v = volts.front();
    const FieldMap map = solve_potential(g, spacing_um);
    io::write_field_map_csv(out_path(outdir, "field_map.csv"), map);

    std::ostringstream table;
    table << "voltage_v,local_field_mvm\n";
    std::cout << "voltage_v  local_field_mvm\n";
    for (double v : volts) {
        const double f = bias_to_local_field(geom, v, spacing_um);
        table << io::format_double(v) << ',' << io::format_double(f) << '\n';
        std::cout << v << "  " << f << '\n';
    }
    io::write_text_atomic(out_path(outdir, "bias_table.csv"), table.str());

    json side = sidecar_base("field");
    side["config"] = {{"gap_um", geom.gap_um},
                      {"electrode_width_um", geom.electrode_width_um},
                      {"electrode_thickness_um", geom.electrode_thickness_um},
                      {"epsilon_substrate", geom.epsilon_substrate},
                      {"emitter_depth_nm", geom.emitter_depth_nm},
                      {"emitter_lateral_offset_um", geom.emitter_lateral_offset_um},
                      {"grid_spacing_um", spacing_um},
                      {"voltages_v", volts}};
    side["residual"] = map.residual;
    io::write_json_atomic(out_path(outdir, "field.json"), side);
    return 0;
}

// ------------------------------------------------------------- simulate ----

int cmd_simulate_stark(const EmitterFlags& em, const Sweep& fields,
                       ScanConfig cfg, double span_ghz, const NoiseModel& noise,
                       const std::string& outdir) {
    const EmitterModel base = em.emitter();
    std::mt19937_64 rng(cfg.rng_seed);
    json side = sidecar_base("simulate stark");
    side["config"] = scan_config_json(cfg, noise);
    side["config"]["emitter"] = em.to_json();
    side["config"]["span_ghz"] = span_ghz;
    json files = json::array();

    int idx = 0;
    for (double f : fields.values()) {
        EmitterModel e = base;
        const double truth = stark_shift(base.coeffs, f);
        e.line.center_ghz = truth;  // scan window tracks the shifted line
        ScanConfig c = cfg;
        c.f_start_ghz = truth - span_ghz / 2.0;
        c.f_stop_ghz = truth + span_ghz / 2.0;
        const Spectrum s = simulate_ple_scan(e, 0.0, c, noise, rng);
        char name[64];
        std::snprintf(name, sizeof name, "stark_scan_%03d.csv", idx);
        io::write_spectrum_csv(out_path(outdir, name), s);
        files.push_back({{"file", name},
                         {"field_mvm", f},
                         {"true_center_ghz", truth}});
        ++idx;
    }
    side["scans"] = files;
    io::write_json_atomic(out_path(outdir, "stark_scans.json"), side);
    std::cout << "wrote " << idx << " spectra to " << outdir << '\n';
    return 0;
}

int cmd_simulate_series(const EmitterFlags& em, int n_scans, double field_mvm,
                        double gap_s, ScanConfig cfg, const NoiseModel& noise,
                        const std::string& outdir) {
    const ScanSeries series =
        simulate_scan_series(n_scans, gap_s, em.emitter(), field_mvm, cfg, noise);
    io::write_series_csv(out_path(outdir, "series.csv"), series);
    json side = sidecar_base("simulate series");
    side["config"] = scan_config_json(cfg, noise);
    side["config"]["emitter"] = em.to_json();
    side["config"]["n_scans"] = n_scans;
    side["config"]["field_mvm"] = field_mvm;
    side["config"]["inter_scan_gap_s"] = gap_s;
    io::write_json_atomic(out_path(outdir, "series.json"), side);
    std::cout << "wrote " << n_scans << "-scan series to " << outdir << '\n';
    return 0;
}

int cmd_simulate_g2(const TwoLevelParams& p, double tau_max_ns,
                    double tau_step_ns, const std::string& outdir) {
    std::vector<double> tau;
    for (double t = 0.0; t <= tau_max_ns + 1e-12; t += tau_step_ns)
        tau.push_back(t);
    const G2Curve curve = simulate_g2(p, tau);
    io::write_g2_csv(out_path(outdir, "g2.csv"), curve);
    json side = sidecar_base("simulate g2");
    side["config"] = {{"t1_ns", p.t1_ns},
                      {"t2_ns", p.t2_ns},
                      {"rabi_mhz", p.rabi_mhz},
                      {"signal_purity", p.signal_purity},
                      {"tau_max_ns", tau_max_ns},
                      {"tau_step_ns", tau_step_ns}};
    io::write_json_atomic(out_path(outdir, "g2.json"), side);
    std::cout << "wrote g2 curve (" << tau.size() << " points) to " << outdir
              << '\n';
    return 0;
}

// ------------------------------------------------------------------ fit ----

int cmd_fit_stark(const std::string& input, int order,
                  const std::string& outdir) {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open " + input);
    json side_in;
    in >> side_in;
    const fs::path base = fs::path(input).parent_path();

    std::vector<StarkPoint> points;
    for (const auto& entry : side_in.at("scans")) {
        const Spectrum s =
            io::read_spectrum_csv((base / entry.at("file").get<std::string>()).string());
        const PeakFit pf = fit_peak(s, PeakShape::Lorentzian);
        if (!pf.significant) continue;
        points.push_back({entry.at("field_mvm").get<double>(),
                          pf.params.center_ghz, pf.center_sigma_ghz()});
    }
    const StarkFitReport report = fit_stark_trajectory(points, order);
    io::write_stark_points_csv(out_path(outdir, "stark_points.csv"), points);

    json out = sidecar_base("fit stark");
    out["config"] = {{"input", input}, {"order", order}};
    out["units"] = "ghz_mvm";
    out["report"] = io::stark_report_to_json(report);
    const PhysicalStarkParams phys = coeffs_to_physical(report.coeffs);
    out["physical"] = {{"delta_mu_debye", phys.delta_mu},
                       {"delta_alpha_a3", phys.delta_alpha},
                       {"delta_beta", phys.delta_beta},
                       {"delta_gamma", phys.delta_gamma}};
    char name[64];
    std::snprintf(name, sizeof name, "stark_fit_order%d.json", order);
    io::write_json_atomic(out_path(outdir, name), out);

    // plot-ready fitted curve
    double fmin = points.front().field_mvm, fmax = fmin;
    for (const auto& p : points) {
        fmin = std::min(fmin, p.field_mvm);
        fmax = std::max(fmax, p.field_mvm);
    }
    std::ostringstream curve;
    curve << "field_mvm,shift_ghz\n";
    for (int i = 0; i <= 400; ++i) {
        const double f = fmin + (fmax - fmin) * i / 400.0;
        curve << io::format_double(f) << ','
              << io::format_double(report.offset_ghz +
                                   stark_shift(report.coeffs, f))
              << '\n';
    }
    std::snprintf(name, sizeof name, "stark_fit_order%d_curve.csv", order);
    io::write_text_atomic(out_path(outdir, name), curve.str());

    std::cout << "order " << order << " fit: c1 = " << report.coeffs.c1
              << " GHz/(MV/m), higher-order fraction "
              << report.higher_order_fraction << '\n';
    return 0;
}

int cmd_fit_linewidth(const std::string& input, const EmitterFlags& em,
                      const std::string& outdir) {
    const auto points = io::read_linewidth_points_csv(input);
    const StarkCoefficients coeffs{em.c1, em.c2, em.c3, em.c4};
    const NoiseInversionResult r = fit_linewidth_vs_field(points, coeffs);
    json out = sidecar_base("fit linewidth");
    out["config"] = {{"input", input}, {"coeffs_ghz_mvm", {em.c1, em.c2, em.c3, em.c4}}};
    out["f_rms_mvm"] = r.f_rms_mvm;
    out["f_rms_sigma"] = r.f_rms_sigma;
    out["gamma_l_mhz"] = r.gamma_l_mhz;
    out["gamma_l_sigma"] = r.gamma_l_sigma;
    out["fit"] = io::fit_result_to_json(r.fit);
    io::write_json_atomic(out_path(outdir, "linewidth_fit.json"), out);
    std::cout << "F_rms = " << r.f_rms_mvm << " +/- " << r.f_rms_sigma
              << " MV/m, gamma_L = " << r.gamma_l_mhz << " +/- "
              << r.gamma_l_sigma << " MHz\n";
    return 0;
}

int cmd_fit_g2(const std::string& input, const TwoLevelParams& init,
               double sigma, const std::string& outdir) {
    std::vector<double> tau, g2;
    io::read_g2_csv(input, tau, g2);
    const std::vector<double> sig(tau.size(), sigma);
    const G2FitResult r = fit_g2(tau, g2, sig, init);
    json out = sidecar_base("fit g2");
    out["config"] = {{"input", input},
                     {"t1_ns_fixed", init.t1_ns},
                     {"sigma", sigma}};
    out["t2_ns"] = r.params.t2_ns;
    out["t2_sigma_ns"] = r.sigmas.t2_ns;
    out["rabi_mhz"] = r.params.rabi_mhz;
    out["rabi_sigma_mhz"] = r.sigmas.rabi_mhz;
    out["signal_purity"] = r.params.signal_purity;
    out["signal_purity_sigma"] = r.sigmas.signal_purity;
    out["fit"] = io::fit_result_to_json(r.fit);
    io::write_json_atomic(out_path(outdir, "g2_fit.json"), out);

    const G2Curve fitted = simulate_g2(r.params, tau);
    io::write_g2_csv(out_path(outdir, "g2_fit_curve.csv"), fitted);
    std::cout << "T2 = " << r.params.t2_ns << " +/- " << r.sigmas.t2_ns
              << " ns, Rabi = " << r.params.rabi_mhz << " MHz, purity = "
              << r.params.signal_purity << '\n';
    return 0;
}

int cmd_fit_series(const std::string& input, const std::string& outdir) {
    const ScanSeries series = io::read_series_csv(input);
    const DiffusionReport r = analyze_scan_series(series);
    json out = sidecar_base("fit series");
    out["config"] = {{"input", input}};
    out["mean_scan_fwhm_mhz"] = r.mean_scan_fwhm_mhz;
    out["center_std_mhz"] = r.center_std_mhz;
    out["predicted_voigt_mhz"] = r.predicted_voigt_mhz;
    out["n_scans_used"] = r.n_scans_used;
    out["n_scans_failed"] = r.n_scans_failed;
    io::write_json_atomic(out_path(outdir, "series_fit.json"), out);
    std::cout << "mean per-scan FWHM " << r.mean_scan_fwhm_mhz
              << " MHz, center std " << r.center_std_mhz << " MHz over "
              << r.n_scans_used << " scans\n";
    return 0;
}

// ----------------------------------------------------------- population ----

int cmd_population(const std::vector<std::string>& inputs,
                   const std::string& outdir) {
    std::ostringstream table;
    table << "emitter,delta_mu_debye,delta_mu_sigma,delta_alpha_a3,"
             "delta_alpha_sigma\n";
    std::vector<double> mus, alphas;
    int idx = 0;
    for (const auto& path : inputs) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        json j;
        in >> j;
        if (j.value("units", "") != "ghz_mvm")
            throw std::runtime_error(
                "mixed or missing units in " + path +
                " (expected stark fit reports with units ghz_mvm)");
        const StarkFitReport rep = io::stark_report_from_json(j.at("report"));
        const PhysicalStarkParams phys = coeffs_to_physical(rep.coeffs);
        const double mu_sigma = rep.sigmas.c1 * kDebyePerGhzMvm;
        const double alpha_sigma = 2.0 * rep.sigmas.c2 * kVolA3PerGhzMvm2;
        table << idx << ',' << io::format_double(phys.delta_mu) << ','
              << io::format_double(mu_sigma) << ','
              << io::format_double(phys.delta_alpha) << ','
              << io::format_double(alpha_sigma) << '\n';
        mus.push_back(phys.delta_mu);
        alphas.push_back(phys.delta_alpha);
        ++idx;
    }
    io::write_text_atomic(out_path(outdir, "population.csv"), table.str());

    const auto mean = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        return m / v.size();
    };
    const auto stdev = [&](const std::vector<double>& v) {
        if (v.size() < 2) return 0.0;
        const double m = mean(v);
        double s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return std::sqrt(s / (v.size() - 1));
    };
    json side = sidecar_base("population");
    side["config"] = {{"inputs", inputs}};
    side["n_emitters"] = idx;
    side["mean_delta_mu_debye"] = mean(mus);
    side["std_delta_mu_debye"] = stdev(mus);
    side["mean_delta_alpha_a3"] = mean(alphas);
    side["std_delta_alpha_a3"] = stdev(alphas);
    io::write_json_atomic(out_path(outdir, "population_summary.json"), side);
    std::cout << idx << " emitters: mean delta mu " << mean(mus)
              << " D, mean delta alpha " << mean(alphas) << " A^3\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stark-effect spectroscopy toolkit for quantum emitters"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    std::string outdir = default_outdir();
    app.add_option("-o,--outdir", outdir,
                   "Output directory (default: $SNVSTARK_OUTDIR or .)");

    // field
    auto* field = app.add_subcommand("field", "Solve the electrode field map");
    ElectrodeGeometry geom;
    std::string voltage_spec = "200";
    double spacing_um = 0.05;
    field->add_option("--gap-um", geom.gap_um, "Electrode gap, um");
    field->add_option("--width-um", geom.electrode_width_um, "Electrode width, um");
    field->add_option("--thickness-um", geom.electrode_thickness_um,
                      "Electrode thickness, um");
    field->add_option("--epsilon", geom.epsilon_substrate,
                      "Substrate relative permittivity");
    field->add_option("--depth-nm", geom.emitter_depth_nm, "Emitter depth, nm");
    field->add_option("--offset-um", geom.emitter_lateral_offset_um,
                      "Emitter lateral offset, um");
    field->add_option("--voltage", voltage_spec,
                      "Bias voltage in V, single value or start:stop:count");
    field->add_option("--spacing-um", spacing_um, "Grid spacing, um");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Generate synthetic datasets");
    simulate->require_subcommand(1);

    ScanConfig scan_cfg;
    NoiseModel noise;
    EmitterFlags em;
    const auto add_scan_flags = [&](CLI::App* cmd) {
        cmd->add_option("--bins", scan_cfg.n_bins, "Bins per scan");
        cmd->add_option("--rate-ghz-s", scan_cfg.scan_rate_ghz_per_s,
                        "Scan rate, GHz/s");
        cmd->add_option("--peak-rate", scan_cfg.peak_count_rate,
                        "Peak count rate, counts/s");
        cmd->add_option("--bg-rate", scan_cfg.background_rate,
                        "Background count rate, counts/s");
        cmd->add_option("--seed", scan_cfg.rng_seed, "RNG seed");
        cmd->add_option("--f-rms", noise.f_rms_mvm, "Field noise RMS, MV/m");
        cmd->add_option("--tau-c-s", noise.tau_c_s,
                        "Field noise correlation time, s");
        em.add_to(cmd);
    };

    auto* sim_stark = simulate->add_subcommand(
        "stark", "Spectra across a field sweep with the window tracking the line");
    std::string fields_spec = "-250:250:26";
    double span_ghz = 1.0;
    sim_stark->add_option("--fields", fields_spec,
                          "Field sweep in MV/m, start:stop:count");
    sim_stark->add_option("--span-ghz", span_ghz, "Scan span per spectrum, GHz");
    add_scan_flags(sim_stark);

    auto* sim_series = simulate->add_subcommand(
        "series", "Repeated fast scans sharing one noise trajectory");
    int n_scans = 200;
    double series_field = 0.0, gap_s = 0.1;
    double series_span = 1.0;
    sim_series->add_option("--n", n_scans, "Number of scans");
    sim_series->add_option("--field", series_field, "DC local field, MV/m");
    sim_series->add_option("--gap-s", gap_s, "Gap between scans, s");
    sim_series->add_option("--span-ghz", series_span, "Scan span, GHz");
    add_scan_flags(sim_series);

    auto* sim_g2 = simulate->add_subcommand("g2", "Driven two-level g2 curve");
    TwoLevelParams tl;
    double tau_max = 45.0, tau_step = 0.15;
    sim_g2->add_option("--t1-ns", tl.t1_ns, "Excited-state lifetime, ns");
    sim_g2->add_option("--t2-ns", tl.t2_ns, "Coherence time, ns");
    sim_g2->add_option("--rabi-mhz", tl.rabi_mhz, "Rabi frequency, MHz");
    sim_g2->add_option("--purity", tl.signal_purity, "Signal purity in [0,1]");
    sim_g2->add_option("--tau-max-ns", tau_max, "Maximum delay, ns");
    sim_g2->add_option("--tau-step-ns", tau_step, "Delay step, ns");

    // fit
    auto* fit = app.add_subcommand("fit", "Run inference pipelines");
    fit->require_subcommand(1);

    auto* fit_stark = fit->add_subcommand(
        "stark", "Peak-fit a simulated stark sweep and fit the trajectory");
    std::string stark_input;
    int order = 4;
    fit_stark->add_option("--input", stark_input,
                          "stark_scans.json sidecar from `simulate stark`")
        ->required();
    fit_stark->add_option("--order", order, "Polynomial order, 2 or 4");

    auto* fit_lw = fit->add_subcommand(
        "linewidth", "Invert width-vs-field data for the noise amplitude");
    std::string lw_input;
    fit_lw->add_option("--input", lw_input, "linewidth points CSV")->required();
    EmitterFlags lw_em;
    lw_em.add_to(fit_lw);

    auto* fit_g2_cmd = fit->add_subcommand("g2", "Fit a measured g2 curve");
    std::string g2_input;
    TwoLevelParams g2_init;
    double g2_sigma = 0.02;
    fit_g2_cmd->add_option("--input", g2_input, "g2 CSV (tau, ideal, measured)")
        ->required();
    fit_g2_cmd->add_option("--t1-ns", g2_init.t1_ns,
                           "Fixed T1 from an independent lifetime measurement");
    fit_g2_cmd->add_option("--t2-init-ns", g2_init.t2_ns, "T2 initial guess");
    fit_g2_cmd->add_option("--rabi-init-mhz", g2_init.rabi_mhz,
                           "Rabi initial guess, MHz");
    fit_g2_cmd->add_option("--purity-init", g2_init.signal_purity,
                           "Signal purity initial guess");
    fit_g2_cmd->add_option("--sigma", g2_sigma, "Per-point g2 uncertainty");

    auto* fit_series = fit->add_subcommand(
        "series", "Per-scan peak tracking over a scan series");
    std::string series_input;
    fit_series->add_option("--input", series_input, "series CSV")->required();

    // population
    auto* population = app.add_subcommand(
        "population", "Batch statistics over stark fit reports");
    std::vector<std::string> pop_inputs;
    population->add_option("--input", pop_inputs, "stark fit report JSONs")
        ->required()
        ->expected(-1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*field)
            return cmd_field(geom, parse_sweep(voltage_spec), spacing_um, outdir);
        if (*sim_stark)
            return cmd_simulate_stark(em, parse_sweep(fields_spec), scan_cfg,
                                      span_ghz, noise, outdir);
        if (*sim_series) {
            scan_cfg.f_start_ghz = -series_span / 2.0;
            scan_cfg.f_stop_ghz = series_span / 2.0;
            return cmd_simulate_series(em, n_scans, series_field, gap_s,
                                       scan_cfg, noise, outdir);
        }
        if (*sim_g2) return cmd_simulate_g2(tl, tau_max, tau_step, outdir);
        if (*fit_stark) return cmd_fit_stark(stark_input, order, outdir);
        if (*fit_lw) return cmd_fit_linewidth(lw_input, lw_em, outdir);
        if (*fit_g2_cmd)
            return cmd_fit_g2(g2_input, g2_init, g2_sigma, outdir);
        if (*fit_series) return cmd_fit_series(series_input, outdir);
        if (*population) return cmd_population(pop_inputs, outdir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
