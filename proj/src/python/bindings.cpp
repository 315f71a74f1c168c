#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "snvstark/constants.hpp"
#include "snvstark/field_map.hpp"
#include "snvstark/fit_models.hpp"
#include "snvstark/toy_hamiltonian.hpp"

namespace py = pybind11;
using namespace snvstark;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stark-effect spectroscopy toolkit core";

    // stark model
    py::class_<StarkCoefficients>(m, "StarkCoefficients")
        .def(py::init<>())
        .def(py::init([](double c1, double c2, double c3, double c4) {
                 return StarkCoefficients{c1, c2, c3, c4};
             }),
             py::arg("c1"), py::arg("c2") = 0.0, py::arg("c3") = 0.0,
             py::arg("c4") = 0.0)
        .def_readwrite("c1", &StarkCoefficients::c1)
        .def_readwrite("c2", &StarkCoefficients::c2)
        .def_readwrite("c3", &StarkCoefficients::c3)
        .def_readwrite("c4", &StarkCoefficients::c4);

    py::class_<PhysicalStarkParams>(m, "PhysicalStarkParams")
        .def(py::init<>())
        .def_readwrite("delta_mu", &PhysicalStarkParams::delta_mu)
        .def_readwrite("delta_alpha", &PhysicalStarkParams::delta_alpha)
        .def_readwrite("delta_beta", &PhysicalStarkParams::delta_beta)
        .def_readwrite("delta_gamma", &PhysicalStarkParams::delta_gamma);

    m.def("stark_shift", &stark_shift, py::arg("coeffs"), py::arg("f_mvm"));
    m.def("induced_dipole", &induced_dipole, py::arg("coeffs"),
          py::arg("f_mvm"));
    m.def("coeffs_to_physical", &coeffs_to_physical);
    m.def("physical_to_coeffs", &physical_to_coeffs);
    m.def("lorentz_local_field", &lorentz_local_field, py::arg("f_ext_mvm"),
          py::arg("epsilon") = kDiamondEpsilon);

    // lineshapes
    m.def("voigt_width_whiting", &voigt_width_whiting, py::arg("fwhm_l_mhz"),
          py::arg("fwhm_g_mhz"));
    m.def("expected_linewidth", &expected_linewidth, py::arg("gamma_l_mhz"),
          py::arg("f_rms_mvm"), py::arg("coeffs"), py::arg("f_dc_mvm"));
    m.def("lifetime_limit_mhz", &lifetime_limit_mhz, py::arg("t1_ns"));

    // field map
    py::class_<ElectrodeGeometry>(m, "ElectrodeGeometry")
        .def(py::init<>())
        .def_readwrite("gap_um", &ElectrodeGeometry::gap_um)
        .def_readwrite("electrode_width_um",
                       &ElectrodeGeometry::electrode_width_um)
        .def_readwrite("electrode_thickness_um",
                       &ElectrodeGeometry::electrode_thickness_um)
        .def_readwrite("applied_voltage_v",
                       &ElectrodeGeometry::applied_voltage_v)
        .def_readwrite("epsilon_substrate",
                       &ElectrodeGeometry::epsilon_substrate)
        .def_readwrite("emitter_depth_nm", &ElectrodeGeometry::emitter_depth_nm)
        .def_readwrite("emitter_lateral_offset_um",
                       &ElectrodeGeometry::emitter_lateral_offset_um);
    m.def("bias_to_local_field", &bias_to_local_field, py::arg("geometry"),
          py::arg("voltage_v"), py::arg("grid_spacing_um") = 0.05);

    // simulation
    py::class_<LineshapeParams>(m, "LineshapeParams")
        .def(py::init<>())
        .def_readwrite("center_ghz", &LineshapeParams::center_ghz)
        .def_readwrite("gamma_l_mhz", &LineshapeParams::gamma_l_mhz)
        .def_readwrite("gamma_g_mhz", &LineshapeParams::gamma_g_mhz)
        .def_readwrite("eta", &LineshapeParams::eta)
        .def_readwrite("amplitude", &LineshapeParams::amplitude)
        .def_readwrite("background", &LineshapeParams::background);

    py::enum_<PeakShape>(m, "PeakShape")
        .value("Lorentzian", PeakShape::Lorentzian)
        .value("Gaussian", PeakShape::Gaussian)
        .value("PseudoVoigt", PeakShape::PseudoVoigt);

    py::class_<EmitterModel>(m, "EmitterModel")
        .def(py::init<>())
        .def_readwrite("coeffs", &EmitterModel::coeffs)
        .def_readwrite("line", &EmitterModel::line)
        .def_readwrite("shape", &EmitterModel::shape);

    py::class_<ScanConfig>(m, "ScanConfig")
        .def(py::init<>())
        .def_readwrite("f_start_ghz", &ScanConfig::f_start_ghz)
        .def_readwrite("f_stop_ghz", &ScanConfig::f_stop_ghz)
        .def_readwrite("n_bins", &ScanConfig::n_bins)
        .def_readwrite("scan_rate_ghz_per_s", &ScanConfig::scan_rate_ghz_per_s)
        .def_readwrite("peak_count_rate", &ScanConfig::peak_count_rate)
        .def_readwrite("background_rate", &ScanConfig::background_rate)
        .def_readwrite("rng_seed", &ScanConfig::rng_seed)
        .def_readwrite("sample_counts", &ScanConfig::sample_counts);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init<>())
        .def(py::init([](double f_rms, double tau_c) {
                 return NoiseModel{f_rms, tau_c};
             }),
             py::arg("f_rms_mvm"), py::arg("tau_c_s") = 0.05)
        .def_readwrite("f_rms_mvm", &NoiseModel::f_rms_mvm)
        .def_readwrite("tau_c_s", &NoiseModel::tau_c_s);

    py::class_<Spectrum>(m, "Spectrum")
        .def(py::init<>())
        .def_readwrite("frequency_ghz", &Spectrum::frequency_ghz)
        .def_readwrite("counts", &Spectrum::counts)
        .def_readwrite("dwell_s", &Spectrum::dwell_s)
        .def("__len__", &Spectrum::size);

    py::class_<ScanSeries>(m, "ScanSeries")
        .def(py::init<>())
        .def_readwrite("timestamps_s", &ScanSeries::timestamps_s)
        .def_readwrite("scans", &ScanSeries::scans)
        .def_readwrite("bias_field_mvm", &ScanSeries::bias_field_mvm);

    m.def("simulate_ple_scan",
          py::overload_cast<const EmitterModel&, double, const ScanConfig&,
                            const NoiseModel&>(&simulate_ple_scan),
          py::arg("emitter"), py::arg("f_dc_mvm"), py::arg("scan"),
          py::arg("noise"));
    m.def("simulate_scan_series", &simulate_scan_series, py::arg("n_scans"),
          py::arg("inter_scan_gap_s"), py::arg("emitter"), py::arg("f_dc_mvm"),
          py::arg("scan"), py::arg("noise"));

    py::class_<TwoLevelParams>(m, "TwoLevelParams")
        .def(py::init<>())
        .def_readwrite("t1_ns", &TwoLevelParams::t1_ns)
        .def_readwrite("t2_ns", &TwoLevelParams::t2_ns)
        .def_readwrite("rabi_mhz", &TwoLevelParams::rabi_mhz)
        .def_readwrite("signal_purity", &TwoLevelParams::signal_purity);

    py::class_<G2Curve>(m, "G2Curve")
        .def_readonly("tau_ns", &G2Curve::tau_ns)
        .def_readonly("ideal", &G2Curve::ideal)
        .def_readonly("measured", &G2Curve::measured);

    m.def("simulate_g2", &simulate_g2, py::arg("params"), py::arg("tau_ns"),
          py::arg("step_scale") = 1.0);

    // fitting
    py::class_<PeakFit>(m, "PeakFit")
        .def_readonly("params", &PeakFit::params)
        .def_readonly("significant", &PeakFit::significant)
        .def("fwhm_mhz", &PeakFit::fwhm_mhz)
        .def("center_sigma_ghz", &PeakFit::center_sigma_ghz)
        .def("fwhm_sigma_mhz", &PeakFit::fwhm_sigma_mhz);
    m.def("fit_peak", &fit_peak, py::arg("spectrum"), py::arg("shape"));

    py::class_<StarkPoint>(m, "StarkPoint")
        .def(py::init([](double f, double c, double s) {
                 return StarkPoint{f, c, s};
             }),
             py::arg("field_mvm"), py::arg("center_ghz"),
             py::arg("sigma_ghz") = 1e-3)
        .def_readwrite("field_mvm", &StarkPoint::field_mvm)
        .def_readwrite("center_ghz", &StarkPoint::center_ghz)
        .def_readwrite("sigma_ghz", &StarkPoint::sigma_ghz);

    py::class_<StarkFitReport>(m, "StarkFitReport")
        .def_readonly("coeffs", &StarkFitReport::coeffs)
        .def_readonly("sigmas", &StarkFitReport::sigmas)
        .def_readonly("offset_ghz", &StarkFitReport::offset_ghz)
        .def_readonly("order", &StarkFitReport::order)
        .def_readonly("higher_order_fraction",
                      &StarkFitReport::higher_order_fraction);
    m.def("fit_stark_trajectory", &fit_stark_trajectory, py::arg("points"),
          py::arg("order"));

    py::class_<LinewidthPoint>(m, "LinewidthPoint")
        .def(py::init([](double f, double w, double s) {
                 return LinewidthPoint{f, w, s};
             }),
             py::arg("field_mvm"), py::arg("width_mhz"),
             py::arg("sigma_mhz") = 1.0)
        .def_readwrite("field_mvm", &LinewidthPoint::field_mvm)
        .def_readwrite("width_mhz", &LinewidthPoint::width_mhz)
        .def_readwrite("sigma_mhz", &LinewidthPoint::sigma_mhz);

    py::class_<NoiseInversionResult>(m, "NoiseInversionResult")
        .def_readonly("f_rms_mvm", &NoiseInversionResult::f_rms_mvm)
        .def_readonly("gamma_l_mhz", &NoiseInversionResult::gamma_l_mhz)
        .def_readonly("f_rms_sigma", &NoiseInversionResult::f_rms_sigma)
        .def_readonly("gamma_l_sigma", &NoiseInversionResult::gamma_l_sigma);
    m.def("fit_linewidth_vs_field", &fit_linewidth_vs_field, py::arg("points"),
          py::arg("coeffs"));

    py::class_<G2FitResult>(m, "G2FitResult")
        .def_readonly("params", &G2FitResult::params)
        .def_readonly("sigmas", &G2FitResult::sigmas);
    m.def("fit_g2", &fit_g2, py::arg("tau_ns"), py::arg("g2"), py::arg("sigma"),
          py::arg("init"));

    py::class_<DiffusionReport>(m, "DiffusionReport")
        .def_readonly("mean_scan_fwhm_mhz", &DiffusionReport::mean_scan_fwhm_mhz)
        .def_readonly("center_std_mhz", &DiffusionReport::center_std_mhz)
        .def_readonly("predicted_voigt_mhz",
                      &DiffusionReport::predicted_voigt_mhz)
        .def_readonly("n_scans_used", &DiffusionReport::n_scans_used)
        .def_readonly("n_scans_failed", &DiffusionReport::n_scans_failed);
    m.def("analyze_scan_series", &analyze_scan_series, py::arg("series"));
}
