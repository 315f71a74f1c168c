"""Stark-effect spectroscopy toolkit (pybind11 bindings over the C++ core)."""

from ._core import (
    DiffusionReport,
    ElectrodeGeometry,
    EmitterModel,
    G2Curve,
    G2FitResult,
    LineshapeParams,
    LinewidthPoint,
    NoiseInversionResult,
    NoiseModel,
    PeakFit,
    PeakShape,
    PhysicalStarkParams,
    ScanConfig,
    ScanSeries,
    Spectrum,
    StarkCoefficients,
    StarkFitReport,
    StarkPoint,
    TwoLevelParams,
    analyze_scan_series,
    bias_to_local_field,
    coeffs_to_physical,
    expected_linewidth,
    fit_g2,
    fit_linewidth_vs_field,
    fit_peak,
    fit_stark_trajectory,
    induced_dipole,
    lifetime_limit_mhz,
    lorentz_local_field,
    physical_to_coeffs,
    simulate_g2,
    simulate_ple_scan,
    simulate_scan_series,
    stark_shift,
    voigt_width_whiting,
)

__all__ = [name for name in dir() if not name.startswith("_")]
