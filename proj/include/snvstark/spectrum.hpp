#pragma once

#include <vector>

namespace snvstark {

// Binned photon counts versus laser detuning. Counts are doubles so the same
// container carries expected (unsampled) spectra.
struct Spectrum {
    std::vector<double> frequency_ghz;
    std::vector<double> counts;
    double dwell_s = 0.0;  // integration time per bin

    size_t size() const { return frequency_ghz.size(); }
};

struct ScanSeries {
    std::vector<double> timestamps_s;  // strictly increasing scan start times
    std::vector<Spectrum> scans;
    double bias_field_mvm = 0.0;
};

}  // namespace snvstark
