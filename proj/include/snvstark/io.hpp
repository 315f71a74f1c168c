#pragma once

#include <string>

#include "json.hpp"
#include "snvstark/field_map.hpp"
#include "snvstark/fit_models.hpp"
#include "snvstark/spectrum.hpp"

namespace snvstark::io {

// Round-trip-exact decimal formatting shared by every CSV writer.
std::string format_double(double v);

// All writers go through a temp-file + rename so readers never observe a
// partially written file.
void write_text_atomic(const std::string& path, const std::string& content);
void write_json_atomic(const std::string& path, const nlohmann::json& j);

void write_spectrum_csv(const std::string& path, const Spectrum& spectrum);
Spectrum read_spectrum_csv(const std::string& path);

// One row per bin: scan_index, timestamp_s, frequency_ghz, counts.
void write_series_csv(const std::string& path, const ScanSeries& series);
ScanSeries read_series_csv(const std::string& path);

void write_g2_csv(const std::string& path, const G2Curve& curve);
void read_g2_csv(const std::string& path, std::vector<double>& tau_ns,
                 std::vector<double>& g2);

// x, y, V, Fx, Fy per interior node.
void write_field_map_csv(const std::string& path, const FieldMap& map);

void write_stark_points_csv(const std::string& path,
                            const std::vector<StarkPoint>& points);
std::vector<StarkPoint> read_stark_points_csv(const std::string& path);

void write_linewidth_points_csv(const std::string& path,
                                const std::vector<LinewidthPoint>& points);
std::vector<LinewidthPoint> read_linewidth_points_csv(const std::string& path);

nlohmann::json fit_result_to_json(const FitResult& fit);
nlohmann::json stark_report_to_json(const StarkFitReport& report);
StarkFitReport stark_report_from_json(const nlohmann::json& j);

}  // namespace snvstark::io
