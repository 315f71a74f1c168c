#include "snvstark/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace snvstark::io {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

// Parse a CSV with a single header row into columns of doubles.
std::vector<std::vector<double>> read_columns(const std::string& path,
                                              size_t n_cols) {
    std::ifstream in = open_input(path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::vector<double>> cols(n_cols);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        for (size_t c = 0; c < n_cols; ++c) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error("malformed CSV row in " + path);
            cols[c].push_back(std::stod(cell));
        }
    }
    return cols;
}

}  // namespace

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed for " + path);
}

void write_json_atomic(const std::string& path, const nlohmann::json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

void write_spectrum_csv(const std::string& path, const Spectrum& spectrum) {
    std::ostringstream out;
    out << "frequency_ghz,counts\n";
    for (size_t i = 0; i < spectrum.size(); ++i)
        out << format_double(spectrum.frequency_ghz[i]) << ','
            << format_double(spectrum.counts[i]) << '\n';
    write_text_atomic(path, out.str());
}

Spectrum read_spectrum_csv(const std::string& path) {
    auto cols = read_columns(path, 2);
    Spectrum s;
    s.frequency_ghz = std::move(cols[0]);
    s.counts = std::move(cols[1]);
    return s;
}

void write_series_csv(const std::string& path, const ScanSeries& series) {
    std::ostringstream out;
    out << "scan_index,timestamp_s,frequency_ghz,counts\n";
    for (size_t s = 0; s < series.scans.size(); ++s) {
        const auto& scan = series.scans[s];
        for (size_t i = 0; i < scan.size(); ++i)
            out << s << ',' << format_double(series.timestamps_s[s]) << ','
                << format_double(scan.frequency_ghz[i]) << ','
                << format_double(scan.counts[i]) << '\n';
    }
    write_text_atomic(path, out.str());
}

ScanSeries read_series_csv(const std::string& path) {
    auto cols = read_columns(path, 4);
    ScanSeries series;
    int current = -1;
    for (size_t i = 0; i < cols[0].size(); ++i) {
        const int idx = static_cast<int>(cols[0][i]);
        if (idx != current) {
            current = idx;
            series.timestamps_s.push_back(cols[1][i]);
            series.scans.emplace_back();
        }
        series.scans.back().frequency_ghz.push_back(cols[2][i]);
        series.scans.back().counts.push_back(cols[3][i]);
    }
    return series;
}

void write_g2_csv(const std::string& path, const G2Curve& curve) {
    std::ostringstream out;
    out << "tau_ns,g2_ideal,g2_measured\n";
    for (size_t i = 0; i < curve.tau_ns.size(); ++i)
        out << format_double(curve.tau_ns[i]) << ','
            << format_double(curve.ideal[i]) << ','
            << format_double(curve.measured[i]) << '\n';
    write_text_atomic(path, out.str());
}

void read_g2_csv(const std::string& path, std::vector<double>& tau_ns,
                 std::vector<double>& g2) {
    auto cols = read_columns(path, 3);
    tau_ns = std::move(cols[0]);
    g2 = std::move(cols[2]);
}

void write_field_map_csv(const std::string& path, const FieldMap& map) {
    std::ostringstream out;
    out << "x_um,y_um,potential_v,fx_mvm,fy_mvm\n";
    for (int iy = 1; iy < map.ny() - 1; ++iy) {
        for (int ix = 1; ix < map.nx() - 1; ++ix) {
            const auto [fx, fy] = field_at(map, map.xs_um[ix], map.ys_um[iy]);
            out << format_double(map.xs_um[ix]) << ','
                << format_double(map.ys_um[iy]) << ','
                << format_double(map.at(ix, iy)) << ',' << format_double(fx)
                << ',' << format_double(fy) << '\n';
        }
    }
    write_text_atomic(path, out.str());
}

void write_stark_points_csv(const std::string& path,
                            const std::vector<StarkPoint>& points) {
    std::ostringstream out;
    out << "field_mvm,center_ghz,sigma_ghz\n";
    for (const auto& p : points)
        out << format_double(p.field_mvm) << ',' << format_double(p.center_ghz)
            << ',' << format_double(p.sigma_ghz) << '\n';
    write_text_atomic(path, out.str());
}

std::vector<StarkPoint> read_stark_points_csv(const std::string& path) {
    auto cols = read_columns(path, 3);
    std::vector<StarkPoint> points;
    for (size_t i = 0; i < cols[0].size(); ++i)
        points.push_back({cols[0][i], cols[1][i], cols[2][i]});
    return points;
}

void write_linewidth_points_csv(const std::string& path,
                                const std::vector<LinewidthPoint>& points) {
    std::ostringstream out;
    out << "field_mvm,width_mhz,sigma_mhz\n";
    for (const auto& p : points)
        out << format_double(p.field_mvm) << ',' << format_double(p.width_mhz)
            << ',' << format_double(p.sigma_mhz) << '\n';
    write_text_atomic(path, out.str());
}

std::vector<LinewidthPoint> read_linewidth_points_csv(const std::string& path) {
    auto cols = read_columns(path, 3);
    std::vector<LinewidthPoint> points;
    for (size_t i = 0; i < cols[0].size(); ++i)
        points.push_back({cols[0][i], cols[1][i], cols[2][i]});
    return points;
}

nlohmann::json fit_result_to_json(const FitResult& fit) {
    nlohmann::json j;
    j["params"] = std::vector<double>(fit.params.data(),
                                      fit.params.data() + fit.params.size());
    std::vector<std::vector<double>> cov;
    for (int r = 0; r < fit.covariance.rows(); ++r) {
        std::vector<double> row;
        for (int c = 0; c < fit.covariance.cols(); ++c)
            row.push_back(fit.covariance(r, c));
        cov.push_back(std::move(row));
    }
    j["covariance"] = cov;
    j["chi2"] = fit.chi2;
    j["residual_norm"] = fit.residual_norm;
    j["n_iterations"] = fit.n_iterations;
    j["converged"] = fit.converged;
    return j;
}

nlohmann::json stark_report_to_json(const StarkFitReport& report) {
    nlohmann::json j;
    j["order"] = report.order;
    j["offset_ghz"] = report.offset_ghz;
    j["coeffs_ghz_mvm"] = {report.coeffs.c1, report.coeffs.c2, report.coeffs.c3,
                           report.coeffs.c4};
    j["coeff_sigmas"] = {report.sigmas.c1, report.sigmas.c2, report.sigmas.c3,
                         report.sigmas.c4};
    j["higher_order_fraction"] = report.higher_order_fraction;
    j["fit"] = fit_result_to_json(report.fit);
    return j;
}

StarkFitReport stark_report_from_json(const nlohmann::json& j) {
    StarkFitReport report;
    report.order = j.at("order");
    report.offset_ghz = j.at("offset_ghz");
    const auto& c = j.at("coeffs_ghz_mvm");
    report.coeffs = {c.at(0), c.at(1), c.at(2), c.at(3)};
    const auto& s = j.at("coeff_sigmas");
    report.sigmas = {s.at(0), s.at(1), s.at(2), s.at(3)};
    report.higher_order_fraction = j.at("higher_order_fraction");
    return report;
}

}  // namespace snvstark::io
