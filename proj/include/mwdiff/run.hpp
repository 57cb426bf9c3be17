#ifndef MWDIFF_RUN_HPP
#define MWDIFF_RUN_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mwdiff/comparison.hpp"
#include "mwdiff/diffraction.hpp"
#include "mwdiff/errors.hpp"
#include "mwdiff/scenario.hpp"

namespace mwdiff {

enum class ReportFormat { Text, Json };

/// Quantities derived from one resolved sigma0 case.
struct DerivedQuantities {
    double sigma0;             // m
    double intrinsic_time_s;   // tau0
    double time_to_grating_s;  // T actually used (mode-dependent)
    double time_to_screen_s;   // tau
    double age_ratio;          // T/tau0
    double de_broglie_m;       // lambda at the scenario velocity
    double threshold_slits;    // N*
    CovarianceMatrix covariance_at_grating;
    bool width_target_reached = true;  // fixed mode: target below sigma0 falls back
};

/// Everything a run resolved and produced. Values are the ones used in the
/// computation, not re-derived copies.
struct RunReport {
    Scenario scenario;
    std::vector<DerivedQuantities> derived;
    std::string csv_path;
    std::string report_path;

    std::string to_text() const;
    std::string to_json() const;
};

namespace detail {

inline std::string format_value(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.9g", value);
    return buffer;
}

inline std::string sigma0_label(double sigma0_m) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%g", sigma0_m * 1e6);
    return buffer;
}

/// Beamline whose slit->grating leg realizes the resolved pre-grating flight
/// time at the scenario velocity.
inline Beamline effective_beamline(const Scenario& scenario, double time_to_grating) {
    return Beamline(time_to_grating * scenario.speed, scenario.grating_to_screen,
                    scenario.speed);
}

inline std::pair<double, bool> resolve_time_to_grating(const Scenario& scenario,
                                                       const GaussianPacket& packet) {
    if (scenario.mode == Scenario::Mode::FixedPregratingWidth &&
        scenario.pregrating_width >= packet.sigma0)
        return {fixed_pregrating_width_time(packet, scenario.pregrating_width), true};
    const bool geometric_requested = scenario.mode == Scenario::Mode::GeometricTime;
    return {scenario.beamline().time_to_grating(), geometric_requested};
}

} // namespace detail

inline std::string RunReport::to_text() const {
    std::ostringstream out;
    out << "run: " << scenario.name << "\n\n[parameters]\n" << serialize(scenario);
    for (const auto& d : derived) {
        out << "\n[derived sigma0_um = " << detail::sigma0_label(d.sigma0) << "]\n";
        out << "tau0_s = " << detail::format_value(d.intrinsic_time_s) << "\n";
        out << "T_s = " << detail::format_value(d.time_to_grating_s) << "\n";
        out << "tau_s = " << detail::format_value(d.time_to_screen_s) << "\n";
        out << "T_over_tau0 = " << detail::format_value(d.age_ratio) << "\n";
        out << "lambda_dB_m = " << detail::format_value(d.de_broglie_m) << "\n";
        out << "threshold_slits = " << detail::format_value(d.threshold_slits) << "\n";
        out << "cov_var_x_m2 = " << detail::format_value(d.covariance_at_grating.var_x) << "\n";
        out << "cov_var_p_si = " << detail::format_value(d.covariance_at_grating.var_p) << "\n";
        out << "cov_xp_js = " << detail::format_value(d.covariance_at_grating.cov_xp) << "\n";
        out << "cov_det_over_bound = "
            << detail::format_value(d.covariance_at_grating.det /
                                    (0.25 * constants::hbar * constants::hbar))
            << "\n";
        if (!d.width_target_reached)
            out << "note = width target below sigma0; geometric T used\n";
    }
    out << "\n[outputs]\ncsv = " << csv_path << "\n";
    return out.str();
}

inline std::string RunReport::to_json() const {
    nlohmann::json j;
    j["run"] = scenario.name;
    j["parameters"] = nlohmann::json::object();
    std::istringstream params(serialize(scenario));
    std::string line;
    while (std::getline(params, line)) {
        const auto eq = line.find('=');
        j["parameters"][detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
    }
    j["derived"] = nlohmann::json::array();
    for (const auto& d : derived) {
        nlohmann::json item;
        item["sigma0_um"] = d.sigma0 * 1e6;
        item["tau0_s"] = d.intrinsic_time_s;
        item["T_s"] = d.time_to_grating_s;
        item["tau_s"] = d.time_to_screen_s;
        item["T_over_tau0"] = d.age_ratio;
        item["lambda_dB_m"] = d.de_broglie_m;
        item["threshold_slits"] = d.threshold_slits;
        item["covariance"] = {{"var_x_m2", d.covariance_at_grating.var_x},
                              {"var_p_si", d.covariance_at_grating.var_p},
                              {"cov_xp_js", d.covariance_at_grating.cov_xp},
                              {"det_over_bound",
                               d.covariance_at_grating.det /
                                   (0.25 * constants::hbar * constants::hbar)}};
        item["width_target_reached"] = d.width_target_reached;
        j["derived"].push_back(item);
    }
    j["outputs"]["csv"] = csv_path;
    return j.dump(2) + "\n";
}

/// Run a scenario: compute every selected curve on the shared grid, write one
/// CSV plus a report sidecar into out_dir, and return the report. Output is
/// deterministic for identical scenarios.
inline RunReport run(const Scenario& scenario, const std::filesystem::path& out_dir,
                     ReportFormat format = ReportFormat::Text) {
    scenario.validate();

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string());

    RunReport report;
    report.scenario = scenario;

    const ScanGrid grid = scenario.grid();
    const std::vector<double> xs = grid.points();
    std::vector<std::pair<std::string, std::vector<double>>> columns;

    const bool sweep = !scenario.sweep_sigma0.empty();
    for (const double sigma0_value : scenario.sigma0_values()) {
        const GaussianPacket packet = scenario.packet(sigma0_value);
        const auto [t_grating, target_reached] =
            detail::resolve_time_to_grating(scenario, packet);
        const Beamline beamline = detail::effective_beamline(scenario, t_grating);
        const Grating grating = scenario.grating();

        DerivedQuantities d{};
        d.sigma0 = sigma0_value;
        d.intrinsic_time_s = intrinsic_time(packet);
        d.time_to_grating_s = beamline.time_to_grating();
        d.time_to_screen_s = beamline.time_grating_to_screen();
        d.age_ratio = d.time_to_grating_s / d.intrinsic_time_s;
        d.de_broglie_m = de_broglie_wavelength(packet.particle, scenario.speed);
        d.threshold_slits =
            dispersion_threshold(packet, grating, beamline, scenario.threshold_scale);
        d.covariance_at_grating = covariance(packet, d.time_to_grating_s);
        d.width_target_reached =
            scenario.mode == Scenario::Mode::GeometricTime || target_reached;
        report.derived.push_back(d);

        if (scenario.out_quantum) {
            const IntensityCurve curve =
                intensity_scan(packet, grating, beamline, grid, scenario.normalization);
            columns.emplace_back(
                sweep ? "I_quantum_sigma0_" + detail::sigma0_label(sigma0_value) + "um"
                      : "I_quantum",
                curve.values);
        }
        if (scenario.out_velocity_avg) {
            const VelocityDistribution dist(scenario.speed, scenario.spread_rel,
                                            scenario.n_velocity_samples);
            const IntensityCurve curve = velocity_averaged_intensity(
                packet, grating, beamline, dist, grid, scenario.normalization);
            columns.emplace_back("I_velocity_avg", curve.values);
        }
        if (scenario.out_fraunhofer) {
            const IntensityCurve curve =
                fraunhofer_scan(packet.particle, grating, beamline, scenario.fraunhofer_speed,
                                grid, scenario.normalization);
            columns.emplace_back("I_fraunhofer", curve.values);
        }
    }

    const std::filesystem::path csv_path = out_dir / (scenario.name + ".csv");
    {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw IoError("cannot open " + csv_path.string());
        csv << "x_um";
        for (const auto& [header, values] : columns) csv << "," << header;
        csv << "\n";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            csv << detail::format_value(xs[i] * 1e6);
            for (const auto& [header, values] : columns)
                csv << "," << detail::format_value(values[i]);
            csv << "\n";
        }
        if (!csv) throw IoError("write failed for " + csv_path.string());
    }
    report.csv_path = csv_path.string();

    const std::filesystem::path report_path =
        out_dir / (scenario.name + (format == ReportFormat::Json ? ".report.json"
                                                                 : ".report.txt"));
    report.report_path = report_path.string();
    {
        std::ofstream sidecar(report_path, std::ios::binary);
        if (!sidecar) throw IoError("cannot open " + report_path.string());
        sidecar << (format == ReportFormat::Json ? report.to_json() : report.to_text());
        if (!sidecar) throw IoError("write failed for " + report_path.string());
    }
    return report;
}

} // namespace mwdiff

#endif
