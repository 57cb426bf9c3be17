#ifndef MWDIFF_SCENARIO_HPP
#define MWDIFF_SCENARIO_HPP

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mwdiff/comparison.hpp"
#include "mwdiff/diffraction.hpp"
#include "mwdiff/errors.hpp"
#include "mwdiff/wavepacket.hpp"

namespace mwdiff {

// Line-oriented "key = value" configuration. Units are baked into key names
// to keep SI/micrometer mixups impossible:
//
//   scenario              preset name to start from (fig3-twoslit, fig5-sweep,
//                         fig6-N2, fig9-N30, fig10-N100); later keys override
//   sigma0_um             source-slit width sigma0 [um]
//   sweep_sigma0_um       comma list of sigma0 values [um]; quantum output only
//   mass_amu              particle mass [amu], default 720
//   n_slits               grating slit count
//   d_nm                  slit spacing [nm]
//   b_nm                  slit half-width [nm]
//   x0_nm                 grating center offset from the beam axis [nm], default 0
//   L_m                   source slit -> grating distance [m]
//   l_m                   grating -> screen distance [m]
//   v_mps                 longitudinal velocity [m/s]
//   grid_halfwidth_um     screen scan half-extent [um], default 40
//   grid_points           scan points, default 2001
//   outputs               comma list of quantum | velocity-averaged | fraunhofer
//   spread_rel            relative velocity spread, default 0.6
//   n_velocity_samples    velocity quadrature samples, default 21
//   fraunhofer_v_mps      velocity of the Fraunhofer reference, default 220
//   mode                  geometric-T | fixed-pregrating-width
//   pregrating_width_um   packet width at the grating in fixed mode, default 1
//   normalization         peak-unity | unit-area | raw, default peak-unity
//   threshold_scale       debroglie-width | width-2pi, default debroglie-width

struct Scenario {
    enum class Mode { GeometricTime, FixedPregratingWidth };

    std::string name = "custom";
    double sigma0 = 0.0;                // m; 0 means not set
    std::vector<double> sweep_sigma0;   // m; non-empty selects sweep output
    double mass_amu = 720.0;
    int n_slits = 0;
    double spacing = 0.0;               // m
    double slit_half_width = 0.0;       // m
    double grating_center = 0.0;        // m
    double slit_to_grating = 0.0;       // m
    double grating_to_screen = 0.0;     // m
    double speed = 0.0;                 // m/s
    double grid_halfwidth = 40.0 * 1e-6;  // m
    int grid_points = 2001;
    bool out_quantum = true;
    bool out_velocity_avg = false;
    bool out_fraunhofer = false;
    double spread_rel = 0.6;
    int n_velocity_samples = 21;
    double fraunhofer_speed = 220.0;    // m/s
    Mode mode = Mode::GeometricTime;
    double pregrating_width = 1.0 * 1e-6;  // m
    Normalization normalization = Normalization::PeakUnity;
    ThresholdScale threshold_scale = ThresholdScale::DeBroglieWidth;

    Particle particle() const { return Particle::from_amu(mass_amu); }
    GaussianPacket packet(double sigma0_value) const {
        return GaussianPacket(sigma0_value, particle());
    }
    Grating grating() const {
        return Grating(n_slits, spacing, slit_half_width, grating_center);
    }
    Beamline beamline() const { return Beamline(slit_to_grating, grating_to_screen, speed); }
    ScanGrid grid() const { return ScanGrid(-grid_halfwidth, grid_halfwidth, grid_points); }

    std::vector<double> sigma0_values() const {
        return sweep_sigma0.empty() ? std::vector<double>{sigma0} : sweep_sigma0;
    }

    void validate() const {
        if (sigma0 <= 0.0 && sweep_sigma0.empty())
            throw ConfigError("sigma0 must be positive (set sigma0_um or sweep_sigma0_um)");
        for (double s : sigma0_values())
            if (!(s > 0.0)) throw ConfigError("sigma0 must be positive");
        if (!(mass_amu > 0.0)) throw ConfigError("mass_amu must be positive");
        if (n_slits < 1) throw ConfigError("n_slits must be at least 1");
        if (!(spacing > 0.0)) throw ConfigError("d_nm must be positive");
        if (!(slit_half_width > 0.0)) throw ConfigError("b_nm must be positive");
        if (!(slit_half_width < spacing))
            throw ConfigError("b_nm must be below d_nm (apertures must not merge)");
        if (!(slit_to_grating > 0.0)) throw ConfigError("L_m must be positive");
        if (!(grating_to_screen > 0.0)) throw ConfigError("l_m must be positive");
        if (!(speed > 0.0)) throw ConfigError("v_mps must be positive");
        if (!(grid_halfwidth > 0.0)) throw ConfigError("grid_halfwidth_um must be positive");
        if (grid_points < 2) throw ConfigError("grid_points must be at least 2");
        if (!(spread_rel >= 0.0 && spread_rel < 1.5))
            throw ConfigError("spread_rel must be in [0, 1.5)");
        if (n_velocity_samples < 1) throw ConfigError("n_velocity_samples must be at least 1");
        if (!(fraunhofer_speed > 0.0)) throw ConfigError("fraunhofer_v_mps must be positive");
        if (mode == Mode::FixedPregratingWidth && !(pregrating_width > 0.0))
            throw ConfigError("pregrating_width_um must be positive");
        if (!out_quantum && !out_velocity_avg && !out_fraunhofer)
            throw ConfigError("outputs must select at least one curve");
        if (!sweep_sigma0.empty() && (out_velocity_avg || out_fraunhofer))
            throw ConfigError("sweep_sigma0_um supports the quantum output only");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::istringstream stream(s);
    std::string item;
    while (std::getline(stream, item, sep)) parts.push_back(trim(item));
    return parts;
}

inline double parse_double(const std::string& value, int line_no, const std::string& key) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": " + key +
                          " expects a number, got '" + value + "'");
    }
}

inline int parse_int(const std::string& value, int line_no, const std::string& key) {
    const double parsed = parse_double(value, line_no, key);
    const int as_int = static_cast<int>(parsed);
    if (parsed != as_int)
        throw ConfigError("line " + std::to_string(line_no) + ": " + key +
                          " expects an integer, got '" + value + "'");
    return as_int;
}

// shortest decimal that parses back to the same double
inline std::string format_si(double value) {
    char buffer[32];
    for (int precision : {15, 16, 17}) {
        std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
        if (std::stod(buffer) == value) break;
    }
    return buffer;
}

} // namespace detail

inline std::optional<Scenario> find_preset(const std::string& name);

/// Named scenarios behind the built-in presets.
inline std::vector<std::pair<std::string, Scenario>> presets() {
    // converted fields use the same unit arithmetic as the parser so that
    // serialized presets read back bit-identically
    Scenario base;
    base.sigma0 = 5.0 * 1e-6;
    base.mass_amu = 720.0;
    base.spacing = 100.0 * 1e-9;
    base.slit_half_width = 18.0 * 1e-9;
    base.slit_to_grating = 0.1;
    base.grating_to_screen = 1.25;
    base.speed = 200.0;

    std::vector<std::pair<std::string, Scenario>> all;

    Scenario fig3 = base;
    fig3.name = "fig3-twoslit";
    fig3.n_slits = 2;
    all.emplace_back(fig3.name, fig3);

    Scenario fig5 = base;
    fig5.name = "fig5-sweep";
    fig5.n_slits = 2;
    fig5.mode = Scenario::Mode::FixedPregratingWidth;
    fig5.pregrating_width = 1.0 * 1e-6;
    fig5.grating_center = 200.0 * 1e-9;  // beam axis off the grating center
    fig5.sigma0 = 0.0;
    fig5.sweep_sigma0 = {6.0 * 1e-6, 0.02 * 1e-6, 0.0175 * 1e-6, 0.013 * 1e-6};
    all.emplace_back(fig5.name, fig5);

    for (const auto& [label, slit_count] :
         std::vector<std::pair<std::string, int>>{{"fig6-N2", 2}, {"fig9-N30", 30},
                                                  {"fig10-N100", 100}}) {
        Scenario fig = base;
        fig.name = label;
        fig.n_slits = slit_count;
        fig.out_velocity_avg = true;
        fig.out_fraunhofer = true;
        all.emplace_back(label, fig);
    }
    return all;
}

inline std::optional<Scenario> find_preset(const std::string& name) {
    for (auto& [preset_name, scenario] : presets())
        if (preset_name == name) return scenario;
    return std::nullopt;
}

/// Parse the configuration text. Unknown keys are rejected with their line
/// number; the result is fully validated.
inline Scenario parse_config(const std::string& text) {
    Scenario scenario;
    bool any_key = false;

    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        any_key = true;

        if (key == "scenario") {
            const auto preset = find_preset(value);
            if (!preset)
                throw ConfigError("line " + std::to_string(line_no) + ": unknown scenario '" +
                                  value + "'");
            scenario = *preset;
        } else if (key == "sigma0_um") {
            scenario.sigma0 = detail::parse_double(value, line_no, key) * 1e-6;
            scenario.sweep_sigma0.clear();
        } else if (key == "sweep_sigma0_um") {
            scenario.sweep_sigma0.clear();
            for (const auto& item : detail::split(value, ','))
                scenario.sweep_sigma0.push_back(detail::parse_double(item, line_no, key) * 1e-6);
            scenario.sigma0 = 0.0;
        } else if (key == "mass_amu") {
            scenario.mass_amu = detail::parse_double(value, line_no, key);
        } else if (key == "n_slits") {
            scenario.n_slits = detail::parse_int(value, line_no, key);
        } else if (key == "d_nm") {
            scenario.spacing = detail::parse_double(value, line_no, key) * 1e-9;
        } else if (key == "b_nm") {
            scenario.slit_half_width = detail::parse_double(value, line_no, key) * 1e-9;
        } else if (key == "x0_nm") {
            scenario.grating_center = detail::parse_double(value, line_no, key) * 1e-9;
        } else if (key == "L_m") {
            scenario.slit_to_grating = detail::parse_double(value, line_no, key);
        } else if (key == "l_m") {
            scenario.grating_to_screen = detail::parse_double(value, line_no, key);
        } else if (key == "v_mps") {
            scenario.speed = detail::parse_double(value, line_no, key);
        } else if (key == "grid_halfwidth_um") {
            scenario.grid_halfwidth = detail::parse_double(value, line_no, key) * 1e-6;
        } else if (key == "grid_points") {
            scenario.grid_points = detail::parse_int(value, line_no, key);
        } else if (key == "spread_rel") {
            scenario.spread_rel = detail::parse_double(value, line_no, key);
        } else if (key == "n_velocity_samples") {
            scenario.n_velocity_samples = detail::parse_int(value, line_no, key);
        } else if (key == "fraunhofer_v_mps") {
            scenario.fraunhofer_speed = detail::parse_double(value, line_no, key);
        } else if (key == "pregrating_width_um") {
            scenario.pregrating_width = detail::parse_double(value, line_no, key) * 1e-6;
        } else if (key == "outputs") {
            scenario.out_quantum = scenario.out_velocity_avg = scenario.out_fraunhofer = false;
            for (const auto& item : detail::split(value, ',')) {
                if (item == "quantum") scenario.out_quantum = true;
                else if (item == "velocity-averaged") scenario.out_velocity_avg = true;
                else if (item == "fraunhofer") scenario.out_fraunhofer = true;
                else
                    throw ConfigError("line " + std::to_string(line_no) +
                                      ": unknown output '" + item + "'");
            }
        } else if (key == "mode") {
            if (value == "geometric-T") scenario.mode = Scenario::Mode::GeometricTime;
            else if (value == "fixed-pregrating-width")
                scenario.mode = Scenario::Mode::FixedPregratingWidth;
            else
                throw ConfigError("line " + std::to_string(line_no) + ": unknown mode '" +
                                  value + "'");
        } else if (key == "normalization") {
            if (value == "peak-unity") scenario.normalization = Normalization::PeakUnity;
            else if (value == "unit-area") scenario.normalization = Normalization::UnitArea;
            else if (value == "raw") scenario.normalization = Normalization::Raw;
            else
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": unknown normalization '" + value + "'");
        } else if (key == "threshold_scale") {
            if (value == "debroglie-width")
                scenario.threshold_scale = ThresholdScale::DeBroglieWidth;
            else if (value == "width-2pi") scenario.threshold_scale = ThresholdScale::WidthTwoPi;
            else
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": unknown threshold_scale '" + value + "'");
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                              "'");
        }
    }

    if (!any_key)
        throw ConfigError(
            "empty configuration; required keys: sigma0_um (or sweep_sigma0_um or "
            "scenario), d_nm, b_nm, n_slits, L_m, l_m, v_mps");
    scenario.validate();
    return scenario;
}

/// Canonical configuration text; parse_config(serialize(s)) reproduces s.
inline std::string serialize(const Scenario& scenario) {
    std::ostringstream out;
    if (scenario.sweep_sigma0.empty()) {
        out << "sigma0_um = " << detail::format_si(scenario.sigma0 / 1e-6) << "\n";
    } else {
        out << "sweep_sigma0_um = ";
        for (std::size_t i = 0; i < scenario.sweep_sigma0.size(); ++i)
            out << (i ? ", " : "") << detail::format_si(scenario.sweep_sigma0[i] / 1e-6);
        out << "\n";
    }
    out << "mass_amu = " << detail::format_si(scenario.mass_amu) << "\n";
    out << "n_slits = " << scenario.n_slits << "\n";
    out << "d_nm = " << detail::format_si(scenario.spacing / 1e-9) << "\n";
    out << "b_nm = " << detail::format_si(scenario.slit_half_width / 1e-9) << "\n";
    out << "x0_nm = " << detail::format_si(scenario.grating_center / 1e-9) << "\n";
    out << "L_m = " << detail::format_si(scenario.slit_to_grating) << "\n";
    out << "l_m = " << detail::format_si(scenario.grating_to_screen) << "\n";
    out << "v_mps = " << detail::format_si(scenario.speed) << "\n";
    out << "grid_halfwidth_um = " << detail::format_si(scenario.grid_halfwidth / 1e-6) << "\n";
    out << "grid_points = " << scenario.grid_points << "\n";
    out << "outputs = ";
    bool first = true;
    if (scenario.out_quantum) { out << "quantum"; first = false; }
    if (scenario.out_velocity_avg) { out << (first ? "" : ", ") << "velocity-averaged"; first = false; }
    if (scenario.out_fraunhofer) { out << (first ? "" : ", ") << "fraunhofer"; }
    out << "\n";
    out << "spread_rel = " << detail::format_si(scenario.spread_rel) << "\n";
    out << "n_velocity_samples = " << scenario.n_velocity_samples << "\n";
    out << "fraunhofer_v_mps = " << detail::format_si(scenario.fraunhofer_speed) << "\n";
    out << "mode = "
        << (scenario.mode == Scenario::Mode::GeometricTime ? "geometric-T"
                                                           : "fixed-pregrating-width")
        << "\n";
    out << "pregrating_width_um = " << detail::format_si(scenario.pregrating_width / 1e-6)
        << "\n";
    out << "normalization = "
        << (scenario.normalization == Normalization::PeakUnity  ? "peak-unity"
            : scenario.normalization == Normalization::UnitArea ? "unit-area"
                                                                : "raw")
        << "\n";
    out << "threshold_scale = "
        << (scenario.threshold_scale == ThresholdScale::DeBroglieWidth ? "debroglie-width"
                                                                       : "width-2pi")
        << "\n";
    return out.str();
}

} // namespace mwdiff

#endif
