#ifndef MWDIFF_DIFFRACTION_HPP
#define MWDIFF_DIFFRACTION_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mwdiff/gaussian_analytics.hpp"
#include "mwdiff/wavepacket.hpp"

namespace mwdiff {

/// Equally spaced Gaussian apertures. Apertures must not merge: half_width
/// strictly below the spacing.
struct Grating {
    int n_slits;
    double spacing;     // m
    double half_width;  // m
    double center;      // m

    Grating(int n_slits_, double spacing_, double half_width_, double center_ = 0.0)
        : n_slits(n_slits_), spacing(spacing_), half_width(half_width_), center(center_) {
        if (n_slits < 1) throw std::invalid_argument("Grating: n_slits must be at least 1");
        if (!(spacing > 0.0)) throw std::invalid_argument("Grating: spacing must be positive");
        if (!(half_width > 0.0))
            throw std::invalid_argument("Grating: half_width must be positive");
        if (!(half_width < spacing))
            throw std::invalid_argument("Grating: half_width must be below the slit spacing");
    }
};

/// Flight geometry: source slit -> grating -> screen, traversed at the
/// longitudinal speed. Transverse dynamics use the flight times only.
struct Beamline {
    double slit_to_grating;    // m
    double grating_to_screen;  // m
    double speed;              // m/s

    Beamline(double slit_to_grating_, double grating_to_screen_, double speed_)
        : slit_to_grating(slit_to_grating_), grating_to_screen(grating_to_screen_),
          speed(speed_) {
        if (!(slit_to_grating > 0.0))
            throw std::invalid_argument("Beamline: slit_to_grating must be positive");
        if (!(grating_to_screen > 0.0))
            throw std::invalid_argument("Beamline: grating_to_screen must be positive");
        if (!(speed > 0.0)) throw std::invalid_argument("Beamline: speed must be positive");
    }

    double time_to_grating() const { return slit_to_grating / speed; }
    double time_grating_to_screen() const { return grating_to_screen / speed; }
};

enum class Normalization { PeakUnity, UnitArea, Raw };

/// Screen pattern sampled on a strictly increasing grid.
struct IntensityCurve {
    std::vector<double> xs;      // m
    std::vector<double> values;  // peak-unity/unit-area: dimensionless; raw: 1/m
    Normalization normalization = Normalization::Raw;
};

struct ScanGrid {
    double x_min;
    double x_max;
    int n_points;

    ScanGrid(double x_min_, double x_max_, int n_points_)
        : x_min(x_min_), x_max(x_max_), n_points(n_points_) {
        if (n_points < 2) throw std::invalid_argument("ScanGrid: need at least 2 points");
        if (!(x_min < x_max)) throw std::invalid_argument("ScanGrid: x_min must be below x_max");
    }

    std::vector<double> points() const {
        std::vector<double> xs(n_points);
        const double h = (x_max - x_min) / (n_points - 1);
        for (int i = 0; i < n_points; ++i) xs[i] = x_min + h * i;
        return xs;
    }
};

/// Slit centers center − (N−1)·d/2 + n·d, n = 0..N−1.
inline std::vector<double> slit_centers(const Grating& grating) {
    std::vector<double> centers(grating.n_slits);
    const double first = grating.center - (grating.n_slits - 1) * grating.spacing / 2.0;
    for (int n = 0; n < grating.n_slits; ++n) centers[n] = first + n * grating.spacing;
    return centers;
}

/// Coherent sum of per-slit amplitudes at one screen point, modulus squared.
/// Raw SI value [1/m]; not normalized.
inline double intensity(const GaussianPacket& packet, const Grating& grating,
                        const Beamline& beamline, double x) {
    const double s0 = packet.sigma0;
    const double tau0 = intrinsic_time(packet);
    const double t_grating = beamline.time_to_grating() / tau0;
    const double t_screen = beamline.time_grating_to_screen() / tau0;
    const double b = grating.half_width / s0;
    Complex sum(0.0);
    for (const double slit : slit_centers(grating))
        sum += scaled::slit_amplitude(slit / s0, b, t_grating, t_screen, x / s0);
    return std::norm(sum) / s0;
}

inline void apply_normalization(IntensityCurve& curve, Normalization normalization) {
    if (normalization == Normalization::PeakUnity) {
        const double peak = *std::max_element(curve.values.begin(), curve.values.end());
        if (peak > 0.0)
            for (double& v : curve.values) v /= peak;
    } else if (normalization == Normalization::UnitArea) {
        double area = 0.0;  // trapezoid
        for (std::size_t i = 0; i + 1 < curve.xs.size(); ++i)
            area += 0.5 * (curve.values[i] + curve.values[i + 1]) *
                    (curve.xs[i + 1] - curve.xs[i]);
        if (area > 0.0)
            for (double& v : curve.values) v /= area;
    }
    curve.normalization = normalization;
}

/// Pointwise intensity scan on a uniform grid. Grid points are independent;
/// they may be evaluated in any order (the output ordering is fixed by x).
inline IntensityCurve intensity_scan(const GaussianPacket& packet, const Grating& grating,
                                     const Beamline& beamline, const ScanGrid& grid,
                                     Normalization normalization = Normalization::PeakUnity) {
    IntensityCurve curve;
    curve.xs = grid.points();
    curve.values.resize(curve.xs.size());
    for (std::size_t i = 0; i < curve.xs.size(); ++i)
        curve.values[i] = intensity(packet, grating, beamline, curve.xs[i]);
    apply_normalization(curve, normalization);
    return curve;
}

/// Flight time after which the packet width reaches target_width:
/// tau0·sqrt((W/sigma0)² − 1).
inline double fixed_pregrating_width_time(const GaussianPacket& packet, double target_width) {
    const double ratio = target_width / packet.sigma0;
    if (ratio < 1.0)
        throw std::domain_error(
            "fixed_pregrating_width_time: target width below the initial width");
    return intrinsic_time(packet) * std::sqrt((ratio - 1.0) * (ratio + 1.0));
}

} // namespace mwdiff

#endif
