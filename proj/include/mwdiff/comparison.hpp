#ifndef MWDIFF_COMPARISON_HPP
#define MWDIFF_COMPARISON_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mwdiff/diffraction.hpp"
#include "mwdiff/quadrature.hpp"
#include "mwdiff/wavepacket.hpp"

namespace mwdiff {

/// de Broglie wavelength h/(m·v).
inline double de_broglie_wavelength(const Particle& particle, double speed) {
    if (!(speed > 0.0)) throw std::domain_error("de_broglie_wavelength: speed must be positive");
    return 2.0 * constants::pi * particle.hbar / (particle.mass * speed);
}

/// Longitudinal velocity spread of the beam, sampled for incoherent
/// averaging. Gaussian of standard deviation rel_spread·mean, truncated at
/// 0.05·mean so every sample stays positive.
struct VelocityDistribution {
    double mean;        // m/s
    double rel_spread;  // dimensionless
    int n_samples;
    enum class Scheme { GaussianTruncated } scheme = Scheme::GaussianTruncated;

    VelocityDistribution(double mean_, double rel_spread_, int n_samples_)
        : mean(mean_), rel_spread(rel_spread_), n_samples(n_samples_) {
        if (!(mean > 0.0))
            throw std::invalid_argument("VelocityDistribution: mean must be positive");
        if (!(rel_spread >= 0.0 && rel_spread < 1.5))
            throw std::invalid_argument("VelocityDistribution: rel_spread must be in [0, 1.5)");
        if (n_samples < 1)
            throw std::invalid_argument("VelocityDistribution: n_samples must be at least 1");
    }
};

/// (velocity, weight) samples with weights normalized to 1. Gauss-Legendre
/// nodes over the truncated support, weighted by the Gaussian density.
inline std::vector<std::pair<double, double>> velocity_samples(
    const VelocityDistribution& dist) {
    if (dist.rel_spread == 0.0 || dist.n_samples == 1) return {{dist.mean, 1.0}};
    const double sigma = dist.rel_spread * dist.mean;
    const double lo = std::max(0.05 * dist.mean, dist.mean - 4.0 * sigma);
    const double hi = dist.mean + 4.0 * sigma;
    auto [nodes, weights] = quad::gauss_legendre(dist.n_samples);
    std::vector<std::pair<double, double>> samples(dist.n_samples);
    double total = 0.0;
    for (int i = 0; i < dist.n_samples; ++i) {
        const double v = 0.5 * (hi + lo) + 0.5 * (hi - lo) * nodes[i];
        const double z = (v - dist.mean) / sigma;
        const double w = weights[i] * std::exp(-0.5 * z * z);
        samples[i] = {v, w};
        total += w;
    }
    for (auto& [v, w] : samples) w /= total;
    return samples;
}

/// Plane-wave grating pattern at the de Broglie wavelength:
/// exp(−b²k²θ²)·[sin(N·k·d·θ/2)/(N·sin(k·d·θ/2))]² with θ = x/l.
/// Removable singularities of the grating factor take their limit value.
inline double fraunhofer_intensity(const Particle& particle, const Grating& grating,
                                   const Beamline& beamline, double speed, double x) {
    const double k = 2.0 * constants::pi / de_broglie_wavelength(particle, speed);
    const double theta = x / beamline.grating_to_screen;
    const double bk_theta = grating.half_width * k * theta;
    const double envelope = std::exp(-bk_theta * bk_theta);
    const double n = grating.n_slits;
    const double phi = 0.5 * k * grating.spacing * theta;
    const double eps = phi - constants::pi * std::round(phi / constants::pi);
    double grating_factor;
    if (std::abs(eps) < 1e-5) {
        // series through the removable singularity: (sin Nε / N sin ε)² in ε
        const double r = 1.0 - (n * n - 1.0) * eps * eps / 6.0;
        grating_factor = r * r;
    } else {
        const double r = std::sin(n * phi) / (n * std::sin(phi));
        grating_factor = r * r;
    }
    return envelope * grating_factor;
}

/// Fraunhofer pattern sampled on the grid.
inline IntensityCurve fraunhofer_scan(const Particle& particle, const Grating& grating,
                                      const Beamline& beamline, double speed,
                                      const ScanGrid& grid,
                                      Normalization normalization = Normalization::PeakUnity) {
    IntensityCurve curve;
    curve.xs = grid.points();
    curve.values.resize(curve.xs.size());
    for (std::size_t i = 0; i < curve.xs.size(); ++i)
        curve.values[i] = fraunhofer_intensity(particle, grating, beamline, speed, curve.xs[i]);
    apply_normalization(curve, normalization);
    return curve;
}

/// Incoherent velocity average: each sample changes both flight times, the
/// single-velocity patterns are weight-summed pointwise in fixed sample
/// order, and the requested normalization is applied to the average.
inline IntensityCurve velocity_averaged_intensity(
    const GaussianPacket& packet, const Grating& grating, const Beamline& beamline,
    const VelocityDistribution& dist, const ScanGrid& grid,
    Normalization normalization = Normalization::PeakUnity) {
    IntensityCurve curve;
    curve.xs = grid.points();
    curve.values.assign(curve.xs.size(), 0.0);
    for (const auto& [v, weight] : velocity_samples(dist)) {
        const Beamline leg(beamline.slit_to_grating, beamline.grating_to_screen, v);
        for (std::size_t i = 0; i < curve.xs.size(); ++i)
            curve.values[i] += weight * intensity(packet, grating, leg, curve.xs[i]);
    }
    apply_normalization(curve, normalization);
    return curve;
}

/// Comparison scale for dispersion_threshold.
enum class ThresholdScale {
    DeBroglieWidth,  // 2·λ_dB·B(T): wavefront-curvature sensitivity scale
    WidthTwoPi       // (2π·B(T))²
};

/// Slit count above which the grating-edge dispersive shear N·d·(ħT/mσ₀²)
/// outgrows the comparison length scale, making the aging phase visible in
/// the pattern. Returns the real-valued crossing (patterns need ceil(N*)
/// slits or more); +inf when the pre-grating flight produces no shear.
inline double dispersion_threshold(const GaussianPacket& packet, const Grating& grating,
                                   const Beamline& beamline,
                                   ThresholdScale scale = ThresholdScale::DeBroglieWidth) {
    const double t = beamline.time_to_grating();
    const double shear_per_slit = grating.spacing * (t / intrinsic_time(packet));
    if (!(shear_per_slit > 0.0)) return std::numeric_limits<double>::infinity();
    const double width_t = width(packet, t);
    double scale_length;
    if (scale == ThresholdScale::DeBroglieWidth) {
        const double lambda = de_broglie_wavelength(packet.particle, beamline.speed);
        scale_length = std::sqrt(2.0 * lambda * width_t);
    } else {
        scale_length = 2.0 * constants::pi * width_t;
    }
    return scale_length / shear_per_slit;
}

/// L2 distance between unit-L2-normalized curves on the same grid; 0 for
/// identical shapes, scale-invariant.
inline double pattern_distance(const IntensityCurve& lhs, const IntensityCurve& rhs) {
    if (lhs.xs.size() != rhs.xs.size())
        throw std::invalid_argument("pattern_distance: grid size mismatch");
    for (std::size_t i = 0; i < lhs.xs.size(); ++i)
        if (lhs.xs[i] != rhs.xs[i])
            throw std::invalid_argument("pattern_distance: grids differ");
    double na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < lhs.values.size(); ++i) {
        na += lhs.values[i] * lhs.values[i];
        nb += rhs.values[i] * rhs.values[i];
    }
    na = std::sqrt(na);
    nb = std::sqrt(nb);
    if (!(na > 0.0) || !(nb > 0.0))
        throw std::invalid_argument("pattern_distance: zero-norm curve");
    double acc = 0.0;
    for (std::size_t i = 0; i < lhs.values.size(); ++i) {
        const double d = lhs.values[i] / na - rhs.values[i] / nb;
        acc += d * d;
    }
    return std::sqrt(acc);
}

/// (I_max − I_min)/(I_max + I_min) between the fringe containing x = 0 and
/// the first minimum to its right.
inline double fringe_visibility(const IntensityCurve& curve) {
    const std::size_t n = curve.xs.size();
    if (n < 3) throw std::invalid_argument("fringe_visibility: curve too short");
    std::size_t center = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(curve.xs[i]) < std::abs(curve.xs[center])) center = i;
    std::size_t i = center;
    while (i + 1 < n && curve.values[i + 1] <= curve.values[i]) ++i;
    const double peak = curve.values[center];
    const double valley = curve.values[i];
    return (peak - valley) / (peak + valley);
}

} // namespace mwdiff

#endif
