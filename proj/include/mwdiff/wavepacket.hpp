#ifndef MWDIFF_WAVEPACKET_HPP
#define MWDIFF_WAVEPACKET_HPP

#include <cmath>
#include <stdexcept>

#include "mwdiff/constants.hpp"

namespace mwdiff {

/// A point particle in SI units. hbar is carried alongside the mass so that
/// scaled-unit test setups (m = hbar = 1) use the same code paths as SI runs.
struct Particle {
    double mass;                     // kg
    double hbar = constants::hbar;   // J·s

    Particle(double mass_, double hbar_ = constants::hbar) : mass(mass_), hbar(hbar_) {
        if (!(mass > 0.0)) throw std::invalid_argument("Particle: mass must be positive");
        if (!(hbar > 0.0)) throw std::invalid_argument("Particle: hbar must be positive");
    }

    static Particle from_amu(double mass_amu, double hbar_ = constants::hbar) {
        return Particle(mass_amu * constants::atomic_mass_unit, hbar_);
    }
};

/// Free Gaussian wave packet, prepared with 1/e half-width sigma0 at t = 0.
struct GaussianPacket {
    double sigma0;     // m
    Particle particle;

    GaussianPacket(double sigma0_, Particle particle_) : sigma0(sigma0_), particle(particle_) {
        if (!(sigma0 > 0.0)) throw std::invalid_argument("GaussianPacket: sigma0 must be positive");
    }
};

/// Symmetrized position-momentum covariance matrix of the packet.
///
/// det is evaluated at construction in sigma0/hbar-scaled units, where the
/// saturation algebra cancels without precision loss; forming
/// var_x*var_p - cov_xp^2 from the SI entries loses ~ (t/tau0)^2 * eps
/// relative accuracy once t >> tau0.
struct CovarianceMatrix {
    double var_x;    // m^2
    double var_p;    // (kg m/s)^2
    double cov_xp;   // J·s, <xp+px>/2
    double det;      // m^2 (kg m/s)^2

    double determinant() const { return det; }
};

/// Modulus and phase of the freely evolved packet at one space-time point.
/// The x-independent phase of the propagator normalization is fixed to zero,
/// so phase carries only the dispersive (position-dependent) part.
struct EvolvedAmplitude {
    double modulus;  // m^(-1/2)
    double phase;    // rad
};

/// Dispersion timescale m·sigma0²/ħ: the packet width grows by sqrt(2) after
/// one intrinsic time.
inline double intrinsic_time(const GaussianPacket& packet) {
    return packet.particle.mass * packet.sigma0 * packet.sigma0 / packet.particle.hbar;
}

/// Packet 1/e half-width after free flight: sigma0·sqrt(1 + (t/tau0)²).
inline double width(const GaussianPacket& packet, double t) {
    if (t < 0.0) throw std::domain_error("width: t must be nonnegative");
    return packet.sigma0 * std::hypot(1.0, t / intrinsic_time(packet));
}

/// Position-dependent phase x²·(t/tau0)/(2·B²(t)) accumulated by dispersion.
inline double dispersive_phase(const GaussianPacket& packet, double x, double t) {
    if (t < 0.0) throw std::domain_error("dispersive_phase: t must be nonnegative");
    const double u = t / intrinsic_time(packet);
    const double xi = x / packet.sigma0;
    return xi * xi * u / (2.0 * (1.0 + u * u));
}

/// Freely evolved packet: modulus (B(t)·sqrt(pi))^(-1/2)·exp(-x²/2B²) and
/// dispersive phase.
inline EvolvedAmplitude evolved_amplitude(const GaussianPacket& packet, double x, double t) {
    if (t < 0.0) throw std::domain_error("evolved_amplitude: t must be nonnegative");
    const double b_t = width(packet, t);
    const double xi = x / b_t;
    const double modulus = std::exp(-0.5 * xi * xi) / std::sqrt(b_t * std::sqrt(constants::pi));
    return {modulus, dispersive_phase(packet, x, t)};
}

/// Local velocity of the probability flow, t·x/(tau0² + t²). Zero at the
/// packet center and at t = 0; tends to the ballistic x/t as t → ∞.
inline double velocity_field(const GaussianPacket& packet, double x, double t) {
    if (t < 0.0) throw std::domain_error("velocity_field: t must be nonnegative");
    const double tau0 = intrinsic_time(packet);
    return t * x / (tau0 * tau0 + t * t);
}

/// Covariance matrix of the evolved packet. The positive off-diagonal sign
/// reflects faster components gathering at the packet front.
inline CovarianceMatrix covariance(const GaussianPacket& packet, double t) {
    if (t < 0.0) throw std::domain_error("covariance: t must be nonnegative");
    const double hbar = packet.particle.hbar;
    const double s0 = packet.sigma0;
    const double half_u = 0.5 * (t / intrinsic_time(packet));
    const double q = half_u * half_u;                    // u^2/4
    const double det_scaled = (0.25 + q) - q;            // exact cancellation
    CovarianceMatrix cov{};
    cov.var_x = s0 * s0 * (0.5 + 2.0 * q);
    cov.var_p = 0.5 * (hbar / s0) * (hbar / s0);
    cov.cov_xp = hbar * half_u;
    cov.det = hbar * hbar * det_scaled;
    return cov;
}

/// Symmetrized correlation <xp+px> in units of ħ implied by an uncertainty
/// product Δx·Δp = C·h together with a saturated covariance determinant:
/// 2·sqrt((2πC)² − 1/4).
inline double correlation_from_empirical(double c_empirical) {
    const double product = 2.0 * constants::pi * c_empirical;  // Δx·Δp in ħ
    if (product < 0.5)
        throw std::domain_error(
            "correlation_from_empirical: C*h below the Schroedinger bound hbar/2");
    return 2.0 * std::sqrt(product * product - 0.25);
}

} // namespace mwdiff

#endif
