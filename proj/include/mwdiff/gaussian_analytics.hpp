#ifndef MWDIFF_GAUSSIAN_ANALYTICS_HPP
#define MWDIFF_GAUSSIAN_ANALYTICS_HPP

#include <cmath>
#include <complex>

#include "mwdiff/errors.hpp"
#include "mwdiff/wavepacket.hpp"

namespace mwdiff {

using Complex = std::complex<double>;

/// exp(a·w² + b·w + c). Integrable over w iff Re(a) < 0.
struct ComplexQuadraticExponent {
    Complex a;  // w² coefficient
    Complex b;  // w coefficient
    Complex c;  // constant term
};

inline ComplexQuadraticExponent operator+(const ComplexQuadraticExponent& lhs,
                                          const ComplexQuadraticExponent& rhs) {
    return {lhs.a + rhs.a, lhs.b + rhs.b, lhs.c + rhs.c};
}

inline Complex evaluate(const ComplexQuadraticExponent& e, double w) {
    return std::exp((e.a * w + e.b) * w + e.c);
}

/// A Gaussian exponent together with the multiplicative complex constant in
/// front of it. Prefactors are kept out of the exponent so its terms stay
/// numerically small.
struct GaussianKernel {
    ComplexQuadraticExponent exponent;
    Complex prefactor;
};

/// ∫ exp(a·w² + b·w + c) dw = sqrt(−π/a)·exp(c − b²/4a), principal branch.
inline Complex gaussian_integral(const ComplexQuadraticExponent& e) {
    if (!(e.a.real() < 0.0))
        throw NonIntegrableError("gaussian_integral: Re(a) must be strictly negative");
    return std::sqrt(-constants::pi / e.a) * std::exp(e.c - e.b * e.b / (4.0 * e.a));
}

/// Free propagator sqrt(m/2πiħΔt)·exp[i·m(z−w)²/2ħΔt], expanded in w with the
/// endpoint z fixed.
inline GaussianKernel propagator_exponent(const Particle& particle, double z, double t,
                                          double t0) {
    if (!(t > t0)) throw std::domain_error("propagator_exponent: requires t > t0");
    const double kappa = particle.mass / (2.0 * particle.hbar * (t - t0));
    const Complex ik(0.0, kappa);
    GaussianKernel kernel;
    kernel.exponent = {ik, -2.0 * ik * z, ik * z * z};
    // sqrt of a negative-imaginary number; principal branch gives arg -pi/4
    kernel.prefactor = std::sqrt(Complex(0.0, -kappa / constants::pi));
    return kernel;
}

/// Gaussian aperture exp[−(w−center)²/2b²] expanded in w.
inline ComplexQuadraticExponent slit_exponent(double half_width, double center) {
    if (!(half_width > 0.0))
        throw std::invalid_argument("slit_exponent: half_width must be positive");
    const double inv2b2 = 1.0 / (2.0 * half_width * half_width);
    return {Complex(-inv2b2), Complex(2.0 * inv2b2 * center), Complex(-inv2b2 * center * center)};
}

namespace scaled {

// Everything below works in packet units: lengths in sigma0, times in tau0,
// m = hbar = 1. Phases then stay O(1)-O(1e3) where SI exponents would reach
// O(1e13).

inline GaussianKernel propagator(double z, double dt) {
    static const Particle unit{1.0, 1.0};
    return propagator_exponent(unit, z, dt, 0.0);
}

/// Freely evolved packet at the grating plane as a Gaussian kernel in the
/// transverse coordinate: the inner integral ∫K(w,t;x,0)·φ(x)dx carried out
/// in closed form. Equals pi^(-1/4)·(1+it)^(-1/2)·exp[−w²/2(1+it)].
inline GaussianKernel evolved_packet_kernel(double t) {
    if (!(t > 0.0)) throw std::domain_error("evolved_packet_kernel: requires t > 0");
    // K(w,t;x,0)·φ(x) expanded in the initial coordinate x:
    //   exp(a1·x² + beta·w·x + ik·w²), a1 = i/2t − 1/2, beta = −i/t
    const Complex ik(0.0, 0.5 / t);
    const Complex a1 = ik - 0.5;
    const Complex beta = -2.0 * ik;
    const Complex a_w = ik - beta * beta / (4.0 * a1);
    GaussianKernel kernel;
    kernel.exponent = {a_w, Complex(0.0), Complex(0.0)};
    kernel.prefactor = std::pow(constants::pi, -0.25) *
                       std::sqrt(Complex(0.0, -0.5 / (constants::pi * t))) *
                       std::sqrt(-constants::pi / a1);
    return kernel;
}

/// Amplitude at screen offset x behind one Gaussian slit: the packet evolves
/// for t_to_grating, is masked by the aperture, and evolves for
/// t_grating_to_screen; both integrals are done in closed form.
inline Complex slit_amplitude(double slit_center, double half_width, double t_to_grating,
                              double t_grating_to_screen, double x) {
    if (!(t_to_grating > 0.0) || !(t_grating_to_screen > 0.0))
        throw std::domain_error("slit_amplitude: flight times must be positive");
    const GaussianKernel at_grating = evolved_packet_kernel(t_to_grating);
    const GaussianKernel to_screen = propagator(x, t_grating_to_screen);
    const ComplexQuadraticExponent composed =
        to_screen.exponent + slit_exponent(half_width, slit_center) + at_grating.exponent;
    return at_grating.prefactor * to_screen.prefactor * gaussian_integral(composed);
}

} // namespace scaled

/// SI slit amplitude [m^(-1/2)]: nondimensionalizes to packet units, runs the
/// scaled engine, and restores the length unit.
inline Complex slit_amplitude(const GaussianPacket& packet, double slit_center,
                              double half_width, double t_to_grating,
                              double t_grating_to_screen, double x) {
    const double s0 = packet.sigma0;
    const double tau0 = intrinsic_time(packet);
    const Complex amp =
        scaled::slit_amplitude(slit_center / s0, half_width / s0, t_to_grating / tau0,
                               t_grating_to_screen / tau0, x / s0);
    return amp / std::sqrt(s0);
}

} // namespace mwdiff

#endif
