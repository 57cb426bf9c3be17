// Minimal library walkthrough: fullerene two-slit pattern and a few packet
// diagnostics, printed to stdout.

#include <cstdio>

#include "mwdiff/mwdiff.hpp"

int main() {
    using namespace mwdiff;

    const GaussianPacket packet(0.5e-5, Particle::from_amu(720.0));
    const Grating grating(2, 1e-7, 1.8e-8);
    const Beamline beamline(0.1, 1.25, 200.0);

    const double tau0 = intrinsic_time(packet);
    const double t_grating = beamline.time_to_grating();
    std::printf("tau0 = %.4g s, T = %.4g s, T/tau0 = %.4g\n", tau0, t_grating,
                t_grating / tau0);
    std::printf("lambda_dB = %.4g m\n",
                de_broglie_wavelength(packet.particle, beamline.speed));
    std::printf("dispersion threshold N* = %.1f slits\n",
                dispersion_threshold(packet, grating, beamline));

    const auto cov = covariance(packet, t_grating);
    std::printf("det Sigma / (hbar^2/4) at the grating = %.12f\n",
                cov.det / (0.25 * constants::hbar * constants::hbar));

    const IntensityCurve curve = intensity_scan(packet, grating, beamline,
                                                ScanGrid(-40e-6, 40e-6, 81));
    std::printf("\n  x [um]   intensity (peak-unity)\n");
    for (std::size_t i = 0; i < curve.xs.size(); i += 8)
        std::printf("  %7.2f  %.6f\n", curve.xs[i] * 1e6, curve.values[i]);
    return 0;
}
