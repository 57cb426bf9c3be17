#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include "mwdiff/comparison.hpp"

using namespace mwdiff;

namespace {

GaussianPacket fullerene_packet() {
    return GaussianPacket(0.5e-5, Particle::from_amu(720.0));
}

Grating reference_grating(int n_slits) { return Grating(n_slits, 1e-7, 1.8e-8); }

Beamline reference_beamline() { return Beamline(0.1, 1.25, 200.0); }

} // namespace

TEST_CASE("fraunhofer pattern peaks at the axis and stays in [0, 1]") {
    const Particle particle = Particle::from_amu(720.0);
    const auto grating = reference_grating(5);
    const auto beamline = reference_beamline();
    CHECK(fraunhofer_intensity(particle, grating, beamline, 220.0, 0.0) == 1.0);
    for (double x = -40e-6; x <= 40e-6; x += 1.3e-6) {
        const double value = fraunhofer_intensity(particle, grating, beamline, 220.0, x);
        CHECK(value >= 0.0);
        CHECK(value <= 1.0);
        CHECK(fraunhofer_intensity(particle, grating, beamline, 220.0, -x) ==
              Approx(value).margin(1e-15));
    }
}

TEST_CASE("fraunhofer zeros and principal maxima sit at the textbook angles") {
    const Particle particle = Particle::from_amu(720.0);
    const int n_slits = 5;
    const auto grating = reference_grating(n_slits);
    const auto beamline = reference_beamline();
    const double speed = 220.0;
    const double lambda = de_broglie_wavelength(particle, speed);
    const double ell = beamline.grating_to_screen;

    for (int j : {1, 2, 3, 4, 6}) {  // skip multiples of N
        if (j % n_slits == 0) continue;
        const double x = lambda / (n_slits * grating.spacing) * j * ell;
        CHECK(fraunhofer_intensity(particle, grating, beamline, speed, x) < 1e-12);
    }

    for (int j : {1, 2}) {
        const double theta = j * lambda / grating.spacing;
        const double k = 2.0 * constants::pi / lambda;
        const double envelope = std::exp(-std::pow(grating.half_width * k * theta, 2));
        CHECK(fraunhofer_intensity(particle, grating, beamline, speed, theta * ell) ==
              Approx(envelope).epsilon(1e-10));
    }
}

TEST_CASE("fraunhofer grating factor is continuous across its removable poles") {
    const Particle particle = Particle::from_amu(720.0);
    const auto beamline = reference_beamline();
    const double speed = 220.0;
    const double lambda = de_broglie_wavelength(particle, speed);

    // physical aperture, nudges tight enough that the envelope drift is
    // below the tolerance
    const auto grating = reference_grating(7);
    const double x_pole = lambda / grating.spacing * beamline.grating_to_screen;
    const double at_pole = fraunhofer_intensity(particle, grating, beamline, speed, x_pole);
    for (double nudge : {-1e-11, -1e-12, 1e-12, 1e-11}) {
        const double near =
            fraunhofer_intensity(particle, grating, beamline, speed, x_pole + nudge);
        CHECK(near == Approx(at_pole).epsilon(1e-6));
    }

    // vanishing aperture flattens the envelope, exposing the grating factor
    // on both sides of the series switchover
    const Grating point_slits(7, 1e-7, 1e-12);
    const double flat_pole =
        fraunhofer_intensity(particle, point_slits, beamline, speed, x_pole);
    CHECK(flat_pole == Approx(1.0).epsilon(1e-8));
    for (double nudge : {-3e-10, -3e-11, 3e-11, 3e-10}) {
        const double near =
            fraunhofer_intensity(particle, point_slits, beamline, speed, x_pole + nudge);
        CHECK(near == Approx(flat_pole).epsilon(1e-7));
    }
}

TEST_CASE("velocity distribution sampling") {
    CHECK_THROWS_AS(VelocityDistribution(0.0, 0.6, 21), std::invalid_argument);
    CHECK_THROWS_AS(VelocityDistribution(200.0, -0.1, 21), std::invalid_argument);
    CHECK_THROWS_AS(VelocityDistribution(200.0, 1.5, 21), std::invalid_argument);
    CHECK_THROWS_AS(VelocityDistribution(200.0, 0.6, 0), std::invalid_argument);

    const auto degenerate = velocity_samples(VelocityDistribution(200.0, 0.0, 21));
    REQUIRE(degenerate.size() == 1);
    CHECK(degenerate[0].first == 200.0);
    CHECK(degenerate[0].second == 1.0);

    const auto samples = velocity_samples(VelocityDistribution(200.0, 0.6, 21));
    REQUIRE(samples.size() == 21);
    double total = 0.0;
    for (const auto& [v, w] : samples) {
        CHECK(v > 0.0);
        CHECK(w > 0.0);
        total += w;
    }
    CHECK(total == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("zero spread reproduces the single-velocity scan") {
    const auto packet = fullerene_packet();
    const auto grating = reference_grating(2);
    const auto beamline = reference_beamline();
    const ScanGrid grid(-40e-6, 40e-6, 201);
    const auto averaged = velocity_averaged_intensity(
        packet, grating, beamline, VelocityDistribution(200.0, 0.0, 21), grid,
        Normalization::Raw);
    const auto single = intensity_scan(packet, grating, beamline, grid, Normalization::Raw);
    for (std::size_t i = 0; i < single.values.size(); ++i)
        CHECK(averaged.values[i] == Approx(single.values[i]).epsilon(1e-12));
}

TEST_CASE("averaged intensity lies between the constituent extremes") {
    const auto packet = fullerene_packet();
    const auto grating = reference_grating(2);
    const auto beamline = reference_beamline();
    const ScanGrid grid(-40e-6, 40e-6, 101);
    const VelocityDistribution dist(200.0, 0.6, 5);

    const auto averaged =
        velocity_averaged_intensity(packet, grating, beamline, dist, grid,
                                    Normalization::Raw);
    std::vector<IntensityCurve> parts;
    for (const auto& [v, w] : velocity_samples(dist))
        parts.push_back(intensity_scan(packet, grating,
                                       Beamline(beamline.slit_to_grating,
                                                beamline.grating_to_screen, v),
                                       grid, Normalization::Raw));
    for (std::size_t i = 0; i < averaged.values.size(); ++i) {
        double lo = parts[0].values[i], hi = parts[0].values[i];
        for (const auto& part : parts) {
            lo = std::min(lo, part.values[i]);
            hi = std::max(hi, part.values[i]);
        }
        CHECK(averaged.values[i] >= lo * (1.0 - 1e-12));
        CHECK(averaged.values[i] <= hi * (1.0 + 1e-12));
    }
}

TEST_CASE("a 60 percent velocity spread washes out two-slit fringes") {
    const auto packet = fullerene_packet();
    const auto grating = reference_grating(2);
    const auto beamline = reference_beamline();
    const ScanGrid grid(-40e-6, 40e-6, 2001);

    const auto single = intensity_scan(packet, grating, beamline, grid);
    const auto averaged = velocity_averaged_intensity(
        packet, grating, beamline, VelocityDistribution(200.0, 0.6, 21), grid);
    const double v_single = fringe_visibility(single);
    const double v_avg = fringe_visibility(averaged);
    CHECK(v_single > 0.999);
    CHECK(v_avg < v_single);
    CHECK(v_avg < 0.9);
}

TEST_CASE("dispersion threshold limits and scalings") {
    const auto packet = fullerene_packet();
    const auto grating = reference_grating(2);

    // vanishing pre-grating flight leaves no dispersive shear: the threshold
    // diverges, reported as the infinity sentinel once T underflows
    const Beamline no_flight(1e-300, 1.25, 1e300);
    CHECK(std::isinf(dispersion_threshold(packet, grating, no_flight)));
    const Beamline slow(0.1, 1.25, 200.0);
    const Beamline fast(0.1, 1.25, 2e14);
    CHECK(dispersion_threshold(packet, grating, fast) >
          1e5 * dispersion_threshold(packet, grating, slow));

    // doubling the spacing halves the threshold exactly
    const Grating doubled(2, 2e-7, 1.8e-8);
    CHECK(dispersion_threshold(packet, doubled, slow) ==
          Approx(0.5 * dispersion_threshold(packet, grating, slow)).epsilon(1e-14));

    // doubling the pre-grating flight halves it while the packet stays narrow
    const Beamline longer(0.2, 1.25, 200.0);
    CHECK(dispersion_threshold(packet, grating, longer) ==
          Approx(0.5 * dispersion_threshold(packet, grating, slow)).epsilon(1e-5));
}

TEST_CASE("dispersion threshold hits the expected order on the reference setup") {
    const auto packet = fullerene_packet();
    const auto grating = reference_grating(2);
    const auto beamline = reference_beamline();
    const double n_star = dispersion_threshold(packet, grating, beamline);
    CHECK(n_star == Approx(29.84).epsilon(1e-3));
    CHECK(dispersion_threshold(packet, grating, beamline, ThresholdScale::WidthTwoPi) ==
          Approx(178084.0).epsilon(1e-3));
}

TEST_CASE("pattern distance is a scale-invariant metric") {
    std::mt19937 rng(7321);
    std::uniform_real_distribution<double> mag(0.0, 3.0);
    ScanGrid grid(-1.0, 1.0, 64);

    auto random_curve = [&]() {
        IntensityCurve curve;
        curve.xs = grid.points();
        curve.values.resize(curve.xs.size());
        for (auto& v : curve.values) v = mag(rng);
        return curve;
    };

    for (int trial = 0; trial < 25; ++trial) {
        const auto a = random_curve();
        const auto b = random_curve();
        const auto c = random_curve();

        CHECK(pattern_distance(a, a) == 0.0);
        CHECK(pattern_distance(a, b) == pattern_distance(b, a));
        CHECK(pattern_distance(a, c) <=
              pattern_distance(a, b) + pattern_distance(b, c) + 1e-12);
        CHECK(pattern_distance(a, b) <= 2.0);

        IntensityCurve scaled_up = a;
        for (auto& v : scaled_up.values) v *= 3.0;
        CHECK(pattern_distance(a, scaled_up) < 1e-12);
    }

    IntensityCurve mismatched;
    mismatched.xs = ScanGrid(-1.0, 1.0, 32).points();
    mismatched.values.assign(32, 1.0);
    CHECK_THROWS_AS(pattern_distance(random_curve(), mismatched), std::invalid_argument);
}
