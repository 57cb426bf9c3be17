#include <catch2/catch.hpp>

#include <cmath>

#include "mwdiff/quadrature.hpp"

using namespace mwdiff;

TEST_CASE("gauss-legendre rule integrates low-order polynomials exactly") {
    auto [nodes, weights] = quad::gauss_legendre(5);
    double x2 = 0.0, x8 = 0.0, total = 0.0;
    for (int i = 0; i < 5; ++i) {
        total += weights[i];
        x2 += weights[i] * nodes[i] * nodes[i];
        x8 += weights[i] * std::pow(nodes[i], 8);
    }
    CHECK(total == Approx(2.0).epsilon(1e-14));
    CHECK(x2 == Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(x8 == Approx(2.0 / 9.0).epsilon(1e-13));  // degree 8 <= 2*5-1
}

TEST_CASE("simpson and gauss-legendre agree on an oscillatory gaussian") {
    auto f = [](double w) { return std::exp(Complex(-0.5 * w * w, 3.0 * w)); };
    const Complex simpson =
        quad::integrate_certified(f, -10.0, 10.0, 401, 1e-9, 3, QuadratureRule::CompositeSimpson);
    const Complex gauss =
        quad::integrate_certified(f, -10.0, 10.0, 401, 1e-9, 3, QuadratureRule::GaussLegendre);
    CHECK(std::abs(simpson - gauss) / std::abs(simpson) < 1e-9);
    // closed form sqrt(2 pi) exp(-9/2)
    const Complex exact(std::sqrt(2.0 * constants::pi) * std::exp(-4.5), 0.0);
    CHECK(std::abs(simpson - exact) / std::abs(exact) < 1e-9);
}

TEST_CASE("certified integration throws on non-convergence") {
    auto wild = [](double w) { return std::exp(Complex(0.0, 2000.0 * w * w)); };
    CHECK_THROWS_AS(quad::integrate_certified(wild, -8.0, 8.0, 5, 1e-12, 1),
                    OracleDivergenceError);
}

TEST_CASE("oracle amplitude reproduces frozen brute-force values") {
    const Complex at0 = oracle::amplitude(2.0, 0.25, 1.0, 1.0, 0.0);
    const Complex expect0(-0.004294027949558467, 0.045424713352982629);
    CHECK(std::abs(at0 - expect0) / std::abs(expect0) < 1e-7);

    const Complex at5 = oracle::amplitude(2.0, 0.25, 1.0, 1.0, 5.0);
    const Complex expect5(-0.011920268154393546, -0.050200734997367948);
    CHECK(std::abs(at5 - expect5) / std::abs(expect5) < 1e-7);
}

TEST_CASE("oracle amplitude at the symmetric point is finite and nonzero") {
    const Complex value = oracle::amplitude(0.0, 0.25, 1.0, 1.0, 0.0);
    CHECK(std::isfinite(value.real()));
    CHECK(std::isfinite(value.imag()));
    CHECK(std::abs(value) > 0.0);
}

TEST_CASE("oracle spec invariants are enforced") {
    QuadratureSpec narrow;
    narrow.half_extent_in_widths = 5.0;
    CHECK_THROWS_AS(oracle::amplitude(0.0, 0.25, 1.0, 1.0, 0.0, narrow),
                    std::invalid_argument);
    QuadratureSpec sparse;
    sparse.nodes_per_axis = 101;
    CHECK_THROWS_AS(oracle::amplitude(0.0, 0.25, 1.0, 1.0, 0.0, sparse),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle::amplitude(0.0, 0.25, 0.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("integration window of six local widths is actually binding") {
    const std::vector<double> screen = {1.0};
    const auto full = oracle::slit_amplitude_windowed(2.0, 0.25, 1.0, 1.0, screen, 8.0,
                                                      8.0 * 0.25, 1601,
                                                      QuadratureRule::CompositeSimpson);
    const auto reference = oracle::slit_amplitude_windowed(2.0, 0.25, 1.0, 1.0, screen, 8.0,
                                                           8.0 * 0.25, 3201,
                                                           QuadratureRule::CompositeSimpson);
    CHECK(std::abs(full[0] - reference[0]) / std::abs(reference[0]) < 1e-9);

    // below six widths the truncation error dominates the tolerance
    const auto clipped = oracle::slit_amplitude_windowed(2.0, 0.25, 1.0, 1.0, screen, 3.0,
                                                         3.0 * 0.25, 1601,
                                                         QuadratureRule::CompositeSimpson);
    CHECK(std::abs(clipped[0] - reference[0]) / std::abs(reference[0]) > 1e-6);
}

TEST_CASE("oracle inner integral reproduces the evolved packet") {
    for (double w : {0.0, 0.9, 2.5}) {
        const Complex brute = oracle::evolved_packet(1.0, w);
        const Complex eta(1.0, 1.0);
        const Complex closed = std::pow(constants::pi, -0.25) / std::sqrt(eta) *
                               std::exp(-w * w / (2.0 * eta));
        CHECK(std::abs(brute - closed) / std::abs(closed) < 1e-8);
    }
}

TEST_CASE("gauss-legendre oracle route cross-checks the simpson default") {
    QuadratureSpec gauss;
    gauss.rule = QuadratureRule::GaussLegendre;
    const Complex simpson = oracle::amplitude(2.0, 0.25, 1.0, 1.0, 1.0);
    const Complex legendre = oracle::amplitude(2.0, 0.25, 1.0, 1.0, 1.0, gauss);
    CHECK(std::abs(simpson - legendre) / std::abs(simpson) < 1e-7);
}
