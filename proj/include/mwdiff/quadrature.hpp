#ifndef MWDIFF_QUADRATURE_HPP
#define MWDIFF_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mwdiff/errors.hpp"
#include "mwdiff/gaussian_analytics.hpp"

namespace mwdiff {

enum class QuadratureRule { CompositeSimpson, GaussLegendre };

/// Brute-force integration settings. half_extent_in_widths below 6 or
/// nodes_per_axis below 401 void the default convergence certificate;
/// oracle_amplitude rejects such specs.
struct QuadratureSpec {
    double half_extent_in_widths = 8.0;
    int nodes_per_axis = 401;
    QuadratureRule rule = QuadratureRule::CompositeSimpson;
};

namespace quad {

/// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    std::vector<double> nodes(n), weights(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return {std::move(nodes), std::move(weights)};
}

/// Sample points of a rule on [lo, hi]; Simpson needs an odd count.
inline std::vector<double> rule_nodes(QuadratureRule rule, double lo, double hi, int n) {
    std::vector<double> xs;
    if (rule == QuadratureRule::CompositeSimpson) {
        if (n % 2 == 0) ++n;
        xs.resize(n);
        const double h = (hi - lo) / (n - 1);
        for (int i = 0; i < n; ++i) xs[i] = lo + h * i;
    } else {
        auto [gn, gw] = gauss_legendre(n);
        xs.resize(n);
        for (int i = 0; i < n; ++i) xs[i] = 0.5 * (hi + lo) + 0.5 * (hi - lo) * gn[i];
    }
    return xs;
}

/// Quadrature weights matching rule_nodes.
inline std::vector<double> rule_weights(QuadratureRule rule, double lo, double hi, int n) {
    std::vector<double> ws;
    if (rule == QuadratureRule::CompositeSimpson) {
        if (n % 2 == 0) ++n;
        ws.assign(n, 0.0);
        const double h = (hi - lo) / (n - 1);
        ws[0] = ws[n - 1] = h / 3.0;
        for (int i = 1; i < n - 1; ++i) ws[i] = (i % 2 ? 4.0 : 2.0) * h / 3.0;
    } else {
        auto [gn, gw] = gauss_legendre(n);
        ws.resize(n);
        for (int i = 0; i < n; ++i) ws[i] = 0.5 * (hi - lo) * gw[i];
    }
    return ws;
}

template <typename F>
Complex integrate(F&& f, double lo, double hi, int n,
                  QuadratureRule rule = QuadratureRule::CompositeSimpson) {
    const auto xs = rule_nodes(rule, lo, hi, n);
    const auto ws = rule_weights(rule, lo, hi, n);
    Complex acc(0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) acc += ws[i] * f(xs[i]);
    return acc;
}

/// Node-doubling until successive results agree to rel_tol; at most
/// max_doublings refinements beyond the starting count.
template <typename F>
Complex integrate_certified(F&& f, double lo, double hi, int n0, double rel_tol,
                            int max_doublings = 3,
                            QuadratureRule rule = QuadratureRule::CompositeSimpson) {
    Complex prev = integrate(f, lo, hi, n0, rule);
    int n = n0;
    for (int level = 0; level < max_doublings; ++level) {
        n = 2 * n - 1;
        const Complex cur = integrate(f, lo, hi, n, rule);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
        prev = cur;
    }
    throw OracleDivergenceError("integrate_certified: no convergence after " +
                                std::to_string(max_doublings) + " doublings");
}

} // namespace quad

namespace oracle {

/// Raw double integral of the slit chain for given windows and node count.
/// Packet units (sigma0 = tau0 = 1); no convergence certificate.
///
/// The inner integral over the initial coordinate depends only on the w node,
/// so it is evaluated once per w and shared across screen points.
inline std::vector<Complex> slit_amplitude_windowed(
    double slit_center, double half_width, double t_to_grating, double t_grating_to_screen,
    const std::vector<double>& screen_points, double xi_half_window, double w_half_window,
    int nodes, QuadratureRule rule) {
    const double T = t_to_grating;
    const double tau = t_grating_to_screen;
    const Complex i_unit(0.0, 1.0);
    const Complex pref_inner = std::sqrt(Complex(0.0, -0.5 / (constants::pi * T)));
    const Complex pref_outer = std::sqrt(Complex(0.0, -0.5 / (constants::pi * tau)));
    const double norm0 = std::pow(constants::pi, -0.25);

    const auto w_nodes = quad::rule_nodes(rule, slit_center - w_half_window,
                                          slit_center + w_half_window, nodes);
    const auto w_weights = quad::rule_weights(rule, slit_center - w_half_window,
                                              slit_center + w_half_window, nodes);
    const auto xi_nodes = quad::rule_nodes(rule, -xi_half_window, xi_half_window, nodes);
    const auto xi_weights = quad::rule_weights(rule, -xi_half_window, xi_half_window, nodes);

    std::vector<Complex> masked(w_nodes.size());
    for (std::size_t iw = 0; iw < w_nodes.size(); ++iw) {
        const double w = w_nodes[iw];
        Complex inner(0.0);
        for (std::size_t ix = 0; ix < xi_nodes.size(); ++ix) {
            const double xi = xi_nodes[ix];
            const double dwx = w - xi;
            inner += xi_weights[ix] *
                     std::exp(Complex(-0.5 * xi * xi, dwx * dwx / (2.0 * T)));
        }
        inner *= norm0 * pref_inner;
        const double dslit = (w - slit_center) / half_width;
        masked[iw] = w_weights[iw] * std::exp(-0.5 * dslit * dslit) * inner;
    }

    std::vector<Complex> result(screen_points.size());
    for (std::size_t ip = 0; ip < screen_points.size(); ++ip) {
        const double x = screen_points[ip];
        Complex acc(0.0);
        for (std::size_t iw = 0; iw < w_nodes.size(); ++iw) {
            const double dxw = x - w_nodes[iw];
            acc += masked[iw] * std::exp(Complex(0.0, dxw * dxw / (2.0 * tau)));
        }
        result[ip] = pref_outer * acc;
    }
    return result;
}

/// Certified brute-force slit amplitudes at several screen points.
/// Windows: the initial-coordinate axis spans half_extent packet widths, the
/// grating axis spans half_extent aperture widths around the slit center.
inline std::vector<Complex> slit_amplitude_scan(double slit_center, double half_width,
                                                double t_to_grating,
                                                double t_grating_to_screen,
                                                const std::vector<double>& screen_points,
                                                const QuadratureSpec& spec = {}) {
    if (!(t_to_grating > 0.0) || !(t_grating_to_screen > 0.0))
        throw std::domain_error("oracle: flight times must be positive");
    if (!(half_width > 0.0))
        throw std::invalid_argument("oracle: half_width must be positive");
    if (spec.half_extent_in_widths < 6.0)
        throw std::invalid_argument("oracle: half_extent_in_widths below 6 voids the certificate");
    if (spec.nodes_per_axis < 401)
        throw std::invalid_argument("oracle: nodes_per_axis below 401 voids the certificate");

    const double h = spec.half_extent_in_widths;
    const double xi_half = h * 1.0;  // packet width at t = 0
    const double w_half = h * half_width;
    constexpr double rel_tol = 1e-7;
    constexpr int max_doublings = 3;

    auto run = [&](int nodes) {
        return slit_amplitude_windowed(slit_center, half_width, t_to_grating,
                                       t_grating_to_screen, screen_points, xi_half, w_half,
                                       nodes, spec.rule);
    };

    std::vector<Complex> prev = run(spec.nodes_per_axis);
    int n = spec.nodes_per_axis;
    for (int level = 0; level < max_doublings; ++level) {
        n = 2 * n - 1;
        std::vector<Complex> cur = run(n);
        double worst = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const double denom = std::abs(cur[i]);
            if (denom > 0.0) worst = std::max(worst, std::abs(cur[i] - prev[i]) / denom);
        }
        if (worst <= rel_tol) return cur;
        prev = std::move(cur);
    }
    throw OracleDivergenceError("oracle: no convergence after " +
                                std::to_string(max_doublings) + " doublings");
}

/// Certified brute-force amplitude at a single screen point.
inline Complex amplitude(double slit_center, double half_width, double t_to_grating,
                         double t_grating_to_screen, double x,
                         const QuadratureSpec& spec = {}) {
    return slit_amplitude_scan(slit_center, half_width, t_to_grating, t_grating_to_screen,
                               {x}, spec)[0];
}

/// Brute-force evolved packet at the grating plane (inner integral alone).
inline Complex evolved_packet(double t, double w, const QuadratureSpec& spec = {}) {
    if (!(t > 0.0)) throw std::domain_error("oracle: t must be positive");
    const double norm0 = std::pow(constants::pi, -0.25);
    const Complex pref = std::sqrt(Complex(0.0, -0.5 / (constants::pi * t)));
    auto f = [&](double xi) {
        const double d = w - xi;
        return std::exp(Complex(-0.5 * xi * xi, d * d / (2.0 * t)));
    };
    const double h = spec.half_extent_in_widths;
    return norm0 * pref *
           quad::integrate_certified(f, -h, h, spec.nodes_per_axis, 1e-9, 3, spec.rule);
}

} // namespace oracle

} // namespace mwdiff

#endif
