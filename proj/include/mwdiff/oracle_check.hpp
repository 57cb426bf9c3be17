#ifndef MWDIFF_ORACLE_CHECK_HPP
#define MWDIFF_ORACLE_CHECK_HPP

#include <vector>

#include "mwdiff/diffraction.hpp"
#include "mwdiff/quadrature.hpp"

namespace mwdiff::oracle {

struct EquivalenceCase {
    double half_width;
    double spacing;
    double t_to_grating;
    int n_slits;
    double slit_center;
    double screen_x;
    double rel_error;
};

struct EquivalenceReport {
    double max_rel_error = 0.0;
    std::vector<EquivalenceCase> cases;
};

/// Desk-scale equivalence sweep: closed-form slit amplitudes against the
/// brute-force double quadrature, in packet units, at parameters where the
/// propagator phase stays resolvable. 27 (b, d, T) triples, 5 screen points
/// each, gratings of 1 to 3 slits.
inline EquivalenceReport equivalence_sweep(const QuadratureSpec& spec = {}) {
    const std::vector<double> half_widths = {0.1, 0.25, 0.5};
    const std::vector<double> spacings = {2.0, 4.0, 8.0};
    const std::vector<double> times = {0.5, 1.0, 2.0};
    const std::vector<double> screen_points = {0.0, 0.6, 1.5, 3.2, 5.0};
    const double t_screen = 1.0;

    EquivalenceReport report;
    int index = 0;
    for (const double b : half_widths)
        for (const double d : spacings)
            for (const double t : times) {
                const int n_slits = index % 3 + 1;
                const double first = -(n_slits - 1) * d / 2.0;
                const double center = first + (index % n_slits) * d;
                ++index;

                const auto brute = slit_amplitude_scan(center, b, t, t_screen,
                                                       screen_points, spec);
                for (std::size_t i = 0; i < screen_points.size(); ++i) {
                    const Complex analytic = scaled::slit_amplitude(
                        center, b, t, t_screen, screen_points[i]);
                    const double rel =
                        std::abs(analytic - brute[i]) / std::abs(brute[i]);
                    report.cases.push_back(
                        {b, d, t, n_slits, center, screen_points[i], rel});
                    report.max_rel_error = std::max(report.max_rel_error, rel);
                }
            }
    return report;
}

} // namespace mwdiff::oracle

#endif
