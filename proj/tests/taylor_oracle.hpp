#pragma once

// Test-side Taylor-coefficient oracle, independent of the recurrence
// implementations under test. Coefficients are recovered from samples of
// the function on a complex circle around the expansion point:
//   a_k = (1/(N r^k)) * sum_j f(r w^j) w^{-jk},  w = exp(2 pi i / N).
// For functions analytic on |z| <= r the aliasing error decays like r^N,
// which at N = 256 is far below double precision.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

template <typename F>
std::vector<double> taylor_coeffs(F f, int order, double radius = 0.5, int n_samples = 256) {
    std::vector<cplx> vals(static_cast<std::size_t>(n_samples));
    for (int j = 0; j < n_samples; ++j) {
        const double ang = 2.0 * std::numbers::pi * j / n_samples;
        vals[static_cast<std::size_t>(j)] = f(std::polar(radius, ang));
    }
    std::vector<double> coeffs(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
        cplx acc = 0.0;
        for (int j = 0; j < n_samples; ++j) {
            const double ang = -2.0 * std::numbers::pi * j * k / n_samples;
            acc += vals[static_cast<std::size_t>(j)] * std::polar(1.0, ang);
        }
        coeffs[static_cast<std::size_t>(k)] =
            acc.real() / (n_samples * std::pow(radius, k));
    }
    return coeffs;
}

/// Evaluates a real-coefficient polynomial at a complex point.
inline cplx poly_eval(const std::vector<double>& c, cplx z) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

/// Random polynomial with decaying coefficients; leading term in
/// [base_lo, base_hi] keeps quotients and roots away from singularities.
inline std::vector<double> random_poly(std::mt19937& rng, int order, double base_lo,
                                       double base_hi, double wiggle) {
    std::uniform_real_distribution<double> base(base_lo, base_hi);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    c[0] = base(rng);
    double scale = wiggle;
    for (int m = 1; m <= order; ++m) {
        c[static_cast<std::size_t>(m)] = unit(rng) * scale;
        scale *= 0.5;
    }
    return c;
}

} // namespace oracle
