#pragma once

#include <random>

#include "dfig/model.hpp"

namespace helpers {

struct Point {
    dfig::DfigParams params;
    dfig::InputVec input;
    dfig::StateVec x;
    dfig::AlgVec a;
};

/// Equilibrium at the default parameters for a given wind speed.
inline Point equilibrium_point(double v_w) {
    Point pt;
    pt.input = dfig::InputVec{v_w, pt.params.x_e_default, pt.params.v_qinf_default};
    const auto eq = dfig::find_equilibrium(pt.params, pt.input);
    pt.x = eq.x;
    pt.a = eq.a;
    return pt;
}

/// Random consistent point: equilibrium states nudged off the operating
/// point, algebraic vector re-solved to consistency.
inline Point random_consistent_point(std::mt19937& rng) {
    std::uniform_real_distribution<double> wind(9.5, 12.0);
    std::uniform_real_distribution<double> nudge(-1.0, 1.0);

    Point pt = equilibrium_point(wind(rng));
    auto& x = pt.x;
    x[dfig::st::omega_r] *= 1.0 + 0.02 * nudge(rng);
    x[dfig::st::omega_t] *= 1.0 + 0.02 * nudge(rng);
    x[dfig::st::theta_tw] += 0.10 * x[dfig::st::theta_tw] * nudge(rng);
    x[dfig::st::i_qs] *= 1.0 + 0.03 * nudge(rng);
    x[dfig::st::i_ds] += 0.02 * nudge(rng);
    x[dfig::st::e_qs] *= 1.0 + 0.02 * nudge(rng);
    x[dfig::st::e_ds] += 0.02 * nudge(rng);
    x[dfig::st::v_dc] *= 1.0 + 0.02 * nudge(rng);
    for (int i = dfig::st::u1; i <= dfig::st::u6; ++i) x[i] += 0.02 * nudge(rng);

    pt.a = dfig::solve_consistent_alg(pt.params, pt.x, pt.a, pt.input);
    return pt;
}

} // namespace helpers
