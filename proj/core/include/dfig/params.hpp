#pragma once

#include <array>
#include <numbers>

#include "dfig/errors.hpp"

namespace dfig {

/// Machine, drive-train, converter, controller and network constants, all
/// on machine base unless noted. Defaults form a complete, physically
/// plausible 60-Hz set; every value can be overridden from a config file.
///
/// The reduced-order quantities L_s', K_mrr, tau_r, R_1, R_2 follow the
/// standard single-cage DFIG definitions and are always recomputed from the
/// primary inductances and resistances, never stored.
struct DfigParams {
    // drive train (two-mass)
    double H_g = 0.5;    // generator inertia constant (s)
    double H_t = 4.0;    // turbine inertia constant (s)
    double K_sh = 0.3;   // shaft stiffness (p.u./el.rad)
    double C_sh = 0.01;  // shaft damping (p.u.·s/el.rad)

    // speeds
    double omega_el = 2.0 * std::numbers::pi * 60.0;  // electrical base speed (rad/s)
    double omega_s = 1.0;                             // synchronous speed (p.u.)

    // induction machine
    double R_s = 0.00488;   // stator resistance (p.u.)
    double R_r = 0.00549;   // rotor resistance (p.u.)
    double L_ss = 4.04521;  // stator self inductance (p.u.)
    double L_rr = 4.05234;  // rotor self inductance (p.u.)
    double L_m = 3.95279;   // mutual inductance (p.u.)

    // converter and dc link
    double C_dc = 1.0;   // dc-link capacitance (p.u.)
    double x_tg = 0.55;  // GSC coupling reactance (p.u.)

    // network defaults; scenarios may override the initial values and
    // schedule events on them
    double x_e_default = 0.02;    // grid reactance (p.u.)
    double v_qinf_default = 1.0;  // infinite-bus voltage magnitude (p.u.)

    // turbine / MPPT; v_wB pairs the k_opt tracking law with the peak of
    // the performance coefficient, so the steady point sits at the maximum
    double k_opt = 0.73;      // MPPT power constant (p.u.)
    double v_wB = 12.027703;  // base wind speed (m/s)

    // PI gains, loops 1..6 stored at indices 0..5:
    //  1: grid power -> internal angle reference (RSC outer)
    //  2: internal angle -> rotor voltage angle (RSC inner)
    //  3: terminal voltage -> internal voltage reference (RSC outer)
    //  4: internal voltage magnitude -> rotor voltage magnitude (RSC inner)
    //  5: dc-link voltage -> GSC d-axis voltage
    //  6: GSC reactive power -> GSC q-axis voltage
    std::array<double, 6> K_P = {0.1, 1.0, 0.5, 1.0, 5.0, 1.0};
    std::array<double, 6> K_I = {2.0, 20.0, 10.0, 20.0, 30.0, 20.0};

    // set points
    double delta_igref = 0.05;  // internal angle reference (rad)
    double V_sref = 1.0;        // terminal voltage reference (p.u.)
    double E_igref = 1.0;       // internal voltage reference (p.u.)
    double V_dcref = 1.0;       // dc-link voltage reference (p.u.)
    double Q_gref = 0.0;        // GSC reactive power set point (p.u.)

    // derived quantities (recomputed, never stored)
    [[nodiscard]] double L_s_prime() const noexcept { return L_ss - L_m * L_m / L_rr; }
    [[nodiscard]] double K_mrr() const noexcept { return L_m / L_rr; }
    [[nodiscard]] double tau_r() const noexcept { return L_rr / R_r; }
    [[nodiscard]] double R_2() const noexcept { return K_mrr() * K_mrr() * R_r; }
    [[nodiscard]] double R_1() const noexcept { return R_s + R_2(); }

    /// Throws ConfigError naming the offending field if any invariant fails.
    void validate() const;
};

} // namespace dfig
