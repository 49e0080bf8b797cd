#pragma once

#include <array>
#include <span>

namespace dfig {

/// Index of each differential state. Order is fixed and shared by the
/// residual functions, the series kernel, the linearization and the CSV
/// emitters.
namespace st {
enum : int {
    omega_r,   // generator speed (p.u.)
    omega_t,   // turbine speed (p.u.)
    theta_tw,  // shaft twist angle (el.rad)
    i_qs,      // stator q-axis current (p.u.)
    i_ds,      // stator d-axis current (p.u.)
    e_qs,      // q-axis voltage behind transient impedance (p.u.)
    e_ds,      // d-axis voltage behind transient impedance (p.u.)
    v_dc,      // dc-link capacitor voltage (p.u.)
    u1, u2, u3, u4, u5, u6,  // PI integrator states
    count
};
}

/// Index of each algebraic variable, in the order the per-order linear
/// system is assembled.
namespace al {
enum : int {
    v_ds, v_qs,        // stator voltages (p.u.)
    v_dr, v_qr,        // rotor voltages (p.u.)
    v_dg, v_qg,        // grid-side converter voltages (p.u.)
    i_dg, i_qg,        // grid-side converter currents (p.u.)
    i_dr, i_qr,        // rotor currents (p.u.)
    P_grid, Q_grid,    // power delivered to the grid (p.u.)
    P_ref,             // MPPT active power set point (p.u.)
    Q_g,               // GSC reactive power (p.u.)
    v_s,               // stator voltage magnitude (p.u.)
    e_ig,              // internal voltage magnitude (p.u.)
    delta_ig,          // internal voltage angle (rad)
    delta_r,           // rotor voltage angle (rad)
    v_r,               // rotor voltage magnitude (p.u.)
    phi_r, psi_r,      // sin/cos of delta_r
    phi_ig, psi_ig,    // sin/cos of delta_ig
    T_e, T_m, T_sh,    // electromagnetic, wind and shaft torque (p.u.)
    P_t,               // turbine power (p.u.)
    C_ppu,             // normalized performance coefficient
    count
};
}

using StateVec = std::array<double, st::count>;
using AlgVec = std::array<double, al::count>;

/// Exogenous inputs; piecewise constant between scenario events.
struct InputVec {
    double v_w = 10.0;    // wind speed (m/s)
    double x_e = 0.02;    // grid reactance (p.u.)
    double v_qinf = 1.0;  // infinite-bus voltage magnitude (p.u.)
};

[[nodiscard]] std::span<const char* const> state_names();
[[nodiscard]] std::span<const char* const> alg_names();

} // namespace dfig
