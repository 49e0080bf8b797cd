#include "dfig/params.hpp"

#include <array>
#include <string>

#include "dfig/vectors.hpp"

namespace dfig {

namespace {

constexpr std::array<const char*, st::count> kStateNames = {
    "omega_r", "omega_t", "theta_tw", "i_qs", "i_ds", "e_qs", "e_ds",
    "v_dc",    "u_1",     "u_2",      "u_3",  "u_4",  "u_5",  "u_6",
};

constexpr std::array<const char*, al::count> kAlgNames = {
    "v_ds",   "v_qs",   "v_dr",     "v_qr",    "v_dg", "v_qg",  "i_dg",
    "i_qg",   "i_dr",   "i_qr",     "P_grid",  "Q_grid", "P_ref", "Q_g",
    "v_s",    "e_ig",   "delta_ig", "delta_r", "v_r",  "phi_r", "psi_r",
    "phi_ig", "psi_ig", "T_e",      "T_m",     "T_sh", "P_t",   "C_ppu",
};

void require_positive(double v, const char* field) {
    if (!(v > 0.0)) {
        throw ConfigError(std::string("parameter ") + field + " must be positive, got " +
                          std::to_string(v));
    }
}

} // namespace

std::span<const char* const> state_names() { return kStateNames; }
std::span<const char* const> alg_names() { return kAlgNames; }

void DfigParams::validate() const {
    require_positive(H_g, "H_g");
    require_positive(H_t, "H_t");
    require_positive(K_sh, "K_sh");
    require_positive(omega_el, "omega_el");
    require_positive(omega_s, "omega_s");
    require_positive(R_r, "R_r");
    require_positive(L_ss, "L_ss");
    require_positive(L_rr, "L_rr");
    require_positive(L_m, "L_m");
    require_positive(C_dc, "C_dc");
    require_positive(x_tg, "x_tg");
    require_positive(k_opt, "k_opt");
    require_positive(v_wB, "v_wB");
    require_positive(L_s_prime(), "L_s' (= L_ss - L_m^2/L_rr)");
    if (C_sh < 0.0) {
        throw ConfigError("parameter C_sh must be non-negative, got " + std::to_string(C_sh));
    }
    if (R_s < 0.0) {
        throw ConfigError("parameter R_s must be non-negative, got " + std::to_string(R_s));
    }
    for (int i = 0; i < 6; ++i) {
        if (!(K_I[i] > 0.0)) {
            throw ConfigError("parameter K_I" + std::to_string(i + 1) +
                              " must be positive, got " + std::to_string(K_I[i]));
        }
        if (K_P[i] < 0.0) {
            throw ConfigError("parameter K_P" + std::to_string(i + 1) +
                              " must be non-negative, got " + std::to_string(K_P[i]));
        }
    }
    require_positive(V_sref, "V_sref");
    require_positive(V_dcref, "V_dcref");
    require_positive(E_igref, "E_igref");
}

} // namespace dfig
