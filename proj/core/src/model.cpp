#include "dfig/model.hpp"

#include <cmath>
#include <string>

#include "dfig/linalg.hpp"

namespace dfig {

namespace {

// performance-coefficient constants (pitch angle eliminated)
constexpr double kCpLin = 1.283927808;
constexpr double kCpOff = 9.7697;
constexpr double kCpExp = 280.0 / 1299.0;
constexpr double kCpExpOff = 0.735;
constexpr double kCpSlope = 1.3801875;

void require_finite(std::span<const double> v, std::span<const char* const> names,
                    const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            throw ModelError(std::string(what) + " produced non-finite value for " + names[i]);
        }
    }
}

} // namespace

double cp_value(double v_w, double omega_r) {
    if (omega_r <= 0.0 || v_w <= 0.0) {
        throw RangeError("cp_value requires positive wind and rotor speed, got v_w=" +
                         std::to_string(v_w) + ", omega_r=" + std::to_string(omega_r));
    }
    const double r = v_w / omega_r;
    return (kCpLin * r - kCpOff) * std::exp(-kCpExp * r + kCpExpOff) + kCpSlope * omega_r / v_w;
}

StateVec state_rhs(const DfigParams& p, const StateVec& x, const AlgVec& a, const InputVec& u) {
    const double Lsp = p.L_s_prime();
    const double Kmrr = p.K_mrr();
    const double R1 = p.R_1();
    const double R2 = p.R_2();
    const double inv_tws = 1.0 / (p.tau_r() * p.omega_s);

    const double speed_diff = x[st::omega_t] - x[st::omega_r];
    const double damp = p.C_sh * p.omega_el * speed_diff;

    StateVec f{};
    f[st::omega_r] = (a[al::T_sh] + damp - a[al::T_e]) / (2.0 * p.H_g);
    f[st::omega_t] = (a[al::T_m] - a[al::T_sh] - damp) / (2.0 * p.H_t);
    f[st::theta_tw] = p.omega_el * speed_diff;

    f[st::i_qs] = p.omega_el / Lsp *
                  (-R1 * x[st::i_qs] + p.omega_s * Lsp * x[st::i_ds] +
                   x[st::omega_r] * x[st::e_qs] / p.omega_s - x[st::e_ds] * inv_tws -
                   a[al::v_qs] + Kmrr * a[al::v_qr]);
    f[st::i_ds] = p.omega_el / Lsp *
                  (-R1 * x[st::i_ds] - p.omega_s * Lsp * x[st::i_qs] +
                   x[st::omega_r] * x[st::e_ds] / p.omega_s + x[st::e_qs] * inv_tws -
                   a[al::v_ds] + Kmrr * a[al::v_dr]);
    f[st::e_qs] = p.omega_el * p.omega_s *
                  (R2 * x[st::i_ds] - x[st::e_qs] * inv_tws +
                   (1.0 - x[st::omega_r] / p.omega_s) * x[st::e_ds] - Kmrr * a[al::v_dr]);
    f[st::e_ds] = p.omega_el * p.omega_s *
                  (Kmrr * a[al::v_qr] - R2 * x[st::i_qs] - x[st::e_ds] * inv_tws -
                   (1.0 - x[st::omega_r] / p.omega_s) * x[st::e_qs]);

    const double p_rotor = a[al::v_dr] * a[al::i_dr] + a[al::v_qr] * a[al::i_qr];
    const double p_gsc = a[al::v_dg] * a[al::i_dg] + a[al::v_qg] * a[al::i_qg];
    f[st::v_dc] = (p_rotor - p_gsc) / (p.C_dc * x[st::v_dc]);

    const double p_err = a[al::P_ref] - a[al::P_grid];
    const double vs_err = p.V_sref - a[al::v_s];
    f[st::u1] = p_err;
    f[st::u2] = p.delta_igref - a[al::delta_ig] + p.K_P[0] * p_err + p.K_I[0] * x[st::u1];
    f[st::u3] = vs_err;
    f[st::u4] = p.E_igref - a[al::e_ig] + p.K_P[2] * vs_err + p.K_I[2] * x[st::u3];
    f[st::u5] = p.V_dcref - x[st::v_dc];
    f[st::u6] = p.Q_gref - a[al::Q_g];

    require_finite(f, state_names(), "state derivative");
    return f;
}

AlgVec alg_residual(const DfigParams& p, const StateVec& x, const AlgVec& a, const InputVec& u) {
    const double Kmrr = p.K_mrr();
    const double wLm = p.omega_s * p.L_m;

    AlgVec g{};
    g[al::v_ds] = a[al::v_ds] * u.v_qinf - u.x_e * a[al::P_grid];
    g[al::v_qs] = a[al::v_qs] * a[al::v_qs] + a[al::v_ds] * a[al::v_ds] -
                  a[al::v_qs] * u.v_qinf - u.x_e * a[al::Q_grid];
    g[al::v_dr] = a[al::v_dr] - a[al::v_r] * a[al::phi_r];
    g[al::v_qr] = a[al::v_qr] - a[al::v_r] * a[al::psi_r];
    g[al::v_dg] = a[al::v_dg] +
                  p.x_tg * (p.K_P[4] * (p.V_dcref - x[st::v_dc]) + p.K_I[4] * x[st::u5]);
    g[al::v_qg] = a[al::v_qg] -
                  p.x_tg * (p.K_P[5] * (p.Q_gref - a[al::Q_g]) + p.K_I[5] * x[st::u6]) +
                  p.V_sref - a[al::v_s];
    g[al::i_dg] = p.x_tg * a[al::i_dg] - a[al::v_qs] + a[al::v_qg];
    g[al::i_qg] = p.x_tg * a[al::i_qg] - a[al::v_dg] + a[al::v_ds];
    g[al::i_dr] = a[al::i_dr] - x[st::e_qs] / wLm + Kmrr * x[st::i_ds];
    g[al::i_qr] = a[al::i_qr] + x[st::e_ds] / wLm + Kmrr * x[st::i_qs];
    g[al::P_grid] = a[al::P_grid] - a[al::v_ds] * x[st::i_ds] - a[al::v_qs] * x[st::i_qs] -
                    a[al::v_dg] * a[al::i_dg] - a[al::v_qg] * a[al::i_qg];
    g[al::Q_grid] = a[al::Q_grid] - a[al::v_ds] * x[st::i_qs] + a[al::v_qs] * x[st::i_ds] -
                    a[al::v_dg] * a[al::i_qg] + a[al::v_qg] * a[al::i_dg];
    g[al::P_ref] = a[al::P_ref] - p.k_opt * x[st::omega_r] * x[st::omega_r] * x[st::omega_r];
    g[al::Q_g] = a[al::Q_g] - a[al::v_dg] * a[al::i_qg] + a[al::v_qg] * a[al::i_dg];
    g[al::v_s] = a[al::v_s] * a[al::v_s] - a[al::v_qs] * a[al::v_qs] - a[al::v_ds] * a[al::v_ds];
    g[al::e_ig] = a[al::e_ig] * a[al::e_ig] - x[st::e_qs] * x[st::e_qs] - x[st::e_ds] * x[st::e_ds];
    g[al::delta_ig] = a[al::psi_ig] * a[al::e_ig] - x[st::e_qs];
    g[al::delta_r] = a[al::delta_r] -
                     p.K_P[1] * (p.delta_igref - a[al::delta_ig] +
                                 p.K_P[0] * (a[al::P_ref] - a[al::P_grid])) -
                     p.K_P[1] * p.K_I[0] * x[st::u1] - p.K_I[1] * x[st::u2];
    g[al::v_r] = a[al::v_r] -
                 p.K_P[3] * (p.E_igref - a[al::e_ig] + p.K_P[2] * (p.V_sref - a[al::v_s])) -
                 p.K_P[3] * p.K_I[2] * x[st::u3] - p.K_I[3] * x[st::u4];
    g[al::phi_r] = a[al::phi_r] - std::sin(a[al::delta_r]);
    g[al::psi_r] = a[al::psi_r] - std::cos(a[al::delta_r]);
    g[al::phi_ig] = a[al::phi_ig] - std::sin(a[al::delta_ig]);
    g[al::psi_ig] = a[al::psi_ig] - std::cos(a[al::delta_ig]);
    g[al::T_e] = p.omega_s * a[al::T_e] - x[st::e_qs] * x[st::i_qs] - x[st::e_ds] * x[st::i_ds];
    g[al::T_m] = a[al::T_m] * x[st::omega_t] - a[al::P_t];
    g[al::T_sh] = a[al::T_sh] - p.K_sh * x[st::theta_tw];
    const double wind_cubed = (u.v_w / p.v_wB) * (u.v_w / p.v_wB) * (u.v_w / p.v_wB);
    g[al::P_t] = a[al::P_t] - p.k_opt * wind_cubed * a[al::C_ppu];
    g[al::C_ppu] = a[al::C_ppu] - cp_value(u.v_w, x[st::omega_r]);

    require_finite(g, alg_names(), "algebraic residual");
    return g;
}

Eigen::MatrixXd alg_jacobian(const DfigParams& p, const StateVec& x, const AlgVec& a,
                             const InputVec& u) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(al::count, al::count);

    J(al::v_ds, al::v_ds) = u.v_qinf;
    J(al::v_ds, al::P_grid) = -u.x_e;

    J(al::v_qs, al::v_qs) = 2.0 * a[al::v_qs] - u.v_qinf;
    J(al::v_qs, al::v_ds) = 2.0 * a[al::v_ds];
    J(al::v_qs, al::Q_grid) = -u.x_e;

    J(al::v_dr, al::v_dr) = 1.0;
    J(al::v_dr, al::v_r) = -a[al::phi_r];
    J(al::v_dr, al::phi_r) = -a[al::v_r];

    J(al::v_qr, al::v_qr) = 1.0;
    J(al::v_qr, al::v_r) = -a[al::psi_r];
    J(al::v_qr, al::psi_r) = -a[al::v_r];

    J(al::v_dg, al::v_dg) = 1.0;

    J(al::v_qg, al::v_qg) = 1.0;
    J(al::v_qg, al::Q_g) = p.x_tg * p.K_P[5];
    J(al::v_qg, al::v_s) = -1.0;

    J(al::i_dg, al::i_dg) = p.x_tg;
    J(al::i_dg, al::v_qs) = -1.0;
    J(al::i_dg, al::v_qg) = 1.0;

    J(al::i_qg, al::i_qg) = p.x_tg;
    J(al::i_qg, al::v_dg) = -1.0;
    J(al::i_qg, al::v_ds) = 1.0;

    J(al::i_dr, al::i_dr) = 1.0;
    J(al::i_qr, al::i_qr) = 1.0;

    J(al::P_grid, al::P_grid) = 1.0;
    J(al::P_grid, al::v_ds) = -x[st::i_ds];
    J(al::P_grid, al::v_qs) = -x[st::i_qs];
    J(al::P_grid, al::v_dg) = -a[al::i_dg];
    J(al::P_grid, al::i_dg) = -a[al::v_dg];
    J(al::P_grid, al::v_qg) = -a[al::i_qg];
    J(al::P_grid, al::i_qg) = -a[al::v_qg];

    J(al::Q_grid, al::Q_grid) = 1.0;
    J(al::Q_grid, al::v_ds) = -x[st::i_qs];
    J(al::Q_grid, al::v_qs) = x[st::i_ds];
    J(al::Q_grid, al::v_dg) = -a[al::i_qg];
    J(al::Q_grid, al::i_qg) = -a[al::v_dg];
    J(al::Q_grid, al::v_qg) = a[al::i_dg];
    J(al::Q_grid, al::i_dg) = a[al::v_qg];

    J(al::P_ref, al::P_ref) = 1.0;

    J(al::Q_g, al::Q_g) = 1.0;
    J(al::Q_g, al::v_dg) = -a[al::i_qg];
    J(al::Q_g, al::i_qg) = -a[al::v_dg];
    J(al::Q_g, al::v_qg) = a[al::i_dg];
    J(al::Q_g, al::i_dg) = a[al::v_qg];

    J(al::v_s, al::v_s) = 2.0 * a[al::v_s];
    J(al::v_s, al::v_qs) = -2.0 * a[al::v_qs];
    J(al::v_s, al::v_ds) = -2.0 * a[al::v_ds];

    J(al::e_ig, al::e_ig) = 2.0 * a[al::e_ig];

    J(al::delta_ig, al::psi_ig) = a[al::e_ig];
    J(al::delta_ig, al::e_ig) = a[al::psi_ig];

    J(al::delta_r, al::delta_r) = 1.0;
    J(al::delta_r, al::delta_ig) = p.K_P[1];
    J(al::delta_r, al::P_ref) = -p.K_P[1] * p.K_P[0];
    J(al::delta_r, al::P_grid) = p.K_P[1] * p.K_P[0];

    J(al::v_r, al::v_r) = 1.0;
    J(al::v_r, al::e_ig) = p.K_P[3];
    J(al::v_r, al::v_s) = p.K_P[3] * p.K_P[2];

    J(al::phi_r, al::phi_r) = 1.0;
    J(al::phi_r, al::delta_r) = -a[al::psi_r];

    J(al::psi_r, al::psi_r) = 1.0;
    J(al::psi_r, al::delta_r) = a[al::phi_r];

    J(al::phi_ig, al::phi_ig) = 1.0;
    J(al::phi_ig, al::delta_ig) = -a[al::psi_ig];

    J(al::psi_ig, al::psi_ig) = 1.0;
    J(al::psi_ig, al::delta_ig) = a[al::phi_ig];

    J(al::T_e, al::T_e) = p.omega_s;

    J(al::T_m, al::T_m) = x[st::omega_t];
    J(al::T_m, al::P_t) = -1.0;

    J(al::T_sh, al::T_sh) = 1.0;

    const double wind_cubed = (u.v_w / p.v_wB) * (u.v_w / p.v_wB) * (u.v_w / p.v_wB);
    J(al::P_t, al::P_t) = 1.0;
    J(al::P_t, al::C_ppu) = -p.k_opt * wind_cubed;

    J(al::C_ppu, al::C_ppu) = 1.0;

    return J;
}

AlgVec solve_consistent_alg(const DfigParams& p, const StateVec& x, const AlgVec& a_guess,
                            const InputVec& u, double tol, int max_iter) {
    AlgVec a = a_guess;
    AlgVec r = alg_residual(p, x, a, u);
    double rn = max_abs(r);
    for (int iter = 0; iter < max_iter; ++iter) {
        if (rn <= tol) return a;
        const Eigen::MatrixXd J = alg_jacobian(p, x, a, u);
        Eigen::VectorXd rhs(al::count);
        for (int i = 0; i < al::count; ++i) rhs(i) = -r[i];
        const Eigen::VectorXd da = lu_solve(J, rhs);

        // backtracking on the residual norm
        double step = 1.0;
        for (int ls = 0; ls < 12; ++ls) {
            AlgVec a_try = a;
            for (int i = 0; i < al::count; ++i) a_try[i] += step * da(i);
            try {
                AlgVec r_try = alg_residual(p, x, a_try, u);
                const double rt = max_abs(r_try);
                if (rt < rn || rt <= tol) {
                    a = a_try;
                    r = r_try;
                    rn = rt;
                    break;
                }
            } catch (const Error&) {
                // out-of-domain trial point, shrink
            }
            step *= 0.5;
            if (ls == 11) {
                throw InitError("algebraic consistency solve stalled, residual " +
                                std::to_string(rn));
            }
        }
    }
    if (rn <= tol) return a;
    throw InitError("algebraic consistency solve did not converge, residual " +
                    std::to_string(rn));
}

Equilibrium equilibrium_guess(const DfigParams& p, const InputVec& u) {
    // Speed from the lossless balance k_opt*wr^3 == P_t, which depends on
    // the ratio wr/v_w only; bisection over that ratio.
    const double vb3 = p.v_wB * p.v_wB * p.v_wB;
    auto balance = [&](double ratio) {
        return ratio * ratio * ratio * vb3 - cp_value(1.0, ratio);
    };
    double lo = 0.03;
    double hi = 0.20;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (balance(mid) > 0.0 ? hi : lo) = mid;
    }
    const double ratio = 0.5 * (lo + hi);
    const double wr = std::clamp(ratio * u.v_w, 0.55, 1.25);

    StateVec x{};
    AlgVec a{};
    x[st::omega_r] = wr;
    x[st::omega_t] = wr;
    x[st::v_dc] = p.V_dcref;

    a[al::C_ppu] = cp_value(u.v_w, wr);
    const double wind_cubed = (u.v_w / p.v_wB) * (u.v_w / p.v_wB) * (u.v_w / p.v_wB);
    a[al::P_t] = p.k_opt * wind_cubed * a[al::C_ppu];
    a[al::T_m] = a[al::P_t] / wr;
    a[al::T_sh] = a[al::T_m];
    a[al::T_e] = a[al::T_m];
    x[st::theta_tw] = a[al::T_sh] / p.K_sh;

    const double P = p.k_opt * wr * wr * wr;
    a[al::P_ref] = P;
    a[al::P_grid] = P;
    a[al::v_s] = p.V_sref;
    a[al::v_ds] = u.x_e * P / u.v_qinf;
    a[al::v_qs] = std::sqrt(std::max(1e-6, a[al::v_s] * a[al::v_s] - a[al::v_ds] * a[al::v_ds]));
    a[al::Q_grid] = (a[al::v_qs] * a[al::v_qs] + a[al::v_ds] * a[al::v_ds] -
                     a[al::v_qs] * u.v_qinf) / u.x_e;

    // stator currents from the stator power, GSC current neglected here
    const double vs2 = a[al::v_qs] * a[al::v_qs] + a[al::v_ds] * a[al::v_ds];
    x[st::i_ds] = (a[al::v_ds] * P - a[al::v_qs] * a[al::Q_grid]) / vs2;
    x[st::i_qs] = (a[al::v_qs] * P + a[al::v_ds] * a[al::Q_grid]) / vs2;

    // machine algebra solved exactly for e' and the rotor voltage
    const double Lsp = p.L_s_prime();
    const double Kmrr = p.K_mrr();
    const double inv_tws = 1.0 / (p.tau_r() * p.omega_s);
    x[st::e_qs] = a[al::v_qs] + p.R_s * x[st::i_qs] - p.omega_s * Lsp * x[st::i_ds];
    x[st::e_ds] = a[al::v_ds] + p.R_s * x[st::i_ds] + p.omega_s * Lsp * x[st::i_qs];
    const double slip_term = 1.0 - wr / p.omega_s;
    a[al::v_dr] = (p.R_2() * x[st::i_ds] - x[st::e_qs] * inv_tws + slip_term * x[st::e_ds]) / Kmrr;
    a[al::v_qr] = (p.R_2() * x[st::i_qs] + x[st::e_ds] * inv_tws + slip_term * x[st::e_qs]) / Kmrr;

    a[al::i_dr] = x[st::e_qs] / (p.omega_s * p.L_m) - Kmrr * x[st::i_ds];
    a[al::i_qr] = -x[st::e_ds] / (p.omega_s * p.L_m) - Kmrr * x[st::i_qs];

    a[al::e_ig] = std::hypot(x[st::e_qs], x[st::e_ds]);
    a[al::delta_ig] = std::atan2(x[st::e_ds], x[st::e_qs]);
    a[al::phi_ig] = std::sin(a[al::delta_ig]);
    a[al::psi_ig] = std::cos(a[al::delta_ig]);

    a[al::v_r] = std::hypot(a[al::v_dr], a[al::v_qr]);
    a[al::delta_r] = std::atan2(a[al::v_dr], a[al::v_qr]);
    a[al::phi_r] = std::sin(a[al::delta_r]);
    a[al::psi_r] = std::cos(a[al::delta_r]);

    // GSC carries the rotor active power, zero reactive
    const double p_rotor = a[al::v_dr] * a[al::i_dr] + a[al::v_qr] * a[al::i_qr];
    a[al::v_dg] = a[al::v_ds];
    a[al::v_qg] = a[al::v_qs];
    const double vg2 = a[al::v_dg] * a[al::v_dg] + a[al::v_qg] * a[al::v_qg];
    a[al::i_dg] = p_rotor * a[al::v_dg] / vg2;
    a[al::i_qg] = p_rotor * a[al::v_qg] / vg2;
    a[al::v_qg] = a[al::v_qs] - p.x_tg * a[al::i_dg];
    a[al::v_dg] = a[al::v_ds] + p.x_tg * a[al::i_qg];
    a[al::Q_g] = a[al::v_dg] * a[al::i_qg] - a[al::v_qg] * a[al::i_dg];

    // integrator states back-computed from the steady PI relations
    x[st::u1] = (a[al::delta_ig] - p.delta_igref) / p.K_I[0];
    x[st::u2] = a[al::delta_r] / p.K_I[1];
    x[st::u3] = (a[al::e_ig] - p.E_igref) / p.K_I[2];
    x[st::u4] = a[al::v_r] / p.K_I[3];
    x[st::u5] = -a[al::v_dg] / (p.x_tg * p.K_I[4]);
    x[st::u6] = (a[al::v_qg] + p.V_sref - a[al::v_s]) / (p.x_tg * p.K_I[5]);

    return Equilibrium{x, a};
}

Equilibrium find_equilibrium(const DfigParams& p, const InputVec& u, const Equilibrium& guess,
                             double tol, int max_iter) {
    static constexpr int n = static_cast<int>(st::count) + static_cast<int>(al::count);

    auto pack = [](const Equilibrium& e) {
        Eigen::VectorXd y(n);
        for (int i = 0; i < st::count; ++i) y(i) = e.x[i];
        for (int i = 0; i < al::count; ++i) y(st::count + i) = e.a[i];
        return y;
    };
    auto unpack = [](const Eigen::VectorXd& y) {
        Equilibrium e;
        for (int i = 0; i < st::count; ++i) e.x[i] = y(i);
        for (int i = 0; i < al::count; ++i) e.a[i] = y(st::count + i);
        return e;
    };
    auto residual = [&](const Eigen::VectorXd& y) {
        const Equilibrium e = unpack(y);
        const StateVec f = state_rhs(p, e.x, e.a, u);
        const AlgVec g = alg_residual(p, e.x, e.a, u);
        Eigen::VectorXd r(n);
        for (int i = 0; i < st::count; ++i) r(i) = f[i];
        for (int i = 0; i < al::count; ++i) r(st::count + i) = g[i];
        return r;
    };

    Eigen::VectorXd y = pack(guess);
    Eigen::VectorXd r = residual(y);
    double rn = r.lpNorm<Eigen::Infinity>();

    for (int iter = 0; iter < max_iter; ++iter) {
        if (rn <= tol) return unpack(y);

        Eigen::MatrixXd J(n, n);
        for (int j = 0; j < n; ++j) {
            const double eps = 1e-6 * std::max(1.0, std::abs(y(j)));
            Eigen::VectorXd yp = y;
            Eigen::VectorXd ym = y;
            yp(j) += eps;
            ym(j) -= eps;
            J.col(j) = (residual(yp) - residual(ym)) / (2.0 * eps);
        }

        const Eigen::VectorXd dy = lu_solve(J, -r);
        double step = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 20; ++ls) {
            try {
                const Eigen::VectorXd y_try = y + step * dy;
                const Eigen::VectorXd r_try = residual(y_try);
                const double rt = r_try.lpNorm<Eigen::Infinity>();
                if (rt < rn || rt <= tol) {
                    y = y_try;
                    r = r_try;
                    rn = rt;
                    moved = true;
                    break;
                }
            } catch (const Error&) {
                // trial point out of domain, shrink
            }
            step *= 0.5;
        }
        if (!moved) {
            throw InitError("equilibrium Newton stalled, residual norm " + std::to_string(rn));
        }
    }
    if (rn <= tol) return unpack(y);
    throw InitError("equilibrium not found in " + std::to_string(max_iter) +
                    " iterations, residual norm " + std::to_string(rn));
}

Equilibrium find_equilibrium(const DfigParams& p, const InputVec& u, double tol, int max_iter) {
    return find_equilibrium(p, u, equilibrium_guess(p, u), tol, max_iter);
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double t : v) m = std::max(m, std::abs(t));
    return m;
}

} // namespace dfig
