#include "dfig/dt_window.hpp"

#include <cmath>
#include <string>

namespace dfig {

namespace {

constexpr double kCpLin = 1.283927808;
constexpr double kCpOff = 9.7697;
constexpr double kCpExp = 280.0 / 1299.0;
constexpr double kCpExpOff = 0.735;
constexpr double kCpSlope = 1.3801875;

double horner(const Eigen::MatrixXd& m, int row, double dt) {
    const int nl = static_cast<int>(m.cols()) - 1;
    double acc = m(row, nl);
    for (int k = nl - 1; k >= 0; --k) acc = acc * dt + m(row, k);
    return acc;
}

dt::PowerSeries row_series(const Eigen::MatrixXd& m, int row, double t0) {
    std::vector<double> c(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index k = 0; k < m.cols(); ++k) c[static_cast<std::size_t>(k)] = m(row, k);
    return dt::PowerSeries(std::move(c), t0);
}

} // namespace

StateVec SystemSeries::eval_states(double t) const {
    StateVec x{};
    const double dt = t - t0;
    for (int i = 0; i < st::count; ++i) x[i] = horner(states, i, dt);
    return x;
}

AlgVec SystemSeries::eval_algs(double t) const {
    AlgVec a{};
    const double dt = t - t0;
    for (int i = 0; i < al::count; ++i) a[i] = horner(algs, i, dt);
    return a;
}

dt::PowerSeries SystemSeries::state_series(int i) const { return row_series(states, i, t0); }
dt::PowerSeries SystemSeries::alg_series(int i) const { return row_series(algs, i, t0); }
dt::PowerSeries SystemSeries::aux_series(int i) const { return row_series(auxs, i, t0); }

DtWindow::DtWindow(const DfigParams& p, const InputVec& u, double t0, int nl,
                   const StateVec& x0, const AlgVec& a0, double cond_max)
    : p_(p), u_(u), s_(), lu_([&] {
          if (nl < 2 || nl > dt::kMaxOrder) {
              throw DimensionError("window truncation order must be in [2, " +
                                   std::to_string(dt::kMaxOrder) + "], got " +
                                   std::to_string(nl));
          }
          s_.t0 = t0;
          s_.nl = nl;
          s_.states = Eigen::MatrixXd::Zero(st::count, nl + 1);
          s_.algs = Eigen::MatrixXd::Zero(al::count, nl + 1);
          s_.auxs = Eigen::MatrixXd::Zero(aux::count, nl + 1);
          for (int i = 0; i < st::count; ++i) s_.states(i, 0) = x0[i];
          for (int i = 0; i < al::count; ++i) s_.algs(i, 0) = a0[i];

          if (std::abs(x0[st::v_dc]) <= dt::kDivFloor) {
              throw SingularError("window at t=" + std::to_string(t0) +
                                  ": v_dc leading coefficient near zero");
          }
          if (std::abs(x0[st::omega_r]) <= dt::kDivFloor) {
              throw SingularError("window at t=" + std::to_string(t0) +
                                  ": omega_r leading coefficient near zero");
          }

          // auxiliary seeds for the performance-coefficient chain
          const double b1 = 1.0 / x0[st::omega_r];
          s_.auxs(aux::b1, 0) = b1;
          s_.auxs(aux::b3, 0) = kCpExpOff - kCpExp * u.v_w * b1;
          s_.auxs(aux::b2, 0) = kCpLin * u.v_w * b1 - kCpOff;
          s_.auxs(aux::b4, 0) = std::exp(s_.auxs(aux::b3, 0));

          return alg_jacobian(p, x0, a0, u);
      }()) {
    if (lu_.rcond() < 1.0 / cond_max) {
        throw SingularError("window at t=" + std::to_string(t0) +
                            ": algebraic matrix near-singular (rcond=" +
                            std::to_string(lu_.rcond()) + ")");
    }
}

void DtWindow::advance_states(int k) {
    auto& S = s_.states;
    auto& A = s_.algs;
    auto& X = s_.auxs;
    const double kp1 = static_cast<double>(k + 1);

    const double Lsp = p_.L_s_prime();
    const double Kmrr = p_.K_mrr();
    const double R1 = p_.R_1();
    const double R2 = p_.R_2();
    const double inv_tws = 1.0 / (p_.tau_r() * p_.omega_s);
    const double wel = p_.omega_el;
    const double ws = p_.omega_s;

    const double speed_diff = S(st::omega_t, k) - S(st::omega_r, k);
    const double damp = p_.C_sh * wel * speed_diff;

    S(st::omega_r, k + 1) =
        (p_.K_sh * S(st::theta_tw, k) + damp - A(al::T_e, k)) / (2.0 * p_.H_g * kp1);
    S(st::omega_t, k + 1) =
        (A(al::T_m, k) - p_.K_sh * S(st::theta_tw, k) - damp) / (2.0 * p_.H_t * kp1);
    S(st::theta_tw, k + 1) = wel * speed_diff / kp1;

    double conv_wr_eqs = 0.0;
    double conv_wr_eds = 0.0;
    for (int m = 0; m <= k; ++m) {
        conv_wr_eqs += S(st::omega_r, m) * S(st::e_qs, k - m);
        conv_wr_eds += S(st::omega_r, m) * S(st::e_ds, k - m);
    }

    S(st::i_qs, k + 1) = wel / (kp1 * Lsp) *
                         (ws * Lsp * S(st::i_ds, k) - R1 * S(st::i_qs, k) -
                          S(st::e_ds, k) * inv_tws + conv_wr_eqs / ws - A(al::v_qs, k) +
                          Kmrr * A(al::v_qr, k));
    S(st::i_ds, k + 1) = wel / (kp1 * Lsp) *
                         (-R1 * S(st::i_ds, k) - ws * Lsp * S(st::i_qs, k) -
                          A(al::v_ds, k) + conv_wr_eds / ws + S(st::e_qs, k) * inv_tws +
                          Kmrr * A(al::v_dr, k));
    S(st::e_qs, k + 1) = wel * ws / kp1 *
                         (R2 * S(st::i_ds, k) - S(st::e_qs, k) * inv_tws + S(st::e_ds, k) -
                          conv_wr_eds / ws - Kmrr * A(al::v_dr, k));
    S(st::e_ds, k + 1) = wel * ws / kp1 *
                         (-R2 * S(st::i_qs, k) - S(st::e_ds, k) * inv_tws - S(st::e_qs, k) +
                          conv_wr_eqs / ws + Kmrr * A(al::v_qr, k));

    // dc link: quotient series of (P_r - P_g)/v_dc, one new term per order
    double prpg = 0.0;
    for (int m = 0; m <= k; ++m) {
        prpg += A(al::v_dr, m) * A(al::i_dr, k - m) + A(al::v_qr, m) * A(al::i_qr, k - m) -
                A(al::v_dg, m) * A(al::i_dg, k - m) - A(al::v_qg, m) * A(al::i_qg, k - m);
    }
    double ff = prpg;
    for (int m = 0; m < k; ++m) ff -= X(aux::ff, m) * S(st::v_dc, k - m);
    X(aux::ff, k) = ff / S(st::v_dc, 0);
    S(st::v_dc, k + 1) = X(aux::ff, k) / (p_.C_dc * kp1);

    const double dk = (k == 0) ? 1.0 : 0.0;
    const double perr = A(al::P_ref, k) - A(al::P_grid, k);
    const double vs_err = p_.V_sref * dk - A(al::v_s, k);
    S(st::u1, k + 1) = perr / kp1;
    S(st::u2, k + 1) = (p_.delta_igref * dk - A(al::delta_ig, k) + p_.K_P[0] * perr +
                        p_.K_I[0] * S(st::u1, k)) / kp1;
    S(st::u3, k + 1) = vs_err / kp1;
    S(st::u4, k + 1) = (p_.E_igref * dk - A(al::e_ig, k) + p_.K_P[2] * vs_err +
                        p_.K_I[2] * S(st::u3, k)) / kp1;
    S(st::u5, k + 1) = (p_.V_dcref * dk - S(st::v_dc, k)) / kp1;
    S(st::u6, k + 1) = (p_.Q_gref * dk - A(al::Q_g, k)) / kp1;
}

void DtWindow::update_aux(int k) {
    auto& S = s_.states;
    auto& X = s_.auxs;

    double acc = 0.0;
    for (int m = 0; m < k; ++m) acc += X(aux::b1, m) * S(st::omega_r, k - m);
    X(aux::b1, k) = -acc / S(st::omega_r, 0);
    X(aux::b3, k) = -kCpExp * u_.v_w * X(aux::b1, k);
    X(aux::b2, k) = kCpLin * u_.v_w * X(aux::b1, k);

    double b4 = X(aux::b4, 0) * X(aux::b3, k);
    for (int m = 1; m < k; ++m) {
        b4 += (static_cast<double>(k - m) / static_cast<double>(k)) * X(aux::b4, m) *
              X(aux::b3, k - m);
    }
    X(aux::b4, k) = b4;
}

void DtWindow::solve_algs(int k) {
    const auto& S = s_.states;
    const auto& A = s_.algs;
    const auto& X = s_.auxs;
    const double ws = p_.omega_s;

    Eigen::VectorXd b = Eigen::VectorXd::Zero(al::count);

    // network interface
    b(al::v_ds) = 0.0;
    {
        double acc = 0.0;
        for (int m = 1; m < k; ++m) {
            acc += A(al::v_qs, m) * A(al::v_qs, k - m) + A(al::v_ds, m) * A(al::v_ds, k - m);
        }
        b(al::v_qs) = -acc;
    }

    // rotor voltage projections
    {
        double dr = 0.0;
        double qr = 0.0;
        for (int m = 1; m < k; ++m) {
            dr += A(al::v_r, m) * A(al::phi_r, k - m);
            qr += A(al::v_r, m) * A(al::psi_r, k - m);
        }
        b(al::v_dr) = dr;
        b(al::v_qr) = qr;
    }

    // converter voltages driven by the PI states
    b(al::v_dg) = p_.x_tg * p_.K_P[4] * S(st::v_dc, k) - p_.x_tg * p_.K_I[4] * S(st::u5, k);
    b(al::v_qg) = p_.x_tg * p_.K_I[5] * S(st::u6, k);

    b(al::i_dg) = 0.0;
    b(al::i_qg) = 0.0;
    b(al::i_dr) = S(st::e_qs, k) / (ws * p_.L_m) - p_.K_mrr() * S(st::i_ds, k);
    b(al::i_qr) = -S(st::e_ds, k) / (ws * p_.L_m) - p_.K_mrr() * S(st::i_qs, k);

    {
        double pg = 0.0;
        double qg = 0.0;
        for (int m = 0; m < k; ++m) {
            pg += A(al::v_ds, m) * S(st::i_ds, k - m) + A(al::v_qs, m) * S(st::i_qs, k - m);
            qg += A(al::v_ds, m) * S(st::i_qs, k - m) - A(al::v_qs, m) * S(st::i_ds, k - m);
        }
        for (int m = 1; m < k; ++m) {
            pg += A(al::v_dg, m) * A(al::i_dg, k - m) + A(al::v_qg, m) * A(al::i_qg, k - m);
            qg += A(al::v_dg, m) * A(al::i_qg, k - m) - A(al::v_qg, m) * A(al::i_dg, k - m);
        }
        b(al::P_grid) = pg;
        b(al::Q_grid) = qg;
    }

    {
        // triple self-convolution of the generator speed
        double acc = 0.0;
        for (int m1 = 0; m1 <= k; ++m1) {
            double inner = 0.0;
            for (int m = 0; m <= m1; ++m) inner += S(st::omega_r, m) * S(st::omega_r, m1 - m);
            acc += inner * S(st::omega_r, k - m1);
        }
        b(al::P_ref) = p_.k_opt * acc;
    }

    {
        double acc = 0.0;
        for (int m = 1; m < k; ++m) {
            acc += A(al::v_dg, m) * A(al::i_qg, k - m) - A(al::v_qg, m) * A(al::i_dg, k - m);
        }
        b(al::Q_g) = acc;
    }

    {
        double acc = 0.0;
        for (int m = 1; m < k; ++m) {
            acc += A(al::v_qs, m) * A(al::v_qs, k - m) + A(al::v_ds, m) * A(al::v_ds, k - m) -
                   A(al::v_s, m) * A(al::v_s, k - m);
        }
        b(al::v_s) = acc;
    }

    {
        double acc = 0.0;
        for (int m = 1; m < k; ++m) acc -= A(al::e_ig, m) * A(al::e_ig, k - m);
        for (int m = 0; m <= k; ++m) {
            acc += S(st::e_qs, m) * S(st::e_qs, k - m) + S(st::e_ds, m) * S(st::e_ds, k - m);
        }
        b(al::e_ig) = acc;
    }

    {
        double acc = S(st::e_qs, k);
        for (int m = 1; m < k; ++m) acc -= A(al::psi_ig, m) * A(al::e_ig, k - m);
        b(al::delta_ig) = acc;
    }

    b(al::delta_r) = p_.K_P[1] * p_.K_I[0] * S(st::u1, k) + p_.K_I[1] * S(st::u2, k);
    b(al::v_r) = p_.K_P[3] * p_.K_I[2] * S(st::u3, k) + p_.K_I[3] * S(st::u4, k);

    {
        double pr = 0.0;
        double qr = 0.0;
        double pig = 0.0;
        double qig = 0.0;
        for (int m = 1; m < k; ++m) {
            const double w = static_cast<double>(k - m) / static_cast<double>(k);
            pr += w * A(al::psi_r, m) * A(al::delta_r, k - m);
            qr -= w * A(al::phi_r, m) * A(al::delta_r, k - m);
            pig += w * A(al::psi_ig, m) * A(al::delta_ig, k - m);
            qig -= w * A(al::phi_ig, m) * A(al::delta_ig, k - m);
        }
        b(al::phi_r) = pr;
        b(al::psi_r) = qr;
        b(al::phi_ig) = pig;
        b(al::psi_ig) = qig;
    }

    {
        double acc = 0.0;
        for (int m = 0; m <= k; ++m) {
            acc += S(st::e_qs, m) * S(st::i_qs, k - m) + S(st::e_ds, m) * S(st::i_ds, k - m);
        }
        b(al::T_e) = acc / ws;
    }

    {
        double acc = 0.0;
        for (int m = 0; m < k; ++m) acc -= A(al::T_m, m) * S(st::omega_t, k - m);
        b(al::T_m) = acc;
    }

    b(al::T_sh) = p_.K_sh * S(st::theta_tw, k);
    b(al::P_t) = 0.0;

    {
        double acc = X(aux::b2, 0) * X(aux::b4, k) + X(aux::b4, 0) * X(aux::b2, k);
        for (int m = 1; m < k; ++m) acc += X(aux::b2, m) * X(aux::b4, k - m);
        b(al::C_ppu) = acc + kCpSlope / u_.v_w * S(st::omega_r, k);
    }

    const Eigen::VectorXd sol = lu_.solve(b);
    if (!sol.allFinite()) {
        throw SolverError("non-finite algebraic coefficients at order " + std::to_string(k) +
                          ", window t=" + std::to_string(s_.t0));
    }
    s_.algs.col(k) = sol;
}

void DtWindow::build_all() {
    for (int k = 0; k < s_.nl; ++k) {
        advance_states(k);
        update_aux(k + 1);
        solve_algs(k + 1);
    }
    if (!s_.states.allFinite() || !s_.algs.allFinite() || !s_.auxs.allFinite()) {
        throw SolverError("non-finite series coefficients in window t=" +
                          std::to_string(s_.t0));
    }
}

SystemSeries build_window(const DfigParams& p, const InputVec& u, double t0, int nl,
                          const StateVec& x0, const AlgVec& a0, double cond_max) {
    DtWindow w(p, u, t0, nl, x0, a0, cond_max);
    w.build_all();
    return std::move(w).take_series();
}

} // namespace dfig
