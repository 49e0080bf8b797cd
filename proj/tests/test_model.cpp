#include <doctest.h>

#include <cmath>
#include <random>

#include "dfig/model.hpp"

using namespace dfig;

namespace {

Equilibrium solve_default(double v_w) {
    DfigParams p;
    InputVec u{v_w, p.x_e_default, p.v_qinf_default};
    return find_equilibrium(p, u);
}

} // namespace

TEST_SUITE("dfig model") {

TEST_CASE("performance coefficient closed form") {
    // golden value, frozen from an independent high-precision evaluation
    CHECK(cp_value(10.0, 1.0) ==
          doctest::Approx(0.87960477070022605).epsilon(1e-14));

    // at omega_r = 2800/(1299*0.735) the exponent vanishes and the value
    // reduces to the algebraic part alone
    const double wr = 2800.0 / (1299.0 * 0.735);
    const double reduced = (1.283927808 * 10.0 / wr - 9.7697) + 1.3801875 * wr / 10.0;
    CHECK(cp_value(10.0, wr) == doctest::Approx(reduced).epsilon(1e-14));

    CHECK_THROWS_AS((void)cp_value(10.0, 0.0), RangeError);
    CHECK_THROWS_AS((void)cp_value(10.0, -1.0), RangeError);
    CHECK_THROWS_AS((void)cp_value(0.0, 1.0), RangeError);
}

TEST_CASE("equilibrium satisfies both residual sets") {
    DfigParams p;
    InputVec u{11.0, p.x_e_default, p.v_qinf_default};
    const Equilibrium eq = find_equilibrium(p, u);

    CHECK(max_abs(state_rhs(p, eq.x, eq.a, u)) <= 1e-10);
    CHECK(max_abs(alg_residual(p, eq.x, eq.a, u)) <= 1e-10);

    // soft anchor for the default parameter set
    CHECK(std::abs(eq.x[st::omega_r] - 0.91) <= 0.02);
    CHECK(eq.x[st::omega_t] == doctest::Approx(eq.x[st::omega_r]).epsilon(1e-9));
    CHECK(eq.x[st::v_dc] == doctest::Approx(p.V_dcref).epsilon(1e-10));
    CHECK(eq.a[al::v_s] == doctest::Approx(p.V_sref).epsilon(1e-10));
    CHECK(std::abs(eq.a[al::Q_g]) <= 1e-9);
}

TEST_CASE("equilibrium tracks the performance peak") {
    const Equilibrium eq = solve_default(10.0);
    const double wr = eq.x[st::omega_r];
    const double at_eq = cp_value(10.0, wr);
    CHECK(cp_value(10.0, 1.01 * wr) < at_eq);
    CHECK(cp_value(10.0, 0.99 * wr) < at_eq);
}

TEST_CASE("twist perturbation moves the speed derivative through the shaft") {
    DfigParams p;
    InputVec u{10.0, p.x_e_default, p.v_qinf_default};
    const Equilibrium eq = find_equilibrium(p, u);
    const double f0 = state_rhs(p, eq.x, eq.a, u)[st::omega_r];

    const double eps = 1e-5;
    StateVec x2 = eq.x;
    x2[st::theta_tw] += eps;
    const AlgVec a2 = solve_consistent_alg(p, x2, eq.a, u);
    const double f1 = state_rhs(p, x2, a2, u)[st::omega_r];

    CHECK(f1 - f0 == doctest::Approx(eps * p.K_sh / (2.0 * p.H_g)).epsilon(1e-6));
}

TEST_CASE("equal speeds freeze the twist angle") {
    DfigParams p;
    InputVec u{10.0, p.x_e_default, p.v_qinf_default};
    Equilibrium eq = find_equilibrium(p, u);
    eq.x[st::omega_t] = eq.x[st::omega_r];
    CHECK(state_rhs(p, eq.x, eq.a, u)[st::theta_tw] == 0.0);
}

TEST_CASE("GSC interface residual structure") {
    DfigParams p;
    InputVec u{10.0, p.x_e_default, p.v_qinf_default};
    const Equilibrium eq = find_equilibrium(p, u);

    AlgVec a = eq.a;
    a[al::i_dg] = 0.0;
    a[al::i_qg] = 0.0;
    a[al::v_qg] = a[al::v_qs];
    a[al::v_dg] = a[al::v_ds];
    const AlgVec g = alg_residual(p, eq.x, a, u);
    CHECK(g[al::i_dg] == 0.0);
    CHECK(g[al::i_qg] == 0.0);

    AlgVec b = eq.a;
    b[al::v_dg] = 0.0;
    b[al::v_qg] = 0.0;
    b[al::Q_g] = 0.0;
    CHECK(alg_residual(p, eq.x, b, u)[al::Q_g] == 0.0);
    b[al::Q_g] = 0.3;
    CHECK(alg_residual(p, eq.x, b, u)[al::Q_g] == doctest::Approx(0.3));
}

TEST_CASE("analytic algebraic Jacobian matches central differences") {
    DfigParams p;
    InputVec u{10.5, p.x_e_default, p.v_qinf_default};
    const Equilibrium eq = find_equilibrium(p, u);
    const Eigen::MatrixXd J = alg_jacobian(p, eq.x, eq.a, u);

    for (int j = 0; j < al::count; ++j) {
        const double eps = 1e-7 * std::max(1.0, std::abs(eq.a[j]));
        AlgVec ap = eq.a;
        AlgVec am = eq.a;
        ap[j] += eps;
        am[j] -= eps;
        const AlgVec gp = alg_residual(p, eq.x, ap, u);
        const AlgVec gm = alg_residual(p, eq.x, am, u);
        for (int i = 0; i < al::count; ++i) {
            const double fd = (gp[i] - gm[i]) / (2.0 * eps);
            CAPTURE(i);
            CAPTURE(j);
            CHECK(std::abs(J(i, j) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("non-finite evaluation is diagnosed") {
    DfigParams p;
    InputVec u{10.0, p.x_e_default, p.v_qinf_default};
    Equilibrium eq = find_equilibrium(p, u);
    eq.x[st::v_dc] = 0.0;
    CHECK_THROWS_AS((void)state_rhs(p, eq.x, eq.a, u), ModelError);
}

TEST_CASE("initialization error carries the residual norm") {
    DfigParams p;
    InputVec u{10.0, p.x_e_default, p.v_qinf_default};
    Equilibrium bad = equilibrium_guess(p, u);
    bad.x[st::e_qs] += 0.5;
    CHECK_THROWS_AS((void)find_equilibrium(p, u, bad, 1e-10, 1), InitError);
}

} // TEST_SUITE
