#include "dfig/smallsignal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace dfig {

namespace {

constexpr double kEquilibriumTol = 1e-8;

Eigen::VectorXd pack_rhs(const DfigParams& p, const StateVec& x, const AlgVec& a,
                         const InputVec& u) {
    const StateVec f = state_rhs(p, x, a, u);
    Eigen::VectorXd v(st::count);
    for (int i = 0; i < st::count; ++i) v(i) = f[i];
    return v;
}

Eigen::VectorXd pack_res(const DfigParams& p, const StateVec& x, const AlgVec& a,
                         const InputVec& u) {
    const AlgVec g = alg_residual(p, x, a, u);
    Eigen::VectorXd v(al::count);
    for (int i = 0; i < al::count; ++i) v(i) = g[i];
    return v;
}

} // namespace

Eigen::MatrixXd linearize(const DfigParams& p, const InputVec& u, const StateVec& x_eq,
                          const AlgVec& a_eq) {
    if (max_abs(state_rhs(p, x_eq, a_eq, u)) > kEquilibriumTol ||
        max_abs(alg_residual(p, x_eq, a_eq, u)) > kEquilibriumTol) {
        throw InitError("linearize requires an equilibrium point (residuals above 1e-8)");
    }

    Eigen::MatrixXd f_x(st::count, st::count);
    Eigen::MatrixXd f_a(st::count, al::count);
    Eigen::MatrixXd g_x(al::count, st::count);
    Eigen::MatrixXd g_a(al::count, al::count);

    for (int j = 0; j < st::count; ++j) {
        const double eps = 1e-6 * std::max(1.0, std::abs(x_eq[j]));
        StateVec xp = x_eq;
        StateVec xm = x_eq;
        xp[j] += eps;
        xm[j] -= eps;
        f_x.col(j) = (pack_rhs(p, xp, a_eq, u) - pack_rhs(p, xm, a_eq, u)) / (2.0 * eps);
        g_x.col(j) = (pack_res(p, xp, a_eq, u) - pack_res(p, xm, a_eq, u)) / (2.0 * eps);
    }
    for (int j = 0; j < al::count; ++j) {
        const double eps = 1e-6 * std::max(1.0, std::abs(a_eq[j]));
        AlgVec ap = a_eq;
        AlgVec am = a_eq;
        ap[j] += eps;
        am[j] -= eps;
        f_a.col(j) = (pack_rhs(p, x_eq, ap, u) - pack_rhs(p, x_eq, am, u)) / (2.0 * eps);
        g_a.col(j) = (pack_res(p, x_eq, ap, u) - pack_res(p, x_eq, am, u)) / (2.0 * eps);
    }

    const LuFactor lu(g_a);
    if (lu.rcond() < 1e-12) {
        throw SingularError("algebraic Jacobian near-singular in linearization (rcond=" +
                            std::to_string(lu.rcond()) + ")");
    }
    Eigen::MatrixXd ga_inv_gx(al::count, st::count);
    for (int j = 0; j < st::count; ++j) ga_inv_gx.col(j) = lu.solve(g_x.col(j));
    return f_x - f_a * ga_inv_gx;
}

Eigen::MatrixXd participation_factors(const EigDecomposition& d, std::vector<bool>* available) {
    const Eigen::Index n = d.values.size();
    Eigen::MatrixXd pf(n, n);
    std::vector<bool> ok = d.mode_ok;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!ok[static_cast<std::size_t>(i)]) {
            pf.col(i).setConstant(std::nan(""));
            continue;
        }
        double sum = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            pf(k, i) = std::abs(d.right(k, i) * d.left(k, i));
            sum += pf(k, i);
        }
        if (!(sum > 0.0) || !std::isfinite(sum)) {
            ok[static_cast<std::size_t>(i)] = false;
            pf.col(i).setConstant(std::nan(""));
            continue;
        }
        pf.col(i) /= sum;
    }
    if (available != nullptr) *available = ok;
    return pf;
}

ModalReport modal_analysis(const Eigen::MatrixXd& a_reduced) {
    const EigDecomposition d = eig_dense(a_reduced);
    const Eigen::Index n = d.values.size();

    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const auto la = d.values(a);
        const auto lb = d.values(b);
        if (la.real() != lb.real()) return la.real() > lb.real();
        return std::abs(la.imag()) < std::abs(lb.imag());
    });

    EigDecomposition sorted;
    sorted.values.resize(n);
    sorted.right.resize(n, n);
    sorted.left.resize(n, n);
    sorted.mode_ok.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        sorted.values(i) = d.values(idx[static_cast<std::size_t>(i)]);
        sorted.right.col(i) = d.right.col(idx[static_cast<std::size_t>(i)]);
        sorted.left.col(i) = d.left.col(idx[static_cast<std::size_t>(i)]);
        sorted.mode_ok[static_cast<std::size_t>(i)] =
            d.mode_ok[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }

    ModalReport r;
    r.eigenvalues = sorted.values;
    r.damping.resize(n);
    r.frequency_hz.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto lam = sorted.values(i);
        const double mag = std::abs(lam);
        r.damping(i) = mag > 0.0 ? -lam.real() / mag : 1.0;
        r.frequency_hz(i) = std::abs(lam.imag()) / (2.0 * std::numbers::pi);
    }
    r.participation = participation_factors(sorted, &r.mode_ok);
    for (auto name : state_names()) r.labels.emplace_back(name);
    r.stable = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (r.eigenvalues(i).real() >= 0.0) r.stable = false;
    }
    return r;
}

SweepResult sweep_eigs(const DfigParams& p, const InputVec& base,
                       std::span<const double> wind_grid) {
    SweepResult out;
    std::optional<Equilibrium> warm;
    for (double v_w : wind_grid) {
        SweepPoint pt;
        pt.v_w = v_w;
        InputVec u = base;
        u.v_w = v_w;
        try {
            Equilibrium eq = warm ? find_equilibrium(p, u, *warm)
                                  : find_equilibrium(p, u);
            pt.eq = eq;
            pt.modal = modal_analysis(linearize(p, u, eq.x, eq.a));
            pt.ok = true;
            warm = eq;
            if (!pt.modal.stable && !out.first_unstable) out.first_unstable = v_w;
        } catch (const Error& e) {
            pt.ok = false;
            pt.error = e.what();
            warm.reset();
        }
        out.points.push_back(std::move(pt));
    }
    return out;
}

} // namespace dfig
