#pragma once

#include <Eigen/Dense>

#include "dfig/linalg.hpp"
#include "dfig/model.hpp"
#include "dfig/series.hpp"

namespace dfig {

/// Auxiliary series used by the performance-coefficient recurrence and the
/// dc-link power quotient.
namespace aux {
enum : int { b1, b2, b3, b4, ff, count };
}

/// Per-window bundle of truncated power series for every state, algebraic
/// and auxiliary signal. Column k of each matrix holds the order-k
/// coefficients about t0.
struct SystemSeries {
    double t0 = 0.0;
    int nl = 0;
    Eigen::MatrixXd states;  // st::count x (nl+1)
    Eigen::MatrixXd algs;    // al::count x (nl+1)
    Eigen::MatrixXd auxs;    // aux::count x (nl+1)

    [[nodiscard]] StateVec eval_states(double t) const;
    [[nodiscard]] AlgVec eval_algs(double t) const;

    [[nodiscard]] dt::PowerSeries state_series(int i) const;
    [[nodiscard]] dt::PowerSeries alg_series(int i) const;
    [[nodiscard]] dt::PowerSeries aux_series(int i) const;
};

/// One integration window: seeds order 0 from a consistent point,
/// factorizes the order-independent algebraic matrix once, then raises the
/// truncation order one step at a time without iteration.
class DtWindow {
public:
    DtWindow(const DfigParams& p, const InputVec& u, double t0, int nl, const StateVec& x0,
             const AlgVec& a0, double cond_max = 1e12);

    /// Runs the full order loop k = 0..nl-1.
    void build_all();

    /// State coefficients at order k+1 (and the dc-link quotient at k) from
    /// everything at orders <= k.
    void advance_states(int k);

    /// Auxiliary recurrences at order k (k >= 1).
    void update_aux(int k);

    /// Solves the 28x28 linear system for the order-k algebraic
    /// coefficients (k >= 1) using the cached factorization.
    void solve_algs(int k);

    [[nodiscard]] const SystemSeries& series() const noexcept { return s_; }
    [[nodiscard]] SystemSeries take_series() && { return std::move(s_); }
    [[nodiscard]] double matrix_rcond() const noexcept { return lu_.rcond(); }

private:
    const DfigParams& p_;
    InputVec u_;
    SystemSeries s_;
    LuFactor lu_;
};

/// Convenience: seed, build all orders, return the series bundle.
[[nodiscard]] SystemSeries build_window(const DfigParams& p, const InputVec& u, double t0,
                                        int nl, const StateVec& x0, const AlgVec& a0,
                                        double cond_max = 1e12);

} // namespace dfig
