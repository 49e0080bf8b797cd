#pragma once

#include <Eigen/Dense>

#include "dfig/params.hpp"
#include "dfig/vectors.hpp"

namespace dfig {

/// Normalized wind-turbine performance coefficient as a closed form of wind
/// speed and generator speed (pitch angle already eliminated).
[[nodiscard]] double cp_value(double v_w, double omega_r);

/// Time derivatives of the 14 differential states evaluated from the
/// original (untransformed) equations. Used by the RK-4 reference
/// integrator, the equilibrium solve and the Jacobian builders.
[[nodiscard]] StateVec state_rhs(const DfigParams& p, const StateVec& x, const AlgVec& a,
                                 const InputVec& u);

/// The 28 algebraic residuals; the zero vector characterizes a consistent
/// algebraic point. Row i is scaled so that d(residual_i)/d(a_i) is O(1).
[[nodiscard]] AlgVec alg_residual(const DfigParams& p, const StateVec& x, const AlgVec& a,
                                  const InputVec& u);

/// Analytic Jacobian of alg_residual with respect to the algebraic vector.
/// Trigonometric entries are taken from the phi/psi values carried in `a`,
/// which coincide with the true derivatives at any consistent point. The
/// same matrix is the per-window linear system of the series kernel.
[[nodiscard]] Eigen::MatrixXd alg_jacobian(const DfigParams& p, const StateVec& x,
                                           const AlgVec& a, const InputVec& u);

/// Newton solve of alg_residual == 0 at fixed states, warm-started from
/// `a_guess`. Throws InitError on divergence.
[[nodiscard]] AlgVec solve_consistent_alg(const DfigParams& p, const StateVec& x,
                                          const AlgVec& a_guess, const InputVec& u,
                                          double tol = 1e-12, int max_iter = 50);

struct Equilibrium {
    StateVec x;
    AlgVec a;
};

/// Builds a closed-form starting guess for the operating point at the given
/// input (steady drive train at the MPPT power balance, machine algebra
/// solved exactly, PI integrators back-computed).
[[nodiscard]] Equilibrium equilibrium_guess(const DfigParams& p, const InputVec& u);

/// Damped Newton solve of {state_rhs == 0, alg_residual == 0}. The guess
/// must be in the normal operating region (omega_r within (0.5, 1.3) p.u.).
/// Returned point satisfies max residual <= tol. Throws InitError with the
/// final residual norm after max_iter iterations without convergence.
[[nodiscard]] Equilibrium find_equilibrium(const DfigParams& p, const InputVec& u,
                                           const Equilibrium& guess, double tol = 1e-10,
                                           int max_iter = 50);

/// find_equilibrium seeded by equilibrium_guess.
[[nodiscard]] Equilibrium find_equilibrium(const DfigParams& p, const InputVec& u,
                                           double tol = 1e-10, int max_iter = 50);

[[nodiscard]] double max_abs(std::span<const double> v);

} // namespace dfig
