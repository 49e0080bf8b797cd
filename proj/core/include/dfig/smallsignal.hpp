#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dfig/linalg.hpp"
#include "dfig/model.hpp"

namespace dfig {

/// Modal data of one operating point. Modes are sorted by real part
/// descending, ties broken by ascending |imag|.
struct ModalReport {
    Eigen::VectorXcd eigenvalues;
    Eigen::VectorXd damping;       // -re/|lambda| per mode
    Eigen::VectorXd frequency_hz;  // |im|/(2 pi)
    Eigen::MatrixXd participation; // st::count x modes, columns sum to 1
    std::vector<std::string> labels;
    std::vector<bool> mode_ok;     // false where biorthogonality broke down
    bool stable = false;           // every real part strictly negative
};

/// Reduced 14x14 state matrix at an equilibrium: the algebraic variables are
/// eliminated through the algebraic Jacobian. All four blocks come from
/// central finite differences of the same residual code the integrators use.
[[nodiscard]] Eigen::MatrixXd linearize(const DfigParams& p, const InputVec& u,
                                        const StateVec& x_eq, const AlgVec& a_eq);

/// p(k,i) = |v_ki * w_ki| column-normalized to sum 1; near-defective modes
/// are flagged in `available` and filled with NaN.
[[nodiscard]] Eigen::MatrixXd participation_factors(const EigDecomposition& d,
                                                    std::vector<bool>* available = nullptr);

/// Eigenvalues, damping ratios, frequencies and participation of a reduced
/// state matrix.
[[nodiscard]] ModalReport modal_analysis(const Eigen::MatrixXd& a_reduced);

struct SweepPoint {
    double v_w = 0.0;
    bool ok = false;
    std::string error;
    Equilibrium eq;
    ModalReport modal;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::optional<double> first_unstable;  // lowest wind speed with a RHP mode
};

/// Modal data across a wind-speed grid; equilibrium failures are recorded
/// per point and the sweep continues.
[[nodiscard]] SweepResult sweep_eigs(const DfigParams& p, const InputVec& base,
                                     std::span<const double> wind_grid);

} // namespace dfig
