#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dfig/errors.hpp"

namespace dfig {

/// Partial-pivoting LU factorization with a reciprocal condition estimate,
/// reusable across right-hand sides.
class LuFactor {
public:
    explicit LuFactor(const Eigen::MatrixXd& A);

    [[nodiscard]] Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

    /// Reciprocal condition number estimate in the 1-norm.
    [[nodiscard]] double rcond() const noexcept { return rcond_; }

private:
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    double rcond_ = 0.0;
};

/// One-shot factorize-and-solve. Throws SingularError (with the pivot index)
/// when a pivot is zero beyond tolerance.
[[nodiscard]] Eigen::VectorXd lu_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

/// Dense nonsymmetric eigendecomposition (n <= 64). Left eigenvectors are
/// normalized against the right ones so that  w_i^H v_j == delta_ij.
struct EigDecomposition {
    Eigen::VectorXcd values;
    Eigen::MatrixXcd right;  // column i is v_i, unit norm
    Eigen::MatrixXcd left;   // column i is w_i with w_i^H v_i == 1
    std::vector<bool> mode_ok;  // false where biorthogonality broke down
};

[[nodiscard]] EigDecomposition eig_dense(const Eigen::MatrixXd& A);

} // namespace dfig
