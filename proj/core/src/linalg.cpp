#include "dfig/linalg.hpp"

#include <cmath>
#include <string>

namespace dfig {

namespace {

void check_pivots(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, double scale) {
    const auto diag = lu.matrixLU().diagonal();
    const double tol = 1e-14 * std::max(scale, 1e-300);
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        if (std::abs(diag(i)) <= tol || !std::isfinite(diag(i))) {
            throw SingularError("zero pivot at index " + std::to_string(i) +
                                " (|u_ii|=" + std::to_string(std::abs(diag(i))) + ")");
        }
    }
}

} // namespace

LuFactor::LuFactor(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) {
        throw DimensionError("LU factorization needs a square matrix");
    }
    if (!A.allFinite()) {
        throw RangeError("LU factorization of a non-finite matrix");
    }
    const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
    lu_.compute(A);
    check_pivots(lu_, norm);
    rcond_ = lu_.rcond();
}

Eigen::VectorXd LuFactor::solve(const Eigen::VectorXd& b) const {
    return lu_.solve(b);
}

Eigen::VectorXd lu_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    return LuFactor(A).solve(b);
}

EigDecomposition eig_dense(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) {
        throw DimensionError("eigendecomposition needs a square matrix");
    }
    if (A.rows() > 64) {
        throw DimensionError("eigendecomposition limited to n <= 64");
    }
    if (!A.allFinite()) {
        throw RangeError("eigendecomposition of a non-finite matrix");
    }

    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success) {
        throw EigenError("real Schur iteration did not converge");
    }

    EigDecomposition out;
    out.values = es.eigenvalues();
    out.right = es.eigenvectors();
    const Eigen::Index n = A.rows();

    // Rows of V^-1 are the (unconjugated) left eigenvectors; store their
    // conjugates so that  w_i^H v_j == delta_ij.
    Eigen::FullPivLU<Eigen::MatrixXcd> vlu(out.right);
    out.mode_ok.assign(static_cast<std::size_t>(n), true);
    if (!vlu.isInvertible()) {
        // defective matrix: no biorthogonal set exists
        out.left = Eigen::MatrixXcd::Constant(n, n, std::complex<double>(
                                                        std::nan(""), std::nan("")));
        out.mode_ok.assign(static_cast<std::size_t>(n), false);
        return out;
    }
    const Eigen::MatrixXcd vinv = vlu.inverse();
    out.left = vinv.adjoint();

    constexpr double kBreakdown = 1e12;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (out.left.col(i).norm() > kBreakdown) {
            out.mode_ok[static_cast<std::size_t>(i)] = false;
        }
    }
    return out;
}

} // namespace dfig
