#include "qcoh/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace qcoh {

int max_dim() {
    if (const char* env = std::getenv("QCOH_MAX_DIM")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 64;
}

bool all_finite(const Mat& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                return false;
    return true;
}

double hermiticity_defect(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionError("hermiticity_defect: matrix not square");
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionError("unitarity_defect: matrix not square");
    Mat g = m.adjoint() * m;
    g -= Mat::Identity(m.rows(), m.cols());
    return g.cwiseAbs().maxCoeff();
}

void require_unitary(const Mat& u, double tol) {
    double defect = unitarity_defect(u);
    if (defect > tol)
        throw ValidationError("basis matrix is not unitary: defect " + std::to_string(defect));
}

Mat tensor(const Mat& a, const Mat& b) {
    const Eigen::Index rows = a.rows() * b.rows();
    const Eigen::Index cols = a.cols() * b.cols();
    if (rows > max_dim() || cols > max_dim())
        throw DimensionError("tensor: result dimension " + std::to_string(rows) + "x" +
                             std::to_string(cols) + " exceeds cap " + std::to_string(max_dim()));
    Mat out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat partial_trace(const Mat& m, int dim_a, int dim_b, Subsystem keep) {
    if (dim_a < 1 || dim_b < 1)
        throw DimensionError("partial_trace: nonpositive subsystem dimension");
    const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
    if (m.rows() != n || m.cols() != n)
        throw DimensionError("partial_trace: matrix size " + std::to_string(m.rows()) +
                             " does not factor as " + std::to_string(dim_a) + "x" +
                             std::to_string(dim_b));
    if (keep == Subsystem::A) {
        Mat out = Mat::Zero(dim_a, dim_a);
        for (int a = 0; a < dim_a; ++a)
            for (int a2 = 0; a2 < dim_a; ++a2)
                for (int b = 0; b < dim_b; ++b)
                    out(a, a2) += m(a * dim_b + b, a2 * dim_b + b);
        return out;
    }
    Mat out = Mat::Zero(dim_b, dim_b);
    for (int b = 0; b < dim_b; ++b)
        for (int b2 = 0; b2 < dim_b; ++b2)
            for (int a = 0; a < dim_a; ++a)
                out(b, b2) += m(a * dim_b + b, a * dim_b + b2);
    return out;
}

EigenDecomposition eig_hermitian(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionError("eig_hermitian: matrix not square");
    const double defect = hermiticity_defect(m);
    if (defect > 1e-9)
        throw ValidationError("eig_hermitian: Hermiticity defect " + std::to_string(defect) +
                              " exceeds 1e-9");
    Mat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> solver(h);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eig_hermitian: eigensolver failed to converge");
    // Eigen sorts ascending; flip to descending.
    const Eigen::Index n = h.rows();
    EigenDecomposition out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionError("hermitian_eigenvalues: matrix not square");
    const Eigen::Index n = m.rows();
    if (n == 1) {
        Eigen::VectorXd ev(1);
        ev(0) = m(0, 0).real();
        return ev;
    }
    if (n == 2) {
        // Closed form: mean ± sqrt((diff/2)^2 + |offdiag|^2).
        const double a = m(0, 0).real();
        const double d = m(1, 1).real();
        const Cplx od = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
        const double mid = 0.5 * (a + d);
        const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(od));
        Eigen::VectorXd ev(2);
        ev(0) = mid + rad;
        ev(1) = mid - rad;
        return ev;
    }
    Mat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("hermitian_eigenvalues: eigensolver failed to converge");
    return solver.eigenvalues().reverse();
}

Mat dephase(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionError("dephase: matrix not square");
    return m.diagonal().asDiagonal();
}

Mat dephase(const Mat& m, const Mat& basis) {
    if (m.rows() != m.cols()) throw DimensionError("dephase: matrix not square");
    if (basis.rows() != m.rows() || basis.cols() != m.cols())
        throw DimensionError("dephase: basis dimension mismatch");
    require_unitary(basis);
    Mat rotated = basis.adjoint() * m * basis;
    return basis * rotated.diagonal().asDiagonal() * basis.adjoint();
}

Eigen::VectorXd dephase_diagonal(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionError("dephase_diagonal: matrix not square");
    return m.diagonal().real();
}

Eigen::VectorXd dephase_diagonal(const Mat& m, const Mat& basis) {
    if (m.rows() != m.cols()) throw DimensionError("dephase_diagonal: matrix not square");
    if (basis.rows() != m.rows() || basis.cols() != m.cols())
        throw DimensionError("dephase_diagonal: basis dimension mismatch");
    require_unitary(basis);
    const Eigen::Index n = m.rows();
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i)
        out(i) = (basis.col(i).adjoint() * m * basis.col(i))(0, 0).real();
    return out;
}

Mat block_dephase_b(const Mat& m, int dim_a, int dim_b) {
    const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
    if (m.rows() != n || m.cols() != n)
        throw DimensionError("block_dephase_b: matrix size does not factor as given dims");
    Mat out = Mat::Zero(n, n);
    for (int a = 0; a < dim_a; ++a)
        for (int a2 = 0; a2 < dim_a; ++a2)
            for (int b = 0; b < dim_b; ++b)
                out(a * dim_b + b, a2 * dim_b + b) = m(a * dim_b + b, a2 * dim_b + b);
    return out;
}

Mat block_dephase_b(const Mat& m, int dim_a, int dim_b, const Mat& basis_b) {
    if (basis_b.rows() != dim_b || basis_b.cols() != dim_b)
        throw DimensionError("block_dephase_b: basis dimension mismatch");
    require_unitary(basis_b);
    Mat lift = tensor(Mat::Identity(dim_a, dim_a), basis_b);
    return lift * block_dephase_b(lift.adjoint() * m * lift, dim_a, dim_b) * lift.adjoint();
}

} // namespace qcoh
