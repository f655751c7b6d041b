#pragma once

// Dense complex matrix kernel: tensor products, partial traces, Hermitian
// eigendecomposition and basis pinching. Everything downstream (entropies,
// coherence measures, discord) is built from these few primitives.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "qcoh/errors.hpp"

namespace qcoh {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Global dimension cap for tensor products and loaded states.
/// Defaults to 64; override with the QCOH_MAX_DIM environment variable.
int max_dim();

enum class Subsystem { A, B };

bool all_finite(const Mat& m);

/// max |m - m†| over entries; 0 for exactly Hermitian input.
double hermiticity_defect(const Mat& m);

/// max |U†U - I| over entries.
double unitarity_defect(const Mat& m);

/// Throws ValidationError if u is not unitary within tol.
void require_unitary(const Mat& u, double tol = 1e-10);

/// Kronecker product. Throws DimensionError if the result would exceed
/// the dimension cap.
Mat tensor(const Mat& a, const Mat& b);

/// Reduce a (dim_a*dim_b) square matrix to the kept subsystem.
Mat partial_trace(const Mat& m, int dim_a, int dim_b, Subsystem keep);

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues; // descending
    Mat eigenvectors;            // columns, matching order
};

/// Hermitian eigendecomposition. The input is symmetrized to (m+m†)/2
/// first; a Hermiticity defect above 1e-9 is rejected as invalid input.
EigenDecomposition eig_hermitian(const Mat& m);

/// Eigenvalues only (descending); closed form for dim <= 2.
Eigen::VectorXd hermitian_eigenvalues(const Mat& m);

/// Diagonal part of m in the computational basis.
Mat dephase(const Mat& m);

/// Diagonal part of m in the basis given by the columns of `basis`:
/// sum_i |u_i><u_i| m |u_i><u_i|.
Mat dephase(const Mat& m, const Mat& basis);

/// Diagonal entries of m in the given basis, i.e. <u_i|m|u_i>. These are
/// exactly the spectrum of dephase(m, basis).
Eigen::VectorXd dephase_diagonal(const Mat& m, const Mat& basis);
Eigen::VectorXd dephase_diagonal(const Mat& m);

/// Pinch the B factor only: sum_i (1_A ⊗ |i><i|) m (1_A ⊗ |i><i|).
Mat block_dephase_b(const Mat& m, int dim_a, int dim_b);
Mat block_dephase_b(const Mat& m, int dim_a, int dim_b, const Mat& basis_b);

} // namespace qcoh
