#pragma once

// Entropy and coherence functionals. All entropic quantities are in bits.
//
// The relative-entropy coherence of a state is the entropy gained by
// erasing its off-diagonal elements in the reference basis:
//   C_r(rho) = S(rho^d) - S(rho).
// Coherence loss of an ensemble is the coherence destroyed by forgetting
// which member was prepared:
//   CL = sum_x p_x C_r(rho_x) - C_r(sum_x p_x rho_x).

#include <string>
#include <vector>

#include "qcoh/states.hpp"

namespace qcoh {

/// -sum p log2 p with 0 log 0 := 0; entries below 1e-12 are treated as 0.
double shannon_entropy(const Eigen::VectorXd& p);
double binary_entropy(double p);

/// von Neumann entropy in bits: -sum lambda log2 lambda over the clamped
/// spectrum. Result lies in [0, log2 dim].
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of the dephased state S(rho^d). Uses the exact spectrum of the
/// pinched matrix (its basis diagonal), so no second eigensolve is needed.
double dephased_entropy(const DensityMatrix& rho);
double dephased_entropy(const DensityMatrix& rho, const Mat& basis);

double relative_entropy_coherence(const DensityMatrix& rho);
double relative_entropy_coherence(const DensityMatrix& rho, const Mat& basis);

/// l1-norm coherence: sum of |rho_ij| over i != j in the reference basis.
double l1_coherence(const DensityMatrix& rho);
double l1_coherence(const DensityMatrix& rho, const Mat& basis);

/// sum_x p_x C_r(rho_x)
double ensemble_average_coherence(const Ensemble& e);
double ensemble_average_coherence(const Ensemble& e, const Mat& basis);

/// CL = sum_x p_x C_r(rho_x) - C_r(mixture); nonnegative by convexity.
double coherence_loss(const Ensemble& e);
double coherence_loss(const Ensemble& e, const Mat& basis);

struct CoherenceReport {
    double entropy = 0.0;
    double c_r = 0.0;
    double c_l1 = 0.0;
    std::string basis_label;
};

CoherenceReport coherence_report(const DensityMatrix& rho);
CoherenceReport coherence_report(const DensityMatrix& rho, const Mat& basis,
                                 const std::string& basis_label);

} // namespace qcoh
