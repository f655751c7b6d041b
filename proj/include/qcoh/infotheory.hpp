#pragma once

// Channel quantities for an ensemble {p_x, rho_x}: the Holevo quantity chi,
// the mutual information H(X:Y) left after a measurement, the information
// lost to dephasing, and the search for the best projective measurement.
// The central identity: chi - H(X:Y_dephasing) equals the ensemble's
// coherence loss exactly, since both reduce to
// [S(rho) - S(rho^d)] - sum_x p_x [S(rho_x) - S(rho_x^d)].

#include <string>

#include "qcoh/coherence.hpp"
#include "qcoh/operations.hpp"
#include "qcoh/optimize.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

/// chi = S(sum_x p_x rho_x) - sum_x p_x S(rho_x), in bits.
double holevo_chi(const Ensemble& e);

/// Mutual information of the joint distribution P(x, l) = p_x tr(K_l rho_x K_l†).
double measured_mutual_info(const Ensemble& e, const Measurement& y);

/// Closed form S(rho^d) - sum_x p_x S(rho_x^d) for measuring in the given
/// basis; equals measured_mutual_info with that projective measurement.
double dephased_mutual_info(const Ensemble& e);
double dephased_mutual_info(const Ensemble& e, const Mat& basis);

struct ChannelReport {
    double chi = 0.0;  // bits
    double h_xy = 0.0; // bits, dephased form
    double il = 0.0;   // chi - h_xy
    double cl = 0.0;   // ensemble coherence loss
    double residual = 0.0; // |il - cl|, floating-point dust only
    std::string basis_label;
};

/// Computes chi, H(X:Y) in the basis, and both routes to the loss; throws
/// ConsistencyError if the two routes disagree beyond 1e-7 (a numerics bug,
/// not a property of the input).
ChannelReport information_loss(const Ensemble& e);
ChannelReport information_loss(const Ensemble& e, const Mat& basis);

struct AccessibleInfoResult {
    double value = 0.0; // bits; projective accessible information
    ProjectiveBasis best_basis;
    int n_restarts = 0;
    bool converged = false;
};

/// Maximizes dephased_mutual_info over projective bases. Multi-start local
/// search; the Holevo bound caps the result, and the computational basis is
/// always among the starting points so the value never falls below it.
AccessibleInfoResult accessible_info(const Ensemble& e, const OptimizerOptions& opts = {});

/// Brute-force qubit oracle: scans Bloch angles (theta, phi) on an
/// n_theta x n_phi grid and returns the best dephased mutual information.
double qubit_accessible_info_grid(const Ensemble& e, int n_theta = 400, int n_phi = 800);

} // namespace qcoh
