#pragma once

// Measurements and channels. A measurement is a set of Kraus operators
// {K_l} with sum K†K = 1. A Kraus operator is strictly incoherent in the
// reference basis when it has at most one nonzero entry per column (it maps
// basis states to basis states) and at most one per row (the index map is
// injective, so K† is incoherent too). Such operators never use the
// off-diagonal elements of a state: tr(K rho K†) = tr(K rho^d K†).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcoh/states.hpp"

namespace qcoh {

struct Measurement {
    std::vector<Mat> operators;
    std::string label;

    int dim() const { return operators.empty() ? 0 : static_cast<int>(operators[0].rows()); }
    int size() const { return static_cast<int>(operators.size()); }
};

/// max |sum K†K - I| over entries.
double completeness_defect(const Measurement& m);

/// Throws ValidationError unless the completeness relation holds within tol.
void require_measurement(const Measurement& m, double tol = 1e-8);

struct ProjectiveBasis {
    Mat unitary; // columns are the measurement basis vectors
    std::string label;

    static ProjectiveBasis computational(int dim);
    int dim() const { return static_cast<int>(unitary.rows()); }
};

/// Rank-1 projectors |u_i><u_i| onto the basis columns.
Measurement projective_measurement(const ProjectiveBasis& basis);

/// Accepts a POVM given as effects {E_l}; the Kraus form is the PSD square
/// root of each effect.
Measurement measurement_from_effects(const std::vector<Mat>& effects,
                                     const std::string& label = "effects");

/// p_l = tr(K_l rho K_l†). Entries may carry rounding dust down to -1e-10;
/// they sum to 1 within the completeness tolerance.
std::vector<double> measure_probs(const Measurement& m, const DensityMatrix& rho);

/// Normalized outcomes (p_i, K_i rho K_i† / p_i); outcomes with
/// p_i <= 1e-12 are omitted.
std::vector<std::pair<double, DensityMatrix>> post_measurement_states(
    const Measurement& m, const DensityMatrix& rho);

struct SIWitness {
    int op_index = -1;
    DensityMatrix rho;      // a maximally coherent pair state
    double trace_gap = 0.0; // tr(K rho K†) - tr(K rho^d K†)
};

struct SIVerdict {
    /// Structural test: every operator has at most one nonzero entry per
    /// column and per row in the reference basis.
    bool is_strictly_incoherent = false;
    /// Corroborating test: K†K diagonal for every operator, equivalent to
    /// tr(K rho K†) = tr(K rho^d K†) for all rho (outcome probabilities
    /// never depend on off-diagonal elements).
    bool trace_identity_holds = false;
    /// Present when the trace identity fails: a concrete state violating it.
    std::optional<SIWitness> witness;
    /// Present when the structural test fails: which operator and which
    /// row/column collides.
    std::string structural_certificate;
};

SIVerdict classify_strictly_incoherent(const Measurement& m);
SIVerdict classify_strictly_incoherent(const Measurement& m, const Mat& basis);

/// Random instrument whose operators are strictly incoherent in the
/// computational basis (random injective index maps with random amplitudes
/// and phases, completeness enforced column-wise).
Measurement random_strictly_incoherent(int dim, int n_ops, Rng& rng);

struct PhaseMixture {
    std::vector<double> probs;
    std::vector<Mat> unitaries;
};

/// Uniform mixture of the d diagonal-phase unitaries
/// U_k = sum_j exp(2*pi*i*j*k/d)|j><j|; the output equals dephase(rho).
std::pair<DensityMatrix, PhaseMixture> coherence_erasing_channel(const DensityMatrix& rho);
std::pair<DensityMatrix, PhaseMixture> coherence_erasing_channel(const DensityMatrix& rho,
                                                                 const Mat& basis);

} // namespace qcoh
