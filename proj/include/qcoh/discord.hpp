#pragma once

// Bipartite correlation quantities with the measured side fixed to B.
// Two routes to the basis-dependent discord must agree:
//   delta = I(A:B) - J(A:B)            (mutual info minus classical info)
//   delta = C_r^{A|B} - C_r(rho_B)     (local-coherence decomposition)
// The second follows from pinching B: the block-dephased state's entropy
// splits as H(q) + sum_i q_i S(rho_{A|i}), so the routes are algebraically
// identical and any disagreement beyond rounding is an implementation bug.

#include <cstdint>
#include <string>
#include <vector>

#include "qcoh/infotheory.hpp"
#include "qcoh/operations.hpp"
#include "qcoh/optimize.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

/// I(A:B) = S(rho_A) + S(rho_B) - S(rho_AB), in bits.
double mutual_information(const BipartiteState& s);

/// sum_i q_i S(rho_{A|i}) for the rank-1 projective basis on B;
/// outcomes with q_i <= 1e-12 are skipped.
double conditional_entropy_after_b_measurement(const BipartiteState& s,
                                               const ProjectiveBasis& basis_b);

/// J(A:B) = S(rho_A) - sum_i q_i S(rho_{A|i}).
double classical_info_j(const BipartiteState& s, const ProjectiveBasis& basis_b);

struct DiscordReport {
    double mutual_info = 0.0;      // I(A:B), bits
    double classical_info_j = 0.0; // J(A:B), bits
    double delta = 0.0;            // I - J
    std::string basis_label;
    double local_coherence_ab = 0.0; // S(rho^{d_B}) - S(rho)
    double c_r_b = 0.0;              // C_r of the B marginal in the basis
    double route_residual = 0.0;     // |delta - (local_coherence_ab - c_r_b)|
};

/// Basis-dependent discord with the dual-route cross-check; throws
/// ConsistencyError if the two routes disagree beyond 1e-6.
DiscordReport delta_discord(const BipartiteState& s, const ProjectiveBasis& basis_b);

/// C_r^{A|B} = S(block-dephased state) - S(state).
double local_coherence_ab(const BipartiteState& s, const ProjectiveBasis& basis_b);

/// local_coherence_ab minus C_r of the B marginal; equals delta.
double delta_via_coherence(const BipartiteState& s, const ProjectiveBasis& basis_b);

struct OptimizedDiscord {
    double value = 0.0; // bits
    ProjectiveBasis best_basis;
    int n_restarts = 0;
    bool converged = false;
};

/// D(A<-B): minimum of delta over projective bases on B (d_B <= 4).
/// Extra warm-start unitaries join the restart schedule; passing the
/// accessible-information maximizer guarantees D <= delta at that basis.
OptimizedDiscord quantum_discord(const BipartiteState& s, const OptimizerOptions& opts = {},
                                 const std::vector<Mat>& warm_starts = {});

struct InequalityRecord {
    std::string inequality; // "eq5" | "eq6" | "eq7" | "eq8" | "lemma2"
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; // rhs - lhs; negative beyond tolerance = violation
    std::string basis;
    std::uint64_t seed = 0;
    bool converged = true;
};

struct Lemma2Record {
    double local_coherence = 0.0;  // lhs: C_r^{A|B} of the compiled state
    double avg_b_coherence = 0.0;  // rhs: sum_x p_x C_r(rho_xb)
    double slack = 0.0;            // rhs - lhs
    double orthogonality_defect = 0.0; // max_{x != x'} tr(rho_xa rho_x'a)
    bool equality_observed = false;    // slack <= 1e-7
    bool equality_expected = false;    // defect <= 1e-9
    bool flags_agree = true; // mismatch is a warning (degenerate specs straddle)
};

/// Average B-side coherence dominates the local coherence of the compiled
/// state; equality exactly when the A factors are pairwise orthogonal.
Lemma2Record check_lemma2(const SeparableSpec& spec);
Lemma2Record check_lemma2(const SeparableSpec& spec, const ProjectiveBasis& basis_b);

struct ComplementarityReport {
    double chi = 0.0;      // Holevo quantity of the B-side ensemble
    double h_at_ymax = 0.0; // accessible information found
    ProjectiveBasis y_max;
    bool access_converged = false;
    InequalityRecord eq5; // delta <= avg C_r(rho_xb) - C_r(mixture), computational
    InequalityRecord eq6; // delta <= chi - H(X:Y), computational
    InequalityRecord eq7; // delta at Y_max <= chi - H(X:Y_max)
    InequalityRecord eq8; // D + H(X:Y_max) <= chi
    double discord = 0.0;
    bool discord_converged = false;
    /// Alternative reading of the third inequality: delta at its own
    /// maximizer. Recorded as data; not a guaranteed bound.
    double delta_max_alt = 0.0;
    double alt_slack = 0.0;
    bool low_confidence = false; // some optimizer did not converge
};

/// Runs the full inequality chain on a separable spec (d_B <= 4): builds
/// the B-side ensemble, finds the best measurement basis, and reports the
/// four slacks. Violations are data in the records, never exceptions.
ComplementarityReport check_complementarity(const SeparableSpec& spec,
                                            const OptimizerOptions& opts = {},
                                            std::uint64_t record_seed = 0);

} // namespace qcoh
