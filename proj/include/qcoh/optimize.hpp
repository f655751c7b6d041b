#pragma once

// Search over projective bases. A d-dim unitary is parametrized as a
// product of d(d-1)/2 complex Givens rotations (theta, phi each), which
// covers every basis up to per-column phases; column phases never change
// the projectors |u_i><u_i|, so the parametrization is lossless for basis
// search. The optimizer is multi-start coordinate descent with a local
// quadratic fit per coordinate: derivative-free, deterministic per seed.

#include <functional>
#include <vector>

#include "qcoh/linalg.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

/// Number of parameters for a dim x dim basis unitary: dim*(dim-1).
int givens_param_count(int dim);

/// Build the unitary G_1(t_1,p_1) * ... * G_m(t_m,p_m) from packed
/// parameters [t_1, p_1, t_2, p_2, ...], pairs ordered by the elimination
/// sweep (j, i) for j = 0..dim-2, i = j+1..dim-1. All-zero parameters give
/// the identity.
Mat unitary_from_givens(int dim, const std::vector<double>& params);

/// Inverse map up to column phases: unitary_from_givens(d, result) spans
/// the same projectors as u. Used to warm-start the search at a known basis.
std::vector<double> givens_params_from_unitary(const Mat& u);

struct OptimizerOptions {
    int restarts = 32;
    std::uint64_t seed = 0;
    double tol = 1e-7;   // objective improvement threshold per sweep
    int max_iters = 500; // coordinate sweeps per restart
};

struct BasisSearchResult {
    double value = 0.0;
    Mat basis_unitary;
    int n_restarts = 0;
    bool converged = false;
    int best_restart = -1;
};

/// Maximize objective(U) over dim x dim unitaries. Restart 0 starts at the
/// identity (the computational basis), the next restarts at the supplied
/// warm-start unitaries, the rest at Haar-random points. Ties within 1e-9
/// keep the earliest restart, so the result is deterministic per seed.
BasisSearchResult maximize_over_bases(int dim,
                                      const std::function<double(const Mat&)>& objective,
                                      const OptimizerOptions& opts = {},
                                      const std::vector<Mat>& warm_starts = {});

} // namespace qcoh
