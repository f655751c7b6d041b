#pragma once

// Density matrices, ensembles, bipartite states and seeded random-instance
// generators. These are the objects the sender prepares and the receiver
// measures; every quantity in the library is a function of them.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qcoh/linalg.hpp"

namespace qcoh {

struct DensityMatrix {
    Mat mat;

    int dim() const { return static_cast<int>(mat.rows()); }
};

struct Ensemble {
    std::vector<double> probs;
    std::vector<DensityMatrix> members;

    int size() const { return static_cast<int>(members.size()); }
    int dim() const { return members.empty() ? 0 : members.front().dim(); }

    /// sum_x p_x rho_x
    DensityMatrix mixture() const;
};

struct BipartiteState {
    int dim_a = 0;
    int dim_b = 0;
    DensityMatrix state;

    DensityMatrix reduced_a() const;
    DensityMatrix reduced_b() const;
};

/// A separable state kept in decomposed form sum_x p_x rho_xa ⊗ rho_xb.
/// The decomposition, not just the compiled state, is what check_lemma2
/// and the complementarity checks consume: orthogonality of the A factors
/// is a property of the terms.
struct SeparableSpec {
    std::vector<double> probs;
    std::vector<DensityMatrix> a_parts;
    std::vector<DensityMatrix> b_parts;

    int size() const { return static_cast<int>(probs.size()); }
    int dim_a() const { return a_parts.empty() ? 0 : a_parts.front().dim(); }
    int dim_b() const { return b_parts.empty() ? 0 : b_parts.front().dim(); }
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationIssue {
    std::string what;
    double deviation = 0.0;
};

struct ValidationVerdict {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

ValidationVerdict validate(const DensityMatrix& rho);
ValidationVerdict validate(const Ensemble& e);
ValidationVerdict validate(const BipartiteState& s);
ValidationVerdict validate(const SeparableSpec& spec);

void require_valid(const DensityMatrix& rho);
void require_valid(const Ensemble& e);
void require_valid(const BipartiteState& s);
void require_valid(const SeparableSpec& spec);

// ---------------------------------------------------------------------------
// Random generation
//
// Sampling is built on mt19937_64 with explicit uniform/Box-Muller
// conversions so that a seed reproduces bit-identical streams across
// standard libraries (std::normal_distribution is implementation-defined).

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on (0, 1).
    double uniform();

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi);

    /// Standard normal via Box-Muller.
    double normal();

    /// Complex standard normal (unit-variance real and imaginary parts).
    Cplx cnormal() { return {normal(), normal()}; }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Deterministic seed derivation for per-instance streams.
std::uint64_t splitmix64(std::uint64_t x);

/// Ginibre-construction mixed state: G G† / tr(G G†) with G dim×rank
/// complex standard Gaussian. rank=1 gives a pure state, rank=dim a
/// full-support Hilbert-Schmidt-distributed state.
DensityMatrix random_density(int dim, int rank, Rng& rng);

/// Flat-simplex probabilities (normalized exponentials).
std::vector<double> random_simplex(int n, Rng& rng);

/// Members drawn by random_density with random rank in [1, dim].
Ensemble random_ensemble(int dim, int n_members, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Mat random_unitary(int dim, Rng& rng);

/// Random rank-1 projector |psi><psi|.
DensityMatrix random_pure(int dim, Rng& rng);

/// Term-wise random separable spec: random_density per factor.
SeparableSpec random_separable(int dim_a, int dim_b, int n_terms, Rng& rng);

// ---------------------------------------------------------------------------

/// Compile sum_x p_x rho_xa ⊗ rho_xb into a bipartite state.
BipartiteState compile_separable(const SeparableSpec& spec);

/// The ensemble {p_x, rho_xb} left on B when A is held by the sender.
Ensemble b_side_ensemble(const SeparableSpec& spec);

} // namespace qcoh
