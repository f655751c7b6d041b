#include "qcoh/coherence.hpp"

#include <cmath>

namespace qcoh {

namespace {

// Below this an eigenvalue contributes at most ~4e-11 bits; treating it as
// zero keeps log2 away from -inf without renormalizing.
constexpr double kEigenvalueFloor = 1e-12;

double entropy_term(double p) {
    if (p < kEigenvalueFloor) return 0.0;
    return -p * std::log2(p);
}

// Clamp the spectrum of a density matrix to [0,1] and renormalize the
// tiny drift the clamp introduces (inputs are validated, so the drift is
// at most ~1e-9).
Eigen::VectorXd clamped_spectrum(Eigen::VectorXd ev) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        ev(i) = std::min(1.0, std::max(0.0, ev(i)));
        sum += ev(i);
    }
    if (sum > 0.0 && std::abs(sum - 1.0) <= 1e-9) ev /= sum;
    return ev;
}

} // namespace

double shannon_entropy(const Eigen::VectorXd& p) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) h += entropy_term(p(i));
    return h;
}

double binary_entropy(double p) { return entropy_term(p) + entropy_term(1.0 - p); }

double von_neumann_entropy(const DensityMatrix& rho) {
    return shannon_entropy(clamped_spectrum(hermitian_eigenvalues(rho.mat)));
}

double dephased_entropy(const DensityMatrix& rho) {
    return shannon_entropy(clamped_spectrum(dephase_diagonal(rho.mat)));
}

double dephased_entropy(const DensityMatrix& rho, const Mat& basis) {
    return shannon_entropy(clamped_spectrum(dephase_diagonal(rho.mat, basis)));
}

double relative_entropy_coherence(const DensityMatrix& rho) {
    return dephased_entropy(rho) - von_neumann_entropy(rho);
}

double relative_entropy_coherence(const DensityMatrix& rho, const Mat& basis) {
    return dephased_entropy(rho, basis) - von_neumann_entropy(rho);
}

double l1_coherence(const DensityMatrix& rho) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rho.mat.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.mat.cols(); ++j)
            if (i != j) sum += std::abs(rho.mat(i, j));
    return sum;
}

double l1_coherence(const DensityMatrix& rho, const Mat& basis) {
    require_unitary(basis);
    DensityMatrix rotated{(basis.adjoint() * rho.mat * basis).eval()};
    return l1_coherence(rotated);
}

double ensemble_average_coherence(const Ensemble& e) {
    double avg = 0.0;
    for (int x = 0; x < e.size(); ++x)
        avg += e.probs[x] * relative_entropy_coherence(e.members[x]);
    return avg;
}

double ensemble_average_coherence(const Ensemble& e, const Mat& basis) {
    double avg = 0.0;
    for (int x = 0; x < e.size(); ++x)
        avg += e.probs[x] * relative_entropy_coherence(e.members[x], basis);
    return avg;
}

double coherence_loss(const Ensemble& e) {
    return ensemble_average_coherence(e) - relative_entropy_coherence(e.mixture());
}

double coherence_loss(const Ensemble& e, const Mat& basis) {
    return ensemble_average_coherence(e, basis) -
           relative_entropy_coherence(e.mixture(), basis);
}

CoherenceReport coherence_report(const DensityMatrix& rho) {
    return {von_neumann_entropy(rho), relative_entropy_coherence(rho), l1_coherence(rho),
            "computational"};
}

CoherenceReport coherence_report(const DensityMatrix& rho, const Mat& basis,
                                 const std::string& basis_label) {
    return {von_neumann_entropy(rho), relative_entropy_coherence(rho, basis),
            l1_coherence(rho, basis), basis_label};
}

} // namespace qcoh
