#include "qcoh/operations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qcoh {

namespace {

// Entries below this are floating-point dust, not structure.
constexpr double kStructureTol = 1e-9;
constexpr double kWitnessGap = 1e-7;

} // namespace

double completeness_defect(const Measurement& m) {
    if (m.operators.empty()) throw ValidationError("measurement has no operators");
    const int d = m.dim();
    Mat acc = Mat::Zero(d, d);
    for (const Mat& k : m.operators) {
        if (k.rows() != d || k.cols() != d)
            throw DimensionError("measurement operators have mixed dimensions");
        acc += k.adjoint() * k;
    }
    acc -= Mat::Identity(d, d);
    return acc.cwiseAbs().maxCoeff();
}

void require_measurement(const Measurement& m, double tol) {
    const double defect = completeness_defect(m);
    if (defect > tol)
        throw ValidationError("measurement violates completeness: defect " +
                              std::to_string(defect));
}

ProjectiveBasis ProjectiveBasis::computational(int dim) {
    return {Mat::Identity(dim, dim), "computational"};
}

Measurement projective_measurement(const ProjectiveBasis& basis) {
    require_unitary(basis.unitary);
    Measurement m;
    m.label = basis.label.empty() ? "projective" : basis.label;
    const int d = basis.dim();
    m.operators.reserve(d);
    for (int i = 0; i < d; ++i) {
        Vec u = basis.unitary.col(i);
        m.operators.push_back(u * u.adjoint());
    }
    return m;
}

Measurement measurement_from_effects(const std::vector<Mat>& effects,
                                     const std::string& label) {
    Measurement m;
    m.label = label;
    for (const Mat& e : effects) {
        EigenDecomposition ed = eig_hermitian(e);
        Eigen::VectorXd sq = ed.eigenvalues.cwiseMax(0.0).cwiseSqrt();
        m.operators.push_back(ed.eigenvectors * sq.asDiagonal() *
                              ed.eigenvectors.adjoint());
    }
    require_measurement(m);
    return m;
}

std::vector<double> measure_probs(const Measurement& m, const DensityMatrix& rho) {
    require_measurement(m);
    if (m.dim() != rho.dim())
        throw DimensionError("measure_probs: operator dim " + std::to_string(m.dim()) +
                             " does not match state dim " + std::to_string(rho.dim()));
    std::vector<double> probs;
    probs.reserve(m.operators.size());
    for (const Mat& k : m.operators)
        probs.push_back((k * rho.mat * k.adjoint()).trace().real());
    return probs;
}

std::vector<std::pair<double, DensityMatrix>> post_measurement_states(
    const Measurement& m, const DensityMatrix& rho) {
    require_measurement(m);
    if (m.dim() != rho.dim())
        throw DimensionError("post_measurement_states: dimension mismatch");
    std::vector<std::pair<double, DensityMatrix>> out;
    for (const Mat& k : m.operators) {
        Mat unnormalized = k * rho.mat * k.adjoint();
        const double p = unnormalized.trace().real();
        if (p <= 1e-12) continue;
        out.emplace_back(p, DensityMatrix{unnormalized / p});
    }
    return out;
}

namespace {

struct StructureScan {
    bool column_clean = true; // <=1 nonzero per column
    bool row_clean = true;    // <=1 nonzero per row
    std::string certificate;
};

StructureScan scan_structure(const Mat& k, int op_index) {
    StructureScan s;
    const Eigen::Index d = k.rows();
    for (Eigen::Index j = 0; j < d && s.column_clean; ++j) {
        int count = 0;
        for (Eigen::Index i = 0; i < d; ++i)
            if (std::abs(k(i, j)) > kStructureTol) ++count;
        if (count > 1) {
            s.column_clean = false;
            s.certificate = "operator " + std::to_string(op_index) + ": column " +
                            std::to_string(j) + " has " + std::to_string(count) +
                            " nonzero entries";
        }
    }
    for (Eigen::Index i = 0; i < d && s.row_clean; ++i) {
        int count = 0;
        for (Eigen::Index j = 0; j < d; ++j)
            if (std::abs(k(i, j)) > kStructureTol) ++count;
        if (count > 1) {
            s.row_clean = false;
            if (s.certificate.empty())
                s.certificate = "operator " + std::to_string(op_index) + ": row " +
                                std::to_string(i) + " collides (" + std::to_string(count) +
                                " nonzero entries, index map not injective)";
        }
    }
    return s;
}

// Maximally coherent pair state (|i> + e^{i phase}|j>)/sqrt(2) as a matrix.
Mat pair_state(Eigen::Index d, Eigen::Index i, Eigen::Index j, Cplx phase) {
    Vec psi = Vec::Zero(d);
    psi(i) = 1.0 / std::numbers::sqrt2;
    psi(j) = phase / std::numbers::sqrt2;
    return psi * psi.adjoint();
}

} // namespace

SIVerdict classify_strictly_incoherent(const Measurement& m) {
    require_measurement(m);
    const Eigen::Index d = m.dim();
    SIVerdict verdict;
    verdict.is_strictly_incoherent = true;
    verdict.trace_identity_holds = true;

    for (int l = 0; l < m.size(); ++l) {
        StructureScan s = scan_structure(m.operators[l], l);
        if (!s.column_clean || !s.row_clean) {
            verdict.is_strictly_incoherent = false;
            if (verdict.structural_certificate.empty())
                verdict.structural_certificate = s.certificate;
        }
        // K†K diagonal <=> tr(K rho K†) = tr(K rho^d K†) for every rho.
        Mat gram = m.operators[l].adjoint() * m.operators[l];
        gram.diagonal().setZero();
        if (gram.cwiseAbs().maxCoeff() > kStructureTol) verdict.trace_identity_holds = false;
    }

    if (verdict.is_strictly_incoherent || verdict.trace_identity_holds) return verdict;

    // Hunt for a concrete violating state among maximally coherent pairs.
    // Phases 1 and i together bound any off-diagonal Gram entry away from
    // both scan directions, so one of them shows a gap.
    double best_gap = 0.0;
    for (int l = 0; l < m.size() && best_gap <= kWitnessGap; ++l) {
        const Mat& k = m.operators[l];
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = i + 1; j < d; ++j) {
                for (Cplx phase : {Cplx(1.0, 0.0), Cplx(0.0, 1.0)}) {
                    Mat rho = pair_state(d, i, j, phase);
                    const double with_coherence = (k * rho * k.adjoint()).trace().real();
                    const double dephased =
                        (k * dephase(rho) * k.adjoint()).trace().real();
                    const double gap = with_coherence - dephased;
                    if (std::abs(gap) > std::abs(best_gap)) {
                        best_gap = gap;
                        verdict.witness = SIWitness{l, DensityMatrix{rho}, gap};
                    }
                }
            }
        }
    }
    if (verdict.witness && std::abs(verdict.witness->trace_gap) <= kWitnessGap)
        verdict.witness.reset();
    return verdict;
}

SIVerdict classify_strictly_incoherent(const Measurement& m, const Mat& basis) {
    require_unitary(basis);
    Measurement rotated;
    rotated.label = m.label;
    for (const Mat& k : m.operators) rotated.operators.push_back(basis.adjoint() * k * basis);
    SIVerdict verdict = classify_strictly_incoherent(rotated);
    // Map any witness state back to the original frame.
    if (verdict.witness)
        verdict.witness->rho.mat = basis * verdict.witness->rho.mat * basis.adjoint();
    return verdict;
}

Measurement random_strictly_incoherent(int dim, int n_ops, Rng& rng) {
    if (dim < 1 || n_ops < 1)
        throw DimensionError("random_strictly_incoherent: bad dimensions");
    // Column i of operator l carries amplitude sqrt(w_l(i)) at a permuted
    // row; completeness needs sum_l w_l(i) = 1 per column.
    std::vector<std::vector<double>> weights(dim);
    for (int i = 0; i < dim; ++i) weights[i] = random_simplex(n_ops, rng);

    Measurement m;
    m.label = "random-si";
    for (int l = 0; l < n_ops; ++l) {
        // Random permutation via Fisher-Yates on indices.
        std::vector<int> perm(dim);
        for (int i = 0; i < dim; ++i) perm[i] = i;
        for (int i = dim - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);

        Mat k = Mat::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) {
            const double theta = 2.0 * std::numbers::pi * rng.uniform();
            k(perm[i], i) = std::sqrt(weights[i][l]) * Cplx(std::cos(theta), std::sin(theta));
        }
        m.operators.push_back(std::move(k));
    }
    return m;
}

std::pair<DensityMatrix, PhaseMixture> coherence_erasing_channel(const DensityMatrix& rho) {
    const int d = rho.dim();
    PhaseMixture mix;
    mix.probs.assign(d, 1.0 / d);
    mix.unitaries.reserve(d);
    for (int k = 0; k < d; ++k) {
        Mat u = Mat::Zero(d, d);
        for (int j = 0; j < d; ++j) {
            const double angle = 2.0 * std::numbers::pi * j * k / d;
            u(j, j) = Cplx(std::cos(angle), std::sin(angle));
        }
        mix.unitaries.push_back(std::move(u));
    }
    Mat out = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k)
        out += mix.probs[k] * (mix.unitaries[k] * rho.mat * mix.unitaries[k].adjoint());
    return {DensityMatrix{out}, mix};
}

std::pair<DensityMatrix, PhaseMixture> coherence_erasing_channel(const DensityMatrix& rho,
                                                                 const Mat& basis) {
    require_unitary(basis);
    DensityMatrix rotated{(basis.adjoint() * rho.mat * basis).eval()};
    auto [out, mix] = coherence_erasing_channel(rotated);
    out.mat = basis * out.mat * basis.adjoint();
    for (Mat& u : mix.unitaries) u = basis * u * basis.adjoint();
    return {out, mix};
}

} // namespace qcoh
