#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcoh/errors.hpp"
#include "qcoh/operations.hpp"
#include "qcoh/states.hpp"

using namespace qcoh;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

DensityMatrix plus_state() {
    Mat m(2, 2);
    m << Cplx(0.5), Cplx(0.5), Cplx(0.5), Cplx(0.5);
    return {m};
}

Mat hadamard() {
    Mat h(2, 2);
    h << Cplx(kInvSqrt2), Cplx(kInvSqrt2), Cplx(kInvSqrt2), Cplx(-kInvSqrt2);
    return h;
}

// Two-operator measurement whose first operator folds both basis states
// onto row 0 (a row collision): K1 = |0>(<0|+<1|)/sqrt2.
Measurement folding_measurement(bool imaginary_phase) {
    const Cplx top = imaginary_phase ? Cplx(0.0, kInvSqrt2) : Cplx(kInvSqrt2);
    Mat k1 = Mat::Zero(2, 2);
    k1(0, 0) = kInvSqrt2;
    k1(0, 1) = top;
    Mat k2 = Mat::Zero(2, 2);
    k2(1, 0) = kInvSqrt2;
    k2(1, 1) = -top;
    return Measurement{{k1, k2}, "folding"};
}

} // namespace

TEST_CASE("projective measurements are complete and reproduce Born probabilities") {
    Measurement m = projective_measurement(ProjectiveBasis::computational(2));
    CHECK(completeness_defect(m) < 1e-14);
    CHECK_NOTHROW(require_measurement(m));

    std::vector<double> probs = measure_probs(m, plus_state());
    REQUIRE(probs.size() == 2);
    CHECK(std::abs(probs[0] - 0.5) < 1e-14);
    CHECK(std::abs(probs[1] - 0.5) < 1e-14);

    Measurement h = projective_measurement(ProjectiveBasis{hadamard(), "hadamard"});
    std::vector<double> hp = measure_probs(h, plus_state());
    CHECK(std::abs(hp[0] - 1.0) < 1e-14);
    CHECK(std::abs(hp[1]) < 1e-14);
}

TEST_CASE("incomplete operator sets are rejected") {
    Measurement m;
    m.operators = {0.5 * Mat::Identity(2, 2)};
    CHECK(completeness_defect(m) > 0.7);
    CHECK_THROWS_AS(require_measurement(m), ValidationError);
}

TEST_CASE("post-measurement states are normalized and zero-probability outcomes drop") {
    Mat zero = Mat::Zero(2, 2);
    zero(0, 0) = 1.0;
    Measurement m = projective_measurement(ProjectiveBasis::computational(2));
    auto outcomes = post_measurement_states(m, DensityMatrix{zero});
    REQUIRE(outcomes.size() == 1); // outcome |1> has probability 0
    CHECK(std::abs(outcomes[0].first - 1.0) < 1e-14);
    CHECK(std::abs(outcomes[0].second.mat(0, 0).real() - 1.0) < 1e-14);

    auto both = post_measurement_states(m, plus_state());
    REQUIRE(both.size() == 2);
    for (const auto& [p, rho] : both) CHECK(std::abs(rho.mat.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("effects convert to Kraus operators via the PSD square root") {
    std::vector<Mat> effects = {0.3 * Mat::Identity(2, 2), 0.7 * Mat::Identity(2, 2)};
    Measurement m = measurement_from_effects(effects, "scaled");
    CHECK(completeness_defect(m) < 1e-12);
    Rng rng(3);
    std::vector<double> probs = measure_probs(m, random_density(2, 2, rng));
    CHECK(std::abs(probs[0] - 0.3) < 1e-12);
    CHECK(std::abs(probs[1] - 0.7) < 1e-12);
}

TEST_CASE("computational projectors are strictly incoherent") {
    Measurement m = projective_measurement(ProjectiveBasis::computational(3));
    SIVerdict v = classify_strictly_incoherent(m);
    CHECK(v.is_strictly_incoherent);
    CHECK(v.trace_identity_holds);
    CHECK_FALSE(v.witness.has_value());
    CHECK(v.structural_certificate.empty());
}

TEST_CASE("a unitary rotation passes the trace identity but fails the structural test") {
    // Hadamard: K†K = 1 is diagonal, so outcome statistics ignore
    // off-diagonals, yet the operator maps basis states to superpositions.
    Measurement m{{hadamard()}, "hadamard"};
    SIVerdict v = classify_strictly_incoherent(m);
    CHECK_FALSE(v.is_strictly_incoherent);
    CHECK(v.trace_identity_holds);
    CHECK_FALSE(v.witness.has_value());
    CHECK_FALSE(v.structural_certificate.empty());
}

TEST_CASE("row collisions break the trace identity and produce a witness") {
    for (bool imaginary : {false, true}) {
        CAPTURE(imaginary);
        Measurement m = folding_measurement(imaginary);
        REQUIRE(completeness_defect(m) < 1e-12);
        SIVerdict v = classify_strictly_incoherent(m);
        CHECK_FALSE(v.is_strictly_incoherent);
        CHECK_FALSE(v.trace_identity_holds);
        REQUIRE(v.witness.has_value());
        CHECK(std::abs(v.witness->trace_gap) > 1e-7);

        // The witness actually violates the identity for the named operator.
        const Mat& k = m.operators[v.witness->op_index];
        const Mat& rho = v.witness->rho.mat;
        const double with = (k * rho * k.adjoint()).trace().real();
        const double without = (k * dephase(rho) * k.adjoint()).trace().real();
        CHECK(std::abs((with - without) - v.witness->trace_gap) < 1e-12);
    }
}

TEST_CASE("classification respects a rotated reference basis") {
    Rng rng(5);
    Mat u = random_unitary(3, rng);
    Measurement comp = projective_measurement(ProjectiveBasis::computational(3));
    Measurement rotated;
    for (const Mat& k : comp.operators) rotated.operators.push_back(u * k * u.adjoint());

    CHECK(classify_strictly_incoherent(rotated, u).is_strictly_incoherent);
    // In the computational basis the rotated projectors are not incoherent.
    CHECK_FALSE(classify_strictly_incoherent(rotated).is_strictly_incoherent);
}

TEST_CASE("random strictly incoherent instruments are valid and classified as such") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const int dim = 2 + rng.uniform_int(0, 3);
        const int n_ops = 1 + rng.uniform_int(0, dim);
        Measurement m = random_strictly_incoherent(dim, n_ops, rng);
        CHECK(completeness_defect(m) < 1e-12);
        SIVerdict v = classify_strictly_incoherent(m);
        CHECK(v.is_strictly_incoherent);
        CHECK(v.trace_identity_holds);
    }
}

TEST_CASE("strictly incoherent operators never see off-diagonal elements") {
    Rng rng(9);
    for (int i = 0; i < 50; ++i) {
        const int dim = 2 + rng.uniform_int(0, 2);
        Measurement m = random_strictly_incoherent(dim, 1 + rng.uniform_int(0, 2), rng);
        DensityMatrix rho = random_density(dim, dim, rng);
        std::vector<double> with = measure_probs(m, rho);
        std::vector<double> without = measure_probs(m, DensityMatrix{dephase(rho.mat)});
        for (std::size_t l = 0; l < with.size(); ++l)
            CHECK(std::abs(with[l] - without[l]) < 1e-12);
    }
}

TEST_CASE("the coherence-erasing channel reproduces dephasing exactly") {
    Rng rng(11);
    for (int dim : {2, 3, 4}) {
        DensityMatrix rho = random_density(dim, dim, rng);
        auto [out, mix] = coherence_erasing_channel(rho);
        CHECK(static_cast<int>(mix.unitaries.size()) == dim);
        for (double p : mix.probs) CHECK(std::abs(p - 1.0 / dim) < 1e-15);
        for (const Mat& u : mix.unitaries) CHECK(unitarity_defect(u) < 1e-12);
        CHECK((out.mat - dephase(rho.mat)).cwiseAbs().maxCoeff() < 1e-10);

        // Applying the mixture by hand gives the same state.
        Mat manual = Mat::Zero(dim, dim);
        for (int k = 0; k < dim; ++k)
            manual += mix.probs[k] * (mix.unitaries[k] * rho.mat * mix.unitaries[k].adjoint());
        CHECK((manual - out.mat).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("the erasing channel honors a rotated basis") {
    Rng rng(13);
    DensityMatrix rho = random_density(3, 3, rng);
    Mat u = random_unitary(3, rng);
    auto [out, mix] = coherence_erasing_channel(rho, u);
    CHECK((out.mat - dephase(rho.mat, u)).cwiseAbs().maxCoeff() < 1e-10);
    for (const Mat& v : mix.unitaries) CHECK(unitarity_defect(v) < 1e-12);
}
