#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "qcoh/errors.hpp"
#include "qcoh/linalg.hpp"
#include "qcoh/states.hpp"

using namespace qcoh;

namespace {

Mat pauli_x() {
    Mat m(2, 2);
    m << Cplx(0), Cplx(1), Cplx(1), Cplx(0);
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << Cplx(1), Cplx(0), Cplx(0), Cplx(-1);
    return m;
}

Mat bell_state() {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return m;
}

} // namespace

TEST_CASE("tensor product layout and values") {
    Mat t = tensor(pauli_x(), pauli_z());
    REQUIRE(t.rows() == 4);
    // (x ⊗ z)[(a,b),(a',b')] = x[a,a'] z[b,b']
    CHECK(t(0, 2) == Cplx(1));
    CHECK(t(1, 3) == Cplx(-1));
    CHECK(t(2, 0) == Cplx(1));
    CHECK(t(0, 0) == Cplx(0));

    Rng rng(5);
    Mat a = random_density(2, 2, rng).mat;
    Mat b = random_density(3, 3, rng).mat;
    Mat ab = tensor(a, b);
    CHECK(std::abs(ab.trace() - a.trace() * b.trace()) < 1e-12);
}

TEST_CASE("tensor refuses to exceed the dimension cap") {
    Mat big = Mat::Identity(9, 9);
    Mat other = Mat::Identity(8, 8);
    CHECK_THROWS_AS(tensor(big, other), DimensionError); // 72 > 64
}

TEST_CASE("dimension cap follows the environment override") {
    setenv("QCOH_MAX_DIM", "8", 1);
    CHECK(max_dim() == 8);
    Mat three = Mat::Identity(3, 3);
    CHECK_THROWS_AS(tensor(three, three), DimensionError); // 9 > 8
    unsetenv("QCOH_MAX_DIM");
    CHECK(max_dim() == 64);
}

TEST_CASE("partial trace recovers tensor factors") {
    Rng rng(7);
    Mat a = random_density(2, 2, rng).mat;
    Mat b = random_density(3, 3, rng).mat;
    Mat ab = tensor(a, b);
    CHECK((partial_trace(ab, 2, 3, Subsystem::A) - a).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((partial_trace(ab, 2, 3, Subsystem::B) - b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace preserves trace on random states") {
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        Mat m = random_density(6, 6, rng).mat;
        Mat ra = partial_trace(m, 2, 3, Subsystem::A);
        Mat rb = partial_trace(m, 2, 3, Subsystem::B);
        CHECK(std::abs(ra.trace() - m.trace()) < 1e-12);
        CHECK(std::abs(rb.trace() - m.trace()) < 1e-12);
        CHECK(hermiticity_defect(ra) < 1e-12);
    }
}

TEST_CASE("partial trace of a maximally entangled state is maximally mixed") {
    Mat r = partial_trace(bell_state(), 2, 2, Subsystem::A);
    CHECK((r - 0.5 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("hermitian eigendecomposition is descending and reconstructs") {
    Rng rng(13);
    for (int dim : {2, 3, 5}) {
        Mat m = random_density(dim, dim, rng).mat;
        EigenDecomposition ed = eig_hermitian(m);
        for (int i = 0; i + 1 < dim; ++i) CHECK(ed.eigenvalues(i) >= ed.eigenvalues(i + 1));
        Mat rebuilt = ed.eigenvectors * ed.eigenvalues.cast<Cplx>().asDiagonal() *
                      ed.eigenvectors.adjoint();
        CHECK((rebuilt - m).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(unitarity_defect(ed.eigenvectors) < 1e-12);
    }
}

TEST_CASE("eig_hermitian rejects non-hermitian input") {
    Mat m(2, 2);
    m << Cplx(0), Cplx(1), Cplx(0), Cplx(0);
    CHECK_THROWS_AS(eig_hermitian(m), ValidationError);
}

TEST_CASE("closed-form 2x2 eigenvalues match the solver") {
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        Mat m = random_density(2, 1 + rng.uniform_int(0, 1), rng).mat;
        Eigen::VectorXd fast = hermitian_eigenvalues(m);
        Eigen::VectorXd full = eig_hermitian(m).eigenvalues;
        CHECK(std::abs(fast(0) - full(0)) < 1e-12);
        CHECK(std::abs(fast(1) - full(1)) < 1e-12);
    }
}

TEST_CASE("known 2x2 spectrum") {
    // |+><+| has eigenvalues {1, 0}.
    Mat plus(2, 2);
    plus << Cplx(0.5), Cplx(0.5), Cplx(0.5), Cplx(0.5);
    Eigen::VectorXd ev = hermitian_eigenvalues(plus);
    CHECK(std::abs(ev(0) - 1.0) < 1e-14);
    CHECK(std::abs(ev(1)) < 1e-14);
}

TEST_CASE("dephasing kills off-diagonals and is idempotent") {
    Rng rng(19);
    Mat m = random_density(4, 4, rng).mat;
    Mat d = dephase(m);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(std::abs(d(i, j)) == 0.0);
    CHECK((dephase(d) - d).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(d.trace() - m.trace()) < 1e-14);
}

TEST_CASE("basis dephasing matches conjugate-pinch-conjugate") {
    Rng rng(23);
    Mat m = random_density(3, 3, rng).mat;
    Mat u = random_unitary(3, rng);
    Mat lhs = dephase(m, u);
    Mat rhs = u * dephase((u.adjoint() * m * u).eval()) * u.adjoint();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
    // Pinched diagonal equals <u_i|m|u_i>.
    Eigen::VectorXd diag = dephase_diagonal(m, u);
    for (int i = 0; i < 3; ++i) {
        Vec col = u.col(i);
        CHECK(std::abs(diag(i) - (col.adjoint() * m * col)(0, 0).real()) < 1e-13);
    }
}

TEST_CASE("block dephasing pinches only the B factor") {
    Mat pinched = block_dephase_b(bell_state(), 2, 2);
    Mat expected = Mat::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    CHECK((pinched - expected).cwiseAbs().maxCoeff() < 1e-14);

    // A-side coherence survives: |+><+| ⊗ diagonal is untouched.
    Mat plus(2, 2);
    plus << Cplx(0.5), Cplx(0.5), Cplx(0.5), Cplx(0.5);
    Mat diag = Mat::Zero(2, 2);
    diag(0, 0) = 0.25;
    diag(1, 1) = 0.75;
    Mat prod = tensor(plus, diag);
    CHECK((block_dephase_b(prod, 2, 2) - prod).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("block dephasing in a rotated basis matches conjugation") {
    Rng rng(29);
    Mat m = random_density(6, 6, rng).mat;
    Mat u = random_unitary(3, rng);
    Mat big = tensor(Mat::Identity(2, 2), u);
    Mat lhs = block_dephase_b(m, 2, 3, u);
    Mat rhs = big * block_dephase_b((big.adjoint() * m * big).eval(), 2, 3) * big.adjoint();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("unitarity checks") {
    Rng rng(31);
    Mat u = random_unitary(4, rng);
    CHECK(unitarity_defect(u) < 1e-12);
    CHECK_NOTHROW(require_unitary(u));
    Mat not_u = u;
    not_u(0, 0) += 0.01;
    CHECK_THROWS_AS(require_unitary(not_u), ValidationError);
}
