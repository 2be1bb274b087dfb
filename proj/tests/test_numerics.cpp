#include "purity/numerics.hpp"
#include "purity/oracles.hpp"
#include "purity/random.hpp"

#include <gtest/gtest.h>

using namespace purity_bounds;

namespace {

double reconstruction_residual(const ComplexMatrix& m, const HermitianEig& e) {
    const ComplexMatrix back = e.eigenvectors * e.eigenvalues.cast<cplx>().asDiagonal() * e.eigenvectors.adjoint();
    return (back - m).norm() / m.norm();
}

double unitarity_defect(const ComplexMatrix& v) {
    return max_abs(ComplexMatrix(v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols())));
}

}  // namespace

TEST(HermitianEig, IdentityHasUnitSpectrum) {
    const HermitianEig e = hermitian_eig(ComplexMatrix::Identity(3, 3));
    ASSERT_EQ(e.eigenvalues.size(), 3);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(e.eigenvalues(i), 1.0, 1e-14);
}

TEST(HermitianEig, PauliX) {
    ComplexMatrix x(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    const HermitianEig e = hermitian_eig(x);
    EXPECT_NEAR(e.eigenvalues(0), -1.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-14);
}

TEST(HermitianEig, RandomReconstructionAndUnitarity) {
    Rng rng(7);
    for (int n : {1, 2, 8, 33}) {
        const ComplexMatrix m = random_hermitian(n, rng);
        const HermitianEig e = hermitian_eig(m);
        EXPECT_LT(reconstruction_residual(m, e), 1e-10) << "n=" << n;
        EXPECT_LT(unitarity_defect(e.eigenvectors), 1e-10) << "n=" << n;
        for (Eigen::Index i = 1; i < e.eigenvalues.size(); ++i) EXPECT_LE(e.eigenvalues(i - 1), e.eigenvalues(i));
    }
}

TEST(HermitianEig, DeterministicForFixedInput) {
    Rng rng(11);
    const ComplexMatrix m = random_hermitian(12, rng);
    const HermitianEig a = hermitian_eig(m);
    const HermitianEig b = hermitian_eig(m);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(HermitianEig, RejectsBadInput) {
    EXPECT_THROW(hermitian_eig(ComplexMatrix::Zero(2, 3)), ContractViolation);
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = cplx(0.0, 1e-6);
    EXPECT_THROW(hermitian_eig(m), ContractViolation);
    m(0, 1) = cplx(std::nan(""), 0.0);
    EXPECT_THROW(hermitian_eig(m), ContractViolation);
}

TEST(DetComplex, IdentityAndDiagonal) {
    EXPECT_NEAR(std::abs(det_complex(ComplexMatrix::Identity(4, 4)) - 1.0), 0.0, 1e-15);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = cplx(0.0, 2.0);
    d(1, 1) = 3.0;
    const cplx v = det_complex(d);
    EXPECT_NEAR(v.real(), 0.0, 1e-15);
    EXPECT_NEAR(v.imag(), 6.0, 1e-15);
}

TEST(DetComplex, RowSwapsFlipSign) {
    // Anti-diagonal permutation of size 3 is one transposition away from identity.
    ComplexMatrix p = ComplexMatrix::Zero(3, 3);
    p(0, 2) = p(1, 1) = p(2, 0) = 1.0;
    EXPECT_NEAR(det_complex(p).real(), -1.0, 1e-15);
    ComplexMatrix q = ComplexMatrix::Zero(4, 4);
    q(0, 1) = q(1, 2) = q(2, 3) = q(3, 0) = 1.0;  // 4-cycle, odd
    EXPECT_NEAR(det_complex(q).real(), -1.0, 1e-15);
}

TEST(DetComplex, SingularIsZero) {
    ComplexMatrix m(3, 3);
    m << 1.0, 2.0, 3.0, 2.0, 4.0, 6.0, cplx(0, 1), 1.0, 0.0;
    EXPECT_LT(std::abs(det_complex(m)), 1e-14);
    EXPECT_EQ(det_complex(ComplexMatrix::Zero(3, 3)), cplx(0.0, 0.0));
}

TEST(DetComplex, MatchesCofactorOracle) {
    Rng rng(4);
    for (int n = 1; n <= 6; ++n) {
        const ComplexMatrix m = random_complex_matrix(n, n, rng);
        const cplx expect = oracle::cofactor_det(m);
        EXPECT_LT(std::abs(det_complex(m) - expect), 1e-10 * std::abs(expect)) << "n=" << n;
    }
}

TEST(DetComplex, Multiplicative) {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix a = random_complex_matrix(5, 5, rng);
        const ComplexMatrix b = random_complex_matrix(5, 5, rng);
        const cplx lhs = det_complex(a * b);
        const cplx rhs = det_complex(a) * det_complex(b);
        EXPECT_LT(std::abs(lhs - rhs), 1e-9 * std::abs(rhs));
    }
}

TEST(DetComplex, RejectsNonSquare) { EXPECT_THROW(det_complex(ComplexMatrix::Zero(2, 3)), ContractViolation); }

TEST(SingularValues, IdentityAndRankOne) {
    const RealVector s = singular_values(ComplexMatrix::Identity(2, 2));
    EXPECT_NEAR(s(0), 1.0, 1e-14);
    EXPECT_NEAR(s(1), 1.0, 1e-14);

    Rng rng(3);
    const ComplexVector u = random_unit_vector(3, rng);
    const ComplexVector v = random_unit_vector(3, rng);
    const RealVector r = singular_values(u * v.adjoint());
    EXPECT_NEAR(r(0), 1.0, 1e-12);
    EXPECT_NEAR(r(1), 0.0, 1e-7);
    EXPECT_NEAR(r(2), 0.0, 1e-7);
}

TEST(SingularValues, FrobeniusIdentityAndOrdering) {
    Rng rng(9);
    for (auto [r, c] : {std::pair{3, 5}, {5, 3}, {1, 4}, {6, 6}}) {
        const ComplexMatrix m = random_complex_matrix(r, c, rng);
        const RealVector s = singular_values(m);
        ASSERT_EQ(s.size(), std::min(r, c));
        EXPECT_NEAR(s.squaredNorm(), m.squaredNorm(), 1e-10 * m.squaredNorm());
        for (Eigen::Index i = 1; i < s.size(); ++i) EXPECT_GE(s(i - 1), s(i));
        EXPECT_GE(s.minCoeff(), 0.0);
    }
}

TEST(SingularValues, UnitarilyInvariant) {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix m = random_complex_matrix(4, 6, rng);
        const ComplexMatrix u = random_unitary(4, rng);
        const ComplexMatrix v = random_unitary(6, rng);
        const RealVector a = singular_values(m);
        const RealVector b = singular_values(u * m * v);
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-9);
    }
}
