// Dense complex kernels. Every other module routes its linear algebra through here.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace purity_bounds {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Raised when an input breaks an operation's precondition.
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Shared tolerance record. Tests and checkers read these instead of literals.
struct Tolerances {
    static constexpr double algebraic = 1e-10;
    static constexpr double quadrature = 1e-6;
    static constexpr double hermiticity = 1e-12;
};

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const RealMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const cplx z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

inline void require_finite(const ComplexMatrix& m, const char* what) {
    if (!all_finite(m)) {
        throw ContractViolation(std::string(what) + ": matrix has non-finite entries");
    }
}

// Largest entrywise deviation from Hermiticity, max |m - m†|.
inline double hermiticity_defect(const ComplexMatrix& m) {
    return max_abs(ComplexMatrix(m - m.adjoint()));
}

// --------------------------- Hermitian eigensystem --------------------------

struct HermitianEig {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // columns, unitary
};

// Householder tridiagonalization followed by implicit symmetric QR sweeps
// (Eigen's SelfAdjointEigenSolver). Deterministic for a fixed input.
inline HermitianEig hermitian_eig(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw ContractViolation("hermitian_eig: matrix must be square");
    }
    require_finite(m, "hermitian_eig");
    const double defect = hermiticity_defect(m);
    if (defect > Tolerances::hermiticity) {
        throw ContractViolation("hermitian_eig: matrix is not Hermitian (max |m - m^H| = " +
                                std::to_string(defect) + ")");
    }
    if (m.rows() == 0) return {};
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: QR iteration did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// ------------------------------- Determinant --------------------------------

// LU with partial pivoting; each row swap flips the sign. A zero pivot column
// means the matrix is singular and the determinant is exactly zero.
inline cplx det_complex(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw ContractViolation("det_complex: matrix must be square");
    }
    const Eigen::Index n = m.rows();
    ComplexMatrix lu = m;
    cplx det{1.0, 0.0};
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index pivot = k;
        double best = std::abs(lu(k, k));
        for (Eigen::Index r = k + 1; r < n; ++r) {
            const double v = std::abs(lu(r, k));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return {0.0, 0.0};
        if (pivot != k) {
            lu.row(k).swap(lu.row(pivot));
            det = -det;
        }
        const cplx p = lu(k, k);
        det *= p;
        for (Eigen::Index r = k + 1; r < n; ++r) {
            const cplx f = lu(r, k) / p;
            if (f == cplx{0.0, 0.0}) continue;
            lu.row(r).tail(n - k - 1) -= f * lu.row(k).tail(n - k - 1);
        }
    }
    return det;
}

// ----------------------------- Singular values ------------------------------

// Square roots of the eigenvalues of the smaller Gram matrix. Negative round-off
// eigenvalues are clamped to zero, so singular values below ~1e-8 of the largest
// are not resolved.
inline RealVector singular_values(const ComplexMatrix& m) {
    require_finite(m, "singular_values");
    const Eigen::Index k = std::min(m.rows(), m.cols());
    if (k == 0) return {};
    ComplexMatrix gram = (m.rows() <= m.cols()) ? ComplexMatrix(m * m.adjoint())
                                                : ComplexMatrix(m.adjoint() * m);
    gram = 0.5 * (gram + gram.adjoint()).eval();
    const HermitianEig eig = hermitian_eig(gram);
    RealVector sv(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        sv(i) = std::sqrt(std::max(0.0, eig.eigenvalues(k - 1 - i)));
    }
    return sv;
}

}  // namespace purity_bounds
