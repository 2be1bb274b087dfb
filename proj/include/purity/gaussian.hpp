// Gaussian wave packets split into (d1, d2) configuration blocks
//
//   <x|psi> = C exp((i/hbar) [(x - X)·A(x - X) + P·x])
//
// Closed forms for the reduced-packet purity and for the fourth-power overlap
// with a block-diagonal (product) packet at the same phase-space center, plus
// linearized transport of the shape matrix by a symplectic (monodromy) map.

#pragma once

#include "purity/bipartite.hpp"
#include "purity/numerics.hpp"
#include "purity/random.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace purity_bounds {

// Im A has a non-positive eigenvalue, so the packet is not normalizable.
class NotNormalizable : public ContractViolation {
public:
    NotNormalizable(Eigen::Index index, double eigenvalue)
        : ContractViolation("Im A is not positive definite: eigenvalue #" + std::to_string(index) +
                            " of Im A is " + std::to_string(eigenvalue)),
          index_(index), eigenvalue_(eigenvalue) {}

    Eigen::Index index() const noexcept { return index_; }
    double eigenvalue() const noexcept { return eigenvalue_; }

private:
    Eigen::Index index_;
    double eigenvalue_;
};

// The transport denominator (Mqq + 2 Mqp A) is numerically singular.
class CausticError : public std::runtime_error {
public:
    explicit CausticError(double condition)
        : std::runtime_error("caustic: transport denominator has condition number " +
                             std::to_string(condition)),
          condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

// --------------------------------- Shapes -----------------------------------

// Complex symmetric shape matrix with positive-definite imaginary part.
// A21 is canonically A12^T.
class GaussianShape {
public:
    GaussianShape(Eigen::Index d1, Eigen::Index d2, ComplexMatrix a) : d1_(d1), d2_(d2), a_(std::move(a)) {
        if (d1_ < 1 || d2_ < 1) throw ContractViolation("GaussianShape: block dimensions must be >= 1");
        const Eigen::Index d = d1_ + d2_;
        if (a_.rows() != d || a_.cols() != d) {
            throw ContractViolation("GaussianShape: A must be " + std::to_string(d) + "x" + std::to_string(d));
        }
        require_finite(a_, "GaussianShape");
        const double asym = max_abs(ComplexMatrix(a_ - a_.transpose()));
        if (asym > Tolerances::hermiticity * std::max(1.0, max_abs(a_))) {
            throw ContractViolation("GaussianShape: A is not symmetric (max |A - A^T| = " +
                                    std::to_string(asym) + ")");
        }
        a_ = 0.5 * (a_ + a_.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<RealMatrix> eig(a_.imag());
        const RealVector& ev = eig.eigenvalues();
        if (!(ev(0) > 0.0)) throw NotNormalizable(0, ev(0));
        im_eigenvalues_ = ev;
    }

    static GaussianShape block_diagonal(const ComplexMatrix& a11, const ComplexMatrix& a22) {
        const Eigen::Index d1 = a11.rows();
        const Eigen::Index d2 = a22.rows();
        ComplexMatrix a = ComplexMatrix::Zero(d1 + d2, d1 + d2);
        a.topLeftCorner(d1, d1) = a11;
        a.bottomRightCorner(d2, d2) = a22;
        return {d1, d2, std::move(a)};
    }

    Eigen::Index d1() const noexcept { return d1_; }
    Eigen::Index d2() const noexcept { return d2_; }
    Eigen::Index dim() const noexcept { return d1_ + d2_; }
    const ComplexMatrix& matrix() const noexcept { return a_; }
    // Ascending eigenvalues of Im A.
    const RealVector& imag_eigenvalues() const noexcept { return im_eigenvalues_; }

    ComplexMatrix a11() const { return a_.topLeftCorner(d1_, d1_); }
    ComplexMatrix a12() const { return a_.topRightCorner(d1_, d2_); }
    ComplexMatrix a21() const { return a_.bottomLeftCorner(d2_, d1_); }
    ComplexMatrix a22() const { return a_.bottomRightCorner(d2_, d2_); }

    bool is_block_diagonal() const {
        return max_abs(a12()) <= Tolerances::hermiticity && max_abs(a21()) <= Tolerances::hermiticity;
    }

private:
    Eigen::Index d1_;
    Eigen::Index d2_;
    ComplexMatrix a_;
    RealVector im_eigenvalues_;
};

inline void require_same_split(const GaussianShape& a, const GaussianShape& b, const char* what) {
    if (a.d1() != b.d1() || a.d2() != b.d2()) {
        throw ContractViolation(std::string(what) + ": shapes have different block splits");
    }
}

// --------------------------------- Packets ----------------------------------

struct GaussianPacket {
    GaussianShape shape;
    RealVector center_q;  // X
    RealVector center_p;  // P
    double hbar{1.0};

    GaussianPacket(GaussianShape s, RealVector x, RealVector p, double h)
        : shape(std::move(s)), center_q(std::move(x)), center_p(std::move(p)), hbar(h) {
        if (!(hbar > 0.0)) throw ContractViolation("GaussianPacket: hbar must be positive");
        if (center_q.size() != shape.dim() || center_p.size() != shape.dim()) {
            throw ContractViolation("GaussianPacket: center vectors must have dimension d1 + d2");
        }
    }

    static GaussianPacket centered(GaussianShape s, double h = 1.0) {
        const Eigen::Index d = s.dim();
        return {std::move(s), RealVector::Zero(d), RealVector::Zero(d), h};
    }

    // |C| = det(2 Im A / (pi hbar))^{1/4}
    double normalization() const {
        const RealMatrix m = shape.matrix().imag() * (2.0 / (std::numbers::pi * hbar));
        return std::pow(m.determinant(), 0.25);
    }

    cplx amplitude(const RealVector& x) const {
        const ComplexVector dx = (x - center_q).cast<cplx>();
        const cplx quad = dx.transpose() * shape.matrix() * dx;
        const cplx phase = quad + cplx(center_p.dot(x), 0.0);
        return normalization() * std::exp(cplx(0.0, 1.0 / hbar) * phase);
    }

    // Largest position-space standard deviation, sqrt(hbar / (2 min eig Im A)).
    double max_width() const {
        return std::sqrt(hbar / (2.0 * shape.imag_eigenvalues()(0)));
    }
};

// Samples a (1,1)-split packet on an n × n uniform grid spanning ±extent_sigmas
// widths around its center and returns the normalized grid state.
inline BipartiteState discretize_packet(const GaussianPacket& packet, Eigen::Index n, double extent_sigmas = 6.0) {
    if (packet.shape.d1() != 1 || packet.shape.d2() != 1) {
        throw ContractViolation("discretize_packet: only (1,1) splits are supported");
    }
    if (n < 2) throw ContractViolation("discretize_packet: need at least 2 grid points");
    const double half = extent_sigmas * packet.max_width();
    const double step = 2.0 * half / static_cast<double>(n - 1);
    ComplexVector amp(n * n);
    RealVector x(2);
    for (Eigen::Index i = 0; i < n; ++i) {
        x(0) = packet.center_q(0) - half + step * static_cast<double>(i);
        for (Eigen::Index k = 0; k < n; ++k) {
            x(1) = packet.center_q(1) - half + step * static_cast<double>(k);
            amp(i * n + k) = packet.amplitude(x);
        }
    }
    return BipartiteState::normalized(n, n, std::move(amp));
}

// ------------------------------ Closed forms --------------------------------

// The 2d × 2d matrix whose determinant gives the reduced-packet purity,
// in the row/column order (x1, x2, x1', x2').
inline ComplexMatrix purity_kernel_matrix(const GaussianShape& shape) {
    const Eigen::Index d1 = shape.d1();
    const Eigen::Index d2 = shape.d2();
    const Eigen::Index d = d1 + d2;
    const cplx half_i{0.0, 0.5};
    const ComplexMatrix im11 = shape.a11().imag().cast<cplx>();
    const ComplexMatrix im22 = shape.a22().imag().cast<cplx>();
    const ComplexMatrix a12 = shape.a12();
    const ComplexMatrix a21 = shape.a21();

    ComplexMatrix m = ComplexMatrix::Zero(2 * d, 2 * d);
    // block row 1
    m.block(0, 0, d1, d1) = im11;
    m.block(0, d1, d1, d2) = half_i * a12.conjugate();
    m.block(0, d + d1, d1, d2) = -half_i * a12;
    // block row 2
    m.block(d1, 0, d2, d1) = half_i * a21.conjugate();
    m.block(d1, d1, d2, d2) = im22;
    m.block(d1, d, d2, d1) = -half_i * a21;
    // block row 3
    m.block(d, d1, d1, d2) = -half_i * a12;
    m.block(d, d, d1, d1) = im11;
    m.block(d, d + d1, d1, d2) = half_i * a12.conjugate();
    // block row 4
    m.block(d + d1, 0, d2, d1) = -half_i * a21;
    m.block(d + d1, d, d2, d1) = half_i * a21.conjugate();
    m.block(d + d1, d + d1, d2, d2) = im22;
    return m;
}

// I = det(Im A) |det K|^{-1/2}, K = purity_kernel_matrix(A).
inline double purity_gaussian(const GaussianShape& shape) {
    const double det_im = det_complex(shape.matrix().imag().cast<cplx>()).real();
    const cplx det_k = det_complex(purity_kernel_matrix(shape));
    if (std::abs(det_k.imag()) > 1e-9 * std::abs(det_k)) {
        throw std::logic_error("purity_gaussian: kernel determinant is not real");
    }
    const double value = det_im / std::sqrt(std::abs(det_k));
    if (value > 1.0 + 1e-9) {
        throw std::logic_error("purity_gaussian: purity exceeds 1 (" + std::to_string(value) + ")");
    }
    return value;
}

// |<phi|psi>|^4 = 4^d det(Im A) det(Im B) / |det(A - B*)|^2 for normalized
// packets sharing (X, P). The result contains no hbar.
inline double cross_correlation_gaussian(const GaussianShape& a, const GaussianShape& b) {
    require_same_split(a, b, "cross_correlation_gaussian");
    if (!b.is_block_diagonal()) {
        throw ContractViolation("cross_correlation_gaussian: reference shape B must be block-diagonal");
    }
    const double det_a = det_complex(a.matrix().imag().cast<cplx>()).real();
    const double det_b = det_complex(b.matrix().imag().cast<cplx>()).real();
    const cplx den = det_complex(ComplexMatrix(a.matrix() - b.matrix().conjugate()));
    return std::pow(4.0, static_cast<double>(a.dim())) * det_a * det_b / std::norm(den);
}

// Keep the diagonal blocks, drop the coupling blocks.
inline GaussianShape optimal_reference(const GaussianShape& a) {
    return GaussianShape::block_diagonal(a.a11(), a.a22());
}

// Fourth-power overlap of A(t) with the transported initial product packet.
inline double transported_autocorrelation(const GaussianShape& a_t, const GaussianShape& a_0) {
    if (!a_0.is_block_diagonal()) {
        throw ContractViolation("transported_autocorrelation: initial shape must be block-diagonal");
    }
    return cross_correlation_gaussian(a_t, a_0);
}

// ------------------------------ Symplectic maps -----------------------------

inline RealMatrix symplectic_form(Eigen::Index d) {
    RealMatrix j = RealMatrix::Zero(2 * d, 2 * d);
    j.topRightCorner(d, d) = RealMatrix::Identity(d, d);
    j.bottomLeftCorner(d, d) = -RealMatrix::Identity(d, d);
    return j;
}

// Real 2d × 2d matrix acting on (q, p), with M^T J M = J.
class SymplecticMap {
public:
    explicit SymplecticMap(RealMatrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() % 2 != 0 || m_.rows() == 0) {
            throw ContractViolation("SymplecticMap: matrix must be 2d x 2d");
        }
        if (!m_.allFinite()) throw ContractViolation("SymplecticMap: non-finite entries");
        const RealMatrix j = symplectic_form(dim());
        const double defect = max_abs(RealMatrix(m_.transpose() * j * m_ - j));
        const double scale = std::max(1.0, max_abs(m_));
        if (defect > Tolerances::algebraic * scale * scale) {
            throw ContractViolation("SymplecticMap: M^T J M != J (defect " + std::to_string(defect) + ")");
        }
    }

    static SymplecticMap identity(Eigen::Index d) { return SymplecticMap(RealMatrix::Identity(2 * d, 2 * d)); }

    // Flow for time t of H = (1/2) z^T K z, z = (q, p): M = exp(t J K).
    static SymplecticMap from_quadratic_hamiltonian(const RealMatrix& hessian, double t) {
        if (hessian.rows() != hessian.cols() || hessian.rows() % 2 != 0) {
            throw ContractViolation("SymplecticMap: Hessian must be 2d x 2d");
        }
        const RealMatrix k = 0.5 * (hessian + hessian.transpose());
        const RealMatrix gen = t * symplectic_form(hessian.rows() / 2) * k;
        return SymplecticMap(gen.exp());
    }

    // One degree of freedom, H = (p^2 + q^2)/2 run for time theta.
    static SymplecticMap rotation(double theta) {
        RealMatrix m(2, 2);
        m << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
        return SymplecticMap(m);
    }

    Eigen::Index dim() const noexcept { return m_.rows() / 2; }
    const RealMatrix& matrix() const noexcept { return m_; }
    RealMatrix qq() const { return m_.topLeftCorner(dim(), dim()); }
    RealMatrix qp() const { return m_.topRightCorner(dim(), dim()); }
    RealMatrix pq() const { return m_.bottomLeftCorner(dim(), dim()); }
    RealMatrix pp() const { return m_.bottomRightCorner(dim(), dim()); }

private:
    RealMatrix m_;
};

// A' = (1/2)(Mpq + 2 Mpp A)(Mqq + 2 Mqp A)^{-1}, the image of the Lagrangian
// plane p = 2 A q under the map.
inline GaussianShape propagate_shape(const GaussianShape& a, const SymplecticMap& map) {
    if (map.dim() != a.dim()) throw ContractViolation("propagate_shape: map dimension does not match shape");
    const ComplexMatrix& am = a.matrix();
    const ComplexMatrix den = map.qq().cast<cplx>() + 2.0 * map.qp().cast<cplx>() * am;
    const ComplexMatrix num = map.pq().cast<cplx>() + 2.0 * map.pp().cast<cplx>() * am;

    Eigen::JacobiSVD<ComplexMatrix> svd(den);
    const RealVector& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    const double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e12)) throw CausticError(cond);

    // A' den = num / 2  <=>  den^T A'^T = num^T / 2
    const ComplexMatrix at = den.transpose().partialPivLu().solve(ComplexMatrix(0.5 * num.transpose()));
    ComplexMatrix next = at.transpose();
    next = 0.5 * (next + next.transpose()).eval();
    return {a.d1(), a.d2(), std::move(next)};
}

// -------------------------------- Sampling ----------------------------------

// Random symmetric real part; imaginary part G G^T / d + 0.5 I.
inline GaussianShape random_gaussian_shape(Eigen::Index d1, Eigen::Index d2, Rng& rng) {
    const Eigen::Index d = d1 + d2;
    const RealMatrix re = random_symmetric(d, rng);
    const RealMatrix g = random_real_matrix(d, d, rng);
    const RealMatrix im = g * g.transpose() / static_cast<double>(d) + 0.5 * RealMatrix::Identity(d, d);
    ComplexMatrix a(d, d);
    a.real() = re;
    a.imag() = im;
    return {d1, d2, std::move(a)};
}

inline GaussianShape random_block_diagonal_shape(Eigen::Index d1, Eigen::Index d2, Rng& rng) {
    const GaussianShape a1 = random_gaussian_shape(d1, 1, rng);
    const GaussianShape a2 = random_gaussian_shape(1, d2, rng);
    return GaussianShape::block_diagonal(a1.a11(), a2.a22());
}

}  // namespace purity_bounds
