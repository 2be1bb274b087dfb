// Brute-force reference computations for tests and the verify runner.
//
// Nothing here calls into the routines it is used to check. Gaussian purities
// and overlaps come from position-grid quadrature of the wavefunction itself.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace purity_bounds::oracle {

using cplx = std::complex<double>;

// Laplace expansion along the first row. Exponential cost; meant for n <= 7.
inline cplx cofactor_det(const Eigen::MatrixXcd& m) {
    const Eigen::Index n = m.rows();
    if (n == 0) return 1.0;
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    cplx sum = 0.0;
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::MatrixXcd minor(n - 1, n - 1);
        for (Eigen::Index r = 1; r < n; ++r) {
            Eigen::Index cc = 0;
            for (Eigen::Index c = 0; c < n; ++c) {
                if (c == col) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        const double sign = (col % 2 == 0) ? 1.0 : -1.0;
        sum += sign * m(0, col) * cofactor_det(minor);
    }
    return sum;
}

// rho[i][j] = Σ_k psi[i d2 + k] conj(psi[j d2 + k]) (over_second) or the
// mirrored sum over the first index.
inline Eigen::MatrixXcd direct_partial_trace(int d1, int d2, const Eigen::VectorXcd& psi, bool over_second) {
    const int keep = over_second ? d1 : d2;
    const int sum = over_second ? d2 : d1;
    Eigen::MatrixXcd rho(keep, keep);
    for (int i = 0; i < keep; ++i) {
        for (int j = 0; j < keep; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < sum; ++k) {
                const cplx a = over_second ? psi(i * d2 + k) : psi(k * d2 + i);
                const cplx b = over_second ? psi(j * d2 + k) : psi(k * d2 + j);
                acc += a * std::conj(b);
            }
            rho(i, j) = acc;
        }
    }
    return rho;
}

// ---------------------------- Grid quadrature -------------------------------
//
// Two-dimensional packets exp((i/hbar) x·A x) centered at the origin, with
// A a complex symmetric 2×2 matrix. Normalization is done numerically on the grid.

// Largest width sqrt(hbar / (2 min eig Im A)) from the closed-form 2×2 eigenvalue.
inline double widest_sigma(const Eigen::Matrix2cd& a, double hbar) {
    const double p = a(0, 0).imag();
    const double q = a(1, 1).imag();
    const double r = 0.5 * (a(0, 1).imag() + a(1, 0).imag());
    const double lo = 0.5 * (p + q) - std::sqrt(0.25 * (p - q) * (p - q) + r * r);
    return std::sqrt(hbar / (2.0 * lo));
}

struct Grid {
    std::vector<double> x;
    double dx{0.0};
};

inline Grid make_grid(double half_extent, int n) {
    Grid g;
    g.dx = 2.0 * half_extent / (n - 1);
    g.x.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g.x[static_cast<std::size_t>(i)] = -half_extent + g.dx * i;
    return g;
}

// Unnormalized samples psi(x1_i, x2_k), stored as an n × n matrix.
inline Eigen::MatrixXcd sample_packet(const Eigen::Matrix2cd& a, double hbar, const Grid& g) {
    const auto n = static_cast<Eigen::Index>(g.x.size());
    Eigen::MatrixXcd psi(n, n);
    const cplx a12 = 0.5 * (a(0, 1) + a(1, 0));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x1 = g.x[static_cast<std::size_t>(i)];
        for (Eigen::Index k = 0; k < n; ++k) {
            const double x2 = g.x[static_cast<std::size_t>(k)];
            const cplx quad = a(0, 0) * x1 * x1 + 2.0 * a12 * x1 * x2 + a(1, 1) * x2 * x2;
            psi(i, k) = std::exp(cplx(0.0, 1.0 / hbar) * quad);
        }
    }
    return psi;
}

// ∫∫ |rho(x1, x1')|^2 with rho(x1, x1') = ∫ psi(x1, x2) psi*(x1', x2) dx2.
inline double gaussian_purity_quadrature(const Eigen::Matrix2cd& a, double hbar = 1.0, int n = 256) {
    const Grid g = make_grid(6.0 * widest_sigma(a, hbar), n);
    Eigen::MatrixXcd psi = sample_packet(a, hbar, g);
    psi /= std::sqrt(psi.cwiseAbs2().sum() * g.dx * g.dx);
    const Eigen::MatrixXcd rho = psi * psi.adjoint() * g.dx;
    return rho.cwiseAbs2().sum() * g.dx * g.dx;
}

// |∫∫ phi* psi|^4 for two packets on a common grid wide enough for both.
inline double gaussian_overlap4_quadrature(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b, double hbar = 1.0,
                                           int n = 256) {
    const double half = 6.0 * std::max(widest_sigma(a, hbar), widest_sigma(b, hbar));
    const Grid g = make_grid(half, n);
    Eigen::MatrixXcd psi = sample_packet(a, hbar, g);
    Eigen::MatrixXcd phi = sample_packet(b, hbar, g);
    psi /= std::sqrt(psi.cwiseAbs2().sum() * g.dx * g.dx);
    phi /= std::sqrt(phi.cwiseAbs2().sum() * g.dx * g.dx);
    const cplx ov = (phi.conjugate().cwiseProduct(psi)).sum() * g.dx * g.dx;
    const double a2 = std::norm(ov);
    return a2 * a2;
}

}  // namespace purity_bounds::oracle
