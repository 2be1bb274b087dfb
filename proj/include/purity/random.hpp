// Seeded samplers for states, Hermitian matrices and unitaries

#pragma once

#include "purity/numerics.hpp"

#include <cstdint>
#include <random>

namespace purity_bounds {

using Rng = std::mt19937_64;

inline cplx complex_normal(Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double re = gauss(rng);
    const double im = gauss(rng);
    return {re, im};
}

// Complex standard-normal entries; normalizing the result gives a Haar-uniform unit vector.
inline ComplexVector random_complex_vector(Eigen::Index n, Rng& rng) {
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal(rng);
    return v;
}

inline ComplexVector random_unit_vector(Eigen::Index n, Rng& rng) {
    ComplexVector v = random_complex_vector(n, rng);
    return v / v.norm();
}

inline ComplexMatrix random_complex_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal(rng);
    return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
    const ComplexMatrix g = random_complex_matrix(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

// Eigenvectors of a random Hermitian matrix.
inline ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
    return hermitian_eig(random_hermitian(n, rng)).eigenvectors;
}

inline RealMatrix random_real_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = gauss(rng);
    return m;
}

inline RealMatrix random_symmetric(Eigen::Index n, Rng& rng) {
    const RealMatrix g = random_real_matrix(n, n, rng);
    return 0.5 * (g + g.transpose());
}

}  // namespace purity_bounds
