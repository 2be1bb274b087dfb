// Pure states on H1 ⊗ H2: reduced densities, purity, Schmidt data
// and the overlap bounds on purity (product-state bound, Schmidt-gap sandwich,
// reduced-fidelity chain).
//
// Amplitude layout is fixed globally: index = i1 * d2 + i2, so the amplitude
// vector read row-major is the d1 × d2 coefficient matrix without a copy.

#pragma once

#include "purity/numerics.hpp"
#include "purity/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace purity_bounds {

using RowMajorComplexMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class BipartiteState {
public:
    // Takes amplitudes that are already normalized (within Tolerances::algebraic).
    BipartiteState(Eigen::Index d1, Eigen::Index d2, ComplexVector amplitudes)
        : d1_(d1), d2_(d2), amp_(std::move(amplitudes)) {
        if (d1_ < 1 || d2_ < 1) {
            throw ContractViolation("BipartiteState: dimensions must be >= 1");
        }
        if (amp_.size() != d1_ * d2_) {
            throw ContractViolation("BipartiteState: expected " + std::to_string(d1_ * d2_) +
                                    " amplitudes, got " + std::to_string(amp_.size()));
        }
        require_finite(amp_, "BipartiteState");
        const double n2 = amp_.squaredNorm();
        if (std::abs(n2 - 1.0) > Tolerances::algebraic) {
            throw ContractViolation("BipartiteState: squared norm " + std::to_string(n2) + " != 1");
        }
    }

    static BipartiteState normalized(Eigen::Index d1, Eigen::Index d2, ComplexVector raw) {
        const double n = raw.norm();
        if (!(n > 0.0)) throw ContractViolation("BipartiteState: zero vector cannot be normalized");
        raw /= n;
        return {d1, d2, std::move(raw)};
    }

    // |first> ⊗ |second>, each factor normalized independently.
    static BipartiteState product(const ComplexVector& first, const ComplexVector& second) {
        const double n1 = first.norm();
        const double n2 = second.norm();
        if (!(n1 > 0.0) || !(n2 > 0.0)) {
            throw ContractViolation("BipartiteState::product: zero factor");
        }
        const Eigen::Index d1 = first.size();
        const Eigen::Index d2 = second.size();
        ComplexVector amp(d1 * d2);
        for (Eigen::Index i = 0; i < d1; ++i)
            for (Eigen::Index k = 0; k < d2; ++k) amp(i * d2 + k) = (first(i) / n1) * (second(k) / n2);
        return normalized(d1, d2, std::move(amp));
    }

    static BipartiteState basis(Eigen::Index d1, Eigen::Index d2, Eigen::Index i1, Eigen::Index i2) {
        ComplexVector amp = ComplexVector::Zero(d1 * d2);
        amp(i1 * d2 + i2) = 1.0;
        return {d1, d2, std::move(amp)};
    }

    static BipartiteState random(Eigen::Index d1, Eigen::Index d2, Rng& rng) {
        return normalized(d1, d2, random_complex_vector(d1 * d2, rng));
    }

    static BipartiteState random_product(Eigen::Index d1, Eigen::Index d2, Rng& rng) {
        const ComplexVector a = random_complex_vector(d1, rng);
        const ComplexVector b = random_complex_vector(d2, rng);
        return product(a, b);
    }

    Eigen::Index d1() const noexcept { return d1_; }
    Eigen::Index d2() const noexcept { return d2_; }
    const ComplexVector& amplitudes() const noexcept { return amp_; }
    cplx amplitude(Eigen::Index i1, Eigen::Index i2) const { return amp_(i1 * d2_ + i2); }

    // d1 × d2 coefficient matrix viewing the amplitude storage.
    Eigen::Map<const RowMajorComplexMatrix> matrix() const {
        return {amp_.data(), d1_, d2_};
    }

private:
    Eigen::Index d1_;
    Eigen::Index d2_;
    ComplexVector amp_;
};

inline void require_same_split(const BipartiteState& a, const BipartiteState& b, const char* what) {
    if (a.d1() != b.d1() || a.d2() != b.d2()) {
        throw ContractViolation(std::string(what) + ": dimension mismatch (" + std::to_string(a.d1()) +
                                "x" + std::to_string(a.d2()) + " vs " + std::to_string(b.d1()) + "x" +
                                std::to_string(b.d2()) + ")");
    }
}

// ----------------------------- Reduced densities ----------------------------

struct ReducedDensity {
    Eigen::Index dim{0};
    ComplexMatrix matrix;

    // Validates Hermiticity, unit trace and positivity, all at Tolerances::algebraic.
    static ReducedDensity from_matrix(ComplexMatrix m) {
        if (m.rows() != m.cols() || m.rows() == 0) {
            throw ContractViolation("ReducedDensity: matrix must be square and non-empty");
        }
        require_finite(m, "ReducedDensity");
        if (hermiticity_defect(m) > Tolerances::algebraic) {
            throw ContractViolation("ReducedDensity: matrix is not Hermitian");
        }
        m = 0.5 * (m + m.adjoint()).eval();
        const double tr = m.trace().real();
        if (std::abs(tr - 1.0) > Tolerances::algebraic) {
            throw ContractViolation("ReducedDensity: trace " + std::to_string(tr) + " != 1");
        }
        const double lo = hermitian_eig(m).eigenvalues(0);
        if (lo < -Tolerances::algebraic) {
            throw ContractViolation("ReducedDensity: negative eigenvalue " + std::to_string(lo));
        }
        return {m.rows(), std::move(m)};
    }
};

enum class Subsystem { first = 1, second = 2 };

// Reduced density of the subsystem that is kept after tracing out `over`.
inline ReducedDensity partial_trace(const BipartiteState& psi, Subsystem over) {
    const auto m = psi.matrix();
    ComplexMatrix rho;
    switch (over) {
        case Subsystem::second: rho = m * m.adjoint(); break;
        case Subsystem::first: rho = m.transpose() * m.conjugate(); break;
        default: throw ContractViolation("partial_trace: subsystem tag must be 1 or 2");
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const Eigen::Index dim = rho.rows();
    return {dim, std::move(rho)};
}

// I[rho_1] = tr rho_1^2, computed as sum of fourth powers of the Schmidt coefficients.
inline double purity(const BipartiteState& psi) {
    const RealVector sv = singular_values(ComplexMatrix(psi.matrix()));
    return sv.array().pow(4).sum();
}

// tr rho^2 of a density matrix.
inline double purity(const ReducedDensity& rho) {
    return rho.matrix.cwiseAbs2().sum();
}

// tr(rho sigma). Both arguments Hermitian, so the imaginary part is round-off.
inline double reduced_fidelity(const ReducedDensity& rho, const ReducedDensity& sigma) {
    if (rho.dim != sigma.dim) {
        throw ContractViolation("reduced_fidelity: dimension mismatch");
    }
    return (rho.matrix.cwiseProduct(sigma.matrix.transpose())).sum().real();
}

// ------------------------------ Schmidt data --------------------------------

struct SchmidtData {
    RealVector lambdas;           // descending, sum 1
    ComplexMatrix left_vectors;   // d1 × r, orthonormal columns
    ComplexMatrix right_vectors;  // d2 × r, orthonormal columns
    double delta{0.0};            // 1 - lambda_max

    Eigen::Index rank_bound() const noexcept { return lambdas.size(); }
    double purity() const { return lambdas.array().square().sum(); }
};

namespace detail {

// Factorization M = Σ_s sigma_s u_s w_s^T for M with rows <= cols, via the
// row Gram matrix. Right vectors with tiny sigma are completed by Gram-Schmidt.
struct SchmidtFactors {
    RealVector sigma;
    ComplexMatrix u;
    ComplexMatrix w;
};

inline SchmidtFactors wide_schmidt(const ComplexMatrix& m) {
    const Eigen::Index r = m.rows();
    const Eigen::Index c = m.cols();
    ComplexMatrix gram = m * m.adjoint();
    gram = 0.5 * (gram + gram.adjoint()).eval();
    const HermitianEig eig = hermitian_eig(gram);

    SchmidtFactors f{RealVector(r), ComplexMatrix(r, r), ComplexMatrix(c, r)};
    for (Eigen::Index s = 0; s < r; ++s) {
        f.sigma(s) = std::sqrt(std::max(0.0, eig.eigenvalues(r - 1 - s)));
        f.u.col(s) = eig.eigenvectors.col(r - 1 - s);
    }
    const double resolved = 1e-7 * std::max(f.sigma(0), 1e-300);
    Eigen::Index next_basis = 0;
    for (Eigen::Index s = 0; s < r; ++s) {
        ComplexVector w;
        bool from_data = f.sigma(s) > resolved;
        // Below resolution the Gram eigenvalue is rounding noise; treat it as an exact zero.
        if (!from_data) f.sigma(s) = 0.0;
        while (true) {
            if (from_data) {
                w = m.transpose() * f.u.col(s).conjugate() / f.sigma(s);
            } else {
                if (next_basis >= c) throw std::logic_error("schmidt: basis completion exhausted");
                w = ComplexVector::Zero(c);
                w(next_basis++) = 1.0;
            }
            for (Eigen::Index t = 0; t < s; ++t) w -= f.w.col(t).dot(w) * f.w.col(t);
            const double n = w.norm();
            if (n > 1e-6) {
                f.w.col(s) = w / n;
                break;
            }
            from_data = false;
        }
    }
    return f;
}

}  // namespace detail

inline SchmidtData schmidt(const BipartiteState& psi) {
    const ComplexMatrix m = psi.matrix();
    const bool wide = psi.d1() <= psi.d2();
    detail::SchmidtFactors f = wide ? detail::wide_schmidt(m) : detail::wide_schmidt(m.transpose());
    SchmidtData out;
    out.lambdas = f.sigma.array().square();
    out.left_vectors = wide ? std::move(f.u) : std::move(f.w);
    out.right_vectors = wide ? std::move(f.w) : std::move(f.u);

    // Phase convention: largest-magnitude component of each left vector is real positive.
    for (Eigen::Index s = 0; s < out.left_vectors.cols(); ++s) {
        Eigen::Index arg = 0;
        out.left_vectors.col(s).cwiseAbs().maxCoeff(&arg);
        const cplx z = out.left_vectors(arg, s);
        if (std::abs(z) == 0.0) continue;
        const cplx phase = z / std::abs(z);
        out.left_vectors.col(s) *= std::conj(phase);
        out.right_vectors.col(s) *= phase;
    }
    out.delta = std::clamp(1.0 - out.lambdas(0), 0.0, 1.0);
    return out;
}

// --------------------------- Overlaps and bounds ----------------------------

inline cplx overlap(const BipartiteState& phi, const BipartiteState& psi) {
    require_same_split(phi, psi, "overlap");
    return phi.amplitudes().dot(psi.amplitudes());
}

// |<phi|psi>|^4
inline double overlap4(const BipartiteState& phi, const BipartiteState& psi) {
    const double a2 = std::norm(overlap(phi, psi));
    return a2 * a2;
}

inline bool is_product(const BipartiteState& phi) {
    return purity(phi) > 1.0 - Tolerances::algebraic;
}

inline void require_product(const BipartiteState& phi, const char* what) {
    const double p = purity(phi);
    if (!(p > 1.0 - Tolerances::algebraic)) {
        throw ContractViolation(std::string(what) +
                                ": reference state is not a product state (purity " +
                                std::to_string(p) + ", need > 1 - 1e-10)");
    }
}

struct BoundReport {
    double lhs{0.0};
    double rhs{0.0};
    double slack{0.0};  // rhs - lhs
    bool holds{false};

    static BoundReport compare(double lhs, double rhs) {
        return {lhs, rhs, rhs - lhs, lhs <= rhs + Tolerances::algebraic};
    }
};

// |<phi|psi>|^4 <= I[rho_1] for product phi.
inline BoundReport check_theorem(const BipartiteState& phi, const BipartiteState& psi) {
    require_same_split(phi, psi, "check_theorem");
    require_product(phi, "check_theorem");
    return BoundReport::compare(overlap4(phi, psi), purity(psi));
}

// First link of the proof: |<phi|psi>|^2 <= <phi_1|rho_1|phi_1> = tr(rho_1 sigma_1).
inline BoundReport check_uhlmann_step(const BipartiteState& phi, const BipartiteState& psi) {
    require_same_split(phi, psi, "check_uhlmann_step");
    require_product(phi, "check_uhlmann_step");
    const ReducedDensity rho1 = partial_trace(psi, Subsystem::second);
    const ReducedDensity sigma1 = partial_trace(phi, Subsystem::second);
    return BoundReport::compare(std::norm(overlap(phi, psi)), reduced_fidelity(rho1, sigma1));
}

// Second link: |tr(rho sigma)|^2 <= tr(rho^2) tr(sigma^2).
inline BoundReport check_cauchy_schwarz_step(const ReducedDensity& rho, const ReducedDensity& sigma) {
    const double r = reduced_fidelity(rho, sigma);
    return BoundReport::compare(r * r, purity(rho) * purity(sigma));
}

struct SandwichBounds {
    double lower{1.0};
    double upper{1.0};
    double purity{1.0};
};

// (1-δ)^2 + δ^2/(r-1) <= I <= (1-δ)^2 + δ^2 with r = min(d1, d2).
inline SandwichBounds sandwich_bounds(const SchmidtData& s) {
    const Eigen::Index r = s.rank_bound();
    const double p = s.purity();
    if (r <= 1) return {1.0, 1.0, p};
    const double top = (1.0 - s.delta) * (1.0 - s.delta);
    const double d2 = s.delta * s.delta;
    return {top + d2 / static_cast<double>(r - 1), top + d2, p};
}

inline SandwichBounds sandwich_bounds(const BipartiteState& psi) {
    return sandwich_bounds(schmidt(psi));
}

// Product of the leading Schmidt vectors. For a degenerate top eigenvalue the
// first vector in the eigensolver's descending order is taken.
inline BipartiteState optimal_product_state(const SchmidtData& s) {
    return BipartiteState::product(s.left_vectors.col(0), s.right_vectors.col(0));
}

inline BipartiteState optimal_product_state(const BipartiteState& psi) {
    return optimal_product_state(schmidt(psi));
}

}  // namespace purity_bounds
