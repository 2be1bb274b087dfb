// Exact diagonalization of the Jaynes-Cummings model
//
//   H = omega a†a + epsilon J_z + G / sqrt(2J) (a J+ + a† J-)      (hbar = 1)
//
// on a truncated Fock space ⊗ spin-J multiplet. Basis index = n * (2J+1) + (m + J),
// so the field is subsystem 1 and the spin is subsystem 2.

#pragma once

#include "purity/bipartite.hpp"
#include "purity/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace purity_bounds {

struct JcParams {
    double omega{1.0};
    double epsilon{1.0};
    double coupling{0.3};  // G
    int two_j{10};         // 2J
    int n_max{40};         // highest Fock state kept

    double spin() const noexcept { return 0.5 * two_j; }
};

class JcModel {
public:
    explicit JcModel(const JcParams& p) : params_(p) {
        if (p.n_max < 1) throw ContractViolation("JcModel: n_max must be >= 1");
        if (p.two_j < 1) throw ContractViolation("JcModel: 2J must be a positive integer");
        if (!std::isfinite(p.omega) || !std::isfinite(p.epsilon) || !std::isfinite(p.coupling)) {
            throw ContractViolation("JcModel: parameters must be finite");
        }
        field_dim_ = p.n_max + 1;
        spin_dim_ = p.two_j + 1;
        const Eigen::Index d = dim();
        const double j = p.spin();
        const double g = p.coupling / std::sqrt(2.0 * j);

        h_ = ComplexMatrix::Zero(d, d);
        for (Eigen::Index n = 0; n < field_dim_; ++n) {
            for (Eigen::Index k = 0; k < spin_dim_; ++k) {
                const double m = static_cast<double>(k) - j;
                const Eigen::Index i = index(n, k);
                h_(i, i) = p.omega * static_cast<double>(n) + p.epsilon * m;
                // a J+ |n, m> = sqrt(n) sqrt(J(J+1) - m(m+1)) |n-1, m+1>
                if (n >= 1 && k + 1 < spin_dim_) {
                    const double c = g * std::sqrt(static_cast<double>(n)) * std::sqrt(j * (j + 1.0) - m * (m + 1.0));
                    const Eigen::Index to = index(n - 1, k + 1);
                    h_(to, i) += c;
                    h_(i, to) += c;
                }
            }
        }
        eig_ = hermitian_eig(h_);
    }

    const JcParams& params() const noexcept { return params_; }
    Eigen::Index field_dim() const noexcept { return field_dim_; }
    Eigen::Index spin_dim() const noexcept { return spin_dim_; }
    Eigen::Index dim() const noexcept { return field_dim_ * spin_dim_; }
    Eigen::Index index(Eigen::Index n, Eigen::Index spin_index) const noexcept { return n * spin_dim_ + spin_index; }

    const ComplexMatrix& hamiltonian() const noexcept { return h_; }
    const HermitianEig& eigensystem() const noexcept { return eig_; }

    // Diagonal of N = a†a + J_z + J.
    RealVector excitation_diagonal() const {
        RealVector v(dim());
        for (Eigen::Index n = 0; n < field_dim_; ++n)
            for (Eigen::Index k = 0; k < spin_dim_; ++k) v(index(n, k)) = static_cast<double>(n + k);
        return v;
    }

    // Diagonal of S = (-1)^{a†a} ⊗ (-1)^{J_z + J}.
    RealVector mirror_diagonal() const {
        RealVector v(dim());
        for (Eigen::Index n = 0; n < field_dim_; ++n)
            for (Eigen::Index k = 0; k < spin_dim_; ++k) v(index(n, k)) = ((n + k) % 2 == 0) ? 1.0 : -1.0;
        return v;
    }

private:
    JcParams params_;
    Eigen::Index field_dim_{0};
    Eigen::Index spin_dim_{0};
    ComplexMatrix h_;
    HermitianEig eig_;
};

inline JcModel build_model(double omega, double epsilon, double coupling, double spin_j, int n_max) {
    const double twice = 2.0 * spin_j;
    if (!(twice >= 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
        throw ContractViolation("build_model: J must be a non-negative half-integer");
    }
    return JcModel(JcParams{omega, epsilon, coupling, static_cast<int>(std::lround(twice)), n_max});
}

// Mirror operator a -> -a, J± -> -J±, J_z -> J_z as a dense diagonal unitary.
inline ComplexMatrix mirror_operator(const JcModel& model) {
    return model.mirror_diagonal().cast<cplx>().asDiagonal();
}

inline BipartiteState apply_mirror(const JcModel& model, const BipartiteState& psi) {
    ComplexVector v = psi.amplitudes().cwiseProduct(model.mirror_diagonal().cast<cplx>());
    return {psi.d1(), psi.d2(), std::move(v)};
}

// Field coherent state ⊗ spin coherent state (rotation of |J, +J> to polar
// angle theta, azimuth phi). Requires |alpha|^2 <= n_max / 4.
inline BipartiteState coherent_product_state(const JcModel& model, cplx alpha, double theta, double phi) {
    const int n_max = model.params().n_max;
    if (!(std::norm(alpha) <= 0.25 * n_max)) {
        throw ContractViolation("coherent_product_state: |alpha|^2 = " + std::to_string(std::norm(alpha)) +
                                " exceeds truncation margin n_max/4 = " + std::to_string(0.25 * n_max));
    }
    ComplexVector field(model.field_dim());
    field(0) = 1.0;
    for (Eigen::Index n = 1; n < model.field_dim(); ++n) {
        field(n) = field(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }

    const int two_j = model.params().two_j;
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    ComplexVector spin(model.spin_dim());
    double binom = 1.0;  // C(2J, k)
    for (int k = 0; k <= two_j; ++k) {
        if (k > 0) binom *= static_cast<double>(two_j - k + 1) / static_cast<double>(k);
        // k = J + m, 2J - k = J - m
        const double mag = std::sqrt(binom) * std::pow(c, k) * std::pow(s, two_j - k);
        spin(k) = mag * std::exp(cplx(0.0, -static_cast<double>(two_j - k) * phi));
    }
    return BipartiteState::product(field, spin);
}

inline void require_model_state(const JcModel& model, const BipartiteState& psi, const char* what) {
    if (psi.d1() != model.field_dim() || psi.d2() != model.spin_dim()) {
        throw ContractViolation(std::string(what) + ": state dimensions do not match the model");
    }
}

// psi(t) = V exp(-i E t) V† psi(0)
inline BipartiteState evolve(const JcModel& model, const BipartiteState& psi, double t) {
    require_model_state(model, psi, "evolve");
    const HermitianEig& e = model.eigensystem();
    ComplexVector c = e.eigenvectors.adjoint() * psi.amplitudes();
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(cplx(0.0, -e.eigenvalues(k) * t));
    ComplexVector out = e.eigenvectors * c;
    return {psi.d1(), psi.d2(), std::move(out)};
}

// ------------------------------- Time series --------------------------------

struct InvariantCheck {
    std::string name;
    double max_violation{0.0};  // largest amount by which the inequality failed (0 if never)
    bool passed{true};
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> purity;
    std::vector<double> autocorr4;            // |<psi(0)|psi(t)>|^4
    std::vector<double> mirror4;              // |<S psi(0)|psi(t)>|^4
    std::vector<double> schmidt_lower;        // (1 - delta)^2
    std::vector<double> sandwich_upper;       // (1 - delta)^2 + delta^2
    std::vector<double> reduced_fidelity_sq;  // tr(rho_1(t) rho_1(0))^2
    std::vector<InvariantCheck> checks;

    std::size_t size() const noexcept { return times.size(); }
    bool all_invariants_hold() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

namespace detail {

class CheckAccumulator {
public:
    explicit CheckAccumulator(double tol) : tol_(tol) {}

    // Records lhs <= rhs.
    void le(const std::string& name, double lhs, double rhs) { le(name, lhs, rhs, tol_); }

    void le(const std::string& name, double lhs, double rhs, double tol) {
        InvariantCheck& c = slot(name);
        const double v = lhs - rhs;
        if (v > c.max_violation) c.max_violation = v;
        if (v > tol) c.passed = false;
    }

    std::vector<InvariantCheck> take() { return std::move(checks_); }

private:
    InvariantCheck& slot(const std::string& name) {
        for (auto& c : checks_)
            if (c.name == name) return c;
        checks_.push_back({name, 0.0, true});
        return checks_.back();
    }

    double tol_;
    std::vector<InvariantCheck> checks_;
};

}  // namespace detail

// Samples t_k = t_max k / n_steps, k = 0..n_steps. The initial state must be a product.
inline TimeSeries run_time_series(const JcModel& model, const BipartiteState& initial, double t_max, int n_steps) {
    require_model_state(model, initial, "run_time_series");
    require_product(initial, "run_time_series");
    if (n_steps < 1) throw ContractViolation("run_time_series: n_steps must be >= 1");
    if (!std::isfinite(t_max)) throw ContractViolation("run_time_series: t_max must be finite");

    const BipartiteState mirrored = apply_mirror(model, initial);
    const ReducedDensity rho0 = partial_trace(initial, Subsystem::second);

    TimeSeries ts;
    const auto n = static_cast<std::size_t>(n_steps) + 1;
    for (auto* v : {&ts.times, &ts.purity, &ts.autocorr4, &ts.mirror4, &ts.schmidt_lower, &ts.sandwich_upper,
                    &ts.reduced_fidelity_sq})
        v->reserve(n);

    constexpr double bound_tol = 1e-9;
    detail::CheckAccumulator acc(bound_tol);
    for (int k = 0; k <= n_steps; ++k) {
        const double t = t_max * static_cast<double>(k) / static_cast<double>(n_steps);
        const BipartiteState psi = evolve(model, initial, t);
        const SchmidtData s = schmidt(psi);
        const SandwichBounds sb = sandwich_bounds(s);
        const double p = sb.purity;
        const double a4 = overlap4(initial, psi);
        const double m4 = overlap4(mirrored, psi);
        const double r = reduced_fidelity(partial_trace(psi, Subsystem::second), rho0);
        const double lower = (1.0 - s.delta) * (1.0 - s.delta);

        ts.times.push_back(t);
        ts.purity.push_back(p);
        ts.autocorr4.push_back(a4);
        ts.mirror4.push_back(m4);
        ts.schmidt_lower.push_back(lower);
        ts.sandwich_upper.push_back(sb.upper);
        ts.reduced_fidelity_sq.push_back(r * r);

        acc.le("autocorr4 <= purity", a4, p);
        acc.le("mirror4 <= purity", m4, p);
        acc.le("schmidt_lower <= purity", lower, p);
        acc.le("purity <= sandwich_upper", p, sb.upper);
        acc.le("reduced_fidelity_sq <= purity", r * r, p);
        acc.le("autocorr4 <= reduced_fidelity_sq", a4, r * r);
        acc.le("unit norm", std::abs(psi.amplitudes().norm() - 1.0), 0.0, Tolerances::algebraic);
    }
    ts.checks = acc.take();
    return ts;
}

// ----------------------------- Reference report -----------------------------

enum class Reference { initial, mirror, optimal };

inline const char* to_string(Reference r) {
    switch (r) {
        case Reference::initial: return "initial";
        case Reference::mirror: return "mirror";
        case Reference::optimal: return "optimal";
    }
    return "?";
}

struct ReferenceSample {
    double time{0.0};
    double initial4{0.0};  // |<psi(0)|psi(t)>|^4
    double mirror4{0.0};   // |<S psi(0)|psi(t)>|^4
    double optimal4{0.0};  // |<u1 ⊗ v1|psi(t)>|^4
    double purity{0.0};
    Reference best{Reference::initial};
    Reference best_symmetric{Reference::initial};  // winner within {psi(0), S psi(0)}

    double residual(Reference r) const {
        switch (r) {
            case Reference::initial: return purity - initial4;
            case Reference::mirror: return purity - mirror4;
            case Reference::optimal: return purity - optimal4;
        }
        return 0.0;
    }
};

// For each sample, which reference product state gives the largest fourth-power
// overlap. Values within 1e-9 of the maximum tie, and ties go to the earlier of
// initial, mirror, optimal.
inline std::vector<ReferenceSample> best_reference_report(const TimeSeries& series, const JcModel& model,
                                                          const BipartiteState& initial) {
    require_model_state(model, initial, "best_reference_report");
    const BipartiteState mirrored = apply_mirror(model, initial);
    constexpr double tie = 1e-9;
    std::vector<ReferenceSample> out;
    out.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t = series.times[i];
        const BipartiteState psi = evolve(model, initial, t);
        ReferenceSample r;
        r.time = t;
        r.initial4 = overlap4(initial, psi);
        r.mirror4 = overlap4(mirrored, psi);
        r.optimal4 = overlap4(optimal_product_state(psi), psi);
        r.purity = purity(psi);
        const double top = std::max({r.initial4, r.mirror4, r.optimal4});
        r.best = r.initial4 >= top - tie ? Reference::initial
                 : r.mirror4 >= top - tie ? Reference::mirror
                                          : Reference::optimal;
        r.best_symmetric = r.mirror4 > r.initial4 ? Reference::mirror : Reference::initial;
        out.push_back(r);
    }
    return out;
}

}  // namespace purity_bounds
