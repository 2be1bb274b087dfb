// Seeded randomized property suite over all modules.
//
// Each property records a stream of "lhs <= rhs" checks and reports the largest
// violation. A property passes when that violation stays within its tolerance.

#pragma once

#include "purity/bipartite.hpp"
#include "purity/gaussian.hpp"
#include "purity/jaynes_cummings.hpp"
#include "purity/numerics.hpp"
#include "purity/oracles.hpp"
#include "purity/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace purity_bounds::verify {

struct DimPair {
    Eigen::Index d1;
    Eigen::Index d2;
};

struct Config {
    std::uint64_t seed{20041019};
    int samples{1000};  // fuzz corpus size per dimension pair
    std::vector<DimPair> dims{{2, 2}, {2, 5}, {3, 4}, {6, 6}};
    int random_products{10000};  // random product states per instance in the optimality search
    // Test hook: the named property has its bound tightened by 0.5, which must make it fail.
    std::string corrupt_property;
};

struct PropertyResult {
    std::string name;
    long samples{0};
    double max_violation{0.0};
    double tolerance{0.0};
    double seconds{0.0};
    bool passed{true};
    std::string error;  // set when the property threw
};

class Recorder {
public:
    Recorder(std::string name, double tol, double bias) : name_(std::move(name)), tol_(tol), bias_(bias) {}

    // lhs <= rhs
    void le(double lhs, double rhs) {
        const double v = lhs - (rhs - bias_);
        if (!(v <= worst_)) worst_ = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
        ++count_;
    }
    // |a - b| <= 0
    void near(double a, double b) { le(std::abs(a - b), 0.0); }

    PropertyResult result(double seconds) const {
        return {name_, count_, worst_, tol_, seconds, count_ > 0 && worst_ <= tol_, {}};
    }

private:
    std::string name_;
    double tol_;
    double bias_;
    long count_{0};
    double worst_{-std::numeric_limits<double>::infinity()};
};

// ------------------------------ Fuzz corpus ---------------------------------

struct CorpusEntry {
    BipartiteState psi;
    BipartiteState phi;  // product
};

inline std::vector<CorpusEntry> make_corpus(const Config& cfg, DimPair dims, Rng& rng) {
    std::vector<CorpusEntry> out;
    out.reserve(static_cast<std::size_t>(cfg.samples));
    for (int i = 0; i < cfg.samples; ++i) {
        BipartiteState psi = BipartiteState::random(dims.d1, dims.d2, rng);
        BipartiteState phi = BipartiteState::random_product(dims.d1, dims.d2, rng);
        out.push_back({std::move(psi), std::move(phi)});
    }
    return out;
}

// State with prescribed Schmidt spectrum in random local bases.
inline BipartiteState state_with_spectrum(Eigen::Index d1, Eigen::Index d2, const RealVector& lambdas, Rng& rng) {
    const ComplexMatrix u = random_unitary(d1, rng);
    const ComplexMatrix v = random_unitary(d2, rng);
    ComplexVector amp = ComplexVector::Zero(d1 * d2);
    for (Eigen::Index s = 0; s < lambdas.size(); ++s) {
        const double c = std::sqrt(lambdas(s));
        for (Eigen::Index i = 0; i < d1; ++i)
            for (Eigen::Index k = 0; k < d2; ++k) amp(i * d2 + k) += c * u(i, s) * v(k, s);
    }
    return BipartiteState::normalized(d1, d2, std::move(amp));
}

// Best |<a ⊗ b|psi>|^4 over `count` random product states.
inline double random_product_search(const BipartiteState& psi, int count, Rng& rng) {
    const auto m = psi.matrix();
    double best = 0.0;
    for (int i = 0; i < count; ++i) {
        const ComplexVector a = random_complex_vector(psi.d1(), rng);
        const ComplexVector b = random_complex_vector(psi.d2(), rng);
        const cplx ov = a.adjoint() * m * b.conjugate();
        const double a2 = std::norm(ov) / (a.squaredNorm() * b.squaredNorm());
        best = std::max(best, a2 * a2);
    }
    return best;
}

// Shape family A11, A22 fixed, A12 = eps Z12.
inline GaussianShape epsilon_family(double eps) {
    ComplexMatrix a(2, 2);
    const cplx a11{0.4, 1.3};
    const cplx a22{-0.2, 0.8};
    const cplx z12{0.7, 0.5};
    a << a11, eps * z12, eps * z12, a22;
    return {1, 1, std::move(a)};
}

inline Eigen::Matrix2cd as_2x2(const GaussianShape& s) { return s.matrix(); }

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// -------------------------------- Runner ------------------------------------

class Suite {
public:
    explicit Suite(Config cfg) : cfg_(std::move(cfg)) {}

    std::vector<PropertyResult> run() {
        results_.clear();
        Rng rng(cfg_.seed);
        std::vector<std::pair<DimPair, std::vector<CorpusEntry>>> corpora;
        for (const DimPair& d : cfg_.dims) corpora.emplace_back(d, make_corpus(cfg_, d, rng));

        property("theorem_product_overlap_bound", Tolerances::algebraic, [&](Recorder& r) {
            for (const auto& [d, corpus] : corpora)
                for (const auto& e : corpus) {
                    const BoundReport b = check_theorem(e.phi, e.psi);
                    r.le(b.lhs, b.rhs);
                }
        });
        property("uhlmann_step", Tolerances::algebraic, [&](Recorder& r) {
            for (const auto& [d, corpus] : corpora)
                for (const auto& e : corpus) {
                    const BoundReport b = check_uhlmann_step(e.phi, e.psi);
                    r.le(b.lhs, b.rhs);
                }
        });
        property("cauchy_schwarz_step", Tolerances::algebraic, [&](Recorder& r) {
            for (const auto& [d, corpus] : corpora)
                for (const auto& e : corpus) {
                    const BoundReport b = check_cauchy_schwarz_step(partial_trace(e.psi, Subsystem::second),
                                                                    partial_trace(e.phi, Subsystem::second));
                    r.le(b.lhs, b.rhs);
                }
        });
        property("reduced_fidelity_chain", Tolerances::algebraic, [&](Recorder& r) {
            for (const auto& [d, corpus] : corpora)
                for (const auto& e : corpus) {
                    const ReducedDensity rho = partial_trace(e.psi, Subsystem::second);
                    const double rf = reduced_fidelity(rho, partial_trace(e.phi, Subsystem::second));
                    r.le(rf * rf, purity(rho));
                    r.le(overlap4(e.phi, e.psi), rf * rf);
                }
        });
        property("sandwich_bounds", Tolerances::algebraic, [&](Recorder& r) {
            for (const auto& [d, corpus] : corpora)
                for (const auto& e : corpus) {
                    const SchmidtData s = schmidt(e.psi);
                    const SandwichBounds b = sandwich_bounds(s);
                    r.le(b.lower, b.purity);
                    r.le(b.purity, b.upper);
                    r.le((1.0 - s.delta) * (1.0 - s.delta), b.lower);
                }
        });
        property("sandwich_tight_at_min_dim_2", 1e-12, [&](Recorder& r) {
            Rng local(cfg_.seed ^ 0x5a5a5a5aULL);
            std::uniform_real_distribution<double> u(0.5, 1.0);
            for (int i = 0; i < cfg_.samples; ++i) {
                const double p = u(local);
                const Eigen::Index d2 = 2 + i % 5;
                RealVector lam(2);
                lam << p, 1.0 - p;
                const SandwichBounds b = sandwich_bounds(state_with_spectrum(2, d2, lam, local));
                r.near(b.lower, b.purity);
                r.near(b.upper, b.purity);
            }
        });
        property("optimal_product_saturation", 1e-9, [&](Recorder& r) {
            for (const auto& [d, corpus] : corpora)
                for (const auto& e : corpus) {
                    const SchmidtData s = schmidt(e.psi);
                    r.near(overlap4(optimal_product_state(s), e.psi), (1.0 - s.delta) * (1.0 - s.delta));
                }
        });
        property("optimal_product_beats_random_search", Tolerances::algebraic, [&](Recorder& r) {
            Rng local(cfg_.seed ^ 0xc0ffeeULL);
            for (const auto& [d, corpus] : corpora)
                for (const auto& e : corpus) {
                    const double best = overlap4(optimal_product_state(e.psi), e.psi);
                    r.le(random_product_search(e.psi, cfg_.random_products, local), best);
                }
        });
        property("spectra_equal_across_subsystems", Tolerances::algebraic, [&](Recorder& r) {
            for (const auto& [d, corpus] : corpora)
                for (const auto& e : corpus) {
                    const RealVector l1 = hermitian_eig(partial_trace(e.psi, Subsystem::second).matrix).eigenvalues;
                    const RealVector l2 = hermitian_eig(partial_trace(e.psi, Subsystem::first).matrix).eigenvalues;
                    const RealVector ls = schmidt(e.psi).lambdas;
                    for (Eigen::Index k = 0; k < ls.size(); ++k) {
                        r.near(l1(l1.size() - 1 - k), ls(k));
                        r.near(l2(l2.size() - 1 - k), ls(k));
                    }
                }
        });
        property("purity_routes_agree", Tolerances::algebraic, [&](Recorder& r) {
            for (const auto& [d, corpus] : corpora)
                for (const auto& e : corpus) {
                    const double p = purity(e.psi);
                    r.near(p, schmidt(e.psi).purity());
                    r.near(p, purity(partial_trace(e.psi, Subsystem::second)));
                    r.near(p, purity(partial_trace(e.psi, Subsystem::first)));
                }
        });
        property("near_pure_quadratic_error", 0.0, [&](Recorder& r) {
            Rng local(cfg_.seed ^ 0x7e57ULL);
            std::uniform_real_distribution<double> u(1e-6, 1e-3);
            for (int i = 0; i < cfg_.samples; ++i) {
                const double delta = u(local);
                const Eigen::Index d = 2 + i % 5;
                RealVector lam = RealVector::Zero(d);
                lam(0) = 1.0 - delta;
                // Split the remainder unevenly over the other Schmidt slots.
                double rest = delta;
                for (Eigen::Index k = 1; k < d - 1; ++k) {
                    lam(k) = 0.5 * rest;
                    rest -= lam(k);
                }
                lam(d - 1) = rest;
                const BipartiteState psi = state_with_spectrum(d, d + 1, lam, local);
                const SchmidtData s = schmidt(psi);
                r.le(s.purity() - (1.0 - s.delta) * (1.0 - s.delta), 2.0 * s.delta * s.delta);
            }
        });

        const int gauss_n = std::min(cfg_.samples, 20);
        property("gaussian_purity_vs_quadrature", 1e-5, [&](Recorder& r) {
            Rng local(cfg_.seed ^ 0x9a55ULL);
            for (int i = 0; i < gauss_n; ++i) {
                const GaussianShape a = random_gaussian_shape(1, 1, local);
                r.near(purity_gaussian(a), oracle::gaussian_purity_quadrature(as_2x2(a)));
            }
        });
        property("gaussian_block_diagonal_purity_one", Tolerances::algebraic, [&](Recorder& r) {
            Rng local(cfg_.seed ^ 0xb10cULL);
            for (const DimPair d : {DimPair{1, 1}, DimPair{1, 2}, DimPair{2, 2}, DimPair{2, 3}})
                for (int i = 0; i < gauss_n; ++i) r.near(purity_gaussian(random_block_diagonal_shape(d.d1, d.d2, local)), 1.0);
        });
        property("gaussian_self_overlap_one", Tolerances::algebraic, [&](Recorder& r) {
            Rng local(cfg_.seed ^ 0x5e1fULL);
            for (const DimPair d : {DimPair{1, 1}, DimPair{1, 2}, DimPair{2, 2}, DimPair{2, 3}})
                for (int i = 0; i < gauss_n; ++i) {
                    const GaussianShape b = random_block_diagonal_shape(d.d1, d.d2, local);
                    r.near(cross_correlation_gaussian(b, b), 1.0);
                }
        });
        property("gaussian_cross_correlation_vs_quadrature", 1e-5, [&](Recorder& r) {
            Rng local(cfg_.seed ^ 0xcc00ULL);
            for (int i = 0; i < gauss_n; ++i) {
                const GaussianShape a = random_gaussian_shape(1, 1, local);
                const GaussianShape b = random_block_diagonal_shape(1, 1, local);
                r.near(cross_correlation_gaussian(a, b), oracle::gaussian_overlap4_quadrature(as_2x2(a), as_2x2(b)));
            }
        });
        property("gaussian_cross_correlation_below_purity", 1e-9, [&](Recorder& r) {
            Rng local(cfg_.seed ^ 0xbd00ULL);
            const int n = std::min(cfg_.samples, 500);
            for (const DimPair d : {DimPair{1, 1}, DimPair{1, 2}, DimPair{2, 2}})
                for (int i = 0; i < n; ++i) {
                    const GaussianShape a = random_gaussian_shape(d.d1, d.d2, local);
                    const double p = purity_gaussian(a);
                    r.le(cross_correlation_gaussian(a, random_block_diagonal_shape(d.d1, d.d2, local)), p);
                    r.le(cross_correlation_gaussian(a, optimal_reference(a)), p);
                }
        });
        property("gaussian_optimal_reference_fourth_order_gap", 0.0, [&](Recorder& r) {
            const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
            std::vector<double> gap;
            for (double e : eps) {
                const GaussianShape a = epsilon_family(e);
                gap.push_back(purity_gaussian(a) - cross_correlation_gaussian(a, optimal_reference(a)));
            }
            const double slope = loglog_slope(eps, gap);
            r.le(std::abs(slope - 4.0), 0.2);
            const GaussianShape a = epsilon_family(0.025);
            const double ratio = (1.0 - cross_correlation_gaussian(a, optimal_reference(a))) / (1.0 - purity_gaussian(a));
            r.le(std::abs(ratio - 1.0), 0.01);
        });
        property("gaussian_transport_preserves_normalizability", 1e-9, [&](Recorder& r) {
            Rng local(cfg_.seed ^ 0x7a7aULL);
            const int n = std::min(cfg_.samples, 200);
            for (const DimPair d : {DimPair{1, 1}, DimPair{1, 2}, DimPair{2, 2}})
                for (int i = 0; i < n; ++i) {
                    const GaussianShape a = random_gaussian_shape(d.d1, d.d2, local);
                    const RealMatrix k = random_symmetric(2 * (d.d1 + d.d2), local);
                    const GaussianShape next = propagate_shape(a, SymplecticMap::from_quadratic_hamiltonian(k, 0.5));
                    r.le(-next.imag_eigenvalues()(0), 0.0);
                    r.le(purity_gaussian(next), 1.0);
                }
        });
        property("gaussian_grid_state_matches_closed_form", 1e-5, [&](Recorder& r) {
            Rng local(cfg_.seed ^ 0x6a1dULL);
            const int n = std::min(cfg_.samples, 3);
            for (int i = 0; i < n; ++i) {
                const GaussianShape a = random_gaussian_shape(1, 1, local);
                r.near(purity(discretize_packet(GaussianPacket::centered(a), 256)), purity_gaussian(a));
            }
        });

        property("jc_hamiltonian_symmetries", Tolerances::algebraic, [&](Recorder& r) {
            Rng local(cfg_.seed ^ 0x1cULL);
            std::uniform_real_distribution<double> u(-2.0, 2.0);
            const int n = std::min(cfg_.samples, 10);
            for (int i = 0; i < n; ++i) {
                const JcModel m(JcParams{u(local), u(local), u(local), 1 + i % 6, 6 + i % 5});
                const ComplexMatrix& h = m.hamiltonian();
                const ComplexMatrix nop = m.excitation_diagonal().cast<cplx>().asDiagonal();
                const ComplexMatrix s = mirror_operator(m);
                r.le(hermiticity_defect(h), Tolerances::hermiticity);
                r.le(max_abs(ComplexMatrix(h * nop - nop * h)), 0.0);
                r.le(max_abs(ComplexMatrix(s * h * s.adjoint() - h)), 0.0);
            }
        });
        property("jc_time_series_invariants", 1e-9, [&](Recorder& r) {
            const JcModel m(JcParams{1.0, 1.0, 0.3, 4, 16});
            const BipartiteState psi0 = coherent_product_state(m, cplx(std::sqrt(2.0), 0.0), 1.5707963267948966, 0.0);
            const TimeSeries ts = run_time_series(m, psi0, 12.0, std::max(10, std::min(cfg_.samples, 200)));
            for (const auto& c : ts.checks) r.le(c.passed ? c.max_violation : std::max(c.max_violation, 1.0), 0.0);
        });
        return results_;
    }

    const std::vector<PropertyResult>& results() const noexcept { return results_; }

private:
    void property(const std::string& name, double tol, const std::function<void(Recorder&)>& body) {
        const double bias = (name == cfg_.corrupt_property) ? 0.5 : 0.0;
        Recorder rec(name, tol, bias);
        const auto t0 = std::chrono::steady_clock::now();
        std::string error;
        try {
            body(rec);
        } catch (const std::exception& e) {
            rec.le(std::numeric_limits<double>::infinity(), 0.0);
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        PropertyResult res = rec.result(secs);
        res.error = std::move(error);
        results_.push_back(std::move(res));
    }

    Config cfg_;
    std::vector<PropertyResult> results_;
};

inline bool all_passed(const std::vector<PropertyResult>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const PropertyResult& r) { return r.passed; });
}

}  // namespace purity_bounds::verify
