// Subcommand runners behind the purity_bounds CLI.
//
// Exit codes: 0 success, 1 usage, 2 invariant violation, 3 domain-contract violation.

#pragma once

#include "purity/bipartite.hpp"
#include "purity/gaussian.hpp"
#include "purity/jaynes_cummings.hpp"
#include "purity/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace purity_bounds::app {

using json = nlohmann::json;

enum ExitCode : int { ok = 0, usage = 1, invariant_violation = 2, domain_violation = 3 };

// Malformed configuration or flag values.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 17 significant digits: enough to round-trip any double.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    try {
        return json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
}

// A subcommand may read its keys either at the top level or from a section named after it.
inline const json& section(const json& root, const char* name) {
    if (root.is_object() && root.contains(name) && root.at(name).is_object()) return root.at(name);
    return root;
}

inline double finite(double v, const char* key) {
    if (!std::isfinite(v)) throw UsageError(std::string("'") + key + "' must be finite");
    return v;
}

template <class T>
void read_key(const json& j, const char* key, T& out) {
    if (!j.is_object() || !j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
}

// [re, im] pair, or a bare real number.
inline cplx parse_complex(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {finite(j[0].get<double>(), "re"), finite(j[1].get<double>(), "im")};
    }
    throw UsageError("complex values must be [re, im] pairs, got " + j.dump());
}

inline ComplexMatrix parse_complex_matrix(const json& j, const char* key) {
    if (!j.is_array() || j.empty()) throw UsageError(std::string("'") + key + "' must be a nested array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    ComplexMatrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
            throw UsageError(std::string("'") + key + "' must be square");
        }
        for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

// ------------------------------------ jc ------------------------------------

struct JcConfig {
    double omega{1.0};
    double epsilon{1.0};
    double g{0.3};
    double spin_j{5.0};
    int n_max{40};
    cplx alpha{std::sqrt(5.0), 0.0};
    double theta{std::numbers::pi / 2};
    double phi{0.0};
    double t_max{12.0};
    int steps{1200};
    std::uint64_t seed{0};  // the run is deterministic; accepted for config uniformity

    void merge(const json& root) {
        const json& j = section(root, "jc");
        read_key(j, "omega", omega);
        read_key(j, "epsilon", epsilon);
        read_key(j, "g", g);
        read_key(j, "spin_j", spin_j);
        read_key(j, "n_max", n_max);
        read_key(j, "theta", theta);
        read_key(j, "phi", phi);
        read_key(j, "t_max", t_max);
        read_key(j, "steps", steps);
        read_key(j, "seed", seed);
        if (j.is_object() && j.contains("alpha")) alpha = parse_complex(j.at("alpha"));
    }

    void validate() const {
        for (const auto& [v, k] : {std::pair{omega, "omega"}, {epsilon, "epsilon"}, {g, "g"}, {spin_j, "spin_j"},
                                   {theta, "theta"}, {phi, "phi"}, {t_max, "t_max"}, {alpha.real(), "alpha"},
                                   {alpha.imag(), "alpha"}})
            finite(v, k);
        if (steps < 1) throw UsageError("'steps' must be >= 1");
    }
};

inline const std::vector<std::string>& jc_columns() {
    static const std::vector<std::string> cols{"t",
                                               "purity",
                                               "autocorr4",
                                               "mirror4",
                                               "schmidt_lower",
                                               "sandwich_upper",
                                               "reduced_fidelity_sq",
                                               "best_reference"};
    return cols;
}

inline void write_jc_csv(const TimeSeries& ts, const std::vector<ReferenceSample>& refs, std::ostream& out) {
    const auto& cols = jc_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
    out << '\n';
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out << format_double(ts.times[i]) << ',' << format_double(ts.purity[i]) << ','
            << format_double(ts.autocorr4[i]) << ',' << format_double(ts.mirror4[i]) << ','
            << format_double(ts.schmidt_lower[i]) << ',' << format_double(ts.sandwich_upper[i]) << ','
            << format_double(ts.reduced_fidelity_sq[i]) << ',' << to_string(refs[i].best) << '\n';
    }
}

inline int run_jc(const JcConfig& cfg, std::ostream& csv, std::ostream& err) {
    try {
        cfg.validate();
    } catch (const UsageError& e) {
        err << "jc: " << e.what() << '\n';
        return usage;
    }
    try {
        const JcModel model = build_model(cfg.omega, cfg.epsilon, cfg.g, cfg.spin_j, cfg.n_max);
        const BipartiteState psi0 = coherent_product_state(model, cfg.alpha, cfg.theta, cfg.phi);
        const TimeSeries ts = run_time_series(model, psi0, cfg.t_max, cfg.steps);
        const auto refs = best_reference_report(ts, model, psi0);
        write_jc_csv(ts, refs, csv);

        bool ok_refs = true;
        for (std::size_t i = 0; i < refs.size(); ++i) {
            const ReferenceSample& r = refs[i];
            if (r.optimal4 + 1e-9 < std::max(r.initial4, r.mirror4) ||
                std::abs(r.optimal4 - ts.schmidt_lower[i]) > 1e-9) {
                ok_refs = false;
            }
        }
        bool failed = !ok_refs;
        for (const auto& c : ts.checks) {
            if (!c.passed) {
                err << "jc: invariant '" << c.name << "' violated by " << format_double(c.max_violation) << '\n';
                failed = true;
            }
        }
        if (!ok_refs) err << "jc: invariant 'optimal product state dominates' violated\n";
        return failed ? invariant_violation : ok;
    } catch (const ContractViolation& e) {
        err << "jc: " << e.what() << '\n';
        return domain_violation;
    }
}

// --------------------------------- gaussian ---------------------------------

struct GaussianConfig {
    int d1{1};
    int d2{1};
    std::optional<ComplexMatrix> a;
    std::optional<ComplexMatrix> b;
    double hbar{1.0};

    void merge(const json& root) {
        const json& j = section(root, "gaussian");
        read_key(j, "d1", d1);
        read_key(j, "d2", d2);
        read_key(j, "hbar", hbar);
        if (j.is_object() && j.contains("A")) a = parse_complex_matrix(j.at("A"), "A");
        if (j.is_object() && j.contains("B")) b = parse_complex_matrix(j.at("B"), "B");
    }
};

inline int run_gaussian(const GaussianConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.a) {
        err << "gaussian: config must provide the shape matrix 'A'\n";
        return usage;
    }
    if (!(cfg.hbar > 0.0) || !std::isfinite(cfg.hbar)) {
        err << "gaussian: 'hbar' must be a positive finite number\n";
        return usage;
    }
    if (cfg.d1 < 1 || cfg.d2 < 1 || cfg.a->rows() != cfg.d1 + cfg.d2) {
        err << "gaussian: A must be (d1 + d2) x (d1 + d2) with d1, d2 >= 1\n";
        return usage;
    }
    try {
        const GaussianShape a(cfg.d1, cfg.d2, *cfg.a);
        const double p = purity_gaussian(a);
        const GaussianShape opt = optimal_reference(a);
        const double c_opt = cross_correlation_gaussian(a, opt);
        out << "d1=" << cfg.d1 << '\n' << "d2=" << cfg.d2 << '\n';
        out << "hbar=" << format_double(cfg.hbar) << '\n';
        out << "purity=" << format_double(p) << '\n';
        if (cfg.b) {
            if (cfg.b->rows() != a.dim()) {
                err << "gaussian: B must have the same dimension as A\n";
                return domain_violation;
            }
            const GaussianShape b(cfg.d1, cfg.d2, *cfg.b);
            const double c_b = cross_correlation_gaussian(a, b);
            out << "cross_correlation_b=" << format_double(c_b) << '\n';
            out << "slack_b=" << format_double(p - c_b) << '\n';
            if (c_b > p + 1e-9) {
                err << "gaussian: invariant 'cross_correlation_b <= purity' violated\n";
                return invariant_violation;
            }
        }
        out << "cross_correlation_optimal=" << format_double(c_opt) << '\n';
        out << "slack_optimal=" << format_double(p - c_opt) << '\n';
        if (c_opt > p + 1e-9) {
            err << "gaussian: invariant 'cross_correlation_optimal <= purity' violated\n";
            return invariant_violation;
        }
        return ok;
    } catch (const ContractViolation& e) {
        err << "gaussian: " << e.what() << '\n';
        return domain_violation;
    }
}

// ---------------------------------- verify ----------------------------------

struct VerifyConfig {
    std::uint64_t seed{verify::Config{}.seed};
    int samples{1000};
    std::vector<verify::DimPair> dims{verify::Config{}.dims};
    std::string corrupt_property;

    void merge(const json& root) {
        const json& j = section(root, "verify");
        read_key(j, "seed", seed);
        read_key(j, "samples", samples);
        if (j.is_object() && j.contains("dims")) dims = parse_dims(j.at("dims"));
    }

    // [[d1, d2], ...]
    static std::vector<verify::DimPair> parse_dims(const json& j) {
        std::vector<verify::DimPair> out;
        if (!j.is_array()) throw UsageError("'dims' must be an array of [d1, d2] pairs");
        for (const auto& p : j) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
                throw UsageError("'dims' entries must be [d1, d2] integer pairs");
            out.push_back({p[0].get<Eigen::Index>(), p[1].get<Eigen::Index>()});
        }
        return out;
    }

    // "2x2,2x5,3x4"
    static std::vector<verify::DimPair> parse_dims(const std::string& text) {
        std::vector<verify::DimPair> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto x = item.find('x');
            if (x == std::string::npos) throw UsageError("dimension pairs look like 3x4, got '" + item + "'");
            try {
                out.push_back({std::stol(item.substr(0, x)), std::stol(item.substr(x + 1))});
            } catch (const std::exception&) {
                throw UsageError("bad dimension pair '" + item + "'");
            }
        }
        return out;
    }
};

inline int run_verify(const VerifyConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.samples < 1) {
        err << "verify: 'samples' must be >= 1\n";
        return usage;
    }
    for (const auto& d : cfg.dims) {
        if (d.d1 < 1 || d.d2 < 1) {
            err << "verify: dimensions must be >= 1\n";
            return usage;
        }
    }
    verify::Config vc;
    vc.seed = cfg.seed;
    vc.samples = cfg.samples;
    vc.dims = cfg.dims;
    vc.corrupt_property = cfg.corrupt_property;
    const auto results = verify::Suite(vc).run();
    for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << " samples=" << r.samples
            << " max_violation=" << format_double(r.max_violation) << " tolerance=" << format_double(r.tolerance);
        if (!r.error.empty()) out << " error=\"" << r.error << '"';
        out << '\n';
        // Timings vary run to run, so they stay off stdout.
        err << "verify: " << r.name << " took " << r.seconds << " s\n";
    }
    const bool pass = verify::all_passed(results);
    out << (pass ? "ALL PASS" : "FAILURES PRESENT") << '\n';
    return pass ? ok : invariant_violation;
}

}  // namespace purity_bounds::app
