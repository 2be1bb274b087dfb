// Command-line front end: jc, gaussian, verify

#include "purity/app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace purity_bounds::app;

template <class T>
void override_with(const std::optional<T>& flag, T& field) {
    if (flag) field = *flag;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Purity lower bounds from correlation functions: Jaynes-Cummings runs, "
                 "Gaussian closed forms, randomized verification"};
    cli.require_subcommand(1);

    // jc
    auto* jc = cli.add_subcommand("jc", "Jaynes-Cummings time series as CSV");
    std::string jc_config, jc_output;
    std::optional<double> omega, epsilon, g, spin_j, theta, phi, t_max;
    std::optional<int> n_max, steps;
    std::optional<std::uint64_t> jc_seed;
    std::vector<double> alpha;
    jc->add_option("--config", jc_config, "JSON config file")->check(CLI::ExistingFile);
    jc->add_option("--output", jc_output, "CSV output path (default: stdout)");
    jc->add_option("--omega", omega, "field frequency");
    jc->add_option("--epsilon", epsilon, "spin splitting");
    jc->add_option("--g", g, "coupling G");
    jc->add_option("--spin-j", spin_j, "spin magnitude J (half-integer allowed)");
    jc->add_option("--n-max", n_max, "Fock truncation");
    jc->add_option("--alpha", alpha, "field coherent amplitude: re im")->expected(2);
    jc->add_option("--theta", theta, "spin coherent polar angle");
    jc->add_option("--phi", phi, "spin coherent azimuth");
    jc->add_option("--t-max", t_max, "final time");
    jc->add_option("--steps", steps, "number of time steps (samples = steps + 1)");
    jc->add_option("--seed", jc_seed, "accepted for uniformity; the run is deterministic");

    // gaussian
    auto* gauss = cli.add_subcommand("gaussian", "Gaussian packet purity and cross-correlations");
    std::string g_config;
    std::optional<int> d1, d2;
    std::optional<double> hbar;
    gauss->add_option("--config", g_config, "JSON config with A (and optional B) as [re, im] pairs")
        ->required()
        ->check(CLI::ExistingFile);
    gauss->add_option("--d1", d1, "dimension of the first block");
    gauss->add_option("--d2", d2, "dimension of the second block");
    gauss->add_option("--hbar", hbar, "Planck constant (closed forms do not depend on it)");

    // verify
    auto* ver = cli.add_subcommand("verify", "Randomized property suite over all modules");
    std::string v_config, v_dims, v_corrupt;
    std::optional<std::uint64_t> v_seed;
    std::optional<int> v_samples;
    ver->add_option("--config", v_config, "JSON config file")->check(CLI::ExistingFile);
    ver->add_option("--seed", v_seed, "RNG seed");
    ver->add_option("--samples", v_samples, "fuzz samples per dimension pair");
    ver->add_option("--dims", v_dims, "dimension pairs, e.g. 2x2,2x5,3x4,6x6");
    ver->add_option("--corrupt-property", v_corrupt, "test hook: tighten one property's bound so it fails")
        ->group("");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (jc->parsed()) {
            JcConfig cfg;
            if (!jc_config.empty()) cfg.merge(load_config_file(jc_config));
            override_with(omega, cfg.omega);
            override_with(epsilon, cfg.epsilon);
            override_with(g, cfg.g);
            override_with(spin_j, cfg.spin_j);
            override_with(n_max, cfg.n_max);
            override_with(theta, cfg.theta);
            override_with(phi, cfg.phi);
            override_with(t_max, cfg.t_max);
            override_with(steps, cfg.steps);
            override_with(jc_seed, cfg.seed);
            if (alpha.size() == 2) cfg.alpha = {alpha[0], alpha[1]};
            if (jc_output.empty()) return run_jc(cfg, std::cout, std::cerr);
            std::ofstream out(jc_output);
            if (!out) {
                std::cerr << "jc: cannot write '" << jc_output << "'\n";
                return usage;
            }
            return run_jc(cfg, out, std::cerr);
        }
        if (gauss->parsed()) {
            GaussianConfig cfg;
            cfg.merge(load_config_file(g_config));
            override_with(d1, cfg.d1);
            override_with(d2, cfg.d2);
            override_with(hbar, cfg.hbar);
            return run_gaussian(cfg, std::cout, std::cerr);
        }
        VerifyConfig cfg;
        if (!v_config.empty()) cfg.merge(load_config_file(v_config));
        override_with(v_seed, cfg.seed);
        override_with(v_samples, cfg.samples);
        if (!v_dims.empty()) cfg.dims = VerifyConfig::parse_dims(v_dims);
        cfg.corrupt_property = v_corrupt;
        return run_verify(cfg, std::cout, std::cerr);
    } catch (const UsageError& e) {
        std::cerr << e.what() << '\n';
        return usage;
    }
}
