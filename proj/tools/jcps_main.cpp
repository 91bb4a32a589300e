// jcps: post-selected cavity-field states from resonant Jaynes-Cummings transits.
//
//   jcps sweep      --preset fig2|fig3     metrics table  -> <out>/sweep.csv
//   jcps prob       --preset fig1          P_N(r)         -> <out>/prob.csv
//   jcps wigner     --preset fig4 | --r R  grids          -> <out>/wigner_r*_N*.{csv,json}
//   jcps state      --r R --atoms N        rho_ps as JSON -> stdout
//   jcps acceptance                        report         -> stdout (+ <out>/acceptance.json)
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jcps/acceptance.hpp"
#include "jcps/errors.hpp"
#include "jcps/sweep.hpp"

namespace {

struct Flags {
    std::string config_path;
    std::string alpha;
    std::string atoms;
    std::optional<double> r_min, r_max, r_step, phi, r;
    std::optional<int> cutoff, jobs;
    std::string out;
    std::string preset;
};

void add_common(CLI::App& cmd, Flags& f) {
    cmd.add_option("--config", f.config_path, "flat key = value config file");
    cmd.add_option("--alpha", f.alpha, "coherent amplitude RE[,IM]");
    cmd.add_option("--atoms", f.atoms, "comma-separated atom counts");
    cmd.add_option("--r-min", f.r_min, "first coupling value");
    cmd.add_option("--r-max", f.r_max, "last coupling value");
    cmd.add_option("--r-step", f.r_step, "coupling step");
    cmd.add_option("--phi", f.phi, "quadrature phase [rad]");
    cmd.add_option("--cutoff", f.cutoff, "Fock cutoff override");
    cmd.add_option("--out", f.out, "output directory");
    cmd.add_option("--preset", f.preset, "fig1 | fig2 | fig3 | fig4")
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
    cmd.add_option("--jobs", f.jobs, "worker threads (0 = all cores)");
}

jcps::SweepConfig build_config(const Flags& f) {
    jcps::SweepConfig config = f.config_path.empty() ? jcps::SweepConfig{} : jcps::load_config(f.config_path);
    if (!f.preset.empty()) {
        // every preset pins the reference setting; fig4 additionally selects the Wigner batch
        const jcps::SweepConfig reference;
        config.alpha = reference.alpha;
        config.atoms = reference.atoms;
        config.r_min = reference.r_min;
        config.r_max = reference.r_max;
        config.r_step = reference.r_step;
        config.phi = reference.phi;
    }
    auto set = [&](const char* key, const std::string& value) { jcps::apply_config_value(config, key, value); };
    if (!f.alpha.empty()) set("alpha", f.alpha);
    if (!f.atoms.empty()) set("atoms", f.atoms);
    if (f.r_min) config.r_min = *f.r_min;
    if (f.r_max) config.r_max = *f.r_max;
    if (f.r_step) config.r_step = *f.r_step;
    if (f.phi) config.phi = *f.phi;
    if (f.cutoff) config.cutoff = *f.cutoff;
    if (f.jobs) config.jobs = *f.jobs;
    if (!f.out.empty()) config.out_dir = f.out;
    config.validate();
    return config;
}

int run_wigner(const jcps::SweepConfig& config, const Flags& f) {
    std::vector<jcps::WignerJobSpec> jobs;
    if (f.preset == "fig4") {
        jobs = jcps::fig4_jobs();
    } else if (f.r) {
        for (int n : config.atoms) jobs.push_back({*f.r, n});
    } else {
        throw jcps::ConfigError("wigner: give --r or --preset fig4");
    }
    for (const auto& job : jobs) {
        const auto result = jcps::run_wigner_job(config, job.r, job.atoms);
        std::cout << result.csv_path.string() << "  min " << jcps::format_number(result.negativity.min_value)
                  << "  regions " << result.negativity.negative_region_count << "  integral "
                  << jcps::format_number(result.grid.total_integral) << '\n';
        if (result.grid.truncation_warning) {
            std::cerr << "warning: cutoff tail above 1e-10 for r = " << job.r << ", N = " << job.atoms << '\n';
        }
    }
    return 0;
}

int report_acceptance(const jcps::SweepConfig& config) {
    const auto report = jcps::run_acceptance(config);
    for (const auto& c : report.checks) {
        std::cout << "[" << jcps::to_string(c.verdict) << "] criterion " << c.criterion << ": " << c.name
                  << "  measured " << jcps::format_number(c.measured) << "  target " << c.target;
        if (!c.message.empty()) std::cout << "  (" << c.message << ")";
        std::cout << '\n';
    }
    for (int k = 1; k <= 8; ++k) {
        std::cout << "criterion " << k << ": " << jcps::to_string(report.criterion_verdict(k)) << '\n';
    }
    jcps::ensure_output_dir(config.out_dir);
    jcps::write_text_file(std::filesystem::path(config.out_dir) / "acceptance.json", report.to_json());
    return report.any_failed() ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Post-selected cavity-field states from resonant Jaynes-Cummings transits"};
    app.require_subcommand(1);

    Flags flags;
    auto* sweep = app.add_subcommand("sweep", "P_N, squeezing, Mandel Q and <n> over r");
    auto* prob = app.add_subcommand("prob", "success probability P_N(r)");
    auto* wigner = app.add_subcommand("wigner", "Wigner grids and negativity summaries");
    auto* state = app.add_subcommand("state", "post-selected density matrix as JSON");
    auto* acceptance = app.add_subcommand("acceptance", "run the acceptance checks");
    for (auto* cmd : {sweep, prob, wigner, state, acceptance}) add_common(*cmd, flags);
    wigner->add_option("--r", flags.r, "single coupling value");
    state->add_option("--r", flags.r, "coupling value")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const jcps::SweepConfig config = build_config(flags);
        if (sweep->parsed()) {
            const auto table = jcps::run_sweep(config);
            for (const auto& note : table.notes) std::cerr << "note: " << note << '\n';
            std::cout << (std::filesystem::path(config.out_dir) / "sweep.csv").string() << '\n';
        } else if (prob->parsed()) {
            jcps::run_prob(config);
            std::cout << (std::filesystem::path(config.out_dir) / "prob.csv").string() << '\n';
        } else if (wigner->parsed()) {
            return run_wigner(config, flags);
        } else if (state->parsed()) {
            if (config.atoms.size() != 1) throw jcps::ConfigError("state: --atoms takes a single value");
            std::cout << jcps::state_json(config, *flags.r, config.atoms.front());
        } else if (acceptance->parsed()) {
            return report_acceptance(config);
        }
    } catch (const jcps::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const jcps::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
