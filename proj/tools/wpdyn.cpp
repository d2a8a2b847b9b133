// Command-line runner for the quartic-oscillator wave-packet benchmark.
//
//   wpdyn run --config cfg.json --out results/
//   wpdyn sweep --config cfg.json --axis truncation
//   wpdyn selftest
//
// Exit codes: 0 success, 2 configuration error, 3 runtime/convergence error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "wpd/experiment.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    wpd::ExperimentConfig cfg =
        config_path.empty() ? wpd::ExperimentConfig{} : wpd::ExperimentConfig::load(config_path);
    const std::string dir = !out_dir.empty() ? out_dir
                            : !cfg.out_dir.empty() ? cfg.out_dir
                                                   : std::string(".");
    const wpd::RunResult result = wpd::run(cfg);
    wpd::write_outputs(result, dir);

    std::printf("a = %g, t in [0, %g], %zu samples\n", cfg.a, cfg.t_end,
                result.series.times.size());
    for (std::size_t i = 0; i < result.series.families.size(); ++i)
        std::printf("  W_bar[%s] = %.6f   (energy drift %.2e)\n",
                    std::string(result.series.families[i].name()).c_str(),
                    result.series.overlap_average[i], result.trajectories[i].energy_drift());
    std::printf("exact reference: norm drift %.2e, energy drift %.2e\n",
                result.exact_norm_drift, result.exact_energy_drift);
    std::printf("wrote %s/overlaps.csv and %s/summary.json\n", dir.c_str(), dir.c_str());
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis_arg,
              const std::string& out_dir) {
    wpd::ExperimentConfig cfg =
        config_path.empty() ? wpd::ExperimentConfig{} : wpd::ExperimentConfig::load(config_path);
    const wpd::SweepAxis axis = wpd::parse_axis(axis_arg);
    const wpd::SweepResult res = wpd::sweep(cfg, axis);

    std::printf("sweep axis: %s\n", wpd::axis_name(axis).c_str());
    std::printf("%-6s %-18s %-18s %-12s\n", "family", "W_bar", "W_bar(refined)", "|delta|");
    for (std::size_t i = 0; i < res.families.size(); ++i)
        std::printf("%-6s %-18.12f %-18.12f %-12.3e\n",
                    std::string(res.families[i].name()).c_str(), res.base_average[i],
                    res.refined_average[i],
                    std::abs(res.base_average[i] - res.refined_average[i]));
    std::printf("max |delta W_bar| = %.3e\n", res.max_delta);

    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        nlohmann::json j{{"axis", wpd::axis_name(axis)}, {"max_delta", res.max_delta}};
        for (std::size_t i = 0; i < res.families.size(); ++i) {
            const std::string name(res.families[i].name());
            j["W_bar"][name] = res.base_average[i];
            j["W_bar_refined"][name] = res.refined_average[i];
        }
        std::ofstream os(fs::path(out_dir) / ("sweep_" + wpd::axis_name(axis) + ".json"));
        os << j.dump(2) << "\n";
    }
    return 0;
}

bool report(const char* label, bool ok, const std::string& detail) {
    std::printf("[%s] %s — %s\n", ok ? "PASS" : "FAIL", label, detail.c_str());
    return ok;
}

int cmd_selftest() {
    using namespace wpd;
    bool all = true;

    // Canonicity residuals at experiment-scale points, all families.
    {
        std::mt19937 rng(20260810);
        std::uniform_real_distribution<double> angle(-M_PI, M_PI);
        std::uniform_real_distribution<double> big(0.2, 0.6);
        std::uniform_real_distribution<double> small(0.02, 0.12);
        const StateBuilder builder(127);
        double worst = 0.0;
        for (const TrialFamily& family : kAllFamilies) {
            for (int rep = 0; rep < 5; ++rep) {
                std::vector<double> J{big(rng), small(rng)};
                std::vector<double> phi{angle(rng), angle(rng)};
                for (int e = 0; e < family.extra_pairs(); ++e) {
                    J.push_back(small(rng));
                    phi.push_back(angle(rng));
                }
                const auto canon = canonicity_check(
                    builder, family, CanonicalPoint::action_angle(J, phi));
                worst = std::max(worst, canon.max_residual());
            }
        }
        all &= report("canonicity residuals < 1e-6", worst < 1e-6,
                      "worst residual " + std::to_string(worst));
    }

    // Harmonic oracle: lambda = 0 keeps the Gaussian exact and <x> = cos t.
    {
        ExperimentConfig cfg;
        cfg.a = 1.0;
        cfg.lambda = 0.0;
        cfg.t_end = 5.0;
        cfg.families = {TrialFamily{FamilyKind::G}};
        const RunResult res = run(cfg);
        double w_dev = 0.0, x_dev = 0.0;
        for (std::size_t k = 0; k < res.series.times.size(); ++k) {
            w_dev = std::max(w_dev, std::abs(res.series.overlap[0][k] - 1.0));
            x_dev = std::max(x_dev,
                             std::abs(res.series.x_mean[0][k] - std::cos(res.series.times[k])));
        }
        all &= report("harmonic overlap W = 1", w_dev < 1e-6,
                      "max |W - 1| = " + std::to_string(w_dev));
        all &= report("harmonic <x> = cos t", x_dev < 1e-6,
                      "max deviation = " + std::to_string(x_dev));
    }
    return all ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamiltonian wave-packet dynamics on the quartic oscillator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, axis;

    CLI::App* run_cmd = app.add_subcommand("run", "integrate the benchmark and emit CSV/JSON");
    run_cmd->add_option("--config", config_path, "JSON config file (defaults reproduce the benchmark)");
    run_cmd->add_option("--out", out_dir, "output directory");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "convergence sweep along one axis");
    sweep_cmd->add_option("--config", config_path, "JSON config file");
    sweep_cmd->add_option("--axis", axis, "truncation | tolerance | dt_out")->required();
    sweep_cmd->add_option("--out", out_dir, "output directory for sweep_<axis>.json");

    CLI::App* self_cmd = app.add_subcommand("selftest", "canonicity + harmonic-oracle suites");

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed()) return cmd_run(config_path, out_dir);
        if (sweep_cmd->parsed()) return cmd_sweep(config_path, axis, out_dir);
        if (self_cmd->parsed()) return cmd_selftest();
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const wpd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
