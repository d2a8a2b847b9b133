#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "wpd/dynamics.hpp"
#include "wpd/exact.hpp"
#include "wpd/observables.hpp"

namespace wpd {

/// Benchmark configuration. The defaults reproduce the paper's setup: quartic
/// double well (a = -1, lambda = 1), slightly squeezed coherent initial state
/// alpha0 = 1/sqrt(2), beta0 = 0.1, all four trial families over 20 time units.
struct ExperimentConfig {
    double a = -1.0;
    double lambda = 1.0;
    Complex alpha0 = Complex(0.7071067811865476, 0.0);
    Complex beta0 = Complex(0.1, 0.0);
    std::vector<TrialFamily> families{kAllFamilies, kAllFamilies + 4};
    double t_end = 20.0;
    double dt_out = 0.01;
    int n_max_var = 127;
    int n_max_exact = 255;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::string out_dir;

    void validate() const; // throws ConfigError

    /// Strict parse: unknown keys are a hard error. Complex values are a
    /// number or a [re, im] pair.
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::string& path);
};

/// Initial canonical point mapping (alpha0, beta0) onto a family: the Gaussian
/// block carries the displacement and squeeze, every extra pair starts at
/// Q = P = 0.
CanonicalPoint initial_point(const TrialFamily& family, Complex alpha0, Complex beta0);

struct RunResult {
    ExperimentConfig config;
    ObservableSeries series;
    std::vector<Trajectory> trajectories; // one per family, config order
    double exact_norm_drift = 0.0;
    double exact_energy_drift = 0.0;
};

/// Integrate every family, propagate the exact reference, and assemble the
/// observable series. Families run concurrently; the result is deterministic.
RunResult run(const ExperimentConfig& config);

/// CSV with header t,W_G,...,x_exact,x_G,... (only configured families),
/// 15 significant digits.
void write_csv(std::ostream& os, const RunResult& result);

/// {"a": ..., "W_bar": {"G": ..., ...}}
nlohmann::json summary_json(const RunResult& result);

/// Writes overlaps.csv and summary.json under out_dir (created if missing).
void write_outputs(const RunResult& result, const std::string& out_dir);

enum class SweepAxis { Truncation, Tolerance, DtOut };

SweepAxis parse_axis(const std::string& name);
std::string axis_name(SweepAxis axis);

struct SweepResult {
    SweepAxis axis;
    std::vector<TrialFamily> families;
    std::vector<double> base_average;    // W-bar at the configured settings
    std::vector<double> refined_average; // W-bar with the axis refined
    double max_delta = 0.0;
};

/// Rerun with the axis refined (truncation doubled, tolerances halved, or
/// dt_out halved) and report the worst W-bar shift. The overload taking a
/// precomputed base result skips re-running the configured settings.
SweepResult sweep(const ExperimentConfig& config, SweepAxis axis);
SweepResult sweep(const RunResult& base, SweepAxis axis);

} // namespace wpd
