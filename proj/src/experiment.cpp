#include "wpd/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <set>

namespace wpd {

void ExperimentConfig::validate() const {
    if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (!(dt_out > 0.0)) throw ConfigError("dt_out must be positive");
    if (dt_out > t_end) throw ConfigError("dt_out must not exceed t_end");
    if (n_max_var < 8) throw ConfigError("n_max_var too small");
    if (n_max_exact < n_max_var) throw ConfigError("n_max_exact must be >= n_max_var");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ConfigError("tolerances must be positive");
    if (families.empty()) throw ConfigError("families must be non-empty");
    std::set<std::string_view> seen;
    for (const TrialFamily& f : families)
        if (!seen.insert(f.name()).second)
            throw ConfigError("duplicate family '" + std::string(f.name()) + "'");
}

namespace {

Complex parse_complex(const nlohmann::json& j, const char* key) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw ConfigError(std::string(key) + ": expected a number or a [re, im] pair");
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {
        "a",         "lambda",    "alpha0",  "beta0",       "families", "t_end",
        "dt_out",    "n_max_var", "n_max_exact", "abs_tol", "rel_tol",  "out_dir"};
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

    ExperimentConfig cfg;
    try {
        if (j.contains("a")) cfg.a = j.at("a").get<double>();
        if (j.contains("lambda")) cfg.lambda = j.at("lambda").get<double>();
        if (j.contains("alpha0")) cfg.alpha0 = parse_complex(j.at("alpha0"), "alpha0");
        if (j.contains("beta0")) cfg.beta0 = parse_complex(j.at("beta0"), "beta0");
        if (j.contains("t_end")) cfg.t_end = j.at("t_end").get<double>();
        if (j.contains("dt_out")) cfg.dt_out = j.at("dt_out").get<double>();
        if (j.contains("n_max_var")) cfg.n_max_var = j.at("n_max_var").get<int>();
        if (j.contains("n_max_exact")) cfg.n_max_exact = j.at("n_max_exact").get<int>();
        if (j.contains("abs_tol")) cfg.abs_tol = j.at("abs_tol").get<double>();
        if (j.contains("rel_tol")) cfg.rel_tol = j.at("rel_tol").get<double>();
        if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
        if (j.contains("families")) {
            cfg.families.clear();
            for (const auto& name : j.at("families"))
                cfg.families.push_back(TrialFamily::parse(name.get<std::string>()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config value: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(j);
}

CanonicalPoint initial_point(const TrialFamily& family, Complex alpha0, Complex beta0) {
    // J1 = |alpha0|^2; the extra actions start at zero, so K = 0 and
    // J2 = sinh^2(r2)/2, i.e. sqrt(2 J2) = sinh(r2).
    std::vector<double> qp(2 * family.dof(), 0.0);
    qp[0] = std::sqrt(2.0) * alpha0.real();
    qp[1] = std::sqrt(2.0) * alpha0.imag();
    const double r2 = std::abs(beta0);
    if (r2 > 0.0) {
        const Complex z2 = std::sinh(r2) / r2 * beta0;
        qp[2] = z2.real();
        qp[3] = z2.imag();
    }
    return CanonicalPoint::cartesian(std::move(qp));
}

namespace {

struct FamilyOutput {
    Trajectory trajectory;
    std::vector<double> overlap;
    std::vector<double> x_mean;
};

FamilyOutput run_family(const ExperimentConfig& cfg, const QuarticModel& model,
                        const std::vector<FockVector>& exact_states,
                        const TrialFamily& family) {
    IntegratorOptions opts{cfg.abs_tol, cfg.rel_tol, false};
    FamilyOutput out;
    out.trajectory = integrate(model, family, initial_point(family, cfg.alpha0, cfg.beta0),
                               cfg.t_end, cfg.dt_out, opts);
    const std::size_t n = out.trajectory.times.size();
    out.overlap.resize(n);
    out.x_mean.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const FockVector psi = model.builder().build(family, out.trajectory.points[k]);
        out.overlap[k] = squared_overlap(exact_states[k], psi);
        out.x_mean[k] = mean_x(psi);
        if (out.overlap[k] < 0.0 || out.overlap[k] > 1.0 + 1e-10)
            throw ConvergenceError("overlap left [0, 1] for family " +
                                   std::string(family.name()));
    }
    if (std::abs(out.overlap[0] - 1.0) > 1e-10)
        throw ConvergenceError("W(0) != 1 for family " + std::string(family.name()));
    if (out.trajectory.energy_drift() >= 1e-6)
        throw ConvergenceError("variational energy drift " +
                               std::to_string(out.trajectory.energy_drift()) + " for family " +
                               std::string(family.name()));
    return out;
}

} // namespace

RunResult run(const ExperimentConfig& config) {
    config.validate();

    RunResult result;
    result.config = config;

    const long n_out = std::lround(config.t_end / config.dt_out);
    std::vector<double> times(n_out + 1);
    for (long k = 0; k <= n_out; ++k) times[k] = double(k) * config.dt_out;

    // Exact reference: same Gaussian initial state, larger basis.
    const QuarticModel model_exact(config.a, config.lambda, config.n_max_exact);
    const FockVector psi0 = model_exact.builder().build(
        TrialFamily{FamilyKind::G}, initial_point(TrialFamily{FamilyKind::G},
                                                  config.alpha0, config.beta0));
    const SpectralPropagator propagator(model_exact);
    const std::vector<FockVector> exact_states = propagator.propagate_series(psi0, times);

    result.series.times = times;
    result.series.families = config.families;
    result.series.x_exact.resize(times.size());
    const double e0 = inner(psi0, apply(model_exact.hamiltonian(), psi0)).real();
    for (std::size_t k = 0; k < times.size(); ++k) {
        const FockVector& psi = exact_states[k];
        result.series.x_exact[k] = mean_x(psi);
        result.exact_norm_drift =
            std::max(result.exact_norm_drift, std::abs(psi.norm() - 1.0));
        const double e = inner(psi, apply(model_exact.hamiltonian(), psi)).real();
        result.exact_energy_drift = std::max(result.exact_energy_drift,
                                             std::abs(e - e0) / std::max(1.0, std::abs(e0)));
    }

    const QuarticModel model(config.a, config.lambda, config.n_max_var);
    std::vector<std::future<FamilyOutput>> futures;
    futures.reserve(config.families.size());
    for (const TrialFamily& family : config.families)
        futures.push_back(std::async(std::launch::async, run_family, std::cref(config),
                                     std::cref(model), std::cref(exact_states), family));

    for (std::size_t i = 0; i < futures.size(); ++i) {
        FamilyOutput out = futures[i].get();
        result.series.overlap_average.push_back(
            time_average(out.overlap, result.series.times));
        result.series.overlap.push_back(std::move(out.overlap));
        result.series.x_mean.push_back(std::move(out.x_mean));
        result.trajectories.push_back(std::move(out.trajectory));
    }
    return result;
}

namespace {

void put_number(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    os << buf;
}

} // namespace

void write_csv(std::ostream& os, const RunResult& result) {
    const auto& s = result.series;
    os << "t";
    for (const TrialFamily& f : s.families) os << ",W_" << f.name();
    os << ",x_exact";
    for (const TrialFamily& f : s.families) os << ",x_" << f.name();
    os << "\n";
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        put_number(os, s.times[k]);
        for (std::size_t i = 0; i < s.families.size(); ++i) {
            os << ',';
            put_number(os, s.overlap[i][k]);
        }
        os << ',';
        put_number(os, s.x_exact[k]);
        for (std::size_t i = 0; i < s.families.size(); ++i) {
            os << ',';
            put_number(os, s.x_mean[i][k]);
        }
        os << "\n";
    }
}

nlohmann::json summary_json(const RunResult& result) {
    nlohmann::json wbar = nlohmann::json::object();
    for (std::size_t i = 0; i < result.series.families.size(); ++i)
        wbar[std::string(result.series.families[i].name())] = result.series.overlap_average[i];
    return nlohmann::json{{"a", result.config.a}, {"W_bar", wbar}};
}

void write_outputs(const RunResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::ofstream csv(fs::path(out_dir) / "overlaps.csv");
    write_csv(csv, result);
    std::ofstream js(fs::path(out_dir) / "summary.json");
    js << summary_json(result).dump(2) << "\n";
}

SweepAxis parse_axis(const std::string& name) {
    if (name == "truncation") return SweepAxis::Truncation;
    if (name == "tolerance") return SweepAxis::Tolerance;
    if (name == "dt_out") return SweepAxis::DtOut;
    throw ConfigError("unknown sweep axis '" + name + "' (truncation|tolerance|dt_out)");
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Truncation: return "truncation";
        case SweepAxis::Tolerance: return "tolerance";
        case SweepAxis::DtOut: return "dt_out";
    }
    return "?";
}

SweepResult sweep(const RunResult& base, SweepAxis axis) {
    ExperimentConfig refined = base.config;
    switch (axis) {
        case SweepAxis::Truncation:
            refined.n_max_var = 2 * base.config.n_max_var + 1;
            refined.n_max_exact = 2 * base.config.n_max_exact + 1;
            break;
        case SweepAxis::Tolerance:
            refined.abs_tol = 0.5 * base.config.abs_tol;
            refined.rel_tol = 0.5 * base.config.rel_tol;
            break;
        case SweepAxis::DtOut:
            refined.dt_out = 0.5 * base.config.dt_out;
            break;
    }

    const RunResult fine = run(refined);

    SweepResult out;
    out.axis = axis;
    out.families = base.config.families;
    out.base_average = base.series.overlap_average;
    out.refined_average = fine.series.overlap_average;
    for (std::size_t i = 0; i < out.base_average.size(); ++i)
        out.max_delta = std::max(out.max_delta,
                                 std::abs(out.base_average[i] - out.refined_average[i]));
    return out;
}

SweepResult sweep(const ExperimentConfig& config, SweepAxis axis) {
    return sweep(run(config), axis);
}

} // namespace wpd
