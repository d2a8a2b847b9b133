#include "wpd/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace wpd {

double Trajectory::energy_drift() const {
    if (energies.empty()) return 0.0;
    const double e0 = energies.front();
    double worst = 0.0;
    for (double e : energies) worst = std::max(worst, std::abs(e - e0));
    return worst / std::max(1.0, std::abs(e0));
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

using Vec = std::vector<double>;

void axpy(Vec& out, const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        double acc = 0.0;
        for (const auto& [c, k] : terms) acc += c * (*k)[i];
        out[i] = y[i] + h * acc;
    }
}

} // namespace

Trajectory integrate(const QuarticModel& model, const TrialFamily& family,
                     const CanonicalPoint& initial, double t_end, double dt_out,
                     const IntegratorOptions& options) {
    if (t_end <= 0.0 || dt_out <= 0.0)
        throw ConfigError("integrate: t_end and dt_out must be positive");

    const int dof = family.dof();
    const CanonicalPoint start = initial.to_cartesian();
    if (start.dof() != dof)
        throw DimensionMismatch("integrate: initial point has wrong dof for " +
                                std::string(family.name()));

    // Full chart vector; when freezing, only the leading block is advanced and
    // the non-Gaussian pairs keep their initial values.
    Vec full = start.qp;
    const int n = options.freeze_extra ? std::min(4, 2 * dof) : 2 * dof;

    Vec grad(2 * dof, 0.0);
    auto rhs = [&](const Vec& y, Vec& dy) {
        std::copy(y.begin(), y.end(), full.begin());
        model.gradient_qp(family, full, grad, n);
        for (int i = 0; i < n; i += 2) {
            dy[i] = grad[i + 1];
            dy[i + 1] = -grad[i];
        }
    };

    auto sample_energy = [&](const Vec& y) {
        std::copy(y.begin(), y.end(), full.begin());
        return model.evaluate_qp(family, full);
    };
    auto sample_point = [&](const Vec& y) {
        std::copy(y.begin(), y.end(), full.begin());
        return CanonicalPoint::cartesian(full);
    };

    const long n_out = std::lround(t_end / dt_out);

    Trajectory traj;
    traj.family = family;
    traj.times.reserve(n_out + 1);
    traj.points.reserve(n_out + 1);
    traj.energies.reserve(n_out + 1);

    Vec y(full.begin(), full.begin() + n);
    traj.times.push_back(0.0);
    traj.points.push_back(sample_point(y));
    traj.energies.push_back(sample_energy(y));

    Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    rhs(y, k1);

    double t = 0.0;
    double h = std::min(dt_out, 1e-2);

    for (long out = 1; out <= n_out; ++out) {
        const double t_target = double(out) * dt_out;
        int rejections = 0;
        while (t < t_target) {
            const bool hits_output = t + h >= t_target - 1e-14;
            const double h_try = hits_output ? t_target - t : h;

            axpy(ytmp, y, h_try, {{A21, &k1}});
            rhs(ytmp, k2);
            axpy(ytmp, y, h_try, {{A31, &k1}, {A32, &k2}});
            rhs(ytmp, k3);
            axpy(ytmp, y, h_try, {{A41, &k1}, {A42, &k2}, {A43, &k3}});
            rhs(ytmp, k4);
            axpy(ytmp, y, h_try, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}});
            rhs(ytmp, k5);
            axpy(ytmp, y, h_try, {{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}});
            rhs(ytmp, k6);
            axpy(ynew, y, h_try, {{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}});
            rhs(ynew, k7); // FSAL

            double err2 = 0.0;
            for (int i = 0; i < n; ++i) {
                const double e = h_try * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] +
                                          E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                const double scale = options.abs_tol +
                                     options.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err2 += (e / scale) * (e / scale);
            }
            const double err = std::sqrt(err2 / n);

            if (err <= 1.0) {
                t = hits_output ? t_target : t + h_try;
                y.swap(ynew);
                k1.swap(k7);
                const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
                h = h_try * std::clamp(factor, 0.2, 5.0);
                rejections = 0;
            } else {
                h = h_try * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
                if (++rejections > 100)
                    throw StepFailure("integrate: step controller stalled at t = " +
                                      std::to_string(t));
            }
            if (h < 1e-14 * std::max(1.0, t_target))
                throw StepFailure("integrate: step size underflow at t = " + std::to_string(t));
        }
        traj.times.push_back(t_target);
        traj.points.push_back(sample_point(y));
        traj.energies.push_back(sample_energy(y));
    }
    return traj;
}

} // namespace wpd
