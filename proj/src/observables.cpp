#include "wpd/observables.hpp"

#include <cmath>

namespace wpd {

double squared_overlap(const FockVector& reference, const FockVector& trial) {
    const Eigen::Index n = std::min(reference.amps.size(), trial.amps.size());
    const Complex ov = reference.amps.head(n).dot(trial.amps.head(n));
    return std::norm(ov);
}

double mean_x(const FockVector& psi) {
    // <x> = sqrt(2) Re sum_n sqrt(n+1) conj(psi_n) psi_{n+1}
    Complex acc(0.0);
    for (Eigen::Index m = 0; m + 1 < psi.amps.size(); ++m)
        acc += std::sqrt(double(m + 1)) * std::conj(psi.amps[m]) * psi.amps[m + 1];
    return std::sqrt(2.0) * acc.real();
}

double time_average(std::span<const double> series, std::span<const double> times) {
    if (series.empty() || times.empty()) throw EmptySeries("time_average: no samples");
    if (series.size() != times.size())
        throw DimensionMismatch("time_average: series and times lengths differ");
    if (series.size() == 1) return series[0];
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < series.size(); ++k)
        acc += 0.5 * (series[k] + series[k + 1]) * (times[k + 1] - times[k]);
    return acc / (times.back() - times.front());
}

} // namespace wpd
