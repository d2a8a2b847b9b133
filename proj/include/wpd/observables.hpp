#pragma once

#include <span>
#include <vector>

#include "wpd/trial_states.hpp"

namespace wpd {

/// |<reference|trial>|^2; the shorter vector is zero-padded.
double squared_overlap(const FockVector& reference, const FockVector& trial);

/// Re <psi|x|psi> with x = (a + a^dag)/sqrt(2).
double mean_x(const FockVector& psi);

/// Trapezoidal time average over uniformly sampled [times.front(), times.back()].
double time_average(std::span<const double> series, std::span<const double> times);

/// The reported benchmark quantities for one run.
struct ObservableSeries {
    std::vector<double> times;
    std::vector<TrialFamily> families;
    std::vector<std::vector<double>> overlap;  // W(t), one series per family
    std::vector<std::vector<double>> x_mean;   // <x(t)> per family
    std::vector<double> x_exact;
    std::vector<double> overlap_average;       // W-bar per family
};

} // namespace wpd
