#pragma once

#include "wpd/quartic.hpp"

namespace wpd {

struct IntegratorOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    /// Pin the non-Gaussian (Q, P) pairs to their initial values; only the
    /// displacement/squeeze block evolves.
    bool freeze_extra = false;
};

/// Canonical trajectory sampled uniformly at dt_out, with the classical
/// energy recorded at every sample. Points are stored in the Cartesian chart.
struct Trajectory {
    TrialFamily family{FamilyKind::G};
    std::vector<double> times;
    std::vector<CanonicalPoint> points;
    std::vector<double> energies;

    /// max_k |E_k - E_0| / max(1, |E_0|)
    double energy_drift() const;
};

/// Integrate the Hamilton equations Qdot_i = dH/dP_i, Pdot_i = -dH/dQ_i
/// (equivalently phidot_i = -dH/dJ_i, Jdot_i = dH/dphi_i in action-angle form)
/// with an adaptive Dormand-Prince 5(4) scheme, landing exactly on every
/// output time. Throws StepFailure when the controller stalls; errors from the
/// Hamiltonian evaluation (normalization, truncation) propagate.
Trajectory integrate(const QuarticModel& model, const TrialFamily& family,
                     const CanonicalPoint& initial, double t_end, double dt_out,
                     const IntegratorOptions& options = {});

} // namespace wpd
