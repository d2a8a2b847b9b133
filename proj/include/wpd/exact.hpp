#pragma once

#include <span>
#include <vector>

#include "wpd/quartic.hpp"

namespace wpd {

/// Exact propagation of the Schroedinger equation in the truncated basis via a
/// full eigendecomposition of H: psi(t) = V e^{-iEt} V^dag psi(0). Immutable
/// after construction; concurrent propagate calls are safe.
class SpectralPropagator {
public:
    explicit SpectralPropagator(const QuarticModel& model);

    /// Input tail gate for propagate(). Looser than the builder's threshold:
    /// evolved states legitimately carry ~1e-10 of edge weight through their
    /// overlap with truncation-limited eigenstates, and the group property
    /// feeds such states back in as inputs.
    static constexpr double kInputTailThreshold = 1e-8;

    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    const Eigen::MatrixXcd& eigenvectors() const { return evecs_; }
    int n_max() const { return static_cast<int>(evals_.size()) - 1; }

    FockVector propagate(const FockVector& psi0, double t) const;

    /// Shares the projection V^dag psi0 across all requested times.
    std::vector<FockVector> propagate_series(const FockVector& psi0,
                                             std::span<const double> times) const;

private:
    Eigen::VectorXcd project(const FockVector& psi0) const;

    Eigen::VectorXd evals_;
    Eigen::MatrixXcd evecs_;
};

} // namespace wpd
