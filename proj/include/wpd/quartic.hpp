#pragma once

#include <span>
#include <vector>

#include "wpd/trial_states.hpp"

namespace wpd {

/// H = p^2/2 + a x^2/2 + lambda x^4/4 in the truncated number basis, with the
/// classical Hamiltonian H(J, phi) = <psi(J, phi)| H |psi(J, phi)> and its
/// finite-difference gradient in the Cartesian chart. The operator matrix and
/// the state-builder caches are built once per model; all evaluation methods
/// are const and safe to call concurrently.
class QuarticModel {
public:
    QuarticModel(double a, double lambda, int n_max);

    double a() const { return a_; }
    double lambda() const { return lambda_; }
    int n_max() const { return n_max_; }
    const OperatorMatrix& hamiltonian() const { return h_; }
    const StateBuilder& builder() const { return builder_; }

    /// Re <psi|H|psi>; the imaginary part is asserted below 1e-10.
    double evaluate(const TrialFamily& family, const CanonicalPoint& pt) const;
    double evaluate_qp(const TrialFamily& family, std::span<const double> qp) const;

    /// Central differences of evaluate over the Cartesian chart, interleaved
    /// (dH/dQ1, dH/dP1, ...). Step 1e-5 * max(1, |coordinate|) per coordinate.
    std::vector<double> gradient(const TrialFamily& family, const CanonicalPoint& pt) const;

    /// Hot-path variant; fills out[0..n_active). n_active < 2*dof leaves the
    /// trailing coordinates untouched (used to freeze the non-Gaussian pairs).
    void gradient_qp(const TrialFamily& family, std::span<const double> qp,
                     std::span<double> out, int n_active = -1) const;

    static constexpr double kGradientStep = 1e-5;

private:
    double a_, lambda_;
    int n_max_;
    OperatorMatrix h_;
    Eigen::MatrixXd h_real_; // same entries; the sandwich runs in real arithmetic
    StateBuilder builder_;
};

} // namespace wpd
