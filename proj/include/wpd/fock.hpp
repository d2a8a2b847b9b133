#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "wpd/errors.hpp"

namespace wpd {

using Complex = std::complex<double>;

// Truncation diagnostics: a vector counts as converged when the occupation of
// the last kTailGuard levels stays below kTailThreshold.
inline constexpr int kTailGuard = 8;
inline constexpr double kTailThreshold = 1e-10;

/// State in the truncated number basis |0>..|n_max>, amplitudes dimensionless.
struct FockVector {
    Eigen::VectorXcd amps;

    int n_max() const { return static_cast<int>(amps.size()) - 1; }
    double norm() const { return amps.norm(); }

    /// Occupation sum over the guard window n > n_max - n_guard.
    double tail_norm(int n_guard = kTailGuard) const;
    bool converged(int n_guard = kTailGuard, double threshold = kTailThreshold) const {
        return tail_norm(n_guard) < threshold;
    }

    static FockVector vacuum(int n_max);
    static FockVector number_state(int n, int n_max);
};

/// Dense single-mode operator; flags are set by the constructors that can
/// guarantee them.
struct OperatorMatrix {
    Eigen::MatrixXcd entries;
    bool hermitian = false;
    bool unitary = false;

    int n_max() const { return static_cast<int>(entries.rows()) - 1; }
};

/// Annihilation / creation pair: a|n> = sqrt(n)|n-1>, a^dag|n> = sqrt(n+1)|n+1>,
/// with the row/column beyond n_max truncated.
std::pair<OperatorMatrix, OperatorMatrix> ladder(int n_max);

/// x = (a + a^dag)/sqrt(2), p = i(a^dag - a)/sqrt(2); hbar = 1, unit mass and
/// frequency, so the displaced vacuum D(1/sqrt(2))|0> has <x> = 1.
std::pair<OperatorMatrix, OperatorMatrix> position_momentum(int n_max);

/// exp(alpha a^dag - alpha* a). Throws TruncationError if D(alpha)|0> leaks
/// into the guard window.
OperatorMatrix displacement(Complex alpha, int n_max);

/// exp(beta/2 a^dag^2 - beta*/2 a^2). Same truncation policy as displacement.
OperatorMatrix squeeze(Complex beta, int n_max);

/// exp(G) for an anti-hermitian generator, via the eigendecomposition of iG.
/// Exactly unitary up to roundoff in the truncated basis.
Eigen::MatrixXcd antihermitian_exp(const Eigen::MatrixXcd& generator);

FockVector apply(const OperatorMatrix& op, const FockVector& v);

/// Conjugate-linear in the first argument: inner(u, v) = u^dag v.
Complex inner(const FockVector& u, const FockVector& v);

} // namespace wpd
