#include "wpd/fock.hpp"

#include <cmath>
#include <string>

namespace wpd {

double FockVector::tail_norm(int n_guard) const {
    const int lo = std::max(1, n_max() - n_guard + 1);
    double s = 0.0;
    for (int n = lo; n <= n_max(); ++n) s += std::norm(amps[n]);
    return s;
}

FockVector FockVector::vacuum(int n_max) {
    return number_state(0, n_max);
}

FockVector FockVector::number_state(int n, int n_max) {
    if (n < 0 || n > n_max) throw DimensionMismatch("number_state: level outside basis");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_max + 1);
    v[n] = 1.0;
    return FockVector{std::move(v)};
}

std::pair<OperatorMatrix, OperatorMatrix> ladder(int n_max) {
    if (n_max < 1) throw DimensionMismatch("ladder: n_max must be >= 1");
    const int dim = n_max + 1;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
    Eigen::MatrixXcd ad = a.adjoint();
    return {OperatorMatrix{std::move(a)}, OperatorMatrix{std::move(ad)}};
}

std::pair<OperatorMatrix, OperatorMatrix> position_momentum(int n_max) {
    auto [a, ad] = ladder(n_max);
    const double s = 1.0 / std::sqrt(2.0);
    OperatorMatrix x{s * (a.entries + ad.entries), true, false};
    OperatorMatrix p{Complex(0, 1) * s * (ad.entries - a.entries), true, false};
    return {std::move(x), std::move(p)};
}

Eigen::MatrixXcd antihermitian_exp(const Eigen::MatrixXcd& generator) {
    // iG is hermitian; exp(G) = V exp(-i E) V^dag.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Complex(0, 1) * generator);
    if (es.info() != Eigen::Success) throw NumericalError("antihermitian_exp: eigensolver failed");
    const Eigen::VectorXcd phases =
        (Complex(0, -1) * es.eigenvalues().array()).exp().matrix();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

OperatorMatrix unitary_from_generator(const Eigen::MatrixXcd& gen, const char* what) {
    OperatorMatrix op{antihermitian_exp(gen), false, true};
    // Validate truncation on the transformed vacuum (column 0), after the fact.
    FockVector ground{op.entries.col(0)};
    if (!ground.converged())
        throw TruncationError(std::string(what) + ": transformed vacuum leaks into the basis edge (tail " +
                              std::to_string(ground.tail_norm()) + ")");
    return op;
}

} // namespace

OperatorMatrix displacement(Complex alpha, int n_max) {
    auto [a, ad] = ladder(n_max);
    return unitary_from_generator(alpha * ad.entries - std::conj(alpha) * a.entries,
                                  "displacement");
}

OperatorMatrix squeeze(Complex beta, int n_max) {
    auto [a, ad] = ladder(n_max);
    const Eigen::MatrixXcd a2 = a.entries * a.entries;
    return unitary_from_generator(0.5 * beta * a2.adjoint() - 0.5 * std::conj(beta) * a2,
                                  "squeeze");
}

FockVector apply(const OperatorMatrix& op, const FockVector& v) {
    if (op.entries.cols() != v.amps.size())
        throw DimensionMismatch("apply: operator and vector dimensions differ");
    return FockVector{op.entries * v.amps};
}

Complex inner(const FockVector& u, const FockVector& v) {
    if (u.amps.size() != v.amps.size())
        throw DimensionMismatch("inner: vector dimensions differ");
    return u.amps.dot(v.amps);
}

} // namespace wpd
