#include "wpd/quartic.hpp"

#include <cmath>

namespace wpd {

QuarticModel::QuarticModel(double a, double lambda, int n_max)
    : a_(a), lambda_(lambda), n_max_(n_max), builder_(n_max) {
    auto [x, p] = position_momentum(n_max);
    const Eigen::MatrixXcd x2 = x.entries * x.entries;
    h_.entries = 0.5 * (p.entries * p.entries) + (0.5 * a) * x2 + (0.25 * lambda) * (x2 * x2);
    h_.hermitian = true;
    // p^2, x^2, x^4 all have exactly real entries in the number basis
    if (h_.entries.imag().cwiseAbs().maxCoeff() != 0.0)
        throw NumericalError("QuarticModel: hamiltonian entries are not real");
    h_real_ = h_.entries.real();
}

namespace {

RawParameters invert_qp(const TrialFamily& family, std::span<const double> qp) {
    // Same map as invert_coordinates, without the CanonicalPoint detour.
    const int dof = family.dof();
    if (static_cast<int>(qp.size()) != 2 * dof)
        throw DimensionMismatch("evaluate_qp: point has wrong number of coordinates");
    RawParameters raw;
    const double s = 1.0 / std::sqrt(2.0);
    raw.alpha = s * Complex(qp[0], qp[1]);
    double occupation = 0.0;
    if (family.kind() == FamilyKind::F1) {
        raw.seed = {s * Complex(qp[4], qp[5])};
        occupation = 3.0 * std::norm(raw.seed[0]);
    } else if (family.kind() != FamilyKind::G) {
        double weight = 0.0;
        for (int m = 0; m + 2 < dof; ++m) {
            raw.seed.push_back(s * Complex(qp[2 * (m + 2)], qp[2 * (m + 2) + 1]));
            weight += std::norm(raw.seed.back());
            occupation += 3.0 * double(m + 1) * std::norm(raw.seed.back());
        }
        if (weight > 1.0)
            throw NormalizationError("evaluate_qp: sum_m J_{m+2} exceeds 1");
    }
    raw.occupation = occupation;
    const Complex z2 = s * Complex(qp[2], qp[3]);
    const double az2 = std::abs(z2);
    const double r2 = std::asinh(az2 * std::sqrt(2.0 / (2.0 * occupation + 1.0)));
    raw.beta = az2 > 0.0 ? Complex(r2 / az2) * z2 : Complex(0.0);
    return raw;
}

} // namespace

double QuarticModel::evaluate_qp(const TrialFamily& family, std::span<const double> qp) const {
    const FockVector psi = builder_.build_raw(family, invert_qp(family, qp));
    const Eigen::VectorXd re = psi.amps.real(), im = psi.amps.imag();
    const Eigen::VectorXd hre = h_real_ * re, him = h_real_ * im;
    const double e_imag = re.dot(him) - im.dot(hre);
    if (std::abs(e_imag) >= 1e-10)
        throw NumericalError("evaluate: <psi|H|psi> acquired an imaginary part");
    return re.dot(hre) + im.dot(him);
}

double QuarticModel::evaluate(const TrialFamily& family, const CanonicalPoint& pt) const {
    const CanonicalPoint cart = pt.to_cartesian();
    return evaluate_qp(family, cart.qp);
}

void QuarticModel::gradient_qp(const TrialFamily& family, std::span<const double> qp,
                               std::span<double> out, int n_active) const {
    const int n = static_cast<int>(qp.size());
    if (n_active < 0) n_active = n;
    std::vector<double> work(qp.begin(), qp.end());
    for (int i = 0; i < n_active; ++i) {
        const double h = kGradientStep * std::max(1.0, std::abs(qp[i]));
        const double saved = work[i];
        work[i] = saved + h;
        const double fp = evaluate_qp(family, work);
        work[i] = saved - h;
        const double fm = evaluate_qp(family, work);
        work[i] = saved;
        out[i] = (fp - fm) / (2.0 * h);
    }
}

std::vector<double> QuarticModel::gradient(const TrialFamily& family,
                                           const CanonicalPoint& pt) const {
    if (pt.chart != Chart::Cartesian)
        throw DimensionMismatch("gradient: point must be in the Cartesian chart");
    std::vector<double> out(pt.qp.size());
    gradient_qp(family, pt.qp, out);
    return out;
}

} // namespace wpd
