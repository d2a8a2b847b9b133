#include "wpd/trial_states.hpp"

#include <cmath>
#include <utility>

namespace wpd {

int TrialFamily::dof() const {
    switch (kind_) {
        case FamilyKind::G: return 2;
        case FamilyKind::F1: return 3;
        case FamilyKind::F2: return 3;
        case FamilyKind::F3: return 4;
    }
    return 0;
}

int TrialFamily::seed_terms() const {
    switch (kind_) {
        case FamilyKind::G: return 0;
        case FamilyKind::F1: return 1;
        case FamilyKind::F2: return 1;
        case FamilyKind::F3: return 2;
    }
    return 0;
}

std::string_view TrialFamily::name() const {
    switch (kind_) {
        case FamilyKind::G: return "G";
        case FamilyKind::F1: return "F1";
        case FamilyKind::F2: return "F2";
        case FamilyKind::F3: return "F3";
    }
    return "?";
}

TrialFamily TrialFamily::parse(std::string_view name) {
    for (const TrialFamily& f : kAllFamilies)
        if (f.name() == name) return f;
    throw ConfigError("unknown trial family '" + std::string(name) + "'");
}

int CanonicalPoint::dof() const {
    return chart == Chart::Cartesian ? static_cast<int>(qp.size()) / 2
                                     : static_cast<int>(J.size());
}

CanonicalPoint CanonicalPoint::action_angle(std::vector<double> J, std::vector<double> phi) {
    if (J.size() != phi.size())
        throw DimensionMismatch("action_angle: J and phi lengths differ");
    for (double j : J)
        if (j < 0.0) throw NegativeAction("action_angle: J_i < 0");
    CanonicalPoint pt;
    pt.chart = Chart::ActionAngle;
    pt.J = std::move(J);
    pt.phi = std::move(phi);
    return pt;
}

CanonicalPoint CanonicalPoint::cartesian(std::vector<double> qp) {
    if (qp.size() % 2 != 0)
        throw DimensionMismatch("cartesian: expected interleaved (Q, P) pairs");
    CanonicalPoint pt;
    pt.chart = Chart::Cartesian;
    pt.qp = std::move(qp);
    return pt;
}

CanonicalPoint CanonicalPoint::to_cartesian() const {
    if (chart == Chart::Cartesian) return *this;
    std::vector<double> qp(2 * J.size());
    for (std::size_t i = 0; i < J.size(); ++i) {
        const double r = std::sqrt(2.0 * J[i]);
        qp[2 * i] = r * std::cos(phi[i]);
        qp[2 * i + 1] = r * std::sin(phi[i]);
    }
    return cartesian(std::move(qp));
}

CanonicalPoint CanonicalPoint::to_action_angle() const {
    if (chart == Chart::ActionAngle) return *this;
    const std::size_t n = qp.size() / 2;
    std::vector<double> J(n), phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double q = qp[2 * i], p = qp[2 * i + 1];
        J[i] = 0.5 * (q * q + p * p);
        phi[i] = (q == 0.0 && p == 0.0) ? 0.0 : std::atan2(p, q);
    }
    return action_angle(std::move(J), std::move(phi));
}

std::vector<double> CanonicalPoint::actions() const {
    return chart == Chart::ActionAngle ? J : to_action_angle().J;
}

std::vector<double> CanonicalPoint::angles() const {
    return chart == Chart::ActionAngle ? phi : to_action_angle().phi;
}

namespace {

// z_i = (Q_i + i P_i)/sqrt(2) = sqrt(J_i) e^{i phi_i}
std::vector<Complex> chart_to_z(const CanonicalPoint& pt) {
    std::vector<Complex> z;
    if (pt.chart == Chart::Cartesian) {
        const std::size_t n = pt.qp.size() / 2;
        z.resize(n);
        const double s = 1.0 / std::sqrt(2.0);
        for (std::size_t i = 0; i < n; ++i)
            z[i] = s * Complex(pt.qp[2 * i], pt.qp[2 * i + 1]);
    } else {
        z.resize(pt.J.size());
        for (std::size_t i = 0; i < pt.J.size(); ++i) {
            if (pt.J[i] < 0.0) throw NegativeAction("invert_coordinates: J_i < 0");
            z[i] = std::polar(std::sqrt(pt.J[i]), pt.phi[i]);
        }
    }
    return z;
}

} // namespace

RawParameters invert_coordinates(const TrialFamily& family, const CanonicalPoint& pt) {
    const std::vector<Complex> z = chart_to_z(pt);
    if (static_cast<int>(z.size()) != family.dof())
        throw DimensionMismatch("invert_coordinates: point has wrong number of pairs for " +
                                std::string(family.name()));

    RawParameters raw;
    raw.alpha = z[0];

    double occupation = 0.0;
    switch (family.kind()) {
        case FamilyKind::G:
            break;
        case FamilyKind::F1:
            raw.seed = {z[2]};
            occupation = 3.0 * std::norm(z[2]);
            break;
        case FamilyKind::F2:
        case FamilyKind::F3: {
            double weight = 0.0;
            raw.seed.assign(z.begin() + 2, z.end());
            for (std::size_t m = 0; m < raw.seed.size(); ++m) {
                weight += std::norm(raw.seed[m]);
                occupation += 3.0 * double(m + 1) * std::norm(raw.seed[m]);
            }
            if (weight > 1.0)
                throw NormalizationError("invert_coordinates: sum_m J_{m+2} exceeds 1 for " +
                                         std::string(family.name()));
            break;
        }
    }
    raw.occupation = occupation;

    const double az2 = std::abs(z[1]);
    const double r2 = std::asinh(az2 * std::sqrt(2.0 / (2.0 * occupation + 1.0)));
    raw.beta = az2 > 0.0 ? Complex(r2 / az2) * z[1] : Complex(0.0);
    return raw;
}

StateBuilder::StateBuilder(int n_max) : n_max_(n_max) {
    const int dim = n_max + 1;
    // Real-symmetric companions of the generators: X_D(k+1, k) = sqrt(k+1)
    // and X_S(k+2, k) = sqrt((k+1)(k+2))/2.
    Eigen::MatrixXd xd = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd xs = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k + 1 < dim; ++k) xd(k + 1, k) = xd(k, k + 1) = std::sqrt(k + 1.0);
    for (int k = 0; k + 2 < dim; ++k)
        xs(k + 2, k) = xs(k, k + 2) = 0.5 * std::sqrt((k + 1.0) * (k + 2.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_d(xd);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_s(xs);
    if (es_d.info() != Eigen::Success || es_s.info() != Eigen::Success)
        throw NumericalError("StateBuilder: generator eigendecomposition failed");
    disp_evals_ = es_d.eigenvalues();
    disp_evecs_ = es_d.eigenvectors();
    sq_evals_ = es_s.eigenvalues();
    sq_evecs_ = es_s.eigenvectors();
}

namespace {

// v_n *= e^{i theta n}, incremental rotor (error ~ n eps, far below tolerances)
void number_phase(double theta, Eigen::VectorXcd& v) {
    if (theta == 0.0) return;
    const Complex step = std::polar(1.0, theta);
    Complex w(1.0, 0.0);
    for (Eigen::Index n = 1; n < v.size(); ++n) {
        w *= step;
        v[n] *= w;
    }
}

// Lam V e^{-i scale E} V^T Lam^dag v with Lam = diag(e^{i lattice_phase n}),
// V real orthogonal. The complex vector moves through the real eigenbasis as
// split components.
Eigen::VectorXcd rotated_exp(const Eigen::MatrixXd& evecs, const Eigen::VectorXd& evals,
                             double scale, double lattice_phase, Eigen::VectorXcd v) {
    number_phase(-lattice_phase, v);
    const Eigen::VectorXd re = v.real(), im = v.imag();
    const Eigen::VectorXd wre = evecs.transpose() * re;
    const Eigen::VectorXd wim = evecs.transpose() * im;
    const Eigen::ArrayXd c = (scale * evals.array()).cos();
    const Eigen::ArrayXd s = (scale * evals.array()).sin();
    // (wre + i wim) e^{-i scale E}
    const Eigen::VectorXd rre = (c * wre.array() + s * wim.array()).matrix();
    const Eigen::VectorXd rim = (c * wim.array() - s * wre.array()).matrix();
    const Eigen::VectorXd ore = evecs * rre;
    const Eigen::VectorXd oim = evecs * rim;
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = Complex(ore[k], oim[k]);
    number_phase(lattice_phase, v);
    return v;
}

} // namespace

Eigen::VectorXcd StateBuilder::apply_displacement(Complex alpha, Eigen::VectorXcd v) const {
    // D(alpha) = Phi(phi) exp(r (a^dag - a)) Phi(-phi), exact in the truncated
    // basis; the inner factor diagonalizes as diag(i^n) V e^{-i r E} V^T diag(i^-n)
    return rotated_exp(disp_evecs_, disp_evals_, std::abs(alpha),
                       std::arg(alpha) + M_PI / 2.0, std::move(v));
}

Eigen::VectorXcd StateBuilder::apply_squeeze(Complex beta, Eigen::VectorXcd v) const {
    // S(beta) = Phi(theta/2) exp(rho (a^dag^2 - a^2)/2) Phi(-theta/2)
    return rotated_exp(sq_evecs_, sq_evals_, std::abs(beta),
                       0.5 * std::arg(beta) + M_PI / 4.0, std::move(v));
}

Eigen::VectorXcd StateBuilder::seed_state(const TrialFamily& family,
                                          const RawParameters& raw) const {
    Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(n_max_ + 1);
    switch (family.kind()) {
        case FamilyKind::G:
            xi[0] = 1.0;
            break;
        case FamilyKind::F1: {
            // xi_m = e^{-|g|^2/2} g^m / sqrt(m!) on level 3m; renormalized after
            // truncation so the invariant holds exactly
            const Complex g = raw.seed.at(0);
            Complex amp(1.0, 0.0);
            xi[0] = amp;
            for (int m = 1; 3 * m <= n_max_; ++m) {
                amp *= g / std::sqrt(double(m));
                xi[3 * m] = amp;
            }
            xi *= std::exp(-0.5 * std::norm(g));
            xi /= xi.norm();
            break;
        }
        case FamilyKind::F2:
        case FamilyKind::F3: {
            double weight = 0.0;
            for (std::size_t m = 0; m < raw.seed.size(); ++m) {
                if (3 * (m + 1) > static_cast<std::size_t>(n_max_))
                    throw DimensionMismatch("seed_state: basis too small for |3m> levels");
                xi[3 * (m + 1)] = raw.seed[m];
                weight += std::norm(raw.seed[m]);
            }
            if (weight > 1.0)
                throw NormalizationError("seed_state: sum |c_m|^2 exceeds 1");
            xi[0] = std::sqrt(1.0 - weight);
            break;
        }
    }
    return xi;
}

FockVector StateBuilder::build_raw(const TrialFamily& family, const RawParameters& raw) const {
    Eigen::VectorXcd v = seed_state(family, raw);
    v = apply_squeeze(raw.beta, std::move(v));
    v = apply_displacement(raw.alpha, std::move(v));
    FockVector psi{std::move(v)};
    if (!psi.converged())
        throw TruncationError("build_raw: state leaks into the basis edge (tail " +
                              std::to_string(psi.tail_norm()) + ")");
    return psi;
}

FockVector StateBuilder::build(const TrialFamily& family, const CanonicalPoint& pt) const {
    return build_raw(family, invert_coordinates(family, pt));
}

FockVector build_state(const TrialFamily& family, const CanonicalPoint& pt, int n_max) {
    return StateBuilder(n_max).build(family, pt);
}

double CanonicityReport::max_residual() const {
    double worst = 0.0;
    for (const CanonicityEntry& e : entries) worst = std::max(worst, e.residual);
    return worst;
}

namespace {

// Raw parameters as (modulus, argument) pairs: r1,phi1,r2,phi2,[r3,phi3,[r4,phi4]]
std::vector<double> raw_polar(const RawParameters& raw) {
    std::vector<double> p{std::abs(raw.alpha), std::arg(raw.alpha),
                          std::abs(raw.beta), std::arg(raw.beta)};
    for (const Complex& c : raw.seed) {
        p.push_back(std::abs(c));
        p.push_back(std::arg(c));
    }
    return p;
}

RawParameters raw_from_polar(const TrialFamily& family, const std::vector<double>& p) {
    RawParameters raw;
    raw.alpha = std::polar(p[0], p[1]);
    raw.beta = std::polar(p[2], p[3]);
    for (std::size_t k = 4; k + 1 < p.size(); k += 2)
        raw.seed.push_back(std::polar(p[k], p[k + 1]));
    double occ = 0.0;
    if (family.kind() == FamilyKind::F1)
        occ = 3.0 * std::norm(raw.seed.at(0));
    else
        for (std::size_t m = 0; m < raw.seed.size(); ++m)
            occ += 3.0 * double(m + 1) * std::norm(raw.seed[m]);
    raw.occupation = occ;
    return raw;
}

} // namespace

CanonicityReport canonicity_check(const StateBuilder& builder, const TrialFamily& family,
                                  const CanonicalPoint& pt, double step) {
    for (double j : pt.actions())
        if (j <= step)
            throw SingularPoint("canonicity_check: requires all J_i > step");

    const RawParameters raw = invert_coordinates(family, pt);
    const std::vector<double> p0 = raw_polar(raw);
    const FockVector psi0 = builder.build_raw(family, raw);

    // Analytic values: radial derivatives vanish; each angle gives i J_i with
    // J1 = r1^2, J2 = (2K+1)/2 sinh^2 r2 (K = <n>_xi), J_{k>=3} = r_k^2.
    std::vector<Complex> analytic(p0.size());
    const double sh = std::sinh(p0[2]);
    analytic[1] = Complex(0, p0[0] * p0[0]);
    analytic[3] = Complex(0, 0.5 * (2.0 * raw.occupation + 1.0) * sh * sh);
    for (std::size_t k = 4; k < p0.size(); k += 2)
        analytic[k + 1] = Complex(0, p0[k] * p0[k]);

    static const char* names[] = {"r1", "phi1", "r2", "phi2", "r3", "phi3", "r4", "phi4"};
    CanonicityReport report;
    for (std::size_t k = 0; k < p0.size(); ++k) {
        std::vector<double> pp = p0, pm = p0;
        pp[k] += step;
        pm[k] -= step;
        const FockVector plus = builder.build_raw(family, raw_from_polar(family, pp));
        const FockVector minus = builder.build_raw(family, raw_from_polar(family, pm));
        const Complex numeric = psi0.amps.dot((plus.amps - minus.amps) / (2.0 * step));
        report.entries.push_back({names[k], numeric, analytic[k],
                                  std::abs(numeric - analytic[k])});
    }
    return report;
}

} // namespace wpd
