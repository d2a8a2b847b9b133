#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wpd/fock.hpp"

namespace wpd {

enum class FamilyKind { G, F1, F2, F3 };

/// One of the four trial families. |G> = D(alpha)S(beta)|0> with two canonical
/// pairs; the F families squeeze and displace a seed |xi> supported on the
/// levels |3m>, adding one pair per seed degree of freedom:
///   F1: xi ~ sum_m gamma^m/sqrt(m!) |3m>        (3 pairs)
///   F2: xi = c0|0> + c1|3>                      (3 pairs, M = 1)
///   F3: xi = c0|0> + c1|3> + c2|6>              (4 pairs, M = 2)
class TrialFamily {
public:
    constexpr explicit TrialFamily(FamilyKind kind) : kind_(kind) {}

    FamilyKind kind() const { return kind_; }
    /// Number of canonical (J, phi) pairs: G -> 2, F1/F2 -> 3, F3 -> 4.
    int dof() const;
    int extra_pairs() const { return dof() - 2; }
    /// Seed coefficients beyond c0 (M); 0 for G, 1 for F1/F2, 2 for F3.
    int seed_terms() const;
    std::string_view name() const;

    static TrialFamily parse(std::string_view name);

    friend bool operator==(TrialFamily a, TrialFamily b) { return a.kind_ == b.kind_; }

private:
    FamilyKind kind_;
};

inline const TrialFamily kAllFamilies[] = {
    TrialFamily{FamilyKind::G}, TrialFamily{FamilyKind::F1},
    TrialFamily{FamilyKind::F2}, TrialFamily{FamilyKind::F3}};

enum class Chart { ActionAngle, Cartesian };

/// Point in the extended phase space of one family, in either the action-angle
/// chart (J_i, phi_i) or the singularity-free Cartesian chart
/// Q_i = sqrt(2 J_i) cos(phi_i), P_i = sqrt(2 J_i) sin(phi_i).
struct CanonicalPoint {
    Chart chart = Chart::ActionAngle;
    std::vector<double> J;
    std::vector<double> phi;
    std::vector<double> qp; // interleaved Q1,P1,Q2,P2,...

    int dof() const;

    static CanonicalPoint action_angle(std::vector<double> J, std::vector<double> phi);
    static CanonicalPoint cartesian(std::vector<double> qp);

    CanonicalPoint to_cartesian() const;
    CanonicalPoint to_action_angle() const;

    /// Actions / angles regardless of the stored chart.
    std::vector<double> actions() const;
    std::vector<double> angles() const;
};

/// Underlying state parameters recovered from a canonical point.
struct RawParameters {
    Complex alpha;             // displacement, r1 e^{i phi1}
    Complex beta;              // squeeze, r2 e^{i phi2}
    std::vector<Complex> seed; // F1: {gamma}; F2/F3: {c_1..c_M}; empty for G
    double occupation = 0.0;   // <n>_xi of the seed state (the K entering J2)
};

/// Inverse of the canonical map:
///   alpha = sqrt(J1) e^{i phi1}
///   r2 = asinh(sqrt(2 J2 / (2K + 1))), K = <n>_xi
///   F1: gamma = sqrt(J3) e^{i phi3}, K = 3 J3
///   F2/F3: c_m = sqrt(J_{m+2}) e^{i phi_{m+2}}, K = sum_m 3m J_{m+2}
/// Throws NegativeAction / NormalizationError (sum_m J_{m+2} > 1 for F2/F3).
RawParameters invert_coordinates(const TrialFamily& family, const CanonicalPoint& pt);

/// Coordinate -> state maps with the displacement/squeeze eigensystems cached,
/// so repeated builds cost a few dense mat-vecs. Immutable after construction.
class StateBuilder {
public:
    explicit StateBuilder(int n_max);

    int n_max() const { return n_max_; }

    FockVector build(const TrialFamily& family, const CanonicalPoint& pt) const;
    FockVector build_raw(const TrialFamily& family, const RawParameters& raw) const;

    /// exp(alpha a^dag - alpha* a) v via the cached eigensystem of i(a^dag - a)
    /// and the phase rotation D(alpha) = Phi(phi) exp(r(a^dag-a)) Phi(-phi).
    Eigen::VectorXcd apply_displacement(Complex alpha, Eigen::VectorXcd v) const;
    Eigen::VectorXcd apply_squeeze(Complex beta, Eigen::VectorXcd v) const;

    /// Normalized seed |xi> in the full basis.
    Eigen::VectorXcd seed_state(const TrialFamily& family, const RawParameters& raw) const;

private:
    int n_max_;
    // Both generators are phase-similar to real symmetric matrices
    // (i(a^dag - a) = Phi sqrt(2)x Phi^dag with Phi = diag(i^n), and
    // i(a^dag^2 - a^2)/2 likewise with diag(e^{i pi n/4})), so the cached
    // eigenvector matrices are real orthogonal and mat-vecs run in real
    // arithmetic on the split components.
    Eigen::VectorXd disp_evals_, sq_evals_;
    Eigen::MatrixXd disp_evecs_, sq_evecs_;
};

/// Convenience one-shot build (constructs a throwaway StateBuilder).
FockVector build_state(const TrialFamily& family, const CanonicalPoint& pt, int n_max);

/// Residuals of the canonicity relations at one point: central finite
/// differences of <psi | d psi / d theta> over each raw parameter against the
/// analytic values (0 for radial parameters, i J_i for each angle).
struct CanonicityEntry {
    std::string parameter;
    Complex numeric;
    Complex analytic;
    double residual;
};

struct CanonicityReport {
    std::vector<CanonicityEntry> entries;
    double max_residual() const;
};

CanonicityReport canonicity_check(const StateBuilder& builder, const TrialFamily& family,
                                  const CanonicalPoint& pt, double step = 1e-5);

} // namespace wpd
