#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wpd/trial_states.hpp"

using namespace wpd;

namespace {

const TrialFamily kG{FamilyKind::G};
const TrialFamily kF1{FamilyKind::F1};
const TrialFamily kF2{FamilyKind::F2};
const TrialFamily kF3{FamilyKind::F3};

CanonicalPoint random_point(std::mt19937& rng, const TrialFamily& family) {
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    std::uniform_real_distribution<double> big(0.1, 0.6);
    std::uniform_real_distribution<double> small(0.02, 0.15);
    std::vector<double> J{big(rng), small(rng)};
    std::vector<double> phi{angle(rng), angle(rng)};
    for (int e = 0; e < family.extra_pairs(); ++e) {
        J.push_back(small(rng));
        phi.push_back(angle(rng));
    }
    return CanonicalPoint::action_angle(J, phi);
}

} // namespace

TEST_CASE("family bookkeeping") {
    CHECK(kG.dof() == 2);
    CHECK(kF1.dof() == 3);
    CHECK(kF2.dof() == 3);
    CHECK(kF3.dof() == 4);
    CHECK(TrialFamily::parse("F2") == kF2);
    CHECK_THROWS_AS(TrialFamily::parse("F4"), ConfigError);
}

TEST_CASE("chart round trip") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 25; ++rep) {
        const CanonicalPoint pt = random_point(rng, kF3);
        const CanonicalPoint back = pt.to_cartesian().to_action_angle();
        for (int i = 0; i < pt.dof(); ++i) {
            CHECK(back.J[i] == doctest::Approx(pt.J[i]).epsilon(1e-12));
            // compare angles on the circle
            CHECK(std::abs(std::remainder(back.phi[i] - pt.phi[i], 2 * M_PI)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(CanonicalPoint::action_angle({-0.1, 0.0}, {0.0, 0.0}), NegativeAction);
}

TEST_CASE("invert_coordinates: benchmark Gaussian point") {
    // J1 = 1/2, J2 = sinh^2(0.1)/2 with phases zero -> alpha = 1/sqrt(2), beta = 0.1
    const double j2 = 0.5 * std::sinh(0.1) * std::sinh(0.1);
    const RawParameters raw = invert_coordinates(
        kG, CanonicalPoint::action_angle({0.5, j2}, {0.0, 0.0}));
    CHECK(raw.alpha.real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(raw.alpha.imag() == 0.0);
    CHECK(raw.beta.real() == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(raw.beta.imag() == 0.0);
    CHECK(raw.occupation == 0.0);
}

TEST_CASE("invert_coordinates: F1 forward/backward consistency") {
    // J3 = r3^2 and J2 = (2 <n>_xi + 1)/2 sinh^2 r2 with <n>_xi = 3 r3^2.
    // Forward-evaluate at r2 = 0.3, r3 = 0.5, then invert.
    const double K = 3.0 * 0.25;
    const double j2 = 0.5 * (2.0 * K + 1.0) * std::sinh(0.3) * std::sinh(0.3);
    const RawParameters raw = invert_coordinates(
        kF1, CanonicalPoint::action_angle({0.5, j2, 0.25}, {0.0, 0.0, 0.0}));
    CHECK(std::abs(raw.beta) == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(std::abs(raw.seed[0]) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(raw.occupation == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("invert_coordinates: errors") {
    CHECK_THROWS_AS(invert_coordinates(
                        kF2, CanonicalPoint::action_angle({0.5, 0.1, 1.2}, {0, 0, 0})),
                    NormalizationError);
    CHECK_THROWS_AS(invert_coordinates(
                        kF3, CanonicalPoint::action_angle({0.5, 0.1, 0.6, 0.6}, {0, 0, 0, 0})),
                    NormalizationError);
    // boundary c0 = 0 is allowed
    CHECK_NOTHROW(invert_coordinates(
        kF2, CanonicalPoint::action_angle({0.5, 0.1, 1.0}, {0, 0, 0})));
    CHECK_THROWS_AS(invert_coordinates(kF1, CanonicalPoint::action_angle({0.5, 0.1}, {0, 0})),
                    DimensionMismatch);
}

TEST_CASE("build_state: benchmark initial state has <x> = 1, <p> = 0") {
    const StateBuilder builder(127);
    const double j2 = 0.5 * std::sinh(0.1) * std::sinh(0.1);
    const FockVector psi =
        builder.build(kG, CanonicalPoint::action_angle({0.5, j2}, {0.0, 0.0}));
    CHECK(std::abs(psi.norm() - 1.0) < 1e-12);

    auto [x, p] = position_momentum(127);
    CHECK(inner(psi, apply(x, psi)).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(inner(psi, apply(p, psi)).real()) < 1e-12);
}

TEST_CASE("build_state agrees with the explicit matrix exponentials") {
    std::mt19937 rng(42);
    const StateBuilder builder(96);
    for (const TrialFamily& family : kAllFamilies) {
        const CanonicalPoint pt = random_point(rng, family);
        const RawParameters raw = invert_coordinates(family, pt);
        const FockVector fast = builder.build(family, pt);

        const Eigen::VectorXcd xi = builder.seed_state(family, raw);
        const FockVector slow = apply(displacement(raw.alpha, 96),
                                      apply(squeeze(raw.beta, 96), FockVector{xi}));
        CHECK((fast.amps - slow.amps).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("F1 seed occupation: <n>_xi = 3 |gamma|^2 by direct summation") {
    const StateBuilder builder(127);
    RawParameters raw;
    raw.alpha = raw.beta = 0.0;
    raw.seed = {Complex(0.5, 0.0)};
    const Eigen::VectorXcd xi = builder.seed_state(kF1, raw);
    double nbar = 0.0;
    for (int n = 0; n <= 127; ++n) nbar += n * std::norm(xi[n]);
    CHECK(nbar == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("reduction: zero extra actions reproduce the Gaussian state") {
    const StateBuilder builder(127);
    const double j2 = 0.5 * std::sinh(0.1) * std::sinh(0.1);
    const FockVector g =
        builder.build(kG, CanonicalPoint::action_angle({0.5, j2}, {0.3, -0.2}));
    for (const TrialFamily& family : {kF1, kF2, kF3}) {
        std::vector<double> J{0.5, j2}, phi{0.3, -0.2};
        J.resize(family.dof(), 0.0);
        phi.resize(family.dof(), 0.0);
        const FockVector f = builder.build(family, CanonicalPoint::action_angle(J, phi));
        CHECK((f.amps - g.amps).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("seed support sits on occupation multiples of 3") {
    std::mt19937 rng(99);
    const StateBuilder builder(96);
    for (const TrialFamily& family : {kF1, kF2, kF3}) {
        const CanonicalPoint pt = random_point(rng, family);
        const RawParameters raw = invert_coordinates(family, pt);
        const FockVector psi = builder.build(family, pt);
        // undo D then S: the remainder must live on n = 0 (mod 3)
        Eigen::VectorXcd back = builder.apply_displacement(-raw.alpha, psi.amps);
        back = builder.apply_squeeze(-raw.beta, std::move(back));
        for (int n = 0; n <= 96; ++n)
            if (n % 3 != 0) CHECK(std::abs(back[n]) < 1e-10);
    }
}

TEST_CASE("canonicity: Gaussian analytic values") {
    const StateBuilder builder(127);
    const CanonicalPoint pt = CanonicalPoint::action_angle({0.25, 0.02}, {0.4, -0.7});
    const CanonicityReport report = canonicity_check(builder, kG, pt);
    REQUIRE(report.entries.size() == 4);
    // <G|d/d r1|G> = <G|d/d r2|G> = 0
    CHECK(std::abs(report.entries[0].numeric) < 1e-7);
    CHECK(std::abs(report.entries[2].numeric) < 1e-7);
    // <G|d/d phi1|G> = i r1^2 = 0.25 i
    CHECK(report.entries[1].numeric.imag() == doctest::Approx(0.25).epsilon(1e-7));
    CHECK(report.max_residual() < 1e-7);
}

TEST_CASE("canonicity: F1 squeeze-angle derivative carries the seed occupation") {
    // r2 = 0.1, r3 = 0.5: <F|d/d phi2|F> = (i/2)(2*0.75 + 1) sinh^2(0.1)
    const StateBuilder builder(127);
    const double K = 0.75;
    const double j2 = 0.5 * (2.0 * K + 1.0) * std::sinh(0.1) * std::sinh(0.1);
    const CanonicalPoint pt = CanonicalPoint::action_angle({0.5, j2, 0.25}, {0.0, 0.0, 0.0});
    const CanonicityReport report = canonicity_check(builder, kF1, pt);
    const double expected = 0.5 * (2.0 * K + 1.0) * std::sinh(0.1) * std::sinh(0.1);
    CHECK(report.entries[3].numeric.imag() == doctest::Approx(expected).epsilon(1e-7));
    CHECK(std::abs(report.entries[3].numeric.real()) < 1e-9);
    // <F|d/d phi3|F> = i r3^2
    CHECK(report.entries[5].numeric.imag() == doctest::Approx(0.25).epsilon(1e-7));
    CHECK(report.max_residual() < 1e-7);
}

TEST_CASE("canonicity: residuals vanish at second order in the step") {
    std::mt19937 rng(2024);
    const StateBuilder builder(96);
    for (const TrialFamily& family : kAllFamilies) {
        const CanonicalPoint pt = random_point(rng, family);
        const double r_coarse = canonicity_check(builder, family, pt, 1e-2).max_residual();
        const double r_fine = canonicity_check(builder, family, pt, 5e-3).max_residual();
        const double order = std::log2(r_coarse / r_fine);
        CHECK(order >= 1.9);
        CHECK(canonicity_check(builder, family, pt).max_residual() < 1e-6);
    }
}

TEST_CASE("canonicity: singular chart guard") {
    const StateBuilder builder(64);
    CHECK_THROWS_AS(canonicity_check(builder, kF1,
                                     CanonicalPoint::action_angle({0.5, 0.01, 0.0}, {0, 0, 0})),
                    SingularPoint);
}

TEST_CASE("chart smoothness at the extra-pair origin") {
    const StateBuilder builder(127);
    const double eps = 1e-9;
    auto state_at = [&](double q3, double p3) {
        return builder.build(kF1, CanonicalPoint::cartesian({1.0, 0.0, 0.1, 0.0, q3, p3}));
    };
    const FockVector a = state_at(eps, 0.0);
    const FockVector b = state_at(0.0, eps);
    CHECK((a.amps - b.amps).cwiseAbs().maxCoeff() < 1e-8);
}
