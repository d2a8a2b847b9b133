#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wpd/exact.hpp"
#include "wpd/observables.hpp"

using namespace wpd;

namespace {

const TrialFamily kG{FamilyKind::G};

FockVector benchmark_state(const QuarticModel& model) {
    const double j2 = 0.5 * std::sinh(0.1) * std::sinh(0.1);
    return model.builder().build(kG, CanonicalPoint::action_angle({0.5, j2}, {0.0, 0.0}));
}

} // namespace

TEST_CASE("harmonic spectrum") {
    const QuarticModel model(1.0, 0.0, 64);
    const SpectralPropagator prop(model);
    for (int k = 0; k < 3; ++k)
        CHECK(prop.eigenvalues()[k] == doctest::Approx(k + 0.5).epsilon(1e-9));
    for (int k = 1; k < 64; ++k)
        CHECK(prop.eigenvalues()[k] >= prop.eigenvalues()[k - 1]);
}

TEST_CASE("quartic spectra are bounded below") {
    const SpectralPropagator single(QuarticModel(1.0, 1.0, 128));
    CHECK(single.eigenvalues()[0] > 0.5);

    const SpectralPropagator double_well(QuarticModel(-1.0, 1.0, 128));
    CHECK(std::isfinite(double_well.eigenvalues()[0]));
    CHECK(double_well.eigenvalues()[0] > -0.25); // V_min = -1/4 at x = +-1
}

TEST_CASE("propagation basics") {
    const QuarticModel model(-1.0, 1.0, 255);
    const SpectralPropagator prop(model);
    const FockVector psi0 = benchmark_state(model);

    const FockVector same = prop.propagate(psi0, 0.0);
    CHECK((same.amps - psi0.amps).cwiseAbs().maxCoeff() < 1e-13);

    for (double t : {1.0, 5.0, 20.0})
        CHECK(std::abs(prop.propagate(psi0, t).norm() - 1.0) < 1e-10);
}

TEST_CASE("harmonic coherent motion: <x(t)> = cos(t) <x(0)>") {
    const QuarticModel model(1.0, 0.0, 255);
    const SpectralPropagator prop(model);
    const FockVector psi0 = benchmark_state(model);
    const double x0 = mean_x(psi0);
    for (double t : {0.3, 1.7, 4.4, 12.9})
        CHECK(mean_x(prop.propagate(psi0, t)) == doctest::Approx(std::cos(t) * x0).epsilon(1e-8));
}

TEST_CASE("group property and energy conservation") {
    const QuarticModel model(-1.0, 1.0, 255);
    const SpectralPropagator prop(model);
    const FockVector psi0 = benchmark_state(model);

    const FockVector in_one = prop.propagate(psi0, 7.3);
    const FockVector in_two = prop.propagate(prop.propagate(psi0, 3.1), 4.2);
    CHECK((in_one.amps - in_two.amps).cwiseAbs().maxCoeff() < 1e-9);

    const double e0 = inner(psi0, apply(model.hamiltonian(), psi0)).real();
    for (double t : {2.0, 11.0, 20.0}) {
        const FockVector psi = prop.propagate(psi0, t);
        CHECK(std::abs(inner(psi, apply(model.hamiltonian(), psi)).real() - e0) < 1e-9);
    }
}

TEST_CASE("basis convergence of the propagated state") {
    const QuarticModel small(-1.0, 1.0, 255);
    const QuarticModel large(-1.0, 1.0, 383);
    const SpectralPropagator prop_s(small);
    const SpectralPropagator prop_l(large);
    const FockVector psi0_s = benchmark_state(small);
    const FockVector psi0_l = benchmark_state(large);
    for (double t : {1.0, 10.0, 20.0}) {
        const FockVector a = prop_s.propagate(psi0_s, t);
        const FockVector b = prop_l.propagate(psi0_l, t);
        CHECK(std::abs(squared_overlap(b, a) - 1.0) < 1e-6);
        CHECK(std::abs(mean_x(a) - mean_x(b)) < 1e-6);
    }
}

TEST_CASE("propagation input validation") {
    const QuarticModel model(-1.0, 1.0, 127);
    const SpectralPropagator prop(model);
    CHECK_THROWS_AS(prop.propagate(FockVector::vacuum(63), 1.0), DimensionMismatch);
    CHECK_THROWS_AS(prop.propagate(FockVector::number_state(126, 127), 1.0), TruncationError);
}
