#include <doctest.h>

#include <cmath>

#include "qmlab/spectral_ops.hpp"

using namespace qmlab;

namespace {
const GridSpec kGrid{1, 256, 32.0};
const PhysicsParams kParams{};
}  // namespace

TEST_CASE("position operator multiplies by the coordinate") {
    const WaveFunction psi = gaussian_packet(kGrid, {1.5, }, {1.0}, {0.0});
    const SpectralOperator x = SpectralOperator::position(kGrid);
    CHECK(expectation(x, psi).real() == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(std::abs(expectation(x, psi).imag()) < 1e-12);
}

TEST_CASE("momentum operator returns theta k on a plane wave") {
    const auto r = plane_wave(kGrid, {2.0 * kPi * 4 / 32.0}, kParams);
    const SpectralOperator p = SpectralOperator::momentum(kGrid, kParams);
    CHECK(expectation(p, r.psi).real() == doctest::Approx(r.momentum[0]).epsilon(1e-12));
}

TEST_CASE("free hamiltonian expectation on a gaussian") {
    // <H> = theta^2 (k0^2 + 1/(4 sigma^2)) h / (4 pi theta m); in default
    // units (theta = 1, h = 2 pi, m = 1) this is k0^2/2 + 1/(8 sigma^2)
    const double sigma = 1.25, k0 = 0.8;
    const WaveFunction psi = gaussian_packet(kGrid, {0.0}, {sigma}, {k0});
    const SpectralOperator h = SpectralOperator::free_hamiltonian(kGrid, kParams);
    const double expected = 0.5 * k0 * k0 + 1.0 / (8.0 * sigma * sigma);
    CHECK(expectation(h, psi).real() == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("free hamiltonian scales with mass and theta") {
    const double sigma = 1.0;
    PhysicsParams params;
    params.theta = 2.0;
    params.masses = {4.0};
    const WaveFunction psi = gaussian_packet(kGrid, {0.0}, {sigma}, {0.0});
    const SpectralOperator h = SpectralOperator::free_hamiltonian(kGrid, params);
    // <p^2> = theta^2 / (4 sigma^2); <H> = (h / 4 pi theta m) <p^2>
    const double p2 = params.theta * params.theta / (4.0 * sigma * sigma);
    const double expected = params.h / (4.0 * kPi * params.theta * 4.0) * p2;
    CHECK(expectation(h, psi).real() == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("canonical commutator expectation on a localized state") {
    const WaveFunction psi = gaussian_packet(kGrid, {0.5}, {1.2}, {0.6});
    const SpectralOperator x = SpectralOperator::position(kGrid);
    const SpectralOperator p = SpectralOperator::momentum(kGrid, kParams);
    const cdouble c = commutator_expectation(x, p, psi);
    CHECK(std::abs(c - cdouble(0.0, kParams.theta)) < 1e-10);
}

TEST_CASE("function-of-r and function-of-p operators") {
    const WaveFunction psi = gaussian_packet(kGrid, {0.0}, {1.0}, {0.5});
    const SpectralOperator v = SpectralOperator::function_of_r(
        kGrid, [](const std::vector<double>& r) { return r[0] * r[0]; }, "x^2");
    // <x^2> of a centered gaussian is sigma^2
    CHECK(expectation(v, psi).real() == doctest::Approx(1.0).epsilon(1e-9));
    const SpectralOperator p2 = SpectralOperator::function_of_p(
        kGrid, kParams, [](const std::vector<double>& p) { return p[0] * p[0]; }, "p^2");
    CHECK(expectation(p2, psi).real() ==
          doctest::Approx(0.25 + 0.25).epsilon(1e-9));  // k0^2 + 1/(4 sigma^2)
}

TEST_CASE("operators refuse mismatched grids") {
    const GridSpec other{1, 128, 32.0};
    const WaveFunction psi = gaussian_packet(other, {0.0}, {1.0}, {0.0});
    const SpectralOperator x = SpectralOperator::position(kGrid);
    CHECK_THROWS_AS(x.apply(psi), GridMismatchError);
}
