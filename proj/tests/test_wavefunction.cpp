#include <doctest.h>

#include <cmath>

#include "qmlab/wavefunction.hpp"

using namespace qmlab;

namespace {
const GridSpec kGrid{1, 256, 32.0};
const PhysicsParams kParams{};
}  // namespace

TEST_CASE("gaussian packet is normalized with the expected peak density") {
    const WaveFunction psi = gaussian_packet(kGrid, {0.0}, {1.0}, {0.0});
    CHECK(psi.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    // |psi(0)|^2 = (2 pi sigma^2)^(-1/2) = 0.398942 for sigma = 1
    const double rho0 = std::norm(psi[kGrid.n / 2]);
    CHECK(rho0 == doctest::Approx(0.3989422804014327).epsilon(1e-10));
}

TEST_CASE("overlap of displaced gaussians matches the analytic value") {
    const WaveFunction a = gaussian_packet(kGrid, {0.0}, {1.0}, {0.0});
    const WaveFunction b = gaussian_packet(kGrid, {2.0}, {1.0}, {0.0});
    // <g_0|g_a> = exp(-a^2 / 8 sigma^2) = exp(-1/2)
    CHECK(std::abs(inner_product(a, b)) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-10));
}

TEST_CASE("gaussian packet carries its wavevector as momentum") {
    const WaveFunction psi = gaussian_packet(kGrid, {-1.0}, {1.5}, {0.75});
    const auto p = momentum_expectation(psi, kParams);
    CHECK(p[0] == doctest::Approx(kParams.theta * 0.75).epsilon(1e-10));
    const auto x = position_expectation(psi);
    CHECK(x[0] == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("packet parked at the box edge is rejected") {
    CHECK_THROWS_AS(gaussian_packet(kGrid, {15.9}, {2.0}, {0.0}), BoundaryLeakError);
}

TEST_CASE("zero state cannot be normalized") {
    const WaveFunction zero(kGrid, std::vector<cdouble>(kGrid.size(), 0.0));
    CHECK_THROWS_AS(normalize(zero), ZeroNormError);
}

TEST_CASE("plane wave snaps to the momentum lattice and reports it") {
    const auto r = plane_wave(kGrid, {1.0}, kParams);
    CHECK(r.snapped);
    CHECK(r.mode[0] == 5);  // nearest lattice point to k = 1 at dk = 2 pi / 32
    CHECK(r.psi.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    const auto p = momentum_expectation(r.psi, kParams);
    CHECK(p[0] == doctest::Approx(r.momentum[0]).epsilon(1e-12));
    // exact lattice request does not snap
    const auto exact = plane_wave(kGrid, {2.0 * kPi * 5 / 32.0}, kParams);
    CHECK_FALSE(exact.snapped);
}

TEST_CASE("continuum normalization constants") {
    const auto r1 = plane_wave(kGrid, {0.5}, kParams);
    CHECK(r1.continuum_norm_constant ==
          doctest::Approx(std::pow(2.0 * kPi, -0.5)).epsilon(1e-14));
    const GridSpec g3{3, 16, 16.0};
    const auto r3 = plane_wave(g3, {0.0, 0.0, 0.0}, kParams);
    CHECK(r3.continuum_norm_constant == doctest::Approx(0.06349363593424097).epsilon(1e-12));
}

TEST_CASE("tail diagnostics see what they should") {
    const WaveFunction centered = gaussian_packet(kGrid, {0.0}, {1.0}, {0.0});
    CHECK(boundary_tail_mass(centered) < 1e-12);
    CHECK(spectral_tail_fraction(centered) < 1e-12);
    // a near-Nyquist plane wave is all spectral tail
    const auto r = plane_wave(kGrid, {kParams.theta * kPi * 256 / 32.0 * 0.95}, kParams);
    CHECK(spectral_tail_fraction(r.psi) == doctest::Approx(1.0));
}

TEST_CASE("mismatched amplitude count is rejected") {
    CHECK_THROWS_AS(WaveFunction(kGrid, std::vector<cdouble>(10)), GridMismatchError);
}
