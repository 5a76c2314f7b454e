#include <doctest.h>

#include <cmath>

#include "qmlab/dynamics.hpp"

using namespace qmlab;

namespace {
const GridSpec kGrid{1, 256, 32.0};
const PhysicsParams kParams{};
}  // namespace

TEST_CASE("free packet drifts at <p>/m") {
    const WaveFunction psi0 = gaussian_packet(kGrid, {-4.0}, {1.5}, {2.0});
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 1000;
    cfg.params = kParams;
    const Trajectory traj = evolve(psi0, Potential::none(), cfg);
    // <x>(T) = <x>(0) + (p/m) T
    CHECK(traj.obs.x.back()[0] ==
          doctest::Approx(-4.0 + 2.0 * 1.0).epsilon(1e-6));
    CHECK(traj.obs.p.back()[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(traj.obs.norm_sq.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("free evolution conserves momentum and energy") {
    const WaveFunction psi0 = gaussian_packet(kGrid, {-3.0}, {1.2}, {1.0});
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 500;
    cfg.params = kParams;
    const Trajectory traj = evolve(psi0, Potential::none(), cfg);
    const ConservationReport rep = conservation_check(traj, true);
    CHECK(rep.momentum_drift < 1e-12);
    CHECK(rep.energy_drift < 1e-12);
    CHECK(rep.norm_drift < 1e-13);
}

TEST_CASE("harmonic packet oscillates at the classical frequency") {
    // omega = sqrt(k/m) = 1; after a half period <x> flips sign
    const Potential pot = Potential::harmonic(1.0);
    const WaveFunction psi0 = gaussian_packet(kGrid, {-2.0}, {1.0}, {0.0});
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 3142;  // ~pi
    cfg.params = kParams;
    const Trajectory traj = evolve(psi0, pot, cfg);
    CHECK(traj.obs.x.back()[0] == doctest::Approx(2.0).epsilon(1e-3));
    const ConservationReport rep = conservation_check(traj, false);
    CHECK(rep.energy_drift < 1e-6);
}

TEST_CASE("evolution is linear") {
    const WaveFunction a = gaussian_packet(kGrid, {-2.0}, {1.0}, {0.5});
    const WaveFunction b = gaussian_packet(kGrid, {2.0}, {1.2}, {-0.4});
    std::vector<cdouble> mix(kGrid.size());
    const cdouble ca(0.6, 0.2), cb(-0.3, 0.7);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = ca * a[i] + cb * b[i];
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 100;
    cfg.snapshot_stride = 100;
    cfg.params = kParams;
    const Potential pot = Potential::gaussian_well(-0.8, 1.5);
    const auto ta = evolve(a, pot, cfg).snapshots.back();
    const auto tb = evolve(b, pot, cfg).snapshots.back();
    const auto tmix = evolve(WaveFunction(kGrid, mix), pot, cfg).snapshots.back();
    double worst = 0.0;
    for (std::size_t i = 0; i < mix.size(); ++i)
        worst = std::max(worst, std::abs(tmix[i] - (ca * ta[i] + cb * tb[i])));
    CHECK(worst < 1e-10);
}

TEST_CASE("phase frequency reproduces E = h nu") {
    GridSpec g;
    g.n = 128;
    g.length = 8.0 * kPi;  // p = 1 sits exactly on the momentum lattice
    // m = 1, p = 1: E = 1/2, nu = E/h = 1/(4 pi)
    const auto r1 = einstein_debroglie_check(g, {1.0}, 2.0, kParams);
    CHECK(r1.energy == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r1.frequency == doctest::Approx(0.07957747154594767).epsilon(1e-9));
    CHECK(std::abs(r1.ratio - 1.0) < 1e-9);

    // m = 2, p = 2: E = 1, nu = 1/(2 pi)
    PhysicsParams heavier;
    heavier.masses = {2.0};
    const auto r2 = einstein_debroglie_check(g, {2.0}, 2.0, heavier);
    CHECK(r2.energy == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r2.frequency == doctest::Approx(0.15915494309189535).epsilon(1e-9));

    // p = 0 is stationary
    const auto r0 = einstein_debroglie_check(g, {0.0}, 2.0, kParams);
    CHECK(r0.frequency < 1e-12);
}

TEST_CASE("the three velocity definitions agree on a free packet") {
    const WaveFunction psi0 = gaussian_packet(kGrid, {-5.0}, {1.5}, {2.0});
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 400;
    cfg.snapshot_stride = 40;
    cfg.params = kParams;
    const Trajectory traj = evolve(psi0, Potential::none(), cfg);
    const auto rep = velocity_operator_check(traj, Potential::none(), kParams);
    CHECK(rep.max_pairwise_error < 1e-6);
    for (double v : rep.v_momentum) CHECK(v == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("momentum-dependent potentials are rejected by the propagator") {
    const WaveFunction psi0 = gaussian_packet(kGrid, {0.0}, {1.0}, {0.0});
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 1;
    cfg.params = kParams;
    CHECK_THROWS_AS(evolve(psi0, Potential::momentum_dependent(), cfg),
                    UnsupportedPotentialError);
}

TEST_CASE("config validation") {
    const WaveFunction psi0 = gaussian_packet(kGrid, {0.0}, {1.0}, {0.0});
    EvolutionConfig cfg;
    cfg.dt = -1.0;
    cfg.steps = 10;
    cfg.params = kParams;
    CHECK_THROWS_AS(evolve(psi0, Potential::none(), cfg), ConfigInvalidError);
    cfg.dt = 1e-3;
    cfg.steps = 0;
    CHECK_THROWS_AS(evolve(psi0, Potential::none(), cfg), ConfigInvalidError);
}
