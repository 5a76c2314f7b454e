#include <doctest.h>

#include <cmath>

#include "qmlab/hybrid.hpp"

using namespace qmlab;

namespace {
const GridSpec kGrid{1, 256, 32.0};

PhysicsParams params_with_theta(double ratio) {
    PhysicsParams p;
    p.theta = ratio * p.hbar();
    return p;
}
}  // namespace

TEST_CASE("decoupled classical particle flies freely") {
    const HybridState state0{{1.0}, {2.0}, 4.0,
                             gaussian_packet(kGrid, {-3.0}, {1.0}, {1.0}), 0.0};
    const CouplingPotential coupling = CouplingPotential::gaussian_well(0.0, 1.0);
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 1000;
    cfg.params = PhysicsParams{};
    const auto run = run_hybrid(state0, coupling, cfg);
    // R(T) = R0 + (P0/M) T, and the packet keeps its own free drift
    CHECK(run.final_state.r_cl[0] == doctest::Approx(1.0 + 0.5 * 1.0).epsilon(1e-10));
    CHECK(run.final_state.p_cl[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(run.series.x_q.back()[0] == doctest::Approx(-3.0 + 1.0).epsilon(1e-6));
    CHECK(run.series.norm_sq.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a symmetric configuration exerts no force") {
    // packet centered exactly at R: <grad V(R - r)> = 0 by parity
    const HybridState state0{{0.0}, {0.0}, 5.0,
                             gaussian_packet(kGrid, {0.0}, {1.0}, {0.0}), 0.0};
    const CouplingPotential coupling = CouplingPotential::gaussian_well(-1.0, 1.5);
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 200;
    cfg.params = PhysicsParams{};
    const auto run = run_hybrid(state0, coupling, cfg);
    CHECK(std::abs(run.final_state.r_cl[0]) < 1e-10);
    CHECK(std::abs(run.final_state.p_cl[0]) < 1e-10);
    for (const auto& f : run.series.force_begin) CHECK(std::abs(f[0]) < 1e-12);
}

TEST_CASE("total momentum is conserved at theta = h / 2 pi") {
    const PhysicsParams params = params_with_theta(1.0);
    const HybridState state0{{0.0}, {0.0}, 10.0,
                             gaussian_packet(kGrid, {1.5}, {1.0}, {0.0}), 0.0};
    const CouplingPotential coupling = CouplingPotential::gaussian_well(-1.0, 1.0);
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 2000;
    cfg.params = params;
    const auto run = run_hybrid(state0, coupling, cfg);
    const auto rep = total_momentum_drift(run, params);
    CHECK(rep.max_total_change < 1e-9);
    CHECK(rep.max_energy_drift_relative < 1e-5);
}

TEST_CASE("momentum drift matches the prediction away from theta = h / 2 pi") {
    const PhysicsParams params = params_with_theta(2.0);
    const HybridState state0{{0.0}, {0.0}, 10.0,
                             gaussian_packet(kGrid, {1.5}, {1.0}, {0.0}), 0.0};
    const CouplingPotential coupling = CouplingPotential::gaussian_well(-1.0, 1.0);
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 2000;
    cfg.params = params;
    const auto run = run_hybrid(state0, coupling, cfg);
    const auto rep = total_momentum_drift(run, params);
    // the drift is real: the total momentum actually moves
    CHECK(rep.max_total_change > 1e-4);
    CHECK(rep.max_relative_mismatch < 1e-2);
}

TEST_CASE("one step is time-reversible") {
    const PhysicsParams params = params_with_theta(1.3);
    const HybridState state0{{0.4}, {1.1}, 3.0,
                             gaussian_packet(kGrid, {-1.0}, {1.2}, {0.7}), 0.0};
    const CouplingPotential coupling = CouplingPotential::gaussian_well(-0.8, 1.2);
    EvolutionConfig fwd;
    fwd.dt = 1e-2;
    fwd.steps = 1;
    fwd.params = params;
    EvolutionConfig bwd = fwd;
    bwd.dt = -1e-2;
    const HybridState mid = hybrid_step(state0, fwd, coupling);
    const HybridState back = hybrid_step(mid, bwd, coupling);
    CHECK(back.r_cl[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(back.p_cl[0] == doctest::Approx(1.1).epsilon(1e-12));
    double worst = 0.0;
    for (std::size_t i = 0; i < back.psi.size(); ++i)
        worst = std::max(worst, std::abs(back.psi[i] - state0.psi[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("total energy splits into classical and quantum parts") {
    const PhysicsParams params = params_with_theta(1.0);
    const WaveFunction psi = gaussian_packet(kGrid, {5.0}, {1.0}, {0.0});
    const HybridState state{{-5.0}, {3.0}, 2.0, psi, 0.0};
    // particle and packet far apart: coupling contributes ~nothing
    const CouplingPotential coupling = CouplingPotential::gaussian_well(-1.0, 0.5);
    const double e = total_energy(state, coupling, params);
    // P^2/2M + <T> = 9/4 + 1/(8 sigma^2)
    CHECK(e == doctest::Approx(2.25 + 0.125).epsilon(1e-6));
}
