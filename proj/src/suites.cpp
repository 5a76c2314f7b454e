#include "qmlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

#include "qmlab/continuity.hpp"
#include "qmlab/dynamics.hpp"
#include "qmlab/hybrid.hpp"
#include "qmlab/io.hpp"
#include "qmlab/matrix_ops.hpp"
#include "qmlab/spectral_ops.hpp"
#include "qmlab/symmetry.hpp"
#include "qmlab/twobody.hpp"

namespace qmlab {
namespace {

using nlohmann::json;

std::string format_ratio(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", r);
    return buf;
}

/// eps_jkl for j,k,l in {0,1,2}.
int eps(int j, int k, int l) {
    if (j == k || k == l || j == l) return 0;
    // even permutations of (0,1,2)
    if ((j == 0 && k == 1 && l == 2) || (j == 1 && k == 2 && l == 0) ||
        (j == 2 && k == 0 && l == 1))
        return 1;
    return -1;
}

/// Runs one check: times the body, converts any exception into a failed check
/// (residual pinned far above any tolerance) so a module error never aborts
/// the suite.
struct Checker {
    VerificationReport& report;
    const RunConfig& cfg;

    void run(const std::string& id, const std::string& identity, double tolerance,
             const std::function<double()>& body) {
        CheckResult c;
        c.check_id = id;
        c.identity = identity;
        c.tolerance = tolerance * cfg.tolerance_scale;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.residual = body();
        } catch (const std::exception& e) {
            c.residual = 9e99;
            c.identity += std::string(" [error: ") + e.what() + "]";
        }
        c.runtime_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.pass = c.residual < c.tolerance;
        report.checks.push_back(std::move(c));
    }
};

GridSpec grid_1d(const RunConfig& cfg) {
    GridSpec g;
    g.dim = 1;
    g.n = cfg.grid_n;
    g.length = cfg.grid_length;
    return g;
}

PhysicsParams base_params(const RunConfig& cfg, std::vector<double> masses = {1.0}) {
    PhysicsParams p;
    p.theta = cfg.theta;
    p.h = cfg.h;
    p.masses = std::move(masses);
    return p;
}

// ---------------------------------------------------------------------------
// ccr

void suite_ccr(Checker& ck, const RunConfig& cfg) {
    ck.run("ccr.grid-expectation", "[x, p] = i theta on band-limited states", 1e-7, [&] {
        const GridSpec g = grid_1d(cfg);
        const PhysicsParams params = base_params(cfg);
        const SpectralOperator x = SpectralOperator::position(g);
        const SpectralOperator p = SpectralOperator::momentum(g, params);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const std::uint64_t s =
                fork_seed(cfg.seed, "ccr.grid-expectation/" + std::to_string(i));
            const WaveFunction psi = random_packet_superposition(g, s);
            const cdouble c = commutator_expectation(x, p, psi);
            worst = std::max(worst, std::abs(c - cdouble(0.0, params.theta)));
        }
        return worst;
    });

    ck.run("ccr.matrix-canonical", "[x_j, p_k] = i theta delta_jk on the safe subspace",
           1e-12, [&] {
               const int n = 12;
               const PhysicsParams params = base_params(cfg);
               const XpMatrices xp = build_xp_matrices(n, 2, params);
               const Mat proj = safe_projector(n, 2, default_safe_cutoff(n));
               const Mat id = Mat::Identity(xp.x[0].rows(), xp.x[0].cols());
               double worst = 0.0;
               for (int j = 0; j < 2; ++j)
                   for (int k = 0; k < 2; ++k) {
                       const Mat expected =
                           (j == k) ? Mat(cdouble(0.0, params.theta) * id) : Mat(0.0 * id);
                       worst = std::max(worst, projected_max_norm(
                                                   commutator(xp.x[j], xp.p[k]) - expected, proj));
                   }
               return worst;
           });

    ck.run("ccr.matrix-kinematic", "[x_j, x_k] = [p_j, p_k] = 0 on the safe subspace",
           1e-12, [&] {
               const int n = 12;
               const PhysicsParams params = base_params(cfg);
               const XpMatrices xp = build_xp_matrices(n, 2, params);
               const Mat proj = safe_projector(n, 2, default_safe_cutoff(n));
               double worst = 0.0;
               worst = std::max(worst, projected_max_norm(commutator(xp.x[0], xp.x[1]), proj));
               worst = std::max(worst, projected_max_norm(commutator(xp.p[0], xp.p[1]), proj));
               return worst;
           });
}

// ---------------------------------------------------------------------------
// rotation

void suite_rotation(Checker& ck, const RunConfig& cfg) {
    const int n = 8;
    const PhysicsParams params = base_params(cfg);

    ck.run("rotation.algebra", "[L_j, L_k] = i theta eps_jkl L_l on the safe subspace",
           1e-12, [&] {
               const auto l = build_rotation_generators(n, params);
               const Mat proj = safe_projector(n, 3, default_safe_cutoff(n));
               double worst = 0.0;
               for (int j = 0; j < 3; ++j)
                   for (int k = 0; k < 3; ++k) {
                       Mat expected = Mat::Zero(l[0].rows(), l[0].cols());
                       for (int m = 0; m < 3; ++m)
                           if (eps(j, k, m) != 0)
                               expected += cdouble(0.0, params.theta * eps(j, k, m)) * l[m];
                       worst = std::max(
                           worst, projected_max_norm(commutator(l[j], l[k]) - expected, proj));
                   }
               return worst;
           });

    ck.run("rotation.vector-position", "[L_j, x_k] = i theta eps_jkl x_l", 1e-12, [&] {
        const auto l = build_rotation_generators(n, params);
        const XpMatrices xp = build_xp_matrices(n, 3, params);
        std::array<Mat, 3> x{xp.x[0], xp.x[1], xp.x[2]};
        return check_vector_operator(l, x, params, n).max_residual;
    });

    ck.run("rotation.vector-momentum", "[L_j, p_k] = i theta eps_jkl p_l", 1e-12, [&] {
        const auto l = build_rotation_generators(n, params);
        const XpMatrices xp = build_xp_matrices(n, 3, params);
        std::array<Mat, 3> p{xp.p[0], xp.p[1], xp.p[2]};
        return check_vector_operator(l, p, params, n).max_residual;
    });

    ck.run("rotation.scalar-p2", "[L_j, p^2] = 0 on the safe subspace", 1e-12, [&] {
        const auto l = build_rotation_generators(n, params);
        const XpMatrices xp = build_xp_matrices(n, 3, params);
        Mat p2 = Mat::Zero(l[0].rows(), l[0].cols());
        for (int d = 0; d < 3; ++d) p2 += xp.p[d] * xp.p[d];
        const Mat proj = safe_projector(n, 3, default_safe_cutoff(n));
        double worst = 0.0;
        for (int j = 0; j < 3; ++j)
            worst = std::max(worst, projected_max_norm(commutator(l[j], p2), proj));
        return worst;
    });

    ck.run("rotation.exponential-unitary", "exp(-i phi.L / theta) is unitary", 1e-12, [&] {
        const auto l = build_rotation_generators(n, params);
        const Mat u = rotation_operator(l, {0.3, -0.4, 0.5}, params);
        const Mat id = Mat::Identity(u.rows(), u.cols());
        return (u.adjoint() * u - id).cwiseAbs().maxCoeff();
    });
}

// ---------------------------------------------------------------------------
// symmetry

void suite_symmetry(Checker& ck, const RunConfig& cfg) {
    const GridSpec g = grid_1d(cfg);
    const PhysicsParams params = base_params(cfg);
    const std::vector<double> mass_grid{0.5, 1.0, 2.0};
    const std::vector<double> velocity_grid{0.4, 1.0, 1.6};

    ck.run("symmetry.boost-momentum-shift", "p -> p + m V under a Galilean boost", 1e-9, [&] {
        double worst = 0.0;
        const WaveFunction psi = gaussian_packet(g, {-2.0}, {1.5}, {0.3});
        for (double m : mass_grid)
            for (double v_req : velocity_grid) {
                const auto v = commensurate_velocity(g, {v_req}, m, params);
                const auto before = momentum_expectation(psi, params);
                const WaveFunction boosted = galilean_boost(psi, v, 0.0, m, params);
                const auto after = momentum_expectation(boosted, params);
                worst = std::max(worst, std::abs(after[0] - (before[0] + m * v[0])));
            }
        return worst;
    });

    ck.run("symmetry.boost-factorization",
           "global phase x position phase x translation, both orderings", 1e-10, [&] {
               double worst = 0.0;
               const WaveFunction psi = gaussian_packet(g, {-2.0}, {1.5}, {0.3});
               for (double m : mass_grid)
                   for (double v_req : velocity_grid) {
                       const auto v = commensurate_velocity(g, {v_req}, m, params);
                       worst = std::max(
                           worst, boost_factorization_residual(psi, v, 0.8, m, params));
                   }
               return worst;
           });

    ck.run("symmetry.velocity-transform", "<v>' = <v> + V in the boosted frame", 1e-9, [&] {
        const WaveFunction psi = gaussian_packet(g, {-2.0}, {1.2}, {0.5});
        double worst = 0.0;
        for (double m : mass_grid) {
            const auto v = commensurate_velocity(g, {1.0}, m, params);
            worst = std::max(worst, velocity_transform_check(psi, v, m, params).max_error);
        }
        return worst;
    });

    ck.run("symmetry.translation-composition", "T(a) T(b) = T(a + b)", 1e-12, [&] {
        const std::uint64_t s = fork_seed(cfg.seed, "symmetry.translation-composition");
        const WaveFunction psi = random_packet_superposition(g, s);
        const WaveFunction lhs = translate(translate(psi, {1.3}), {-0.45});
        const WaveFunction rhs = translate(psi, {1.3 - 0.45});
        double acc = 0.0;
        for (std::size_t i = 0; i < lhs.size(); ++i) acc += std::norm(lhs[i] - rhs[i]);
        return std::sqrt(acc * g.volume_element());
    });

    ck.run("symmetry.galilean-generators-commute", "[G_j, G_k] = 0 with G = t p - m x",
           1e-12, [&] {
               const int n = 10;
               const XpMatrices xp = build_xp_matrices(n, 2, params);
               const double t = 0.7, m = 1.3;
               const Mat g0 = t * xp.p[0] - m * xp.x[0];
               const Mat g1 = t * xp.p[1] - m * xp.x[1];
               const Mat proj = safe_projector(n, 2, default_safe_cutoff(n));
               return projected_max_norm(commutator(g0, g1), proj);
           });
}

// ---------------------------------------------------------------------------
// continuity

void suite_continuity(Checker& ck, const RunConfig& cfg) {
    const PhysicsParams params = base_params(cfg);

    ck.run("continuity.divergence-1d", "div J_2n = psi* lap^n psi - (lap^n psi)* psi, n=1..3",
           1e-8, [&] {
               const GridSpec g = grid_1d(cfg);
               double worst = 0.0;
               for (int i = 0; i < 10; ++i) {
                   const std::uint64_t s =
                       fork_seed(cfg.seed, "continuity.divergence-1d/" + std::to_string(i));
                   const WaveFunction psi = random_packet_superposition(g, s);
                   for (int order = 1; order <= 3; ++order)
                       worst = std::max(worst, divergence_identity_residual(psi, order, params));
               }
               return worst;
           });

    ck.run("continuity.divergence-2d", "div J_2n = psi* lap^n psi - (lap^n psi)* psi, 2D",
           1e-8, [&] {
               GridSpec g = grid_1d(cfg);
               g.dim = 2;
               g.n = std::min(g.n, 128);
               double worst = 0.0;
               for (int i = 0; i < 10; ++i) {
                   const std::uint64_t s =
                       fork_seed(cfg.seed, "continuity.divergence-2d/" + std::to_string(i));
                   const WaveFunction psi = random_packet_superposition(g, s);
                   for (int order = 1; order <= 3; ++order)
                       worst = std::max(worst, divergence_identity_residual(psi, order, params));
               }
               return worst;
           });

    ck.run("continuity.global-conservation", "integral of div J_2n over the box vanishes",
           1e-10, [&] {
               const GridSpec g = grid_1d(cfg);
               double worst = 0.0;
               for (int i = 0; i < 5; ++i) {
                   const std::uint64_t s = fork_seed(
                       cfg.seed, "continuity.global-conservation/" + std::to_string(i));
                   const WaveFunction psi = random_packet_superposition(g, s);
                   for (int order = 1; order <= 3; ++order)
                       worst = std::max(worst, global_conservation_residual(psi, order, params));
               }
               return worst;
           });

    const GridSpec g = grid_1d(cfg);
    const WaveFunction psi0 = gaussian_packet(g, {-3.0}, {1.5}, {0.5});
    const Potential well = Potential::gaussian_well(-1.0, 2.0);

    auto evolution_residual = [&](const Potential& pot, double dt,
                                  std::vector<std::vector<double>>* rows) {
        EvolutionConfig ec;
        ec.dt = dt;
        ec.steps = 40;
        ec.snapshot_stride = 1;
        ec.params = params;
        const Trajectory traj = evolve(psi0, pot, ec);
        const auto res = continuity_residual(traj.snapshots, dt, params.mass(0), params);
        double worst = 0.0;
        for (std::size_t i = 0; i < res.size(); ++i) {
            worst = std::max(worst, res[i]);
            if (rows) rows->push_back({traj.snapshot_times[i + 1], res[i]});
        }
        return worst;
    };

    double res_free_dt = 0.0, res_well_dt = 0.0;
    ck.run("continuity.evolution-free", "d rho/dt + div J = 0 under free evolution", 1e-6, [&] {
        std::vector<std::vector<double>> rows;
        res_free_dt = evolution_residual(Potential::none(), cfg.dt, &rows);
        write_series_csv(cfg.output_dir / "continuity-free-residual.csv", "t,residual", rows);
        return res_free_dt;
    });
    ck.run("continuity.evolution-well", "d rho/dt + div J = 0 in a gaussian well", 1e-6, [&] {
        std::vector<std::vector<double>> rows;
        res_well_dt = evolution_residual(well, cfg.dt, &rows);
        write_series_csv(cfg.output_dir / "continuity-well-residual.csv", "t,residual", rows);
        return res_well_dt;
    });
    ck.run("continuity.order-free", "halving dt reduces the free residual ~4x", 0.5, [&] {
        const double res_half = evolution_residual(Potential::none(), 0.5 * cfg.dt, nullptr);
        return std::abs(res_free_dt / res_half - 4.0);
    });
    ck.run("continuity.order-well", "halving dt reduces the well residual ~4x", 0.5, [&] {
        const double res_half = evolution_residual(well, 0.5 * cfg.dt, nullptr);
        return std::abs(res_well_dt / res_half - 4.0);
    });

    const WaveFunction probe0 = gaussian_packet(g, {0.0}, {2.0}, {0.5});
    double floor_clean = 0.0, broken_01 = 0.0;
    ck.run("continuity.broken-floor",
           "a first-order momentum term breaks local continuity (>100x floor)", 1.0, [&] {
               floor_clean =
                   broken_continuity_probe(probe0, 0.0, 1.0, params, cfg.dt, 40).max_residual;
               broken_01 =
                   broken_continuity_probe(probe0, 0.1, 1.0, params, cfg.dt, 40).max_residual;
               return 100.0 * floor_clean / broken_01;
           });
    ck.run("continuity.broken-linearity", "violation is linear in the forbidden coefficient",
           0.4, [&] {
               const double broken_02 =
                   broken_continuity_probe(probe0, 0.2, 1.0, params, cfg.dt, 40).max_residual;
               return std::abs(broken_02 / broken_01 - 2.0);
           });
}

// ---------------------------------------------------------------------------
// dynamics

void suite_dynamics(Checker& ck, const RunConfig& cfg) {
    const GridSpec g = grid_1d(cfg);

    const std::vector<std::pair<double, double>> edb_pairs{{1.0, 1.0}, {2.0, 2.0}, {1.0, 3.0}};
    for (const auto& [m, p] : edb_pairs) {
        const std::string id =
            "dynamics.edb-m" + format_ratio(m) + "-p" + format_ratio(p);
        ck.run(id, "E = h nu from the evolved phase", 1e-6, [&, m = m, p = p] {
            const PhysicsParams params = base_params(cfg, {m});
            const auto r = einstein_debroglie_check(g, {p}, 2.0, params);
            return std::abs(r.ratio - 1.0);
        });
    }

    const PhysicsParams params = base_params(cfg);

    ck.run("dynamics.velocity-free", "d<x>/dt = <(2 pi / i h)[x, H]> = <p>/m, free packet",
           1e-6, [&] {
               const WaveFunction psi = gaussian_packet(g, {-5.0}, {1.5}, {2.0 / params.theta});
               EvolutionConfig ec;
               ec.dt = cfg.dt;
               ec.steps = 1000;
               ec.snapshot_stride = 50;
               ec.params = params;
               const Trajectory traj = evolve(psi, Potential::none(), ec);
               return velocity_operator_check(traj, Potential::none(), params)
                   .max_pairwise_error;
           });

    ck.run("dynamics.velocity-harmonic",
           "d<x>/dt = <(2 pi / i h)[x, H]> = <p>/m inside a harmonic well", 1e-5, [&] {
               const Potential pot = Potential::harmonic(1.0);
               const WaveFunction psi = gaussian_packet(g, {-2.0}, {1.0}, {0.0});
               EvolutionConfig ec;
               ec.dt = cfg.dt;
               ec.steps = 1570;  // about a quarter period
               ec.snapshot_stride = 10;
               ec.params = params;
               const Trajectory traj = evolve(psi, pot, ec);
               const auto rep = velocity_operator_check(traj, pot, params);
               std::vector<std::vector<double>> rows;
               for (std::size_t i = 0; i < rep.t.size(); ++i)
                   rows.push_back({rep.t[i], rep.v_numeric[i], rep.v_commutator[i],
                                   rep.v_momentum[i]});
               write_series_csv(cfg.output_dir / "dynamics-velocity-harmonic.csv",
                                "t,v_numeric,v_commutator,v_momentum", rows);
               return rep.max_pairwise_error;
           });

    // one free and one well run shared by the conservation checks
    const WaveFunction free0 = gaussian_packet(g, {-4.0}, {1.5}, {1.0});
    EvolutionConfig free_cfg;
    free_cfg.dt = cfg.dt;
    free_cfg.steps = 2000;
    free_cfg.params = params;
    const Trajectory free_traj = evolve(free0, Potential::none(), free_cfg);
    const ConservationReport free_rep = conservation_check(free_traj, true);

    ck.run("dynamics.conservation-free-momentum", "<p> constant for V = 0", 1e-10,
           [&] { return free_rep.momentum_drift; });
    ck.run("dynamics.conservation-free-energy", "<H> constant for V = 0", 1e-10,
           [&] { return free_rep.energy_drift; });

    const Potential well = Potential::gaussian_well(-1.0, 2.0);
    const WaveFunction well0 = gaussian_packet(g, {-3.0}, {1.5}, {0.4});
    EvolutionConfig well_cfg;
    well_cfg.dt = cfg.dt;
    well_cfg.steps = 10000;
    well_cfg.params = params;
    const Trajectory well_traj = evolve(well0, well, well_cfg);
    const ConservationReport well_rep = conservation_check(well_traj, false);

    ck.run("dynamics.conservation-well-energy", "<H> constant in a gaussian well over T=10",
           1e-7, [&] { return well_rep.energy_drift; });
    ck.run("dynamics.unitarity", "norm preserved by the split-step propagator", 1e-12,
           [&] { return well_rep.norm_drift; });

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < well_traj.obs.t.size(); i += 100)
        rows.push_back({well_traj.obs.t[i], well_traj.obs.x[i][0], well_traj.obs.p[i][0],
                        well_traj.obs.energy[i], well_traj.obs.norm_sq[i]});
    write_series_csv(cfg.output_dir / "dynamics-well-observables.csv", "t,x,p,energy,norm_sq",
                     rows);
}

// ---------------------------------------------------------------------------
// twobody

WaveFunction particle_product(const GridSpec& g2, const WaveFunction& a,
                              const WaveFunction& b) {
    std::vector<cdouble> amp(g2.size());
    for (std::size_t i = 0; i < amp.size(); ++i) {
        const auto idx = g2.unflatten(i);
        amp[i] = a[idx[0]] * b[idx[1]];
    }
    return normalize(WaveFunction(g2, std::move(amp)));
}

void suite_twobody(Checker& ck, const RunConfig& cfg) {
    ck.run("twobody.reduced-mass", "mu = m1 m2 / (m1 + m2)", 1e-15, [&] {
        return std::abs(reduced_mass(1.0, 3.0) - 0.75) + std::abs(reduced_mass(2.0, 2.0) - 1.0);
    });

    const PhysicsParams params = base_params(cfg, {1.0, 3.0});

    ck.run("twobody.com-commutators",
           "[X, P] = [x, p] = i theta, cross commutators vanish", 1e-12,
           [&] { return com_commutator_check(12, 1.0, 3.0, params).max_residual; });

    GridSpec g1;
    g1.dim = 1;
    g1.n = 128;
    g1.length = 24.0;
    GridSpec g2 = g1;
    g2.dim = 2;

    const Potential well = Potential::gaussian_well(-1.0, 1.0);

    ck.run("twobody.com-separation",
           "two-body evolution = COM evolution x relative evolution", 1e-6, [&] {
               // a roomier box than g1: the spreading relative packet must not
               // reach the seam, where the 1D and 2D torus wraps disagree
               GridSpec gs = g1;
               gs.length = 32.0;
               const ComCoordinates cc{1.0, 3.0};
               const WaveFunction com0 = gaussian_packet(gs, {0.0}, {1.5}, {0.0});
               const WaveFunction rel0 = gaussian_packet(gs, {0.8}, {0.9}, {0.0});
               EvolutionConfig ec;
               ec.dt = cfg.dt;
               ec.steps = 3000;
               ec.snapshot_stride = 1000;
               ec.params = params;
               const auto rep = com_separation_check(com0, rel0, cc, well, ec);
               std::vector<std::vector<double>> rows;
               for (std::size_t i = 0; i < rep.t.size(); ++i)
                   rows.push_back({rep.t[i], rep.fidelity[i]});
               write_series_csv(cfg.output_dir / "twobody-fidelity.csv", "t,fidelity", rows);
               return 1.0 - rep.min_fidelity;
           });

    ck.run("twobody.separable-free", "V = 0 keeps COM and relative factors separable",
           1e-8, [&] {
               const ComCoordinates cc{1.0, 1.0};
               const WaveFunction com0 = gaussian_packet(g1, {0.0}, {1.2}, {0.0});
               const WaveFunction rel0 = gaussian_packet(g1, {0.5}, {1.0}, {0.0});
               EvolutionConfig ec;
               ec.dt = cfg.dt;
               ec.steps = 2000;
               ec.snapshot_stride = 500;
               ec.params = base_params(cfg, {1.0, 1.0});
               return 1.0 - com_separation_check(com0, rel0, cc, Potential::none(), ec)
                                .min_fidelity;
           });

    // shared interacting equal-mass run for the conservation checks
    const PhysicsParams params11 = base_params(cfg, {1.0, 1.0});
    const WaveFunction p1 = gaussian_packet(g1, {-1.5}, {1.0}, {0.8});
    const WaveFunction p2 = gaussian_packet(g1, {1.5}, {1.0}, {-0.3});
    const TwoBodyState state{particle_product(g2, p1, p2), params11};
    EvolutionConfig run_cfg;
    run_cfg.dt = cfg.dt;
    run_cfg.steps = 5000;
    run_cfg.snapshot_stride = 5000;  // keep only the endpoints
    run_cfg.params = params11;
    TwoBodyTrajectory traj;
    bool have_traj = false;
    auto ensure_traj = [&] {
        if (!have_traj) {
            traj = evolve_two_body(state, well, run_cfg);
            have_traj = true;
        }
    };

    ck.run("twobody.momentum-conservation", "<p1 + p2> conserved under V(x1 - x2)", 1e-9, [&] {
        ensure_traj();
        const double p0 = traj.obs.p1.front() + traj.obs.p2.front();
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.obs.t.size(); ++i)
            worst = std::max(worst, std::abs(traj.obs.p1[i] + traj.obs.p2[i] - p0));
        return worst;
    });
    ck.run("twobody.energy-drift", "<H> conserved under V(x1 - x2)", 1e-6, [&] {
        ensure_traj();
        const double e0 = traj.obs.energy.front();
        double worst = 0.0;
        for (double e : traj.obs.energy) worst = std::max(worst, std::abs(e - e0));
        return worst / std::max(std::abs(e0), 1e-12);
    });
    ck.run("twobody.marginal-norms", "each particle's marginal integrates to 1", 1e-10, [&] {
        ensure_traj();
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.obs.t.size(); ++i) {
            worst = std::max(worst, std::abs(traj.obs.marginal1_norm[i] - 1.0));
            worst = std::max(worst, std::abs(traj.obs.marginal2_norm[i] - 1.0));
        }
        return worst;
    });

    ck.run("twobody.continuity", "d rho/dt + div1 J1 + div2 J2 = 0 for local V", 1e-6, [&] {
        EvolutionConfig short_cfg = run_cfg;
        short_cfg.steps = 40;
        short_cfg.snapshot_stride = 1;
        const TwoBodyTrajectory t = evolve_two_body(state, well, short_cfg);
        const auto res = two_body_continuity_residual(t, params11);
        return *std::max_element(res.begin(), res.end());
    });

    ck.run("twobody.continuity-stationary", "stationary product density has zero defect",
           1e-10, [&] {
               const double dk = 2.0 * kPi / g1.length;
               const auto pw1 = plane_wave(g1, {params11.theta * 3.0 * dk}, params11);
               const auto pw2 = plane_wave(g1, {-params11.theta * 2.0 * dk}, params11);
               const TwoBodyState s{particle_product(g2, pw1.psi, pw2.psi), params11};
               EvolutionConfig short_cfg = run_cfg;
               short_cfg.steps = 10;
               short_cfg.snapshot_stride = 1;
               const TwoBodyTrajectory t = evolve_two_body(s, Potential::none(), short_cfg);
               const auto res = two_body_continuity_residual(t, params11);
               return *std::max_element(res.begin(), res.end());
           });

    // marginal densities of the interacting run's final state
    ensure_traj();
    std::vector<std::vector<double>> rows;
    const auto rho1 = marginal_density(traj.snapshots.back(), 0);
    const auto rho2 = marginal_density(traj.snapshots.back(), 1);
    for (int i = 0; i < g1.n; ++i) rows.push_back({g1.coord(i), rho1[i], rho2[i]});
    write_series_csv(cfg.output_dir / "twobody-marginals.csv", "x,rho1,rho2", rows);
}

// ---------------------------------------------------------------------------
// hybrid

void suite_hybrid(Checker& ck, const RunConfig& cfg) {
    const GridSpec g = grid_1d(cfg);
    const CouplingPotential coupling = CouplingPotential::gaussian_well(-1.0, 1.0);
    json sweep_summary;

    for (double ratio : cfg.theta_over_hbar) {
        const std::string tag = "hybrid.theta-" + format_ratio(ratio);
        PhysicsParams params = base_params(cfg);
        params.theta = ratio * params.hbar();

        const HybridState state0{
            {0.0}, {0.0}, 10.0, gaussian_packet(g, {1.5}, {1.0}, {0.0}), 0.0};

        EvolutionConfig ec;
        ec.dt = cfg.dt;
        ec.steps = 10000;
        ec.params = params;

        const HybridRunResult run = run_hybrid(state0, coupling, ec);
        const MomentumDriftReport drift = total_momentum_drift(run, params);
        const double prefactor = 2.0 * kPi * params.theta / params.h - 1.0;

        if (std::abs(prefactor) < 1e-12) {
            ck.run(tag + ".momentum-conservation",
                   "P + <p> conserved exactly when theta = h/(2 pi)", 1e-8,
                   [&] { return drift.max_total_change; });
        } else {
            ck.run(tag + ".drift-prediction",
                   "d(P + <p>)/dt = (2 pi theta / h - 1) grad_R<V>", 1e-2,
                   [&] { return drift.max_relative_mismatch; });
        }
        ck.run(tag + ".energy-conservation", "total energy conserved for every theta", 1e-6,
               [&] { return drift.max_energy_drift_relative; });

        std::vector<std::vector<double>> rows;
        const HybridSeries& s = run.series;
        for (std::size_t i = 0; i + 1 < s.t.size(); i += 20)
            rows.push_back({s.t[i], s.r_cl[i][0], s.p_cl[i][0], s.x_q[i][0], s.p_q[i][0],
                            s.p_cl[i][0] + s.p_q[i][0], s.energy[i], drift.measured[i][0],
                            drift.predicted[i][0]});
        write_series_csv(cfg.output_dir / ("hybrid-run-theta-" + format_ratio(ratio) + ".csv"),
                         "t,R,P,x,p,total_p,energy,drift_measured,drift_predicted", rows);

        sweep_summary[format_ratio(ratio)] = {
            {"max_total_momentum_change", drift.max_total_change},
            {"max_drift_mismatch", drift.max_relative_mismatch},
            {"max_energy_drift_relative", drift.max_energy_drift_relative},
            {"prefactor", prefactor}};
    }

    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream out(cfg.output_dir / "hybrid-sweep.json");
    out << sweep_summary.dump(2) << "\n";
}

}  // namespace

// ---------------------------------------------------------------------------
// config plumbing

const std::vector<std::string>& RunConfig::known_suites() {
    static const std::vector<std::string> suites{
        "ccr", "rotation", "symmetry", "continuity",
        "dynamics", "twobody", "hybrid-theta-sweep", "all"};
    return suites;
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig cfg;
    try {
        cfg.suite = j.value("suite", cfg.suite);
        cfg.seed = j.value("seed", cfg.seed);
        if (j.contains("output_dir"))
            cfg.output_dir = j["output_dir"].get<std::string>();
        if (j.contains("grid")) {
            cfg.grid_n = j["grid"].value("n", cfg.grid_n);
            cfg.grid_length = j["grid"].value("length", cfg.grid_length);
        }
        if (j.contains("physics")) {
            cfg.theta = j["physics"].value("theta", cfg.theta);
            cfg.h = j["physics"].value("h", cfg.h);
        }
        cfg.dt = j.value("dt", cfg.dt);
        if (j.contains("theta_over_hbar"))
            cfg.theta_over_hbar = j["theta_over_hbar"].get<std::vector<double>>();
        cfg.tolerance_scale = j.value("tolerance_scale", cfg.tolerance_scale);
    } catch (const json::exception& e) {
        throw ConfigInvalidError("bad config: " + std::string(e.what()));
    }
    cfg.validate();
    return cfg;
}

json RunConfig::echo() const {
    return {{"suite", suite},
            {"seed", seed},
            {"output_dir", output_dir.string()},
            {"grid", {{"n", grid_n}, {"length", grid_length}}},
            {"physics", {{"theta", theta}, {"h", h}}},
            {"dt", dt},
            {"theta_over_hbar", theta_over_hbar},
            {"tolerance_scale", tolerance_scale}};
}

void RunConfig::validate() const {
    const auto& suites = known_suites();
    if (std::find(suites.begin(), suites.end(), suite) == suites.end())
        throw ConfigInvalidError("unknown suite: " + suite);
    GridSpec g;
    g.dim = 1;
    g.n = grid_n;
    g.length = grid_length;
    g.validate();
    if (!(dt > 0.0)) throw ConfigInvalidError("dt must be positive");
    if (!(tolerance_scale > 0.0)) throw ConfigInvalidError("tolerance_scale must be positive");
    if (!(theta > 0.0) || !(h > 0.0)) throw ConfigInvalidError("theta and h must be positive");
    if (theta_over_hbar.empty()) throw ConfigInvalidError("theta_over_hbar must be non-empty");
    for (double r : theta_over_hbar)
        if (!(r > 0.0)) throw ConfigInvalidError("theta/hbar ratios must be positive");
}

double DeterministicRng::uniform() {
    // top 53 bits of the raw engine output, exactly reproducible everywhere
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double DeterministicRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double DeterministicRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
}

std::uint64_t fork_seed(std::uint64_t base, const std::string& check_id) {
    return fnv1a(check_id, fnv1a(&base, sizeof base));
}

WaveFunction random_packet_superposition(const GridSpec& grid, std::uint64_t seed,
                                         int packets) {
    DeterministicRng rng(seed);
    std::vector<cdouble> amp(grid.size(), 0.0);
    for (int q = 0; q < packets; ++q) {
        std::array<double, 3> center{}, width{}, k0{};
        for (int d = 0; d < grid.dim; ++d) {
            center[d] = rng.uniform(-grid.length / 8.0, grid.length / 8.0);
            width[d] = rng.uniform(0.9, 1.4);
            k0[d] = rng.uniform(-2.0, 2.0);
        }
        const cdouble coef(rng.normal(), rng.normal());
        // periodized per-axis factors; an unwrapped envelope would leave a
        // spectral seam at the box edge that high-order derivatives amplify
        std::vector<std::vector<cdouble>> axis_factor(
            grid.dim, std::vector<cdouble>(grid.n));
        for (int d = 0; d < grid.dim; ++d)
            for (int i = 0; i < grid.n; ++i) {
                const double x = grid.coord(i);
                cdouble f = 0.0;
                for (int m = -2; m <= 2; ++m) {
                    const double u = x + m * grid.length - center[d];
                    f += std::exp(cdouble(-u * u / (4.0 * width[d] * width[d]),
                                          k0[d] * (x + m * grid.length)));
                }
                axis_factor[d][i] = f;
            }
        for (std::size_t i = 0; i < amp.size(); ++i) {
            const auto idx = grid.unflatten(i);
            cdouble v = coef;
            for (int d = 0; d < grid.dim; ++d) v *= axis_factor[d][idx[d]];
            amp[i] += v;
        }
    }
    return normalize(WaveFunction(grid, std::move(amp)));
}

VerificationReport run_suite(const RunConfig& config) {
    config.validate();
    std::filesystem::create_directories(config.output_dir);

    VerificationReport report;
    report.suite = config.suite;
    report.config_echo = config.echo();
    Checker ck{report, config};

    const bool all = config.suite == "all";
    if (all || config.suite == "ccr") suite_ccr(ck, config);
    if (all || config.suite == "rotation") suite_rotation(ck, config);
    if (all || config.suite == "symmetry") suite_symmetry(ck, config);
    if (all || config.suite == "continuity") suite_continuity(ck, config);
    if (all || config.suite == "dynamics") suite_dynamics(ck, config);
    if (all || config.suite == "twobody") suite_twobody(ck, config);
    if (all || config.suite == "hybrid-theta-sweep") suite_hybrid(ck, config);

    write_report(config.output_dir / (config.suite + "-report.json"), report);
    return report;
}

}  // namespace qmlab
