#include "qmlab/twobody.hpp"

#include <cmath>

namespace qmlab {
namespace {

/// Pointwise value of an analytic relative potential at separation u
/// (already minimum-imaged). Sampled tables have no off-grid meaning here.
double relative_potential_value(const Potential& pot, double u) {
    switch (pot.kind) {
        case Potential::Kind::None:
            return 0.0;
        case Potential::Kind::Harmonic: {
            const double c = pot.center.empty() ? 0.0 : pot.center[0];
            const double d = u - c;
            return 0.5 * pot.spring_constant * d * d;
        }
        case Potential::Kind::GaussianWell: {
            const double c = pot.center.empty() ? 0.0 : pot.center[0];
            const double d = u - c;
            return pot.well_depth * std::exp(-d * d / (2.0 * pot.well_width * pot.well_width));
        }
        case Potential::Kind::Sampled:
            throw UnsupportedPotentialError(
                "two-body interaction must be analytic (none/harmonic/gaussian well)");
        case Potential::Kind::MomentumDependent:
            throw UnsupportedPotentialError("momentum-dependent interactions are not propagated");
    }
    return 0.0;
}

GridSpec axis_grid(const GridSpec& grid2d) {
    GridSpec g1;
    g1.dim = 1;
    g1.n = grid2d.n;
    g1.length = grid2d.length;
    return g1;
}

std::vector<double> spectral_divergence_axis(const GridSpec& g,
                                             const std::vector<double>& comp, int axis) {
    std::vector<cdouble> f(comp.begin(), comp.end());
    fft_forward(g, f);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double k = g.wavenumber(g.unflatten(i)[axis]);
        f[i] *= cdouble(0.0, k);
    }
    fft_backward_normalized(g, f);
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i].real();
    return out;
}

}  // namespace

double reduced_mass(double m1, double m2) {
    if (!(m1 > 0.0) || !(m2 > 0.0))
        throw NonpositiveMassError("reduced_mass: masses must be positive");
    return m1 * m2 / (m1 + m2);
}

void TwoBodyState::validate() const {
    params.validate();
    if (params.masses.size() < 2)
        throw ConfigInvalidError("two-body state needs two masses");
    if (psi.grid().dim != 2)
        throw ConfigInvalidError("two-body state needs a 2D configuration grid");
}

TwoBodyTrajectory evolve_two_body(const TwoBodyState& state, const Potential& v_rel,
                                  const EvolutionConfig& cfg) {
    state.validate();
    const GridSpec& g = state.psi.grid();
    const PhysicsParams& params = state.params;
    if (!(cfg.dt > 0.0)) throw ConfigInvalidError("dt must be positive");
    if (cfg.steps < 1) throw ConfigInvalidError("steps must be >= 1");

    const double hbar_eff = params.h / (2.0 * kPi);
    const double t_coeff = params.h / (4.0 * kPi * params.theta);
    const double m1 = state.m1(), m2 = state.m2();

    std::vector<double> potential(g.size());
    std::vector<cdouble> half_kick(g.size());
    std::vector<double> kinetic(g.size());
    std::vector<cdouble> drift(g.size());
    std::vector<double> p1_table(g.size()), p2_table(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto idx = g.unflatten(i);
        const double u = g.minimum_image(g.coord(idx[0]) - g.coord(idx[1]));
        potential[i] = relative_potential_value(v_rel, u);
        half_kick[i] = std::exp(cdouble(0.0, -potential[i] * cfg.dt / (2.0 * hbar_eff)));
        p1_table[i] = params.theta * g.wavenumber(idx[0]);
        p2_table[i] = params.theta * g.wavenumber(idx[1]);
        kinetic[i] = t_coeff * (p1_table[i] * p1_table[i] / m1 +
                                p2_table[i] * p2_table[i] / m2);
        drift[i] = std::exp(cdouble(0.0, -kinetic[i] * cfg.dt / hbar_eff));
    }

    TwoBodyTrajectory traj;
    traj.grid = g;
    traj.dt = cfg.dt;
    traj.snapshot_stride = cfg.snapshot_stride;

    const double dv = g.volume_element();
    const double dx = g.spacing();
    auto record = [&](const std::vector<cdouble>& psi, double t) {
        double norm2 = 0.0, epot = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const double w = std::norm(psi[i]);
            norm2 += w;
            epot += w * potential[i];
        }
        norm2 *= dv;
        epot *= dv;

        std::vector<cdouble> ft(psi);
        fft_forward(g, ft);
        double wtot = 0.0, p1 = 0.0, p2 = 0.0, ekin = 0.0;
        for (std::size_t i = 0; i < ft.size(); ++i) {
            const double w = std::norm(ft[i]);
            wtot += w;
            p1 += w * p1_table[i];
            p2 += w * p2_table[i];
            ekin += w * kinetic[i];
        }

        WaveFunction snap(g, std::vector<cdouble>(psi));
        const auto rho1 = marginal_density(snap, 0);
        const auto rho2 = marginal_density(snap, 1);
        double n1 = 0.0, n2 = 0.0;
        for (double v : rho1) n1 += v * dx;
        for (double v : rho2) n2 += v * dx;

        traj.obs.t.push_back(t);
        traj.obs.p1.push_back(p1 / wtot);
        traj.obs.p2.push_back(p2 / wtot);
        traj.obs.energy.push_back(ekin / wtot + epot / norm2);
        traj.obs.norm_sq.push_back(norm2);
        traj.obs.marginal1_norm.push_back(n1);
        traj.obs.marginal2_norm.push_back(n2);
    };

    std::vector<cdouble> psi(state.psi.amplitudes());
    record(psi, 0.0);
    if (cfg.snapshot_stride > 0) {
        traj.snapshots.push_back(state.psi);
        traj.snapshot_times.push_back(0.0);
    }
    for (int s = 1; s <= cfg.steps; ++s) {
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= half_kick[i];
        fft_forward(g, psi);
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= drift[i];
        fft_backward_normalized(g, psi);
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= half_kick[i];

        const double t = s * cfg.dt;
        record(psi, t);
        if (cfg.snapshot_stride > 0 && s % cfg.snapshot_stride == 0) {
            traj.snapshots.emplace_back(g, psi);
            traj.snapshot_times.push_back(t);
        }
    }
    return traj;
}

std::vector<double> marginal_density(const WaveFunction& psi, int particle) {
    const GridSpec& g = psi.grid();
    if (g.dim != 2) throw ConfigInvalidError("marginal_density: needs a 2D grid");
    if (particle < 0 || particle > 1)
        throw ConfigInvalidError("marginal_density: particle must be 0 or 1");
    std::vector<double> rho(g.n, 0.0);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const auto idx = g.unflatten(i);
        rho[idx[particle]] += std::norm(psi[i]);
    }
    const double other_dx = g.spacing();
    for (auto& v : rho) v *= other_dx;
    return rho;
}

std::vector<double> two_body_continuity_residual(const TwoBodyTrajectory& traj,
                                                 const PhysicsParams& params) {
    if (traj.snapshots.size() < 3)
        throw InsufficientSnapshotsError("two_body_continuity_residual needs >= 3 snapshots");
    const GridSpec& g = traj.grid;
    const double dt_snap = traj.dt * traj.snapshot_stride;
    const double masses[2] = {params.mass(0), params.mass(1)};

    std::vector<double> residuals;
    residuals.reserve(traj.snapshots.size() - 2);
    for (std::size_t s = 1; s + 1 < traj.snapshots.size(); ++s) {
        const auto rho_prev = probability_density(traj.snapshots[s - 1]);
        const auto rho_next = probability_density(traj.snapshots[s + 1]);
        const WaveFunction& psi = traj.snapshots[s];

        std::vector<cdouble> psik(psi.amplitudes());
        fft_forward(g, psik);
        std::vector<double> defect(g.size());
        for (std::size_t i = 0; i < defect.size(); ++i)
            defect[i] = (rho_next[i] - rho_prev[i]) / (2.0 * dt_snap);
        for (int axis = 0; axis < 2; ++axis) {
            std::vector<cdouble> grad(psik);
            for (std::size_t i = 0; i < grad.size(); ++i) {
                const double k = g.wavenumber(g.unflatten(i)[axis]);
                grad[i] *= cdouble(0.0, k);
            }
            fft_backward_normalized(g, grad);
            std::vector<double> j(g.size());
            const double coeff = params.theta / masses[axis];
            for (std::size_t i = 0; i < j.size(); ++i)
                j[i] = coeff * std::imag(std::conj(psi[i]) * grad[i]);
            const auto div = spectral_divergence_axis(g, j, axis);
            for (std::size_t i = 0; i < defect.size(); ++i) defect[i] += div[i];
        }
        double s2 = 0.0;
        for (double v : defect) s2 += v * v;
        residuals.push_back(std::sqrt(s2 * g.volume_element()));
    }
    return residuals;
}

cdouble trig_interpolate(const WaveFunction& psi, double x) {
    const GridSpec& g = psi.grid();
    if (g.dim != 1) throw ConfigInvalidError("trig_interpolate: 1D states only");
    std::vector<cdouble> ft(psi.amplitudes());
    fft_forward(g, ft);
    cdouble acc = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double k = g.wavenumber(j);
        acc += ft[j] * std::exp(cdouble(0.0, k * (x + 0.5 * g.length)));
    }
    return acc / static_cast<double>(g.n);
}

WaveFunction tensor_from_com_factors(const GridSpec& grid2d, const WaveFunction& com,
                                     const WaveFunction& rel, const ComCoordinates& cc) {
    if (grid2d.dim != 2) throw ConfigInvalidError("tensor_from_com_factors: needs a 2D grid");
    const GridSpec g1 = axis_grid(grid2d);
    require_same_grid(g1, com.grid());
    require_same_grid(g1, rel.grid());

    // Precompute the Fourier coefficients once; evaluation below is a plain
    // mode sum per target point.
    std::vector<cdouble> com_k(com.amplitudes()), rel_k(rel.amplitudes());
    fft_forward(g1, com_k);
    fft_forward(g1, rel_k);
    const double inv_n = 1.0 / g1.n;

    auto eval = [&](const std::vector<cdouble>& ft, double x) {
        cdouble acc = 0.0;
        for (int j = 0; j < g1.n; ++j) {
            const double k = g1.wavenumber(j);
            acc += ft[j] * std::exp(cdouble(0.0, k * (x + 0.5 * g1.length)));
        }
        return acc * inv_n;
    };

    // Evaluate the *plane* function Psi(X) phi(u), not its torus wrap: X is a
    // convex combination of x1 and x2 so it always stays inside the box, while
    // u = x1 - x2 can leave it. Wrapping u back would re-center phi onto the
    // seam and double-cover the COM factor; instead the plane value out there
    // is taken as zero, which costs only the (localized) factor's edge
    // amplitude.
    std::vector<cdouble> amp(grid2d.size());
    for (std::size_t i = 0; i < amp.size(); ++i) {
        const auto idx = grid2d.unflatten(i);
        const double x1 = grid2d.coord(idx[0]);
        const double x2 = grid2d.coord(idx[1]);
        const double X = cc.com_position(x1, x2);
        const double u = cc.relative_position(x1, x2);
        amp[i] = (std::abs(u) <= 0.5 * grid2d.length)
                     ? eval(com_k, X) * eval(rel_k, u)
                     : cdouble(0.0, 0.0);
    }
    return WaveFunction(grid2d, std::move(amp));
}

ComSeparationReport com_separation_check(const WaveFunction& com0, const WaveFunction& rel0,
                                         const ComCoordinates& cc, const Potential& v_rel,
                                         const EvolutionConfig& cfg) {
    if (cfg.snapshot_stride < 1)
        throw ConfigInvalidError("com_separation_check: snapshot_stride must be >= 1");
    const GridSpec g1 = com0.grid();
    GridSpec g2 = g1;
    g2.dim = 2;

    // Full configuration-space run of the product initial state.
    TwoBodyState state{normalize(tensor_from_com_factors(g2, com0, rel0, cc)), cfg.params};
    state.params.masses = {cc.m1, cc.m2};
    const TwoBodyTrajectory full = evolve_two_body(state, v_rel, cfg);

    // Independent factor runs: free COM with total mass, relative motion in V
    // with the reduced mass.
    EvolutionConfig fcfg = cfg;
    fcfg.params.masses = {cc.total_mass(), cc.mu()};
    fcfg.mass_index = 0;
    const Trajectory com_traj = evolve(normalize(com0), Potential::none(), fcfg);
    fcfg.mass_index = 1;
    const Trajectory rel_traj = evolve(normalize(rel0), v_rel, fcfg);

    ComSeparationReport rep;
    for (std::size_t s = 0; s < full.snapshots.size(); ++s) {
        const WaveFunction prod = normalize(tensor_from_com_factors(
            g2, com_traj.snapshots[s], rel_traj.snapshots[s], cc));
        const double f = std::abs(inner_product(full.snapshots[s], prod));
        rep.t.push_back(full.snapshot_times[s]);
        rep.fidelity.push_back(f);
        rep.min_fidelity = std::min(rep.min_fidelity, f);
    }
    return rep;
}

ComCommutatorReport com_commutator_check(int n, double m1, double m2,
                                         const PhysicsParams& params) {
    if (!(m1 > 0.0) || !(m2 > 0.0))
        throw NonpositiveMassError("com_commutator_check: masses must be positive");
    const XpMatrices xp = build_xp_matrices(n, 2, params);
    const double mtot = m1 + m2;

    const Mat big_x = (m1 * xp.x[0] + m2 * xp.x[1]) / mtot;
    const Mat big_p = xp.p[0] + xp.p[1];
    const Mat rel_x = xp.x[0] - xp.x[1];
    const Mat rel_p = (m2 * xp.p[0] - m1 * xp.p[1]) / mtot;

    const Mat proj = safe_projector(n, 2, default_safe_cutoff(n));
    const Mat id = Mat::Identity(big_x.rows(), big_x.cols());
    const cdouble itheta(0.0, params.theta);

    ComCommutatorReport rep;
    rep.xp_com = projected_max_norm(commutator(big_x, big_p) - itheta * id, proj);
    rep.xp_rel = projected_max_norm(commutator(rel_x, rel_p) - itheta * id, proj);
    rep.cross_com_rel = projected_max_norm(commutator(big_x, rel_p), proj);
    rep.cross_rel_com = projected_max_norm(commutator(rel_x, big_p), proj);
    rep.reconstruction =
        ((m1 / mtot) * big_p + rel_p - xp.p[0]).cwiseAbs().maxCoeff();
    rep.max_residual = std::max({rep.xp_com, rep.xp_rel, rep.cross_com_rel,
                                 rep.cross_rel_com, rep.reconstruction});
    return rep;
}

}  // namespace qmlab
