#include "qmlab/dynamics.hpp"

#include <cmath>

namespace qmlab {

Potential Potential::sampled(std::vector<double> v) {
    Potential p;
    p.kind = Kind::Sampled;
    p.values = std::move(v);
    return p;
}

Potential Potential::harmonic(double k, std::vector<double> center) {
    Potential p;
    p.kind = Kind::Harmonic;
    p.spring_constant = k;
    p.center = std::move(center);
    return p;
}

Potential Potential::gaussian_well(double v0, double w, std::vector<double> center) {
    if (!(w > 0.0)) throw ConfigInvalidError("gaussian_well: width must be positive");
    Potential p;
    p.kind = Kind::GaussianWell;
    p.well_depth = v0;
    p.well_width = w;
    p.center = std::move(center);
    return p;
}

std::vector<double> Potential::sample(const GridSpec& grid) const {
    std::vector<double> v(grid.size(), 0.0);
    switch (kind) {
        case Kind::None:
            return v;
        case Kind::Sampled:
            if (values.size() != grid.size())
                throw GridMismatchError("sampled potential size != grid size");
            return values;
        case Kind::MomentumDependent:
            throw UnsupportedPotentialError("momentum-dependent potentials are not propagated");
        case Kind::Harmonic:
        case Kind::GaussianWell:
            break;
    }
    std::vector<double> c(grid.dim, 0.0);
    for (std::size_t d = 0; d < center.size() && d < c.size(); ++d) c[d] = center[d];
    for (std::size_t f = 0; f < v.size(); ++f) {
        auto idx = grid.unflatten(f);
        double u2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) {
            const double u = grid.minimum_image(grid.coord(idx[d]) - c[d]);
            u2 += u * u;
        }
        v[f] = (kind == Kind::Harmonic)
                   ? 0.5 * spring_constant * u2
                   : well_depth * std::exp(-u2 / (2.0 * well_width * well_width));
    }
    return v;
}

void EvolutionConfig::validate(const GridSpec& grid) const {
    params.validate();
    if (!(dt > 0.0)) throw ConfigInvalidError("dt must be positive");
    if (steps < 1) throw ConfigInvalidError("steps must be >= 1");
    if (snapshot_stride < 0) throw ConfigInvalidError("snapshot_stride must be >= 0");
    // accuracy heuristic, not a stability bound: the scheme is unconditionally stable
    const double dx = grid.spacing();
    const double bound = 0.5 * params.mass(mass_index) * params.theta * dx * dx *
                         (4.0 * kPi / params.h) * 50.0;
    if (dt > bound) throw ConfigInvalidError("dt far above the accuracy heuristic bound");
}

namespace {

struct Propagator {
    GridSpec grid;
    std::vector<double> potential;          // sampled V(r)
    std::vector<cdouble> half_kick;         // exp(-i V dt / 2 hbar_eff)
    std::vector<cdouble> drift;             // exp(-i T(k) dt / hbar_eff)
    std::vector<double> kinetic;            // T(k)
    double hbar_eff = 1.0;

    Propagator(const GridSpec& g, const Potential& pot, const EvolutionConfig& cfg) : grid(g) {
        hbar_eff = cfg.params.h / (2.0 * kPi);
        potential = pot.sample(g);
        half_kick.resize(g.size());
        for (std::size_t i = 0; i < half_kick.size(); ++i)
            half_kick[i] = std::exp(cdouble(0.0, -potential[i] * cfg.dt / (2.0 * hbar_eff)));
        kinetic.resize(g.size());
        drift.resize(g.size());
        const double coeff =
            cfg.params.h / (4.0 * kPi * cfg.params.theta * cfg.params.mass(cfg.mass_index));
        for (std::size_t i = 0; i < drift.size(); ++i) {
            auto idx = g.unflatten(i);
            double p2 = 0.0;
            for (int d = 0; d < g.dim; ++d) {
                const double p = cfg.params.theta * g.wavenumber(idx[d]);
                p2 += p * p;
            }
            kinetic[i] = coeff * p2;
            drift[i] = std::exp(cdouble(0.0, -kinetic[i] * cfg.dt / hbar_eff));
        }
    }

    void step(std::vector<cdouble>& psi) const {
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= half_kick[i];
        fft_forward(grid, psi);
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= drift[i];
        fft_backward_normalized(grid, psi);
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= half_kick[i];
    }

    void record(const std::vector<cdouble>& psi, double t, const EvolutionConfig& cfg,
                ObservableSeries& obs) const {
        const double dv = grid.volume_element();
        double norm2 = 0.0, epot = 0.0;
        std::vector<double> x(grid.dim, 0.0);
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const double w = std::norm(psi[i]);
            norm2 += w;
            epot += w * potential[i];
            auto idx = grid.unflatten(i);
            for (int d = 0; d < grid.dim; ++d) x[d] += w * grid.coord(idx[d]);
        }
        norm2 *= dv;
        epot *= dv;
        for (auto& v : x) v *= dv / norm2;

        std::vector<cdouble> ft(psi);
        fft_forward(grid, ft);
        double wtot = 0.0, ekin = 0.0;
        std::vector<double> p(grid.dim, 0.0);
        for (std::size_t i = 0; i < ft.size(); ++i) {
            const double w = std::norm(ft[i]);
            wtot += w;
            ekin += w * kinetic[i];
            auto idx = grid.unflatten(i);
            for (int d = 0; d < grid.dim; ++d)
                p[d] += w * cfg.params.theta * grid.wavenumber(idx[d]);
        }
        for (auto& v : p) v /= wtot;
        ekin /= wtot;

        obs.t.push_back(t);
        obs.x.push_back(std::move(x));
        obs.p.push_back(std::move(p));
        obs.energy.push_back(ekin + epot / norm2);
        obs.norm_sq.push_back(norm2);
    }
};

}  // namespace

Trajectory evolve(const WaveFunction& psi0, const Potential& pot, const EvolutionConfig& cfg) {
    const GridSpec& g = psi0.grid();
    cfg.validate(g);
    const Propagator prop(g, pot, cfg);

    Trajectory traj;
    traj.grid = g;
    traj.dt = cfg.dt;
    traj.snapshot_stride = cfg.snapshot_stride;

    std::vector<cdouble> psi(psi0.amplitudes());
    prop.record(psi, 0.0, cfg, traj.obs);
    if (cfg.snapshot_stride > 0) {
        traj.snapshots.push_back(psi0);
        traj.snapshot_times.push_back(0.0);
    }
    for (int s = 1; s <= cfg.steps; ++s) {
        prop.step(psi);
        const double t = s * cfg.dt;
        prop.record(psi, t, cfg, traj.obs);
        if (cfg.snapshot_stride > 0 && s % cfg.snapshot_stride == 0) {
            traj.snapshots.emplace_back(g, psi);
            traj.snapshot_times.push_back(t);
        }
    }
    return traj;
}

EinsteinDeBroglieResult einstein_debroglie_check(const GridSpec& grid,
                                                 const std::vector<double>& p, double duration,
                                                 const PhysicsParams& params,
                                                 std::size_t mass_index) {
    const PlaneWaveResult pw = plane_wave(grid, p, params);
    const SpectralOperator h_op = SpectralOperator::free_hamiltonian(grid, params, mass_index);
    const double energy = expectation(h_op, pw.psi).real();
    const double hbar_eff = params.h / (2.0 * kPi);

    // keep the per-step phase well below the unwrap limit
    int steps = 64;
    if (energy > 0.0) {
        const double max_dt = (kPi / 4.0) * hbar_eff / energy;
        steps = std::max(steps, static_cast<int>(std::ceil(duration / max_dt)) * 4);
    }
    const double dt = duration / steps;
    if (energy * dt / hbar_eff > kPi / 4.0)
        throw PhaseUnwrapError("per-step phase exceeds pi/4");

    EvolutionConfig cfg;
    cfg.dt = dt;
    cfg.steps = steps;
    cfg.params = params;
    cfg.mass_index = mass_index;
    cfg.snapshot_stride = 1;
    const Trajectory traj = evolve(pw.psi, Potential::none(), cfg);

    // unwrapped phase of <psi(0)|psi(t)> via consecutive ratios
    double phase = 0.0;
    std::vector<double> t_series{0.0}, phi_series{0.0};
    cdouble prev(1.0, 0.0);
    for (std::size_t i = 1; i < traj.snapshots.size(); ++i) {
        const cdouble ov = inner_product(pw.psi, traj.snapshots[i]);
        phase += std::arg(ov / prev);
        prev = ov;
        t_series.push_back(traj.snapshot_times[i]);
        phi_series.push_back(phase);
    }

    double stt = 0.0, stp = 0.0;
    for (std::size_t i = 0; i < t_series.size(); ++i) {
        stt += t_series[i] * t_series[i];
        stp += t_series[i] * phi_series[i];
    }
    const double omega = (stt > 0.0) ? stp / stt : 0.0;

    EinsteinDeBroglieResult r;
    r.energy = energy;
    r.frequency = std::abs(omega) / (2.0 * kPi);
    r.ratio = (r.frequency > 0.0) ? energy / (params.h * r.frequency) : 0.0;
    return r;
}

VelocityCheckReport velocity_operator_check(const Trajectory& traj, const Potential& pot,
                                            const PhysicsParams& params,
                                            std::size_t mass_index) {
    (void)pot;  // [x, V(r)] = 0: only the kinetic part enters the commutator route
    if (traj.snapshots.size() < 3)
        throw InsufficientSnapshotsError("velocity_operator_check needs >= 3 snapshots");
    const GridSpec& g = traj.grid;
    const double mass = params.mass(mass_index);
    const SpectralOperator x_op = SpectralOperator::position(g, 0);
    const SpectralOperator t_op = SpectralOperator::free_hamiltonian(g, params, mass_index);

    VelocityCheckReport rep;
    const int stride = traj.snapshot_stride;
    double scale = 0.0;
    for (std::size_t i = 1; i + 1 < traj.snapshots.size(); ++i) {
        // observables exist at every step, so the centered difference can use
        // the fine dt spacing regardless of the snapshot stride
        const std::size_t obs_i = static_cast<std::size_t>(i) * stride;
        const double v_num =
            (traj.obs.x[obs_i + 1][0] - traj.obs.x[obs_i - 1][0]) / (2.0 * traj.dt);
        const cdouble comm = commutator_expectation(x_op, t_op, traj.snapshots[i]);
        const double v_comm = (2.0 * kPi / params.h) * comm.imag();
        const double v_mom = traj.obs.p[obs_i][0] / mass;

        rep.t.push_back(traj.snapshot_times[i]);
        rep.v_numeric.push_back(v_num);
        rep.v_commutator.push_back(v_comm);
        rep.v_momentum.push_back(v_mom);
        scale = std::max({scale, std::abs(v_num), std::abs(v_comm), std::abs(v_mom)});
    }
    double max_abs = 0.0;
    for (std::size_t i = 0; i < rep.t.size(); ++i) {
        max_abs = std::max({max_abs, std::abs(rep.v_numeric[i] - rep.v_commutator[i]),
                            std::abs(rep.v_numeric[i] - rep.v_momentum[i]),
                            std::abs(rep.v_commutator[i] - rep.v_momentum[i])});
    }
    rep.max_pairwise_error = (scale > 0.0) ? max_abs / scale : max_abs;
    return rep;
}

ConservationReport conservation_check(const Trajectory& traj, bool potential_is_none) {
    ConservationReport rep;
    const auto& obs = traj.obs;
    for (std::size_t i = 0; i < obs.t.size(); ++i) {
        rep.energy_drift = std::max(rep.energy_drift, std::abs(obs.energy[i] - obs.energy[0]));
        rep.norm_drift = std::max(rep.norm_drift, std::abs(obs.norm_sq[i] - 1.0));
        if (potential_is_none)
            for (std::size_t d = 0; d < obs.p[i].size(); ++d)
                rep.momentum_drift =
                    std::max(rep.momentum_drift, std::abs(obs.p[i][d] - obs.p[0][d]));
    }
    return rep;
}

}  // namespace qmlab
