#include "qmlab/hybrid.hpp"

#include <cmath>

namespace qmlab {
namespace {

/// Everything per-step evolution needs, built once per run.
struct Engine {
    GridSpec grid;
    double hbar_eff;
    double dt;
    std::vector<double> kinetic;        // T(k)
    std::vector<cdouble> kinetic_drift; // exp(-i T(k) dt / hbar_eff)

    Engine(const GridSpec& g, const EvolutionConfig& cfg) : grid(g) {
        hbar_eff = cfg.params.h / (2.0 * kPi);
        dt = cfg.dt;
        const double coeff =
            cfg.params.h / (4.0 * kPi * cfg.params.theta * cfg.params.mass(cfg.mass_index));
        kinetic.resize(g.size());
        kinetic_drift.resize(g.size());
        for (std::size_t i = 0; i < kinetic.size(); ++i) {
            const auto idx = g.unflatten(i);
            double p2 = 0.0;
            for (int d = 0; d < g.dim; ++d) {
                const double p = cfg.params.theta * g.wavenumber(idx[d]);
                p2 += p * p;
            }
            kinetic[i] = coeff * p2;
            kinetic_drift[i] = std::exp(cdouble(0.0, -kinetic[i] * dt / hbar_eff));
        }
    }

    /// Half paired kick at frozen R: classical momentum kick by -grad_R<V>
    /// and the matching quantum phase kick. The phase kick leaves rho
    /// unchanged, so the order within the pair is immaterial.
    std::vector<double> paired_half_kick(std::vector<cdouble>& psi, std::vector<double>& p_cl,
                                         const std::vector<double>& r_cl,
                                         const CouplingPotential& coupling) const {
        const std::vector<double> v = coupling.sample(grid, r_cl);
        const auto grad = coupling.gradient_sample(grid, r_cl);

        std::vector<double> force(grid.dim, 0.0);
        double norm2 = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const double w = std::norm(psi[i]);
            norm2 += w;
            for (int d = 0; d < grid.dim; ++d) force[d] += w * grad[d][i];
        }
        for (auto& f : force) f /= norm2;
        for (int d = 0; d < grid.dim; ++d) p_cl[d] -= 0.5 * dt * force[d];
        for (std::size_t i = 0; i < psi.size(); ++i)
            psi[i] *= std::exp(cdouble(0.0, -v[i] * dt / (2.0 * hbar_eff)));
        return force;  // grad_R<V> as used by the classical kick
    }

    void kinetic_full_drift(std::vector<cdouble>& psi) const {
        fft_forward(grid, psi);
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= kinetic_drift[i];
        fft_backward_normalized(grid, psi);
    }

    void classical_half_drift(std::vector<double>& r_cl, const std::vector<double>& p_cl,
                              double mass_cl) const {
        for (int d = 0; d < grid.dim; ++d) {
            r_cl[d] += 0.5 * dt * p_cl[d] / mass_cl;
            r_cl[d] = std::remainder(r_cl[d], grid.length);
        }
    }
};

}  // namespace

CouplingPotential CouplingPotential::gaussian_well(double v0, double w) {
    if (!(w > 0.0)) throw ConfigInvalidError("coupling width must be positive");
    CouplingPotential c;
    c.well_depth = v0;
    c.well_width = w;
    return c;
}

std::vector<double> CouplingPotential::sample(const GridSpec& grid,
                                              const std::vector<double>& r_cl) const {
    if (r_cl.size() != static_cast<std::size_t>(grid.dim))
        throw ConfigInvalidError("classical position size must match grid dim");
    std::vector<double> v(grid.size());
    const double w2 = well_width * well_width;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto idx = grid.unflatten(i);
        double u2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) {
            const double u = grid.minimum_image(r_cl[d] - grid.coord(idx[d]));
            u2 += u * u;
        }
        v[i] = well_depth * std::exp(-u2 / (2.0 * w2));
    }
    return v;
}

std::vector<std::vector<double>> CouplingPotential::gradient_sample(
    const GridSpec& grid, const std::vector<double>& r_cl) const {
    if (r_cl.size() != static_cast<std::size_t>(grid.dim))
        throw ConfigInvalidError("classical position size must match grid dim");
    std::vector<std::vector<double>> g(grid.dim, std::vector<double>(grid.size()));
    const double w2 = well_width * well_width;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto idx = grid.unflatten(i);
        double u2 = 0.0;
        std::array<double, 3> u{};
        for (int d = 0; d < grid.dim; ++d) {
            u[d] = grid.minimum_image(r_cl[d] - grid.coord(idx[d]));
            u2 += u[d] * u[d];
        }
        const double env = well_depth * std::exp(-u2 / (2.0 * w2));
        for (int d = 0; d < grid.dim; ++d) g[d][i] = -env * u[d] / w2;
    }
    return g;
}

void HybridState::validate() const {
    const auto dim = static_cast<std::size_t>(psi.grid().dim);
    if (r_cl.size() != dim || p_cl.size() != dim)
        throw ConfigInvalidError("classical phase-space vectors must match grid dim");
    if (!(mass_cl > 0.0)) throw NonpositiveMassError("classical mass must be positive");
}

double total_energy(const HybridState& state, const CouplingPotential& coupling,
                    const PhysicsParams& params) {
    state.validate();
    const GridSpec& g = state.psi.grid();
    double e_cl = 0.0;
    for (double p : state.p_cl) e_cl += p * p;
    e_cl /= 2.0 * state.mass_cl;

    const std::vector<double> v = coupling.sample(g, state.r_cl);
    double norm2 = 0.0, epot = 0.0;
    for (std::size_t i = 0; i < state.psi.size(); ++i) {
        const double w = std::norm(state.psi[i]);
        norm2 += w;
        epot += w * v[i];
    }
    epot /= norm2;

    std::vector<cdouble> ft(state.psi.amplitudes());
    fft_forward(g, ft);
    const double t_coeff = params.h / (4.0 * kPi * params.theta * params.mass(0));
    double wtot = 0.0, ekin = 0.0;
    for (std::size_t i = 0; i < ft.size(); ++i) {
        const double w = std::norm(ft[i]);
        const auto idx = g.unflatten(i);
        double p2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double p = params.theta * g.wavenumber(idx[d]);
            p2 += p * p;
        }
        wtot += w;
        ekin += w * t_coeff * p2;
    }
    return e_cl + ekin / wtot + epot;
}

HybridState hybrid_step(const HybridState& state, const EvolutionConfig& cfg,
                        const CouplingPotential& coupling) {
    state.validate();
    const Engine eng(state.psi.grid(), cfg);
    HybridState next = state;
    std::vector<cdouble> psi(state.psi.amplitudes());

    eng.paired_half_kick(psi, next.p_cl, next.r_cl, coupling);
    eng.classical_half_drift(next.r_cl, next.p_cl, next.mass_cl);
    eng.kinetic_full_drift(psi);
    eng.classical_half_drift(next.r_cl, next.p_cl, next.mass_cl);
    eng.paired_half_kick(psi, next.p_cl, next.r_cl, coupling);

    next.psi = WaveFunction(state.psi.grid(), std::move(psi));
    next.t = state.t + cfg.dt;
    return next;
}

HybridRunResult run_hybrid(const HybridState& state0, const CouplingPotential& coupling,
                           const EvolutionConfig& cfg) {
    state0.validate();
    cfg.params.validate();
    if (!(cfg.dt > 0.0)) throw ConfigInvalidError("dt must be positive");
    if (cfg.steps < 1) throw ConfigInvalidError("steps must be >= 1");
    const GridSpec& g = state0.psi.grid();
    const Engine eng(g, cfg);
    const PhysicsParams& params = cfg.params;

    HybridSeries out;

    std::vector<cdouble> psi(state0.psi.amplitudes());
    std::vector<double> r_cl = state0.r_cl, p_cl = state0.p_cl;
    const double mass_cl = state0.mass_cl;

    auto record = [&](double t) {
        const double dv = g.volume_element();
        double norm2 = 0.0;
        std::vector<double> x(g.dim, 0.0);
        const std::vector<double> v = coupling.sample(g, r_cl);
        double epot = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const double w = std::norm(psi[i]);
            norm2 += w;
            epot += w * v[i];
            const auto idx = g.unflatten(i);
            for (int d = 0; d < g.dim; ++d) x[d] += w * g.coord(idx[d]);
        }
        epot /= norm2;
        for (auto& c : x) c /= norm2;
        norm2 *= dv;

        std::vector<cdouble> ft(psi);
        fft_forward(g, ft);
        double wtot = 0.0, ekin = 0.0;
        std::vector<double> p(g.dim, 0.0);
        for (std::size_t i = 0; i < ft.size(); ++i) {
            const double w = std::norm(ft[i]);
            wtot += w;
            ekin += w * eng.kinetic[i];
            const auto idx = g.unflatten(i);
            for (int d = 0; d < g.dim; ++d)
                p[d] += w * params.theta * g.wavenumber(idx[d]);
        }
        ekin /= wtot;
        for (auto& c : p) c /= wtot;

        double e_cl = 0.0;
        for (double q : p_cl) e_cl += q * q;
        e_cl /= 2.0 * mass_cl;

        out.t.push_back(t);
        out.r_cl.push_back(r_cl);
        out.p_cl.push_back(p_cl);
        out.x_q.push_back(std::move(x));
        out.p_q.push_back(std::move(p));
        out.energy.push_back(e_cl + ekin + epot);
        out.norm_sq.push_back(norm2);
    };

    record(state0.t);
    for (int s = 0; s < cfg.steps; ++s) {
        out.force_begin.push_back(eng.paired_half_kick(psi, p_cl, r_cl, coupling));
        eng.classical_half_drift(r_cl, p_cl, mass_cl);
        eng.kinetic_full_drift(psi);
        eng.classical_half_drift(r_cl, p_cl, mass_cl);
        out.force_end.push_back(eng.paired_half_kick(psi, p_cl, r_cl, coupling));
        record(state0.t + (s + 1) * cfg.dt);
    }

    return HybridRunResult{HybridState{r_cl, p_cl, mass_cl, WaveFunction(g, std::move(psi)),
                                       state0.t + cfg.steps * cfg.dt},
                           std::move(out), cfg.dt};
}

MomentumDriftReport total_momentum_drift(const HybridRunResult& run,
                                         const PhysicsParams& params, double force_floor) {
    const HybridSeries& s = run.series;
    if (s.t.size() < 2)
        throw InsufficientSnapshotsError("total_momentum_drift needs >= 2 recorded steps");
    const std::size_t axes = s.p_cl.front().size();
    const double prefactor = 2.0 * kPi * params.theta / params.h - 1.0;

    MomentumDriftReport rep;
    std::vector<double> total0(axes);
    for (std::size_t d = 0; d < axes; ++d) total0[d] = s.p_cl[0][d] + s.p_q[0][d];

    for (std::size_t i = 0; i + 1 < s.t.size(); ++i) {
        std::vector<double> meas(axes), pred(axes);
        for (std::size_t d = 0; d < axes; ++d) {
            const double before = s.p_cl[i][d] + s.p_q[i][d];
            const double after = s.p_cl[i + 1][d] + s.p_q[i + 1][d];
            meas[d] = (after - before) / run.dt;
            const double favg = 0.5 * (s.force_begin[i][d] + s.force_end[i][d]);
            pred[d] = prefactor * favg;
            rep.max_total_change = std::max(rep.max_total_change, std::abs(after - total0[d]));
            if (prefactor != 0.0 && std::abs(favg) > force_floor)
                rep.max_relative_mismatch = std::max(
                    rep.max_relative_mismatch, std::abs(meas[d] - pred[d]) / std::abs(pred[d]));
        }
        rep.t.push_back(0.5 * (s.t[i] + s.t[i + 1]));
        rep.measured.push_back(std::move(meas));
        rep.predicted.push_back(std::move(pred));
    }

    const double e0 = s.energy.front();
    const double scale = std::max(std::abs(e0), 1e-12);
    for (double e : s.energy)
        rep.max_energy_drift_relative =
            std::max(rep.max_energy_drift_relative, std::abs(e - e0) / scale);
    return rep;
}

}  // namespace qmlab
