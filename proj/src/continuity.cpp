#include "qmlab/continuity.hpp"

#include <cmath>

namespace qmlab {
namespace {

using Field = std::vector<cdouble>;

Field to_k_space(const GridSpec& g, const Field& f) {
    Field out(f);
    fft_forward(g, out);
    return out;
}

Field gradient_from_k(const GridSpec& g, const Field& fk, int axis) {
    Field out(fk);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double k = g.wavenumber(g.unflatten(i)[axis]);
        out[i] *= cdouble(0.0, k);
    }
    fft_backward_normalized(g, out);
    return out;
}

Field laplacian_pow_from_k(const GridSpec& g, const Field& fk, int power) {
    Field out(fk);
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto idx = g.unflatten(i);
        double k2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double k = g.wavenumber(idx[d]);
            k2 += k * k;
        }
        out[i] *= std::pow(-k2, power);
    }
    fft_backward_normalized(g, out);
    return out;
}

std::vector<double> spectral_divergence(const GridSpec& g,
                                        const std::vector<std::vector<double>>& j) {
    std::vector<double> div(g.size(), 0.0);
    for (int d = 0; d < g.dim; ++d) {
        Field comp(g.size());
        for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = j[d][i];
        fft_forward(g, comp);
        Field grad = gradient_from_k(g, comp, d);
        for (std::size_t i = 0; i < div.size(); ++i) div[i] += grad[i].real();
    }
    return div;
}

double l2_norm(const GridSpec& g, const std::vector<double>& f) {
    double s = 0.0;
    for (double v : f) s += v * v;
    return std::sqrt(s * g.volume_element());
}

}  // namespace

CurrentField standard_current(const WaveFunction& psi, double mass,
                              const PhysicsParams& params) {
    if (!(mass > 0.0)) throw NonpositiveMassError("standard_current: mass must be positive");
    const GridSpec& g = psi.grid();
    const Field psik = to_k_space(g, psi.amplitudes());
    CurrentField out{g, 1, {}, 0.0};
    const double coeff = params.theta / mass;
    for (int d = 0; d < g.dim; ++d) {
        const Field grad = gradient_from_k(g, psik, d);
        std::vector<double> comp(g.size());
        for (std::size_t i = 0; i < comp.size(); ++i)
            comp[i] = coeff * std::imag(std::conj(psi[i]) * grad[i]);
        out.components.push_back(std::move(comp));
    }
    return out;
}

CurrentField higher_current(const WaveFunction& psi, int order, const PhysicsParams& params) {
    (void)params;
    if (order < 1 || order > 3) throw ConfigInvalidError("higher_current: order must be 1..3");
    const GridSpec& g = psi.grid();
    const Field psik = to_k_space(g, psi.amplitudes());

    // L_m = (lap)^m psi and grad L_m, all spectral.
    std::vector<Field> lap(order), grad_lap;  // lap[m] = (lap)^m psi, m = 0..order-1
    for (int m = 0; m < order; ++m) lap[m] = laplacian_pow_from_k(g, psik, m);

    CurrentField out{g, order, {}, 0.0};
    for (int d = 0; d < g.dim; ++d) {
        // per-axis gradients of each lap power
        std::vector<Field> glap(order);
        for (int m = 0; m < order; ++m) {
            Field mk = to_k_space(g, lap[m]);
            glap[m] = gradient_from_k(g, mk, d);
        }
        std::vector<double> comp(g.size(), 0.0);
        double max_re = 0.0;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            cdouble bracket = 0.0;
            for (int j = 0; j < order; ++j) {
                const cdouble lj = lap[j][i];
                const cdouble gj = glap[j][i];
                const cdouble lo = lap[order - 1 - j][i];
                const cdouble go = glap[order - 1 - j][i];
                bracket += std::conj(lj) * go - std::conj(gj) * lo;
            }
            comp[i] = bracket.imag();
            max_re = std::max(max_re, std::abs(bracket.real()));
        }
        out.max_imag_residue = std::max(out.max_imag_residue, max_re);
        out.components.push_back(std::move(comp));
    }
    return out;
}

double divergence_identity_residual(const WaveFunction& psi, int order,
                                    const PhysicsParams& params) {
    const GridSpec& g = psi.grid();
    const Field psik = to_k_space(g, psi.amplitudes());
    const Field lapn = laplacian_pow_from_k(g, psik, order);

    std::vector<double> lhs(g.size());
    for (std::size_t i = 0; i < lhs.size(); ++i)
        lhs[i] = 2.0 * std::imag(std::conj(psi[i]) * lapn[i]);

    const CurrentField j = higher_current(psi, order, params);
    const std::vector<double> div = spectral_divergence(g, j.components);

    std::vector<double> diff(g.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = lhs[i] - div[i];
    const double denom = l2_norm(g, lhs);
    return denom > 0.0 ? l2_norm(g, diff) / denom : l2_norm(g, diff);
}

double global_conservation_residual(const WaveFunction& psi, int order,
                                    const PhysicsParams& params) {
    (void)params;
    const GridSpec& g = psi.grid();
    const Field psik = to_k_space(g, psi.amplitudes());
    const Field lapn = laplacian_pow_from_k(g, psik, order);
    double s = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i)
        s += 2.0 * std::imag(std::conj(psi[i]) * lapn[i]);
    return std::abs(s * g.volume_element());
}

std::vector<double> continuity_residual(const std::vector<WaveFunction>& snapshots,
                                        double dt_snapshot, double mass,
                                        const PhysicsParams& params) {
    if (snapshots.size() < 3)
        throw InsufficientSnapshotsError("continuity_residual needs at least 3 snapshots");
    const GridSpec& g = snapshots.front().grid();
    std::vector<double> residuals;
    residuals.reserve(snapshots.size() - 2);
    for (std::size_t i = 1; i + 1 < snapshots.size(); ++i) {
        const auto rho_prev = probability_density(snapshots[i - 1]);
        const auto rho_next = probability_density(snapshots[i + 1]);
        const CurrentField j = standard_current(snapshots[i], mass, params);
        const std::vector<double> div = spectral_divergence(g, j.components);
        std::vector<double> defect(g.size());
        for (std::size_t q = 0; q < defect.size(); ++q)
            defect[q] = (rho_next[q] - rho_prev[q]) / (2.0 * dt_snapshot) + div[q];
        residuals.push_back(l2_norm(g, defect));
    }
    return residuals;
}

BrokenContinuityReport broken_continuity_probe(const WaveFunction& psi0, double c12,
                                               double mass, const PhysicsParams& params,
                                               double dt, int steps) {
    if (!(dt > 0.0) || steps < 3)
        throw ConfigInvalidError("broken_continuity_probe: need dt > 0 and steps >= 3");
    const GridSpec& g = psi0.grid();
    const double c10 = params.h / (2.0 * kPi);

    // step multiplier: exp(-i T(k) dt / (c10 + c12 p^2)), exact per step
    std::vector<cdouble> mult(g.size());
    const double t_coeff = params.h / (4.0 * kPi * params.theta * mass);
    for (std::size_t i = 0; i < mult.size(); ++i) {
        auto idx = g.unflatten(i);
        double p2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double p = params.theta * g.wavenumber(idx[d]);
            p2 += p * p;
        }
        const double omega = t_coeff * p2 / (c10 + c12 * p2);
        mult[i] = std::exp(cdouble(0.0, -omega * dt));
    }

    std::vector<WaveFunction> snapshots;
    snapshots.reserve(steps + 1);
    snapshots.push_back(psi0);
    std::vector<cdouble> state(psi0.amplitudes());
    fft_forward(g, state);
    for (int s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < state.size(); ++i) state[i] *= mult[i];
        std::vector<cdouble> pos(state);
        fft_backward_normalized(g, pos);
        snapshots.emplace_back(g, std::move(pos));
    }

    const auto residuals = continuity_residual(snapshots, dt, mass, params);
    BrokenContinuityReport rep;
    rep.c12 = c12;
    for (double r : residuals) rep.max_residual = std::max(rep.max_residual, r);
    rep.final_norm_sq = snapshots.back().norm_sq();
    return rep;
}

}  // namespace qmlab
