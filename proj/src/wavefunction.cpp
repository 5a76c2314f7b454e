#include "qmlab/wavefunction.hpp"

#include <algorithm>
#include <cmath>

namespace qmlab {

WaveFunction::WaveFunction(GridSpec grid, std::vector<cdouble> amplitudes)
    : grid_(grid), amp_(std::move(amplitudes)) {
    grid_.validate();
    if (amp_.size() != grid_.size()) throw GridMismatchError("amplitude count != grid size");
}

double WaveFunction::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return s * grid_.volume_element();
}

WaveFunction normalize(const WaveFunction& psi) {
    const double n2 = psi.norm_sq();
    if (n2 < 1e-300) throw ZeroNormError("cannot normalize a zero-norm state");
    const double inv = 1.0 / std::sqrt(n2);
    std::vector<cdouble> out(psi.amplitudes());
    for (auto& a : out) a *= inv;
    return WaveFunction(psi.grid(), std::move(out));
}

cdouble inner_product(const WaveFunction& phi, const WaveFunction& psi) {
    require_same_grid(phi.grid(), psi.grid());
    cdouble s = 0.0;
    const auto& a = phi.amplitudes();
    const auto& b = psi.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s * phi.grid().volume_element();
}

std::vector<double> probability_density(const WaveFunction& psi) {
    std::vector<double> rho(psi.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(psi[i]);
    return rho;
}

double boundary_tail_mass(const WaveFunction& psi, int margin_cells) {
    const GridSpec& g = psi.grid();
    double mass = 0.0;
    for (std::size_t f = 0; f < psi.size(); ++f) {
        auto idx = g.unflatten(f);
        bool edge = false;
        for (int d = 0; d < g.dim; ++d)
            if (idx[d] < margin_cells || idx[d] >= g.n - margin_cells) edge = true;
        if (edge) mass += std::norm(psi[f]);
    }
    return mass * g.volume_element();
}

double spectral_tail_fraction(const WaveFunction& psi, double band) {
    const GridSpec& g = psi.grid();
    std::vector<cdouble> ft(psi.amplitudes());
    fft_forward(g, ft);
    const double k_nyq = kPi * g.n / g.length;
    const double k_cut = (1.0 - band) * k_nyq;
    double total = 0.0, tail = 0.0;
    for (std::size_t f = 0; f < ft.size(); ++f) {
        auto idx = g.unflatten(f);
        const double w = std::norm(ft[f]);
        total += w;
        for (int d = 0; d < g.dim; ++d)
            if (std::abs(g.wavenumber(idx[d])) >= k_cut) {
                tail += w;
                break;
            }
    }
    return total > 0.0 ? tail / total : 0.0;
}

WaveFunction gaussian_packet(const GridSpec& grid,
                             const std::vector<double>& center,
                             const std::vector<double>& width,
                             const std::vector<double>& wavevector) {
    grid.validate();
    if (center.size() != static_cast<std::size_t>(grid.dim) ||
        width.size() != static_cast<std::size_t>(grid.dim) ||
        wavevector.size() != static_cast<std::size_t>(grid.dim))
        throw ConfigInvalidError("gaussian_packet: vector sizes must match grid dim");
    for (double s : width)
        if (!(s > 0.0)) throw ConfigInvalidError("gaussian_packet: width must be positive");

    // Periodize by summing over box images per axis; a plain truncated
    // Gaussian has a seam at the box edge whose spectral floor (~envelope
    // amplitude there) would otherwise dominate high-derivative residuals.
    const double L = grid.length;
    std::vector<std::vector<cdouble>> axis_factor(grid.dim,
                                                  std::vector<cdouble>(grid.n));
    for (int d = 0; d < grid.dim; ++d) {
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.coord(i);
            cdouble f = 0.0;
            for (int m = -2; m <= 2; ++m) {
                const double u = x + m * L - center[d];
                f += std::exp(cdouble(-u * u / (4.0 * width[d] * width[d]),
                                      wavevector[d] * (x + m * L)));
            }
            axis_factor[d][i] = f;
        }
    }
    std::vector<cdouble> amp(grid.size());
    for (std::size_t f = 0; f < amp.size(); ++f) {
        auto idx = grid.unflatten(f);
        cdouble v = 1.0;
        for (int d = 0; d < grid.dim; ++d) v *= axis_factor[d][idx[d]];
        amp[f] = v;
    }
    WaveFunction psi = normalize(WaveFunction(grid, std::move(amp)));
    if (boundary_tail_mass(psi) > 1e-10)
        throw BoundaryLeakError("gaussian_packet: tail mass at box boundary exceeds 1e-10");
    return psi;
}

PlaneWaveResult plane_wave(const GridSpec& grid, const std::vector<double>& p,
                           const PhysicsParams& params) {
    grid.validate();
    params.validate();
    if (p.size() != static_cast<std::size_t>(grid.dim))
        throw ConfigInvalidError("plane_wave: momentum size must match grid dim");

    const double dk = 2.0 * kPi / grid.length;
    std::vector<int> mode(grid.dim);
    std::vector<double> p_eff(grid.dim);
    bool snapped = false;
    for (int d = 0; d < grid.dim; ++d) {
        const double k_req = p[d] / params.theta;
        const int m = static_cast<int>(std::lround(k_req / dk));
        mode[d] = m;
        p_eff[d] = params.theta * dk * m;
        if (std::abs(p_eff[d] - p[d]) > 1e-12 * std::max(1.0, std::abs(p[d]))) snapped = true;
    }

    std::vector<cdouble> amp(grid.size());
    const double norm = 1.0 / std::sqrt(std::pow(grid.length, grid.dim));
    for (std::size_t f = 0; f < amp.size(); ++f) {
        auto idx = grid.unflatten(f);
        double phase = 0.0;
        for (int d = 0; d < grid.dim; ++d)
            phase += (p_eff[d] / params.theta) * grid.coord(idx[d]);
        amp[f] = norm * std::exp(cdouble(0.0, phase));
    }

    PlaneWaveResult r{WaveFunction(grid, std::move(amp)), std::move(p_eff), std::move(mode),
                      snapped,
                      std::pow(2.0 * kPi * params.theta, -0.5 * grid.dim)};
    return r;
}

std::vector<double> position_expectation(const WaveFunction& psi) {
    const GridSpec& g = psi.grid();
    std::vector<double> r(g.dim, 0.0);
    for (std::size_t f = 0; f < psi.size(); ++f) {
        auto idx = g.unflatten(f);
        const double w = std::norm(psi[f]);
        for (int d = 0; d < g.dim; ++d) r[d] += w * g.coord(idx[d]);
    }
    const double dv = g.volume_element();
    const double n2 = psi.norm_sq();
    for (auto& v : r) v *= dv / n2;
    return r;
}

std::vector<double> momentum_expectation(const WaveFunction& psi, const PhysicsParams& params) {
    const GridSpec& g = psi.grid();
    std::vector<cdouble> ft(psi.amplitudes());
    fft_forward(g, ft);
    std::vector<double> p(g.dim, 0.0);
    double total = 0.0;
    for (std::size_t f = 0; f < ft.size(); ++f) {
        auto idx = g.unflatten(f);
        const double w = std::norm(ft[f]);
        total += w;
        for (int d = 0; d < g.dim; ++d) p[d] += w * params.theta * g.wavenumber(idx[d]);
    }
    for (auto& v : p) v /= total;
    return p;
}

}  // namespace qmlab
