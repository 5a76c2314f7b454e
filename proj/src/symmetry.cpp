#include "qmlab/symmetry.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace qmlab {
namespace {

constexpr double kLeakTol = 1e-10;

void check_leak(const WaveFunction& before, const WaveFunction& after, const char* what) {
    const double in_tail = boundary_tail_mass(before);
    if (in_tail <= kLeakTol && boundary_tail_mass(after) > kLeakTol)
        throw BoundaryLeakError(std::string(what) + ": state pushed onto box boundary");
}

WaveFunction position_phase(const WaveFunction& psi, const std::vector<double>& q) {
    const GridSpec& g = psi.grid();
    std::vector<cdouble> out(psi.amplitudes());
    for (std::size_t f = 0; f < out.size(); ++f) {
        auto idx = g.unflatten(f);
        double phase = 0.0;
        for (int d = 0; d < g.dim; ++d) phase += q[d] * g.coord(idx[d]);
        out[f] *= std::exp(cdouble(0.0, phase));
    }
    return WaveFunction(g, std::move(out));
}

}  // namespace

WaveFunction translate(const WaveFunction& psi, const std::vector<double>& a) {
    const GridSpec& g = psi.grid();
    if (a.size() != static_cast<std::size_t>(g.dim))
        throw ConfigInvalidError("translate: displacement size must match grid dim");
    std::vector<cdouble> ft(psi.amplitudes());
    fft_forward(g, ft);
    for (std::size_t f = 0; f < ft.size(); ++f) {
        auto idx = g.unflatten(f);
        double phase = 0.0;
        for (int d = 0; d < g.dim; ++d) phase -= a[d] * g.wavenumber(idx[d]);
        ft[f] *= std::exp(cdouble(0.0, phase));
    }
    fft_backward_normalized(g, ft);
    WaveFunction out(g, std::move(ft));
    check_leak(psi, out, "translate");
    return out;
}

std::vector<double> commensurate_velocity(const GridSpec& grid, const std::vector<double>& v,
                                          double mass, const PhysicsParams& params) {
    const double dk = 2.0 * kPi / grid.length;
    std::vector<double> out(v.size());
    for (std::size_t d = 0; d < v.size(); ++d) {
        const double k_req = mass * v[d] / params.theta;
        out[d] = std::lround(k_req / dk) * dk * params.theta / mass;
    }
    return out;
}

WaveFunction galilean_boost(const WaveFunction& psi, const std::vector<double>& v, double t,
                            double mass, const PhysicsParams& params, BoostOrdering ordering) {
    const GridSpec& g = psi.grid();
    if (v.size() != static_cast<std::size_t>(g.dim))
        throw ConfigInvalidError("galilean_boost: velocity size must match grid dim");
    if (!std::isfinite(t)) throw ConfigInvalidError("galilean_boost: t must be finite");

    double v2 = 0.0;
    std::vector<double> q(g.dim), shift(g.dim);
    for (int d = 0; d < g.dim; ++d) {
        v2 += v[d] * v[d];
        q[d] = mass * v[d] / params.theta;  // position-phase wavevector
        shift[d] = v[d] * t;
    }

    WaveFunction out = psi;
    cdouble global;
    if (ordering == BoostOrdering::PhaseThenTranslate) {
        // rightmost factor first: translate by V t, then the position phase
        out = translate(out, shift);
        out = position_phase(out, q);
        global = std::exp(cdouble(0.0, -mass * v2 * t / (2.0 * params.theta)));
    } else {
        out = position_phase(out, q);
        out = translate(out, shift);
        global = std::exp(cdouble(0.0, +mass * v2 * t / (2.0 * params.theta)));
    }
    std::vector<cdouble> amp(out.amplitudes());
    for (auto& a : amp) a *= global;
    WaveFunction result(psi.grid(), std::move(amp));
    check_leak(psi, result, "galilean_boost");
    return result;
}

double boost_factorization_residual(const WaveFunction& psi, const std::vector<double>& v,
                                    double t, double mass, const PhysicsParams& params) {
    const WaveFunction a =
        galilean_boost(psi, v, t, mass, params, BoostOrdering::PhaseThenTranslate);
    const WaveFunction b =
        galilean_boost(psi, v, t, mass, params, BoostOrdering::TranslateThenPhase);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s * psi.grid().volume_element());
}

VelocityTransformReport velocity_transform_check(const WaveFunction& psi,
                                                 const std::vector<double>& v, double mass,
                                                 const PhysicsParams& params) {
    VelocityTransformReport rep;
    const auto p_before = momentum_expectation(psi, params);
    const WaveFunction boosted = galilean_boost(psi, v, 0.0, mass, params);
    const auto p_after = momentum_expectation(boosted, params);
    rep.v_before.resize(p_before.size());
    rep.v_after.resize(p_after.size());
    for (std::size_t d = 0; d < p_before.size(); ++d) {
        rep.v_before[d] = p_before[d] / mass;
        rep.v_after[d] = p_after[d] / mass;
        rep.max_error = std::max(rep.max_error,
                                 std::abs(rep.v_after[d] - (rep.v_before[d] + v[d])));
    }
    return rep;
}

Mat rotation_operator(const std::array<Mat, 3>& l, const std::array<double, 3>& phi,
                      const PhysicsParams& params) {
    Mat gen = Mat::Zero(l[0].rows(), l[0].cols());
    for (int j = 0; j < 3; ++j) gen += phi[j] * l[j];
    const Mat arg = cdouble(0.0, -1.0 / params.theta) * gen;
    return arg.exp();
}

}  // namespace qmlab
