#pragma once

#include "qmlab/dynamics.hpp"

namespace qmlab {

/// Smooth interaction V(R - r) between the classical coordinate R and the
/// quantum particle, periodized with the minimum-image convention so
/// translational symmetry stays exact on the torus. The R-gradient is
/// analytic; no finite differencing enters the force.
struct CouplingPotential {
    double well_depth = 0.0;  // v0 * exp(-u^2 / 2 w^2), u = R - r
    double well_width = 1.0;

    static CouplingPotential gaussian_well(double v0, double w);

    /// V(R - r) on the grid.
    std::vector<double> sample(const GridSpec& grid, const std::vector<double>& r_cl) const;
    /// dV/dR_d (R - r) on the grid, one table per axis.
    std::vector<std::vector<double>> gradient_sample(const GridSpec& grid,
                                                     const std::vector<double>& r_cl) const;
};

struct HybridState {
    std::vector<double> r_cl;  // classical position R
    std::vector<double> p_cl;  // classical momentum P = M dR/dt
    double mass_cl = 1.0;
    WaveFunction psi;
    double t = 0.0;

    void validate() const;
};

/// Per-step time series of a hybrid run. Forces are grad_R<V> evaluated at
/// the two half-kicks of each step, which is exactly what the drift
/// prediction needs.
struct HybridSeries {
    std::vector<double> t;
    std::vector<std::vector<double>> r_cl, p_cl;       // per axis
    std::vector<std::vector<double>> x_q, p_q;         // quantum <x>, <p>
    std::vector<double> energy;
    std::vector<double> norm_sq;
    // grad_R<V> at the opening and closing kick of step i (size = steps)
    std::vector<std::vector<double>> force_begin, force_end;
};

struct HybridRunResult {
    HybridState final_state;
    HybridSeries series;
    double dt = 0.0;
};

/// Total energy P^2/2M + <T> + <V(R - r)>.
double total_energy(const HybridState& state, const CouplingPotential& coupling,
                    const PhysicsParams& params);

/// One palindromic step of Ehrenfest dynamics: half paired kick (quantum
/// phase kick by V(R - r) and classical momentum kick by -grad_R<V>, both
/// from the same frozen R and rho), half classical drift, full quantum
/// kinetic drift, half classical drift, half paired kick. The pairing is what
/// makes the total-momentum bookkeeping exact at theta = h/2pi.
HybridState hybrid_step(const HybridState& state, const EvolutionConfig& cfg,
                        const CouplingPotential& coupling);

HybridRunResult run_hybrid(const HybridState& state0, const CouplingPotential& coupling,
                           const EvolutionConfig& cfg);

struct MomentumDriftReport {
    std::vector<double> t;                       // step midpoints
    std::vector<std::vector<double>> measured;   // d(P + <p>)/dt per axis
    std::vector<std::vector<double>> predicted;  // (2 pi theta / h - 1) grad_R<V>
    double max_total_change = 0.0;               // max |(P+<p>)(t) - (P+<p>)(0)|
    double max_relative_mismatch = 0.0;          // where |predicted| > force_floor
    double max_energy_drift_relative = 0.0;
};

/// Measured total-momentum drift along the run against the prediction
/// (2 pi theta / h - 1) grad_R<V>, endpoint-averaged per step. The mismatch
/// statistic only counts instants where the force is above `force_floor`.
MomentumDriftReport total_momentum_drift(const HybridRunResult& run,
                                         const PhysicsParams& params,
                                         double force_floor = 1e-3);

}  // namespace qmlab
