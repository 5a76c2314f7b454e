#pragma once

#include <functional>
#include <optional>

#include "qmlab/spectral_ops.hpp"
#include "qmlab/wavefunction.hpp"

namespace qmlab {

/// Real position-dependent potential. Momentum-dependent interactions are
/// representable (kind MomentumDependent) but rejected by the propagator.
struct Potential {
    enum class Kind { None, Sampled, Harmonic, GaussianWell, MomentumDependent };

    Kind kind = Kind::None;
    std::vector<double> values;        // Sampled
    double spring_constant = 0.0;      // Harmonic: 0.5 * k * r^2
    double well_depth = 0.0;           // GaussianWell: v0 * exp(-u^2 / 2 w^2)
    double well_width = 1.0;
    std::vector<double> center;        // Harmonic / GaussianWell

    static Potential none() { return {}; }
    static Potential sampled(std::vector<double> v);
    static Potential harmonic(double k, std::vector<double> center = {});
    static Potential gaussian_well(double v0, double w, std::vector<double> center = {});
    static Potential momentum_dependent() {
        Potential p;
        p.kind = Kind::MomentumDependent;
        return p;
    }

    std::vector<double> sample(const GridSpec& grid) const;
};

struct EvolutionConfig {
    double dt = 1e-3;
    int steps = 100;
    int snapshot_stride = 0;  // 0 = keep no snapshots beyond observables
    PhysicsParams params;
    std::size_t mass_index = 0;

    void validate(const GridSpec& grid) const;
};

struct ObservableSeries {
    std::vector<double> t;
    std::vector<std::vector<double>> x;  // per axis
    std::vector<std::vector<double>> p;  // per axis
    std::vector<double> energy;
    std::vector<double> norm_sq;
};

struct Trajectory {
    GridSpec grid;
    double dt = 0.0;
    int snapshot_stride = 0;
    std::vector<WaveFunction> snapshots;
    std::vector<double> snapshot_times;
    ObservableSeries obs;
};

/// Strang split-step evolution of i (h/2pi) d/dt psi = [T + V(r)] psi with
/// T = (h / 4 pi theta m) p^2. Exactly unitary; observables recorded every
/// step.
Trajectory evolve(const WaveFunction& psi0, const Potential& pot, const EvolutionConfig& cfg);

struct EinsteinDeBroglieResult {
    double energy = 0.0;        // <H> of the eigenstate
    double frequency = 0.0;     // fitted phase frequency nu
    double ratio = 0.0;         // E / (h nu)
};

/// Evolves a grid momentum eigenstate and extracts the phase frequency from
/// the overlap <psi(0)|psi(t)> by an unwrapped linear fit; checks E = h nu.
EinsteinDeBroglieResult einstein_debroglie_check(const GridSpec& grid,
                                                 const std::vector<double>& p, double duration,
                                                 const PhysicsParams& params,
                                                 std::size_t mass_index = 0);

struct VelocityCheckReport {
    std::vector<double> t;
    // per axis 0 only (report is per first axis; full vectors in series)
    std::vector<double> v_numeric;      // centered d<x>/dt
    std::vector<double> v_commutator;   // <(2 pi / i h)[x, H]>
    std::vector<double> v_momentum;     // <p>/m
    double max_pairwise_error = 0.0;    // relative to the velocity scale
};

/// Compares the three velocity routes along a trajectory (axis 0).
VelocityCheckReport velocity_operator_check(const Trajectory& traj, const Potential& pot,
                                            const PhysicsParams& params,
                                            std::size_t mass_index = 0);

struct ConservationReport {
    double momentum_drift = 0.0;  // max |<p>(t) - <p>(0)| over axes/time (V = none only)
    double energy_drift = 0.0;    // max |<H>(t) - <H>(0)|
    double norm_drift = 0.0;      // max ||psi||^2 - 1|
};

ConservationReport conservation_check(const Trajectory& traj, bool potential_is_none);

}  // namespace qmlab
