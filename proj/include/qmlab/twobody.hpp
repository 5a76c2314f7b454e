#pragma once

#include "qmlab/dynamics.hpp"
#include "qmlab/matrix_ops.hpp"

namespace qmlab {

/// mu = m1 m2 / (m1 + m2).
double reduced_mass(double m1, double m2);

/// Center-of-mass coordinate maps for two particles on a line.
struct ComCoordinates {
    double m1 = 1.0;
    double m2 = 1.0;

    double total_mass() const { return m1 + m2; }
    double mu() const { return reduced_mass(m1, m2); }

    // (x1, x2) <-> (X, x), P = p1 + p2, p = (m2 p1 - m1 p2) / M
    double com_position(double x1, double x2) const {
        return (m1 * x1 + m2 * x2) / total_mass();
    }
    double relative_position(double x1, double x2) const { return x1 - x2; }
    double particle1_position(double X, double x) const {
        return X + (m2 / total_mass()) * x;
    }
    double particle2_position(double X, double x) const {
        return X - (m1 / total_mass()) * x;
    }
    double com_momentum(double p1, double p2) const { return p1 + p2; }
    double relative_momentum(double p1, double p2) const {
        return (m2 * p1 - m1 * p2) / total_mass();
    }
};

/// Two quantum particles on a line, sampled on a 2D configuration grid with
/// axis 0 = x1, axis 1 = x2. Masses ride in params.masses = {m1, m2}.
struct TwoBodyState {
    WaveFunction psi;
    PhysicsParams params;

    double m1() const { return params.mass(0); }
    double m2() const { return params.mass(1); }
    void validate() const;
};

struct TwoBodyObservableSeries {
    std::vector<double> t;
    std::vector<double> p1, p2;      // per-particle momentum expectations
    std::vector<double> energy;
    std::vector<double> norm_sq;
    std::vector<double> marginal1_norm, marginal2_norm;
};

struct TwoBodyTrajectory {
    GridSpec grid;
    double dt = 0.0;
    int snapshot_stride = 0;
    std::vector<WaveFunction> snapshots;
    std::vector<double> snapshot_times;
    TwoBodyObservableSeries obs;
};

/// Strang split-step on the configuration grid: kinetic multiplier
/// (h/4pi theta)[(theta k1)^2/m1 + (theta k2)^2/m2], potential V(x1 - x2)
/// with minimum-image wrap. V must be analytic (none / harmonic / gaussian
/// well); sampled or momentum-dependent interactions are rejected.
TwoBodyTrajectory evolve_two_body(const TwoBodyState& state, const Potential& v_rel,
                                  const EvolutionConfig& cfg);

/// Marginal density of one particle (index 0 or 1), integrating out the other.
std::vector<double> marginal_density(const WaveFunction& psi, int particle);

/// || d rho/dt + div1 J1 + div2 J2 ||_L2 per interior snapshot, with
/// J_i = (theta/m_i) Im(psi* grad_i psi). The interaction tensor term is
/// identically zero for local potentials, so this must vanish at the
/// integrator's order.
std::vector<double> two_body_continuity_residual(const TwoBodyTrajectory& traj,
                                                 const PhysicsParams& params);

/// Periodic trigonometric interpolant of a 1D grid state, evaluated at an
/// arbitrary coordinate.
cdouble trig_interpolate(const WaveFunction& psi, double x);

/// psi(x1, x2) = com(X(x1,x2)) * rel(x1 - x2), both factors trigonometric
/// interpolants of 1D states living on the same axis grid.
WaveFunction tensor_from_com_factors(const GridSpec& grid2d, const WaveFunction& com,
                                     const WaveFunction& rel, const ComCoordinates& cc);

struct ComSeparationReport {
    std::vector<double> t;
    std::vector<double> fidelity;    // |<psi_full | Psi_com x phi_rel>|
    double min_fidelity = 1.0;
};

/// Evolves the full 2D product state and, independently, the COM factor
/// freely with mass M and the relative factor in V with mass mu; reports the
/// overlap fidelity at every snapshot.
ComSeparationReport com_separation_check(const WaveFunction& com0, const WaveFunction& rel0,
                                         const ComCoordinates& cc, const Potential& v_rel,
                                         const EvolutionConfig& cfg);

struct ComCommutatorReport {
    double xp_com = 0.0;          // [X, P] - i theta
    double xp_rel = 0.0;          // [x, p] - i theta
    double cross_com_rel = 0.0;   // [X, p]
    double cross_rel_com = 0.0;   // [x, P]
    double reconstruction = 0.0;  // p1 - ((m1/M) P + p)
    double max_residual = 0.0;
};

/// COM commutator table in the truncated ladder basis (two axes of size n),
/// projected onto the safe subspace.
ComCommutatorReport com_commutator_check(int n, double m1, double m2,
                                         const PhysicsParams& params);

}  // namespace qmlab
