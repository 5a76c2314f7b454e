#pragma once

#include "qmlab/wavefunction.hpp"

namespace qmlab {

/// Real vector field on the grid, one component array per axis.
struct CurrentField {
    GridSpec grid;
    int order = 1;
    std::vector<std::vector<double>> components;
    double max_imag_residue = 0.0;  // construction diagnostic, must be ~0
};

/// The current that closes the continuity equation under the derived
/// evolution: J = (theta/m) Im(psi* grad psi), all derivatives spectral.
CurrentField standard_current(const WaveFunction& psi, double mass, const PhysicsParams& params);

/// Higher-order current J_2n, n in {1,2,3}: the telescoping bracket sum
/// whose divergence equals psi*(lap^n psi) - (lap^n psi*) psi. Stored as the
/// real field J_2n / (2i) is NOT taken; components hold Im(bracket), i.e.
/// bracket / i, matching the n = 1 two-term form psi* grad psi - (grad psi*) psi.
CurrentField higher_current(const WaveFunction& psi, int order, const PhysicsParams& params);

/// Relative L2 residual of [psi*(lap^n psi) - (lap^n psi*) psi] - div J_2n,
/// both sides evaluated spectrally.
double divergence_identity_residual(const WaveFunction& psi, int order,
                                    const PhysicsParams& params);

/// Surface integral check: the divergence side integrated over the periodic
/// box (should vanish identically).
double global_conservation_residual(const WaveFunction& psi, int order,
                                    const PhysicsParams& params);

/// || d rho/dt + div J ||_L2 per interior snapshot, d/dt by centered
/// differences over consecutive stored snapshots spaced `dt_snapshot` apart.
std::vector<double> continuity_residual(const std::vector<WaveFunction>& snapshots,
                                        double dt_snapshot, double mass,
                                        const PhysicsParams& params);

struct BrokenContinuityReport {
    double c12 = 0.0;
    double max_residual = 0.0;      // against the standard current
    double final_norm_sq = 0.0;     // stays 1: the violation is local only
};

/// Evolves i (c10 + c12 p^2) dpsi/dt = H psi (free H), a forbidden
/// first-order term, and measures how badly the standard current fails.
/// c10 = h / (2 pi); the modified flow is diagonal in k and stepped exactly.
BrokenContinuityReport broken_continuity_probe(const WaveFunction& psi0, double c12,
                                               double mass, const PhysicsParams& params,
                                               double dt, int steps);

}  // namespace qmlab
