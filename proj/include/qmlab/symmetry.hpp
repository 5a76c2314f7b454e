#pragma once

#include "qmlab/matrix_ops.hpp"
#include "qmlab/wavefunction.hpp"

namespace qmlab {

/// psi'(r) = psi(r - a), implemented as the spectral phase exp(-i a.k).
/// Throws BoundaryLeakError when a localized state is pushed onto the
/// boundary (states that already carry boundary mass, e.g. plane waves,
/// are exempt from the check).
WaveFunction translate(const WaveFunction& psi, const std::vector<double>& a);

enum class BoostOrdering {
    PhaseThenTranslate,  // exp(-i m V^2 t / 2 theta) * exp(i m V.r/theta) * translate(V t)
    TranslateThenPhase,  // exp(+i m V^2 t / 2 theta) * translate(V t) * exp(i m V.r/theta)
};

/// Finite Galilean boost in the factorized form; each factor is diagonal in
/// either position or momentum space, so there is no splitting error. The
/// position-space phase exp(i m V.r/theta) is exactly periodic only when
/// m V/theta lies on the grid momentum lattice; use commensurate_velocity.
WaveFunction galilean_boost(const WaveFunction& psi, const std::vector<double>& v, double t,
                            double mass, const PhysicsParams& params,
                            BoostOrdering ordering = BoostOrdering::PhaseThenTranslate);

/// Snap a velocity so m V / theta is a grid wavenumber.
std::vector<double> commensurate_velocity(const GridSpec& grid, const std::vector<double>& v,
                                          double mass, const PhysicsParams& params);

/// || boost_order1(psi) - boost_order2(psi) ||.
double boost_factorization_residual(const WaveFunction& psi, const std::vector<double>& v,
                                    double t, double mass, const PhysicsParams& params);

struct VelocityTransformReport {
    std::vector<double> v_before;  // <p>/m
    std::vector<double> v_after;
    double max_error = 0.0;        // |v_after - (v_before + V)| max over axes
};

/// Checks <v>' = <v> + V with v = p/m under a boost.
VelocityTransformReport velocity_transform_check(const WaveFunction& psi,
                                                 const std::vector<double>& v, double mass,
                                                 const PhysicsParams& params);

/// Finite rotation exp(-i phi . L / theta) in the truncated ladder basis.
Mat rotation_operator(const std::array<Mat, 3>& l, const std::array<double, 3>& phi,
                      const PhysicsParams& params);

}  // namespace qmlab
