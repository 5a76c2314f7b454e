#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

#include "qmlab/physics_params.hpp"

namespace qmlab {

using Mat = Eigen::MatrixXcd;
using cdouble = std::complex<double>;

/// Truncated ladder-basis realization of the operator algebra. X and P are
/// built from the lowering operator as X = sqrt(theta/2)(a + a+),
/// P = i sqrt(theta/2)(a+ - a); commutator identities then hold exactly on
/// the excitation-bounded "safe" subspace despite truncation.
///
/// Leakage lemma: a degree-q polynomial in ladder operators raises any
/// per-axis index by at most q. Between bra and ket restricted to total
/// excitation <= n-2, every intermediate state a degree-2 commutator needs
/// is either representable within the truncation or unreachable from the
/// restricted bra, so the projected identities are exact.

Mat lowering_operator(int n);

struct XpMatrices {
    std::vector<Mat> x;  // one per axis, each of size n^d
    std::vector<Mat> p;
    int n = 0;
    int axes = 0;
};

XpMatrices build_xp_matrices(int n, int axes, const PhysicsParams& params);

/// L_j = eps_jkl x_k p_l on the n^3 tensor space (d = 3 only).
std::array<Mat, 3> build_rotation_generators(int n, const PhysicsParams& params);

/// Diagonal projector onto states with total excitation <= cutoff.
Mat safe_projector(int n, int axes, int cutoff);

/// max |(P A P)_ij| over all entries.
double projected_max_norm(const Mat& a, const Mat& projector);

/// Default safe cutoff used by the identity checks.
inline int default_safe_cutoff(int n) { return n - 2; }

struct VectorOperatorReport {
    double max_residual = 0.0;                 // over all (j,k) pairs
    std::array<std::array<double, 3>, 3> per_pair{};
};

/// Residual of [L_j, A_k] = i theta eps_jkl A_l on the safe subspace.
VectorOperatorReport check_vector_operator(const std::array<Mat, 3>& l,
                                           const std::array<Mat, 3>& a,
                                           const PhysicsParams& params, int n,
                                           int cutoff = -1);

Mat kron(const Mat& a, const Mat& b);

/// Lift a single-axis operator to axis `axis` of a d-axis tensor space.
Mat lift_to_axis(const Mat& op, int axis, int axes);

Mat commutator(const Mat& a, const Mat& b);

}  // namespace qmlab
