#include "qmlab/matrix_ops.hpp"

#include <cmath>

namespace qmlab {

Mat lowering_operator(int n) {
    if (n < 4) throw TruncationTooSmallError("ladder basis needs n >= 4");
    Mat a = Mat::Zero(n, n);
    for (int i = 1; i < n; ++i) a(i - 1, i) = std::sqrt(static_cast<double>(i));
    return a;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat lift_to_axis(const Mat& op, int axis, int axes) {
    const Eigen::Index n = op.rows();
    Mat result = (axis == 0) ? op : Mat(Mat::Identity(n, n));
    for (int d = 1; d < axes; ++d)
        result = kron(result, (d == axis) ? op : Mat(Mat::Identity(n, n)));
    return result;
}

Mat commutator(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatchError("commutator: shape mismatch");
    return a * b - b * a;
}

XpMatrices build_xp_matrices(int n, int axes, const PhysicsParams& params) {
    params.validate();
    if (axes < 1 || axes > 3) throw ConfigInvalidError("axes must be 1..3");
    const Mat a = lowering_operator(n);
    const Mat ad = a.adjoint();
    const double s = std::sqrt(params.theta / 2.0);
    const Mat x1 = s * (a + ad);
    const Mat p1 = cdouble(0.0, 1.0) * s * (ad - a);

    XpMatrices out;
    out.n = n;
    out.axes = axes;
    for (int d = 0; d < axes; ++d) {
        out.x.push_back(lift_to_axis(x1, d, axes));
        out.p.push_back(lift_to_axis(p1, d, axes));
    }
    return out;
}

std::array<Mat, 3> build_rotation_generators(int n, const PhysicsParams& params) {
    const XpMatrices xp = build_xp_matrices(n, 3, params);
    std::array<Mat, 3> l;
    // L_j = eps_jkl x_k p_l
    l[0] = xp.x[1] * xp.p[2] - xp.x[2] * xp.p[1];
    l[1] = xp.x[2] * xp.p[0] - xp.x[0] * xp.p[2];
    l[2] = xp.x[0] * xp.p[1] - xp.x[1] * xp.p[0];
    return l;
}

Mat safe_projector(int n, int axes, int cutoff) {
    std::size_t size = 1;
    for (int d = 0; d < axes; ++d) size *= static_cast<std::size_t>(n);
    Mat proj = Mat::Zero(size, size);
    for (std::size_t f = 0; f < size; ++f) {
        std::size_t rem = f;
        int total = 0;
        for (int d = 0; d < axes; ++d) {
            total += static_cast<int>(rem % n);
            rem /= n;
        }
        if (total <= cutoff) proj(f, f) = 1.0;
    }
    return proj;
}

double projected_max_norm(const Mat& a, const Mat& projector) {
    if (a.rows() != projector.rows()) throw ShapeMismatchError("projector shape mismatch");
    const Mat pap = projector * a * projector;
    return pap.cwiseAbs().maxCoeff();
}

VectorOperatorReport check_vector_operator(const std::array<Mat, 3>& l,
                                           const std::array<Mat, 3>& a,
                                           const PhysicsParams& params, int n, int cutoff) {
    if (cutoff < 0) cutoff = default_safe_cutoff(n);
    for (int j = 0; j < 3; ++j)
        if (a[j].rows() != l[0].rows()) throw ShapeMismatchError("vector operator shape mismatch");
    const Mat proj = safe_projector(n, 3, cutoff);
    const cdouble itheta(0.0, params.theta);

    // eps_jkl contractions written out per (j,k)
    auto eps_term = [&](int j, int k) -> Mat {
        Mat t = Mat::Zero(a[0].rows(), a[0].cols());
        static const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                                         {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                                         {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
        for (int m = 0; m < 3; ++m)
            if (eps[j][k][m] != 0) t += static_cast<double>(eps[j][k][m]) * a[m];
        return t;
    };

    VectorOperatorReport rep;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            const Mat resid = commutator(l[j], a[k]) - itheta * eps_term(j, k);
            const double r = projected_max_norm(resid, proj);
            rep.per_pair[j][k] = r;
            rep.max_residual = std::max(rep.max_residual, r);
        }
    return rep;
}

}  // namespace qmlab
