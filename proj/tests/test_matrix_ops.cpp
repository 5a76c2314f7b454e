#include <doctest.h>

#include "qmlab/matrix_ops.hpp"

using namespace qmlab;

namespace {
const PhysicsParams kParams{};
}

TEST_CASE("lowering operator has sqrt ladder entries") {
    const Mat a = lowering_operator(5);
    CHECK(std::abs(a(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(a(1, 2) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(a(3, 4) - 2.0) < 1e-15);
    CHECK(a.cwiseAbs().sum() ==
          doctest::Approx(1.0 + std::sqrt(2.0) + std::sqrt(3.0) + 2.0));
    CHECK_THROWS_AS(lowering_operator(3), TruncationTooSmallError);
}

TEST_CASE("truncated [x, p] equals i theta (I - n E_nn)") {
    // the only truncation artifact sits in the top corner, with weight n
    const int n = 6;
    const XpMatrices xp = build_xp_matrices(n, 1, kParams);
    Mat expected = cdouble(0.0, kParams.theta) * Mat::Identity(n, n);
    expected(n - 1, n - 1) = cdouble(0.0, kParams.theta * (1.0 - n));
    CHECK((commutator(xp.x[0], xp.p[0]) - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("safe projector removes the truncation artifact") {
    const int n = 12;
    const XpMatrices xp = build_xp_matrices(n, 2, kParams);
    const Mat proj = safe_projector(n, 2, default_safe_cutoff(n));
    const Mat id = Mat::Identity(xp.x[0].rows(), xp.x[0].cols());
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            const Mat expected =
                (j == k) ? Mat(cdouble(0.0, kParams.theta) * id) : Mat(Mat::Zero(id.rows(), id.cols()));
            CHECK(projected_max_norm(commutator(xp.x[j], xp.p[k]) - expected, proj) < 1e-13);
        }
}

TEST_CASE("kron and lift shapes") {
    const Mat a = Mat::Identity(3, 3);
    const Mat b = Mat::Identity(4, 4);
    CHECK(kron(a, b).rows() == 12);
    const Mat lifted = lift_to_axis(lowering_operator(4), 1, 3);
    CHECK(lifted.rows() == 64);
    CHECK_THROWS_AS(commutator(a, b), ShapeMismatchError);
}

TEST_CASE("rotation generators satisfy the algebra on the safe subspace") {
    const int n = 6;
    const auto l = build_rotation_generators(n, kParams);
    const Mat proj = safe_projector(n, 3, default_safe_cutoff(n));
    // [L_0, L_1] = i theta L_2
    const Mat resid = commutator(l[0], l[1]) - cdouble(0.0, kParams.theta) * l[2];
    CHECK(projected_max_norm(resid, proj) < 1e-13);
    // without the projector the truncation edge shows
    CHECK(resid.cwiseAbs().maxCoeff() > 1e-2);
}

TEST_CASE("position and momentum transform as vectors") {
    const int n = 6;
    const auto l = build_rotation_generators(n, kParams);
    const XpMatrices xp = build_xp_matrices(n, 3, kParams);
    const std::array<Mat, 3> x{xp.x[0], xp.x[1], xp.x[2]};
    const std::array<Mat, 3> p{xp.p[0], xp.p[1], xp.p[2]};
    CHECK(check_vector_operator(l, x, kParams, n).max_residual < 1e-13);
    CHECK(check_vector_operator(l, p, kParams, n).max_residual < 1e-13);
}

TEST_CASE("theta scales the whole algebra") {
    PhysicsParams params;
    params.theta = 2.5;
    const int n = 8;
    const XpMatrices xp = build_xp_matrices(n, 1, params);
    const Mat proj = safe_projector(n, 1, default_safe_cutoff(n));
    const Mat id = Mat::Identity(n, n);
    CHECK(projected_max_norm(commutator(xp.x[0], xp.p[0]) - cdouble(0.0, 2.5) * id, proj) <
          1e-13);
}
