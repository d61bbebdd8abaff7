#include <doctest.h>

#include <random>

#include "modesim/fock.hpp"

using namespace modesim;

TEST_SUITE_BEGIN("fock");

TEST_CASE("basis dimension formula") {
    for (int n_max = 0; n_max <= 12; ++n_max) {
        const TruncationScheme t(n_max);
        CHECK(t.dim() == (n_max + 1) * (n_max + 2) / 2);
        // Count states directly.
        int count = 0;
        for (int nx = 0; nx <= n_max; ++nx)
            for (int ny = 0; ny + nx <= n_max; ++ny) ++count;
        CHECK(t.dim() == count);
    }
}

TEST_CASE("basis ordering: N ascending, n_x descending") {
    const TruncationScheme t(4);
    CHECK(basis_index({0, 0}, t) == 0);
    CHECK(basis_index({1, 0}, t) == 1);
    CHECK(basis_index({0, 1}, t) == 2);
    CHECK(basis_index({2, 0}, t) == 3);
    CHECK(basis_index({1, 1}, t) == 4);
    CHECK(basis_index({0, 2}, t) == 5);
}

TEST_CASE("basis_index round-trips with basis_mode") {
    const TruncationScheme t(9);
    for (int i = 0; i < t.dim(); ++i) {
        const ModeIndex m = basis_mode(i, t);
        CHECK(basis_index(m, t) == i);
    }
}

TEST_CASE("basis_index rejects out-of-range modes") {
    const TruncationScheme t(3);
    CHECK_THROWS_AS(basis_index({4, 0}, t), std::out_of_range);
    CHECK_THROWS_AS(basis_index({2, 2}, t), std::out_of_range);
    CHECK_THROWS_AS(basis_index({-1, 0}, t), std::out_of_range);
    CHECK_THROWS_AS(basis_mode(t.dim(), t), std::out_of_range);
}

TEST_CASE("ladder operators act with sqrt(n) factors") {
    const TruncationScheme t(6);
    const FockOperator ax = ladder_op(Axis::x, LadderKind::lower, t);
    const FockOperator axd = ladder_op(Axis::x, LadderKind::raise, t);

    const FockVector one = FockVector::basis_state({1, 0}, t);
    const FockVector lowered = apply(ax, one);
    CHECK(std::abs(lowered[{0, 0}] - 1.0) < 1e-15);
    CHECK(lowered.norm() == doctest::Approx(1.0));

    const FockVector raised = apply(axd, one);
    CHECK(std::abs(raised[{2, 0}] - std::sqrt(2.0)) < 1e-15);

    // Vacuum annihilation.
    CHECK(apply(ax, FockVector::basis_state({0, 0}, t)).norm() == 0.0);

    // Raising past the cutoff maps to zero.
    CHECK(apply(axd, FockVector::basis_state({6, 0}, t)).norm() == 0.0);
    CHECK(apply(axd, FockVector::basis_state({3, 3}, t)).norm() == 0.0);

    // raise is the exact conjugate transpose of lower.
    CHECK((axd.matrix - ax.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("[a_x, a_x^dag] = 1 on the interior subspace") {
    const TruncationScheme t(7);
    const FockOperator ax = ladder_op(Axis::x, LadderKind::lower, t);
    const Mat comm = (ax * ax.adjoint() - ax.adjoint() * ax).matrix;
    const Mat defect = comm - Mat::Identity(t.dim(), t.dim());
    const Mat p_int = interior_projector(t.n_max - 1, t).matrix;
    CHECK((defect * p_int).cwiseAbs().maxCoeff() < 1e-14);
    // The defect is confined to the outermost shell.
    CHECK(defect.cwiseAbs().maxCoeff() > 1.0);
}

TEST_CASE("apply: identity, number operator, zero, mismatch") {
    const TruncationScheme t(5);
    const FockVector v = FockVector::basis_state({2, 1}, t);

    CHECK((apply(FockOperator::identity(t), v).amplitudes - v.amplitudes).norm() == 0.0);

    const FockOperator ax = ladder_op(Axis::x, LadderKind::lower, t);
    const FockVector nv = apply(ax.adjoint() * ax, v);
    CHECK(std::abs(nv[{2, 1}] - 2.0) < 1e-14);

    CHECK(apply(FockOperator(t), v).norm() == 0.0);

    const FockVector w = FockVector::basis_state({0, 0}, TruncationScheme(4));
    CHECK_THROWS_AS(apply(ax, w), std::invalid_argument);
}

TEST_CASE("apply is linear") {
    const TruncationScheme t(5);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    auto random_vec = [&] {
        FockVector v(t);
        for (int i = 0; i < t.dim(); ++i) v.amplitudes(i) = complexd(gauss(rng), gauss(rng));
        return v;
    };
    const FockVector u = random_vec(), v = random_vec();
    const complexd alpha(0.3, -1.1), beta(-0.7, 0.2);
    const FockOperator op = ladder_op(Axis::y, LadderKind::raise, t) *
                            ladder_op(Axis::x, LadderKind::lower, t);

    FockVector combo(t);
    combo.amplitudes = alpha * u.amplitudes + beta * v.amplitudes;
    const Vec lhs = apply(op, combo).amplitudes;
    const Vec rhs = alpha * apply(op, u).amplitudes + beta * apply(op, v).amplitudes;
    CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("JSON serialization round-trip preserves amplitudes and ordering") {
    const TruncationScheme t(4);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    FockVector v(t);
    for (int i = 0; i < t.dim(); ++i) v.amplitudes(i) = complexd(gauss(rng), gauss(rng));
    v = v.normalized_copy();

    const FockVector back = fock_vector_from_json(to_json(v));
    CHECK(back.trunc.n_max == t.n_max);
    CHECK((back.amplitudes - v.amplitudes).norm() < 1e-15);
}

TEST_CASE("normalized flag tracks the 1e-12 contract") {
    const TruncationScheme t(4);
    FockVector v = FockVector::basis_state({1, 0}, t);
    CHECK(v.normalized());
    v.amplitudes *= 1.0 + 1e-6;
    CHECK_FALSE(v.normalized());
    CHECK(v.normalized_copy().normalized());
}

TEST_SUITE_END();
