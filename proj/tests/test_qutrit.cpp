#include <doctest.h>

#include <random>

#include "modesim/generators.hpp"
#include "modesim/nogo.hpp"
#include "modesim/qutrit.hpp"

using namespace modesim;

namespace {
const TruncationScheme t8(8);
constexpr complexd im{0.0, 1.0};

Eigen::Matrix3cd haar_unitary3(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::Matrix3cd g;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) g(r, c) = complexd(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::Matrix3cd> qr(g);
    Eigen::Matrix3cd q = qr.householderQ();
    const Eigen::Matrix3cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 3; ++c) q.col(c) *= r(c, c) / std::abs(r(c, c));
    return q;
}

QutritAmplitudes random_qutrit(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    QutritAmplitudes q{complexd(gauss(rng), gauss(rng)), complexd(gauss(rng), gauss(rng)),
                       complexd(gauss(rng), gauss(rng))};
    const double n = q.norm();
    return QutritAmplitudes{q.c00 / n, q.c10 / n, q.c01 / n}.canonical();
}

double expectation_lo(const FockVector& v) {
    const FockOperator lo = build_generator(GeneratorLabel::Lo, v.trunc);
    return (v.amplitudes.adjoint() * lo.matrix * v.amplitudes).value().real();
}
}  // namespace

TEST_SUITE_BEGIN("qutrit");

TEST_CASE("G2 rotation reproduces the two-mode superposition form exactly") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (int k = 0; k < 20; ++k) {
        const double theta = ang(rng), phi = ang(rng);
        const FockOperator u = triad_unitary({Triad::G2, theta, phi}, t8);
        const FockVector out = apply(u, FockVector::basis_state({0, 0}, t8));
        CHECK(std::abs(out[{0, 0}] - std::cos(theta / 2.0)) < 1e-14);
        CHECK(std::abs(out[{1, 0}] - std::exp(im * phi) * std::sin(theta / 2.0)) < 1e-14);
        CHECK(std::abs(out[{0, 1}]) < 1e-14);

        // |0,1> is left invariant.
        const FockVector fixed = apply(u, FockVector::basis_state({0, 1}, t8));
        CHECK(std::abs(fixed[{0, 1}] - 1.0) < 1e-13);
    }
}

TEST_CASE("G1 rotation rotates |1,0> toward |0,1>, fixing |0,0>") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (int k = 0; k < 20; ++k) {
        const double theta = ang(rng), phi = ang(rng);
        const FockOperator u = triad_unitary({Triad::G1, theta, phi}, t8);
        const FockVector out = apply(u, FockVector::basis_state({1, 0}, t8));
        CHECK(std::abs(out[{1, 0}] - std::cos(theta / 2.0)) < 1e-14);
        CHECK(std::abs(out[{0, 1}] - std::exp(im * phi) * std::sin(theta / 2.0)) < 1e-14);

        const FockVector fixed = apply(u, FockVector::basis_state({0, 0}, t8));
        CHECK(std::abs(fixed[{0, 0}] - 1.0) < 1e-13);
    }
}

TEST_CASE("G3 rotation rotates |0,0> toward |0,1>, fixing |1,0>") {
    const double theta = 1.2, phi = 4.5;
    const FockOperator u = triad_unitary({Triad::G3, theta, phi}, t8);
    const FockVector out = apply(u, FockVector::basis_state({0, 0}, t8));
    CHECK(std::abs(out[{0, 0}] - std::cos(theta / 2.0)) < 1e-14);
    CHECK(std::abs(out[{0, 1}] - std::exp(im * phi) * std::sin(theta / 2.0)) < 1e-14);
    CHECK(std::abs(apply(u, FockVector::basis_state({1, 0}, t8))[{1, 0}] - 1.0) < 1e-13);
}

TEST_CASE("triad unitaries preserve H_T in the full truncated space") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    const SubspaceProjector ht({{0, 0}, {1, 0}, {0, 1}}, t8);
    for (Triad triad : {Triad::G1, Triad::G2, Triad::G3}) {
        for (int k = 0; k < 5; ++k) {
            const TriadRotation r{triad, ang(rng), ang(rng)};
            const FockOperator u = triad_unitary(r, t8);
            CHECK(leakage(u, ht, ht.random_state(rng)) < 1e-12);

            // The 3x3 restriction is unitary and matches the closed form.
            const Eigen::Matrix3cd block = restrict_to_ht(u);
            CHECK((block.adjoint() * block - Eigen::Matrix3cd::Identity()).norm() < 1e-12);
            CHECK((block - triad_rotation_ht(r)).norm() < 1e-12);
        }
    }
}

TEST_CASE("G2/G3 change the order expectation, G1 preserves it") {
    FockVector probe(t8);
    probe[{0, 0}] = std::sqrt(0.5);
    probe[{1, 0}] = 0.5;
    probe[{0, 1}] = 0.5;

    const double before = expectation_lo(probe);
    const double after_g2 =
        expectation_lo(apply(triad_unitary({Triad::G2, 1.3, 0.4}, t8), probe));
    const double after_g3 =
        expectation_lo(apply(triad_unitary({Triad::G3, 1.3, 0.4}, t8), probe));
    const double after_g1 =
        expectation_lo(apply(triad_unitary({Triad::G1, 1.3, 0.4}, t8), probe));
    CHECK(std::abs(after_g2 - before) > 1e-3);
    CHECK(std::abs(after_g3 - before) > 1e-3);
    CHECK(std::abs(after_g1 - before) < 1e-13);
}

TEST_CASE("prepare_qutrit hits the closed form on an angle lattice") {
    const int n = 5;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const double theta = a * M_PI / (n - 1);
                    const double phi = b * 2.0 * M_PI / n;
                    const double theta_p = c * M_PI / (n - 1);
                    const double phi_p = d * 2.0 * M_PI / n;
                    const QutritAmplitudes got =
                        prepare_qutrit(theta, phi, theta_p, phi_p, t8);
                    const complexd c00 = std::cos(theta / 2.0);
                    const complexd c10 = std::exp(im * phi) * std::sin(theta / 2.0) *
                                         std::cos(theta_p / 2.0);
                    const complexd c01 = std::exp(im * (phi + phi_p)) *
                                         std::sin(theta / 2.0) * std::sin(theta_p / 2.0);
                    const double err = std::abs(got.c00 - c00) + std::abs(got.c10 - c10) +
                                       std::abs(got.c01 - c01);
                    REQUIRE_MESSAGE(err < 1e-10, "angles ", theta, " ", phi, " ", theta_p, " ",
                                    phi_p);
                }
}

TEST_CASE("prepare_qutrit named examples") {
    const QutritAmplitudes id = prepare_qutrit(0.0, 0.0, 0.0, 0.0, t8);
    CHECK(std::abs(id.c00 - 1.0) < 1e-14);
    CHECK(std::abs(id.c10) < 1e-14);
    CHECK(std::abs(id.c01) < 1e-14);

    const QutritAmplitudes swapped = prepare_qutrit(M_PI, 0.0, M_PI, 0.0, t8).canonical();
    CHECK(std::abs(swapped.c00) < 1e-14);
    CHECK(std::abs(swapped.c10) < 1e-14);
    CHECK(std::abs(swapped.c01 - 1.0) < 1e-14);

    const double theta = 2.0 * std::acos(1.0 / std::sqrt(3.0));
    const QutritAmplitudes balanced = prepare_qutrit(theta, 0.0, M_PI / 2.0, 0.0, t8);
    const double r3 = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(balanced.c00 - r3) < 1e-14);
    CHECK(std::abs(balanced.c10 - r3) < 1e-14);
    CHECK(std::abs(balanced.c01 - r3) < 1e-14);
}

TEST_CASE("solve_preparation: named examples and degeneracy flag") {
    const PreparationAngles trivial = solve_preparation({1.0, 0.0, 0.0});
    CHECK(trivial.theta == doctest::Approx(0.0));
    CHECK(trivial.degenerate);

    const double r3 = 1.0 / std::sqrt(3.0);
    const PreparationAngles balanced = solve_preparation({r3, r3, r3});
    CHECK_FALSE(balanced.degenerate);
    CHECK(balanced.theta == doctest::Approx(2.0 * std::acos(r3)).epsilon(1e-12));
    CHECK(balanced.phi == doctest::Approx(0.0));
    CHECK(balanced.theta_p == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
    CHECK(balanced.phi_p == doctest::Approx(0.0));

    CHECK_THROWS_AS(solve_preparation({0.5, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("solve then prepare round-trips 100 seeded targets") {
    std::mt19937_64 rng(100);
    for (int k = 0; k < 100; ++k) {
        const QutritAmplitudes target = random_qutrit(rng);
        const PreparationAngles a = solve_preparation(target);
        const QutritAmplitudes rebuilt =
            prepare_qutrit(a.theta, a.phi, a.theta_p, a.phi_p, t8).canonical();
        const double err = (rebuilt.as_vector() - target.as_vector()).norm();
        REQUIRE_MESSAGE(err < 1e-10, "sample ", k);
    }
}

TEST_CASE("canonical phase: first nonzero amplitude real nonnegative") {
    const QutritAmplitudes q =
        QutritAmplitudes{complexd(0.0, 0.6), complexd(0.3, -0.2), complexd(-0.5, 0.1)}.canonical();
    CHECK(std::abs(std::arg(q.c00)) < 1e-14);

    QutritAmplitudes zero_lead{0.0, complexd(0.0, 0.8), complexd(0.4, 0.2)};
    const QutritAmplitudes canon = zero_lead.canonical();
    CHECK(std::abs(canon.c10.imag()) < 1e-14);
    CHECK(canon.c10.real() > 0.0);
}

TEST_CASE("decompose_su3: identity gives an empty sequence") {
    const GateSequence seq = decompose_su3(Eigen::Matrix3cd::Identity());
    CHECK(seq.elements.empty());
    CHECK(seq.global_phase == doctest::Approx(0.0));
}

TEST_CASE("decompose_su3 recovers a single triad rotation") {
    for (Triad triad : {Triad::G1, Triad::G2, Triad::G3}) {
        const TriadRotation r{triad, 1.9, 2.4};
        const GateSequence seq = decompose_su3(triad_rotation_ht(r));
        REQUIRE(seq.elements.size() == 1);
        REQUIRE(std::holds_alternative<TriadRotation>(seq.elements[0]));
        const auto& got = std::get<TriadRotation>(seq.elements[0]);
        CHECK(got.triad == triad);
        CHECK(got.theta == doctest::Approx(r.theta).epsilon(1e-12));
        CHECK(got.phi == doctest::Approx(r.phi).epsilon(1e-12));
        CHECK(std::abs(seq.global_phase) < 1e-12);
    }
}

TEST_CASE("decompose_su3 round-trips 100 seeded Haar unitaries") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 100; ++k) {
        const Eigen::Matrix3cd u = haar_unitary3(rng);
        const GateSequence seq = decompose_su3(u);

        int rotations = 0, diags = 0;
        for (const auto& e : seq.elements)
            std::holds_alternative<TriadRotation>(e) ? ++rotations : ++diags;
        CHECK(rotations <= 3);
        CHECK(diags <= 1);

        const Eigen::Matrix3cd rebuilt = std::exp(im * seq.global_phase) * evaluate_ht(seq);
        REQUIRE_MESSAGE((rebuilt - u).norm() < 1e-8, "sample ", k);
    }
}

TEST_CASE("decompose_su3 rejects non-unitary input") {
    Eigen::Matrix3cd bad = Eigen::Matrix3cd::Identity();
    bad(0, 0) = 1.5;
    CHECK_THROWS_AS(decompose_su3(bad), std::invalid_argument);
}

TEST_CASE("gate sequence JSON round-trip") {
    GateSequence seq;
    seq.global_phase = 0.7;
    seq.elements.push_back(DiagonalPhase{0.2, -1.1});
    seq.elements.push_back(TriadRotation{Triad::G2, 1.4, 5.9});
    const GateSequence back = GateSequence::from_json(seq.to_json());
    CHECK(back.global_phase == seq.global_phase);
    REQUIRE(back.elements.size() == 2);
    CHECK((evaluate_ht(back) - evaluate_ht(seq)).norm() < 1e-15);
}

TEST_CASE("triad rotation canonicalization wraps angles into [0, 2 pi)") {
    const TriadRotation r = TriadRotation{Triad::G1, -1.0, 7.0}.canonicalized();
    CHECK(r.theta >= 0.0);
    CHECK(r.theta < 2.0 * M_PI);
    CHECK(r.phi >= 0.0);
    CHECK(r.phi < 2.0 * M_PI);
    CHECK(r.theta == doctest::Approx(2.0 * M_PI - 1.0));
}

TEST_SUITE_END();
