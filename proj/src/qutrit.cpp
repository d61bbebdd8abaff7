#include "modesim/qutrit.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "modesim/evolve.hpp"

namespace modesim {

namespace {
constexpr complexd I{0.0, 1.0};

double wrap_angle(double x) {
    const double two_pi = 2.0 * M_PI;
    double r = std::fmod(x, two_pi);
    if (r < 0) r += two_pi;
    return r;
}

/// H_T ordinals of the (source, target) pair rotated by each triad.
void triad_pair(Triad t, int& a, int& b) {
    switch (t) {
        case Triad::G1: a = 1; b = 2; return;  // |1,0> -> |0,1>
        case Triad::G2: a = 0; b = 1; return;  // |0,0> -> |1,0>
        case Triad::G3: a = 0; b = 2; return;  // |0,0> -> |0,1>
    }
    throw std::invalid_argument("triad_pair: unknown triad");
}
}  // namespace

std::string triad_name(Triad t) {
    switch (t) {
        case Triad::G1: return "G1";
        case Triad::G2: return "G2";
        case Triad::G3: return "G3";
    }
    throw std::invalid_argument("triad_name: unknown triad");
}

Triad parse_triad(const std::string& name) {
    if (name == "G1" || name == "Gamma1") return Triad::G1;
    if (name == "G2" || name == "Gamma2") return Triad::G2;
    if (name == "G3" || name == "Gamma3") return Triad::G3;
    throw std::invalid_argument("parse_triad: unknown triad '" + name + "'");
}

TriadRotation TriadRotation::canonicalized() const {
    return {triad, wrap_angle(theta), wrap_angle(phi)};
}

double QutritAmplitudes::norm() const {
    return std::sqrt(std::norm(c00) + std::norm(c10) + std::norm(c01));
}

bool QutritAmplitudes::normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

QutritAmplitudes QutritAmplitudes::canonical() const {
    complexd lead = c00;
    if (std::abs(lead) < 1e-14) lead = c10;
    if (std::abs(lead) < 1e-14) lead = c01;
    if (std::abs(lead) < 1e-14) return *this;
    const complexd ph = std::conj(lead) / std::abs(lead);
    return {ph * c00, ph * c10, ph * c01};
}

FockOperator triad_unitary(const TriadRotation& r, const TruncationScheme& trunc) {
    // On the rotated pair, the first two triad generators act as
    // (sigma_x/2, s sigma_y/2) with s = +1 for G1 and -1 for G2, G3 (the
    // cubic pairs carry the opposite sigma_y orientation).  The mixing angle
    // phi + pi/2 then reproduces cos(theta/2)|a> + e^{i phi} sin(theta/2)|b>.
    GeneratorLabel ga, gb;
    double sign_b;
    switch (r.triad) {
        case Triad::G1: ga = GeneratorLabel::T1; gb = GeneratorLabel::T2; sign_b = 1.0; break;
        case Triad::G2: ga = GeneratorLabel::T4; gb = GeneratorLabel::T5; sign_b = -1.0; break;
        case Triad::G3: ga = GeneratorLabel::T6; gb = GeneratorLabel::T7; sign_b = -1.0; break;
        default: throw std::invalid_argument("triad_unitary: unknown triad");
    }
    const double beta = r.phi + M_PI / 2.0;
    const FockOperator h = complexd(std::cos(beta)) * build_generator(ga, trunc) +
                           complexd(sign_b * std::sin(beta)) * build_generator(gb, trunc);
    return expi(h, r.theta);
}

Eigen::Matrix3cd triad_rotation_ht(const TriadRotation& r) {
    int a, b;
    triad_pair(r.triad, a, b);
    const double c = std::cos(r.theta / 2.0);
    const double s = std::sin(r.theta / 2.0);
    const complexd eip = std::exp(I * r.phi);
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Identity();
    m(a, a) = c;
    m(b, b) = c;
    m(a, b) = -std::conj(eip) * s;
    m(b, a) = eip * s;
    return m;
}

Eigen::Matrix3cd diagonal_phase_ht(const DiagonalPhase& d) {
    // T3 -> diag(0, 1/2, -1/2), T8 -> diag(-1, 1/2, 1/2)/sqrt(3) on H_T.
    const double s3 = std::sqrt(3.0);
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(0, 0) = std::exp(I * (d.beta / s3));
    m(1, 1) = std::exp(-I * (d.alpha / 2.0 + d.beta / (2.0 * s3)));
    m(2, 2) = std::exp(I * (d.alpha / 2.0 - d.beta / (2.0 * s3)));
    return m;
}

Eigen::Matrix3cd evaluate_ht(const GateSequence& seq) {
    Eigen::Matrix3cd u = Eigen::Matrix3cd::Identity();
    for (const auto& e : seq.elements) {
        if (std::holds_alternative<TriadRotation>(e))
            u = triad_rotation_ht(std::get<TriadRotation>(e)) * u;
        else
            u = diagonal_phase_ht(std::get<DiagonalPhase>(e)) * u;
    }
    return u;
}

QutritAmplitudes prepare_qutrit(double theta, double phi, double theta_p, double phi_p,
                                const TruncationScheme& trunc) {
    const FockVector vac = FockVector::basis_state({0, 0}, trunc);
    const FockVector after_g2 = apply(triad_unitary({Triad::G2, theta, phi}, trunc), vac);
    const FockVector out = apply(triad_unitary({Triad::G1, theta_p, phi_p}, trunc), after_g2);
    return {out[{0, 0}], out[{1, 0}], out[{0, 1}]};
}

PreparationAngles solve_preparation(const QutritAmplitudes& target) {
    if (!target.normalized(1e-10))
        throw std::invalid_argument("solve_preparation: target is not normalized");

    PreparationAngles a;
    const double m00 = std::abs(target.c00);
    const double m10 = std::abs(target.c10);
    const double m01 = std::abs(target.c01);

    a.theta = 2.0 * std::acos(std::min(1.0, m00));
    if (m10 < 1e-14 && m01 < 1e-14) {
        a.degenerate = true;  // theta_p, phi_p arbitrary
        return a;
    }
    a.phi = (m10 >= 1e-14) ? std::arg(target.c10) : std::arg(target.c01);
    a.theta_p = 2.0 * std::atan2(m01, m10);
    a.phi_p = (m01 >= 1e-14) ? std::arg(target.c01) - a.phi : 0.0;
    return a;
}

GateSequence decompose_su3(const Eigen::Matrix3cd& u, double unitary_tol) {
    if ((u.adjoint() * u - Eigen::Matrix3cd::Identity()).norm() > unitary_tol)
        throw std::invalid_argument("decompose_su3: input is not unitary");

    // Left-multiplying by R^dag of a triad rotation with
    //   theta = 2 atan2(|u(b,col)|, |u(a,col)|),
    //   phi = arg u(b,col) - arg u(a,col)
    // zeroes the (b, col) entry.  Eliminate (|0,1>,|0,0>) with G3, then
    // (|1,0>,|0,0>) with G2, then (|0,1>,|1,0>) with G1; what is left is
    // diagonal and goes into one DiagonalPhase plus a global phase.
    Eigen::Matrix3cd work = u;
    std::vector<TriadRotation> rotations;
    auto eliminate = [&work, &rotations](Triad t, int col) {
        int a, b;
        triad_pair(t, a, b);
        if (std::abs(work(b, col)) < 1e-14) return;
        TriadRotation r;
        r.triad = t;
        r.theta = 2.0 * std::atan2(std::abs(work(b, col)), std::abs(work(a, col)));
        r.phi = std::arg(work(b, col)) - std::arg(work(a, col));
        r = r.canonicalized();
        work = triad_rotation_ht(r).adjoint() * work;
        rotations.push_back(r);
    };
    eliminate(Triad::G3, 0);
    eliminate(Triad::G2, 0);
    eliminate(Triad::G1, 1);

    // work is now diagonal: e^{i gamma} exp(-i (alpha T3 + beta T8)).
    const double d0 = std::arg(work(0, 0));
    const double d1 = std::arg(work(1, 1));
    const double d2 = std::arg(work(2, 2));
    const double gamma = (d0 + d1 + d2) / 3.0;
    DiagonalPhase dp;
    dp.alpha = d2 - d1;
    dp.beta = std::sqrt(3.0) * (d0 - gamma);

    GateSequence seq;
    seq.global_phase = gamma;
    if (std::abs(dp.alpha) > 1e-14 || std::abs(dp.beta) > 1e-14) seq.elements.push_back(dp);
    // Application order: diagonal first, then G1, G2, G3 (so that the
    // evaluated product is G3 G2 G1 D = u up to the global phase).
    for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) seq.elements.push_back(*it);
    return seq;
}

std::string GateSequence::to_json(int indent) const {
    nlohmann::json j;
    j["global_phase"] = global_phase;
    auto& el = j["elements"] = nlohmann::json::array();
    for (const auto& e : elements) {
        if (std::holds_alternative<TriadRotation>(e)) {
            const auto& r = std::get<TriadRotation>(e);
            el.push_back({{"kind", "rotation"},
                          {"triad", triad_name(r.triad)},
                          {"theta", r.theta},
                          {"phi", r.phi}});
        } else {
            const auto& d = std::get<DiagonalPhase>(e);
            el.push_back({{"kind", "diag"}, {"alpha", d.alpha}, {"beta", d.beta}});
        }
    }
    return j.dump(indent);
}

GateSequence GateSequence::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    GateSequence seq;
    seq.global_phase = j.value("global_phase", 0.0);
    for (const auto& e : j.at("elements")) {
        const std::string kind = e.at("kind").get<std::string>();
        if (kind == "rotation") {
            seq.elements.push_back(TriadRotation{parse_triad(e.at("triad").get<std::string>()),
                                                 e.at("theta").get<double>(),
                                                 e.at("phi").get<double>()});
        } else if (kind == "diag") {
            seq.elements.push_back(
                DiagonalPhase{e.at("alpha").get<double>(), e.at("beta").get<double>()});
        } else {
            throw std::invalid_argument("GateSequence::from_json: unknown element kind");
        }
    }
    return seq;
}

}  // namespace modesim
