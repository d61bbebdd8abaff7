#include "modesim/evolve.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace modesim {

namespace {
constexpr complexd I{0.0, 1.0};

int param_slot(GeneratorLabel l) {
    for (int i = 0; i < 10; ++i)
        if (MetaplecticParams::labels[i] == l) return i;
    throw std::invalid_argument("MetaplecticParams: '" + label_name(l) + "' is not quadratic");
}
}  // namespace

double& MetaplecticParams::operator[](GeneratorLabel l) { return s[param_slot(l)]; }
double MetaplecticParams::operator[](GeneratorLabel l) const { return s[param_slot(l)]; }

bool MetaplecticParams::passive_only(double tol) const {
    for (int i = 4; i < 10; ++i)
        if (std::abs(s[i]) > tol) return false;
    return true;
}

Eigen::Matrix4d SymplecticMatrix::omega() {
    Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
    w(0, 2) = w(1, 3) = 1.0;
    w(2, 0) = w(3, 1) = -1.0;
    return w;
}

double SymplecticMatrix::symplectic_defect() const {
    return (m * omega() * m.transpose() - omega()).cwiseAbs().maxCoeff();
}

std::string SymplecticMatrix::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) j.push_back(m(r, c));
    return j.dump();
}

SymplecticMatrix SymplecticMatrix::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_array() || j.size() != 16)
        throw std::invalid_argument("SymplecticMatrix::from_json: expected 16-element array");
    SymplecticMatrix s;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) s.m(r, c) = j[4 * r + c].get<double>();
    return s;
}

SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b) {
    return {a.m * b.m};
}

FockOperator expi(const FockOperator& h, double t, double hermiticity_tol) {
    const double scale = std::max(1.0, h.matrix.cwiseAbs().maxCoeff());
    if (!h.is_hermitian(hermiticity_tol * scale))
        throw std::invalid_argument("expi: generator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(h.matrix);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("expi: eigendecomposition failed");
    const Eigen::VectorXd& w = es.eigenvalues();
    Vec phases(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(-I * t * w(k));
    return {es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint(), h.trunc};
}

FockOperator metaplectic(const MetaplecticParams& p, const TruncationScheme& trunc) {
    FockOperator h(trunc);
    for (int i = 0; i < 10; ++i) {
        if (p.s[i] == 0.0) continue;
        h = h + complexd(p.s[i]) * build_generator(MetaplecticParams::labels[i], trunc);
    }
    return expi(h, 1.0);
}

Eigen::Matrix4d hamiltonian_form(GeneratorLabel label) {
    // Quadrature ordering (q_x, q_y, p_x, p_y); indices qx=0, qy=1, px=2, py=3.
    Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
    auto sym = [&g](int a, int b, double v) { g(a, b) += v; g(b, a) += v; };
    switch (label) {
        case GeneratorLabel::Lo:  // (q^2 + p^2)/4 per mode
            g.diagonal() << 0.5, 0.5, 0.5, 0.5;
            break;
        case GeneratorLabel::Lx:
            g.diagonal() << 0.5, -0.5, 0.5, -0.5;
            break;
        case GeneratorLabel::Ly:  // (q_x q_y + p_x p_y) / 2
            sym(0, 1, 0.5);
            sym(2, 3, 0.5);
            break;
        case GeneratorLabel::Lz:  // (q_x p_y - q_y p_x) / 2
            sym(0, 3, 0.5);
            sym(1, 2, -0.5);
            break;
        case GeneratorLabel::Kx:  // -(q_x q_y - p_x p_y) / 2
            sym(0, 1, -0.5);
            sym(2, 3, 0.5);
            break;
        case GeneratorLabel::Ky:
            g.diagonal() << 0.5, -0.5, -0.5, 0.5;
            break;
        case GeneratorLabel::Kz:  // -({q_x, p_x} + {q_y, p_y}) / 4
            sym(0, 2, -0.5);
            sym(1, 3, -0.5);
            break;
        case GeneratorLabel::Mx:  // -(q_x p_y + q_y p_x) / 2
            sym(0, 3, -0.5);
            sym(1, 2, -0.5);
            break;
        case GeneratorLabel::My:  // ({q_x, p_x} - {q_y, p_y}) / 4
            sym(0, 2, 0.5);
            sym(1, 3, -0.5);
            break;
        case GeneratorLabel::Mz:
            g.diagonal() << 0.5, 0.5, -0.5, -0.5;
            break;
        default:
            throw std::invalid_argument(
                "hamiltonian_form: no phase-space action is defined for '" + label_name(label) +
                "' (cubic generators are outside the metaplectic representation)");
    }
    return g;
}

SymplecticMatrix symplectic_of(GeneratorLabel label, double t) {
    const Eigen::Matrix4d gen = SymplecticMatrix::omega() * hamiltonian_form(label);
    return {(t * gen).exp()};
}

SymplecticMatrix symplectic_of(const MetaplecticParams& p) {
    Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 10; ++i)
        if (p.s[i] != 0.0) g += p.s[i] * hamiltonian_form(MetaplecticParams::labels[i]);
    return {(SymplecticMatrix::omega() * g).exp()};
}

std::array<FockOperator, 4> quadrature_ops(const TruncationScheme& trunc) {
    const FockOperator ax = ladder_op(Axis::x, LadderKind::lower, trunc);
    const FockOperator ay = ladder_op(Axis::y, LadderKind::lower, trunc);
    const double r = 1.0 / std::sqrt(2.0);
    const FockOperator qx = complexd(r) * (ax + ax.adjoint());
    const FockOperator qy = complexd(r) * (ay + ay.adjoint());
    const FockOperator px = (-I * r) * (ax - ax.adjoint());
    const FockOperator py = (-I * r) * (ay - ay.adjoint());
    return {qx, qy, px, py};
}

double stone_von_neumann_check(GeneratorLabel label, double t, const TruncationScheme& trunc,
                               int interior_order) {
    if (!is_quadratic(label))
        throw std::invalid_argument("stone_von_neumann_check: quadratic generators only");
    if (interior_order < 0) interior_order = trunc.n_max - 4;

    const FockOperator u = expi(build_generator(label, trunc), t);
    const SymplecticMatrix s = symplectic_of(label, t);
    const auto xi = quadrature_ops(trunc);
    const Mat p_int = interior_projector(interior_order, trunc).matrix;

    double residual = 0.0;
    for (int a = 0; a < 4; ++a) {
        Mat lhs = u.matrix.adjoint() * xi[a].matrix * u.matrix;
        for (int b = 0; b < 4; ++b) lhs -= s.m(a, b) * xi[b].matrix;
        const Mat restricted = p_int * lhs * p_int;
        residual = std::max(residual,
                            restricted.jacobiSvd().singularValues().maxCoeff());
    }
    return residual;
}

PapDecomposition pap_decompose(const SymplecticMatrix& s, double symplectic_tol) {
    if (!s.is_symplectic(symplectic_tol))
        throw std::invalid_argument("pap_decompose: input is not symplectic (defect " +
                                    std::to_string(s.symplectic_defect()) + ")");

    const Eigen::Matrix4d omega = SymplecticMatrix::omega();
    const Eigen::Matrix4d p = s.m * s.m.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(p);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("pap_decompose: eigendecomposition failed");
    const Eigen::Vector4d ev = es.eigenvalues();  // ascending

    // Eigenvalues of P = S S^T come in reciprocal pairs (d, 1/d) and Omega
    // maps the d-eigenspace onto the 1/d one.  Walk eigenvalue clusters from
    // the top and keep one vector per reciprocal pair; pushing -Omega v into
    // the frame blocks its partner from being selected again.  Degenerate
    // clusters are handled through their (basis-independent) projector, with
    // column choice and sign fixed for determinism.
    struct Cluster {
        double value;
        Eigen::Matrix4d proj;
    };
    std::vector<Cluster> clusters;
    for (int i = 3; i >= 0; --i) {  // descending
        const Eigen::Matrix4d vv = es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
        if (!clusters.empty() &&
            std::abs(ev(i) - clusters.back().value) <= 1e-12 * std::max(1.0, clusters.back().value)) {
            clusters.back().proj += vv;
        } else {
            clusters.push_back({ev(i), vv});
        }
    }

    std::vector<Eigen::Vector4d> frame;  // selected vectors and their Omega partners
    std::vector<Eigen::Vector4d> vs;
    for (const auto& cl : clusters) {
        while (vs.size() < 2) {
            int best_j = -1;
            double best_norm = -1.0;
            Eigen::Vector4d best = Eigen::Vector4d::Zero();
            for (int j = 0; j < 4; ++j) {
                Eigen::Vector4d c = cl.proj.col(j);
                for (const auto& f : frame) c -= f.dot(c) * f;
                if (c.norm() > best_norm + 1e-12) {
                    best_norm = c.norm();
                    best_j = j;
                    best = c;
                }
            }
            // A fresh direction always leaves some column with norm >= 1/2;
            // consumed (partner) directions project to numerical noise.
            if (best_j < 0 || best_norm < 0.4) break;
            best.normalize();
            int imax = 0;
            for (int k = 1; k < 4; ++k)
                if (std::abs(best(k)) > std::abs(best(imax)) + 1e-12) imax = k;
            if (best(imax) < 0) best = -best;
            frame.push_back(best);
            frame.push_back(-omega * best);
            vs.push_back(best);
        }
        if (vs.size() == 2) break;
    }
    if (vs.size() != 2) throw std::runtime_error("pap_decompose: eigenvalue pairing failed");

    Eigen::Matrix4d r;
    r.col(0) = vs[0];
    r.col(1) = vs[1];
    r.col(2) = -omega * vs[0];
    r.col(3) = -omega * vs[1];

    const double s1 = std::sqrt(vs[0].dot(p * vs[0]));
    const double s2 = std::sqrt(vs[1].dot(p * vs[1]));
    Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
    d.diagonal() << s1, s2, 1.0 / s1, 1.0 / s2;

    PapDecomposition out;
    out.k1 = {r};
    out.d = {d};
    // K2 = D^{-1} R^T S = R^T P^{-1/2} S, the orthogonal polar factor
    // rotated into the squeeze frame.
    Eigen::Matrix4d dinv = Eigen::Matrix4d::Zero();
    dinv.diagonal() << 1.0 / s1, 1.0 / s2, s1, s2;
    out.k2 = {dinv * r.transpose() * s.m};
    return out;
}

}  // namespace modesim
