#include "modesim/fock.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace modesim {

TruncationScheme::TruncationScheme(int n_max_) : n_max(n_max_) {
    if (n_max < 0) throw std::invalid_argument("TruncationScheme: n_max must be >= 0");
}

int basis_index(const ModeIndex& mode, const TruncationScheme& trunc) {
    if (mode.n_x < 0 || mode.n_y < 0)
        throw std::out_of_range("basis_index: negative occupation number");
    if (!trunc.contains(mode))
        throw std::out_of_range("basis_index: mode order exceeds cutoff n_max=" +
                                std::to_string(trunc.n_max));
    const int n = mode.order();
    // Within the order-n block, n_x runs (n, n-1, ..., 0).
    return block_start(n) + (n - mode.n_x);
}

ModeIndex basis_mode(int ordinal, const TruncationScheme& trunc) {
    if (ordinal < 0 || ordinal >= trunc.dim())
        throw std::out_of_range("basis_mode: ordinal out of range");
    int n = 0;
    while (block_start(n + 1) <= ordinal) ++n;
    const int k = ordinal - block_start(n);
    return ModeIndex{n - k, k};
}

FockVector::FockVector(Vec amps, const TruncationScheme& t) : amplitudes(std::move(amps)), trunc(t) {
    if (amplitudes.size() != t.dim())
        throw std::invalid_argument("FockVector: amplitude count does not match basis dimension");
}

FockVector FockVector::basis_state(const ModeIndex& m, const TruncationScheme& t) {
    FockVector v(t);
    v.amplitudes(basis_index(m, t)) = 1.0;
    return v;
}

FockVector FockVector::normalized_copy() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("FockVector: cannot normalize the zero vector");
    return {amplitudes / n, trunc};
}

std::vector<double> FockVector::order_distribution() const {
    std::vector<double> dist(trunc.n_max + 1, 0.0);
    for (int i = 0; i < dim(); ++i)
        dist[basis_mode(i, trunc).order()] += std::norm(amplitudes(i));
    return dist;
}

FockOperator::FockOperator(Mat m, const TruncationScheme& t) : matrix(std::move(m)), trunc(t) {
    if (matrix.rows() != t.dim() || matrix.cols() != t.dim())
        throw std::invalid_argument("FockOperator: matrix dimension does not match basis");
}

FockOperator FockOperator::identity(const TruncationScheme& t) {
    return {Mat::Identity(t.dim(), t.dim()), t};
}

bool FockOperator::is_hermitian(double tol) const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool FockOperator::is_unitary(double tol) const {
    const Mat d = matrix.adjoint() * matrix - Mat::Identity(dim(), dim());
    return d.norm() <= tol;
}

static void check_same_trunc(const TruncationScheme& a, const TruncationScheme& b) {
    if (!(a == b)) throw std::invalid_argument("operands use different truncation schemes");
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    check_same_trunc(a.trunc, b.trunc);
    return {a.matrix * b.matrix, a.trunc};
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
    check_same_trunc(a.trunc, b.trunc);
    return {a.matrix + b.matrix, a.trunc};
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
    check_same_trunc(a.trunc, b.trunc);
    return {a.matrix - b.matrix, a.trunc};
}

FockOperator operator*(complexd c, const FockOperator& a) { return {c * a.matrix, a.trunc}; }

FockOperator ladder_op(Axis axis, LadderKind kind, const TruncationScheme& trunc) {
    FockOperator lower(trunc);
    for (int i = 0; i < trunc.dim(); ++i) {
        const ModeIndex m = basis_mode(i, trunc);
        const int n = (axis == Axis::x) ? m.n_x : m.n_y;
        if (n == 0) continue;
        const ModeIndex lowered = (axis == Axis::x) ? ModeIndex{m.n_x - 1, m.n_y}
                                                    : ModeIndex{m.n_x, m.n_y - 1};
        lower.matrix(basis_index(lowered, trunc), i) = std::sqrt(static_cast<double>(n));
    }
    return (kind == LadderKind::lower) ? lower : lower.adjoint();
}

FockVector apply(const FockOperator& op, const FockVector& v) {
    check_same_trunc(op.trunc, v.trunc);
    return {op.matrix * v.amplitudes, v.trunc};
}

FockOperator interior_projector(int n_cut, const TruncationScheme& trunc) {
    FockOperator p(trunc);
    for (int i = 0; i < trunc.dim(); ++i)
        if (basis_mode(i, trunc).order() <= n_cut) p.matrix(i, i) = 1.0;
    return p;
}

std::string to_json(const FockVector& v, int indent) {
    nlohmann::json j;
    j["n_max"] = v.trunc.n_max;
    auto& amps = j["amplitudes"] = nlohmann::json::array();
    for (int i = 0; i < v.dim(); ++i) {
        const ModeIndex m = basis_mode(i, v.trunc);
        amps.push_back({m.n_x, m.n_y, v.amplitudes(i).real(), v.amplitudes(i).imag()});
    }
    return j.dump(indent);
}

FockVector fock_vector_from_json(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    if (!j.contains("n_max") || !j.contains("amplitudes"))
        throw std::invalid_argument("fock_vector_from_json: missing n_max or amplitudes");
    FockVector v(TruncationScheme(j.at("n_max").get<int>()));
    for (const auto& rec : j.at("amplitudes")) {
        if (!rec.is_array() || rec.size() != 4)
            throw std::invalid_argument("fock_vector_from_json: records must be [n_x, n_y, re, im]");
        const ModeIndex m{rec[0].get<int>(), rec[1].get<int>()};
        v[m] = complexd(rec[2].get<double>(), rec[3].get<double>());
    }
    return v;
}

}  // namespace modesim
