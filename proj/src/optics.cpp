#include "modesim/optics.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "modesim/evolve.hpp"
#include "modesim/generators.hpp"

namespace modesim {

namespace {
constexpr complexd I{0.0, 1.0};
}

SpatialGrid::SpatialGrid(double half_extent_, int resolution_, double waist_)
    : half_extent(half_extent_), resolution(resolution_), waist(waist_) {
    if (resolution < 16) throw std::invalid_argument("SpatialGrid: resolution must be >= 16");
    if (half_extent <= 0 || waist <= 0)
        throw std::invalid_argument("SpatialGrid: extent and waist must be positive");
}

std::vector<double> SpatialGrid::coords() const {
    std::vector<double> xs(resolution);
    for (int i = 0; i < resolution; ++i) xs[i] = -half_extent + i * spacing();
    return xs;
}

double hg_value_1d(int n, double x, double waist) {
    if (n < 0) throw std::out_of_range("hg_value_1d: negative index");
    const double xi = std::sqrt(2.0) * x / waist;
    // Physicists' Hermite polynomials by recurrence.
    double h_prev = 1.0, h = (n == 0) ? 1.0 : 2.0 * xi;
    for (int k = 2; k <= n; ++k) {
        const double h_next = 2.0 * xi * h - 2.0 * (k - 1) * h_prev;
        h_prev = h;
        h = h_next;
    }
    double log_fact = 0.0;
    for (int k = 2; k <= n; ++k) log_fact += std::log(static_cast<double>(k));
    const double norm =
        std::pow(2.0 / M_PI, 0.25) / std::sqrt(waist) *
        std::exp(-0.5 * (n * std::log(2.0) + log_fact));
    return norm * h * std::exp(-x * x / (waist * waist));
}

double hg_value(int n_x, int n_y, double x, double y, double waist) {
    return hg_value_1d(n_x, x, waist) * hg_value_1d(n_y, y, waist);
}

complexd field_value(const FockVector& state, double x, double y, double waist) {
    complexd psi{0.0, 0.0};
    for (int i = 0; i < state.dim(); ++i) {
        const complexd c = state.amplitudes(i);
        if (c == complexd{0.0, 0.0}) continue;
        const ModeIndex m = basis_mode(i, state.trunc);
        psi += c * hg_value(m.n_x, m.n_y, x, y, waist);
    }
    return psi;
}

FockVector lg_state(int l, int p, const TruncationScheme& trunc) {
    if (p < 0) throw std::out_of_range("lg_state: radial index must be >= 0");
    const int order = std::abs(l) + 2 * p;
    if (order > trunc.n_max) throw std::out_of_range("lg_state: mode order exceeds cutoff");

    const int n_plus = p + std::max(l, 0);
    const int n_minus = p + std::max(-l, 0);
    const Mat axd = ladder_op(Axis::x, LadderKind::raise, trunc).matrix;
    const Mat ayd = ladder_op(Axis::y, LadderKind::raise, trunc).matrix;
    const Mat a_plus = (axd + I * ayd) / std::sqrt(2.0);   // adds one unit of +l
    const Mat a_minus = (axd - I * ayd) / std::sqrt(2.0);  // adds one unit of -l

    Vec v = Vec::Zero(trunc.dim());
    v(basis_index({0, 0}, trunc)) = 1.0;
    for (int k = 0; k < n_plus; ++k) v = a_plus * v;
    for (int k = 0; k < n_minus; ++k) v = a_minus * v;
    FockVector out(v, trunc);
    return out.normalized_copy();
}

Eigen::MatrixXcd sample_mode(const ModeSpec& mode, const SpatialGrid& grid) {
    FockVector state = [&] {
        if (mode.kind == ModeSpec::Kind::HG) {
            if (mode.a < 0 || mode.b < 0)
                throw std::out_of_range("sample_mode: negative HG index");
            const TruncationScheme t(mode.a + mode.b);
            return FockVector::basis_state({mode.a, mode.b}, t);
        }
        const TruncationScheme t(std::abs(mode.a) + 2 * mode.b);
        return lg_state(mode.a, mode.b, t);
    }();

    const auto xs = grid.coords();
    Eigen::MatrixXcd field(grid.resolution, grid.resolution);
    for (int row = 0; row < grid.resolution; ++row)
        for (int col = 0; col < grid.resolution; ++col)
            field(row, col) = field_value(state, xs[col], xs[row], grid.waist);
    return field;
}

Eigen::MatrixXd intensity_profile(const FockVector& state, const SpatialGrid& grid) {
    const auto xs = grid.coords();

    // Tabulate the 1D factors once per index; the 2D synthesis is then a sum
    // over occupied modes per pixel.
    const int n_max = state.trunc.n_max;
    Eigen::MatrixXd table(n_max + 1, grid.resolution);
    for (int n = 0; n <= n_max; ++n)
        for (int i = 0; i < grid.resolution; ++i) table(n, i) = hg_value_1d(n, xs[i], grid.waist);

    std::vector<std::pair<ModeIndex, complexd>> occupied;
    for (int i = 0; i < state.dim(); ++i)
        if (state.amplitudes(i) != complexd{0.0, 0.0})
            occupied.emplace_back(basis_mode(i, state.trunc), state.amplitudes(i));

    Eigen::MatrixXd intensity(grid.resolution, grid.resolution);
    for (int row = 0; row < grid.resolution; ++row) {
        for (int col = 0; col < grid.resolution; ++col) {
            complexd psi{0.0, 0.0};
            for (const auto& [m, c] : occupied) psi += c * table(m.n_x, col) * table(m.n_y, row);
            intensity(row, col) = std::norm(psi);
        }
    }
    return intensity;
}

void write_intensity_csv(std::ostream& os, const Eigen::MatrixXd& intensity,
                         const SpatialGrid& grid) {
    os.precision(17);
    os << "half_extent," << grid.half_extent << "\n";
    os << "resolution," << grid.resolution << "\n";
    os << "waist," << grid.waist << "\n";
    for (Eigen::Index row = 0; row < intensity.rows(); ++row) {
        for (Eigen::Index col = 0; col < intensity.cols(); ++col) {
            if (col) os << ",";
            os << intensity(row, col);
        }
        os << "\n";
    }
}

std::string intensity_json(const Eigen::MatrixXd& intensity, const SpatialGrid& grid,
                           int indent) {
    nlohmann::json j;
    j["half_extent"] = grid.half_extent;
    j["resolution"] = grid.resolution;
    j["waist"] = grid.waist;
    auto& rows = j["intensity"] = nlohmann::json::array();
    for (Eigen::Index row = 0; row < intensity.rows(); ++row) {
        nlohmann::json r = nlohmann::json::array();
        for (Eigen::Index col = 0; col < intensity.cols(); ++col) r.push_back(intensity(row, col));
        rows.push_back(std::move(r));
    }
    return j.dump(indent);
}

ConversionReport lg_hg_conversion_check(const TruncationScheme& trunc, double scale) {
    if (trunc.n_max < 2)
        throw std::invalid_argument("lg_hg_conversion_check: needs n_max >= 2");
    MetaplecticParams p;
    p[GeneratorLabel::Ly] = scale * M_PI / 2.0;
    const FockOperator u = metaplectic(p, trunc);

    ConversionReport rep;
    rep.min_fidelity = 1.0;
    for (int l : {+1, -1}) {
        const FockVector out = apply(u, lg_state(l, 0, trunc));
        ConversionReport::Assignment best;
        best.l = l;
        for (const ModeIndex target : {ModeIndex{1, 0}, ModeIndex{0, 1}}) {
            const double fid = std::abs(out[target]);
            if (fid > best.fidelity) {
                best.fidelity = fid;
                best.hg_target = target;
            }
        }
        rep.min_fidelity = std::min(rep.min_fidelity, best.fidelity);
        rep.assignments.push_back(best);
    }
    return rep;
}

PolOamState PolOamState::basis(int pol, int l) {
    if ((pol != 0 && pol != 1) || (l != 1 && l != -1))
        throw std::invalid_argument("PolOamState::basis: pol in {0,1}, l in {+1,-1}");
    PolOamState s;
    s.amp(2 * pol + (l == 1 ? 0 : 1)) = 1.0;
    return s;
}

Eigen::Matrix4cd cnot_gate_matrix() {
    Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
    g(0, 0) = g(1, 1) = 1.0;  // H block: identity
    g(2, 3) = g(3, 2) = 1.0;  // V block: l -> -l
    return g;
}

PolOamState cnot_apply(const PolOamState& state) {
    PolOamState out;
    out.amp = cnot_gate_matrix() * state.amp;
    return out;
}

namespace {

/// Order-1 block of exp(-i t (cos(2 chi) Lx + sin(2 chi) Ly)) in the LG
/// basis (LG_{+1}, LG_{-1}): a cylindrical-lens mode converter whose axis
/// sits at angle chi; t = pi/2 is the quarter (LG <-> HG) converter.
Eigen::Matrix2cd converter_block_lg(double chi, double t) {
    const TruncationScheme trunc(2);
    const FockOperator gen =
        complexd(std::cos(2.0 * chi)) * build_generator(GeneratorLabel::Lx, trunc) +
        complexd(std::sin(2.0 * chi)) * build_generator(GeneratorLabel::Ly, trunc);
    const FockOperator u = expi(gen, t);

    const FockVector lg_plus = lg_state(+1, 0, trunc);
    const FockVector lg_minus = lg_state(-1, 0, trunc);
    Eigen::Matrix2cd block;
    for (int col = 0; col < 2; ++col) {
        const FockVector out = apply(u, col == 0 ? lg_plus : lg_minus);
        block(0, col) = lg_plus.amplitudes.dot(out.amplitudes);
        block(1, col) = lg_minus.amplitudes.dot(out.amplitudes);
    }
    return block;
}

complexd fit_block_phase(const Eigen::Matrix2cd& target, const Eigen::Matrix2cd& raw) {
    const complexd overlap = (raw.adjoint() * target).trace();
    return overlap / std::abs(overlap);
}

}  // namespace

InterferometerModel build_cnot_interferometer() {
    const double quarter = M_PI / 2.0;
    // The counter-propagating arms see the intra-loop converter CL1 with
    // orientations 90 degrees apart; CL2 sits in the common output path.
    const Eigen::Matrix2cd arm_h = converter_block_lg(0.0, quarter);
    const Eigen::Matrix2cd arm_v = converter_block_lg(M_PI / 2.0, quarter);
    const Eigen::Matrix2cd cl2 = converter_block_lg(M_PI / 2.0, quarter);

    const Eigen::Matrix2cd net_h = cl2 * arm_h;
    const Eigen::Matrix2cd net_v = cl2 * arm_v;

    InterferometerModel model;
    model.raw = Eigen::Matrix4cd::Zero();
    model.raw.block<2, 2>(0, 0) = net_h;
    model.raw.block<2, 2>(2, 2) = net_v;

    const Eigen::Matrix4cd gate = cnot_gate_matrix();
    model.phase_h = fit_block_phase(gate.block<2, 2>(0, 0), net_h);
    model.phase_v = fit_block_phase(gate.block<2, 2>(2, 2), net_v);
    model.calibrated = Eigen::Matrix4cd::Zero();
    model.calibrated.block<2, 2>(0, 0) = model.phase_h * net_h;
    model.calibrated.block<2, 2>(2, 2) = model.phase_v * net_v;
    model.max_deviation = (model.calibrated - gate).cwiseAbs().maxCoeff();
    return model;
}

PolOamState cnot_interferometer(const PolOamState& state) {
    static const InterferometerModel model = build_cnot_interferometer();
    PolOamState out;
    out.amp = model.calibrated * state.amp;
    return out;
}

}  // namespace modesim
