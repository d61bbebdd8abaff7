#include "modesim/generators.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace modesim {

namespace {
constexpr complexd I{0.0, 1.0};
}

bool is_passive(GeneratorLabel l) {
    return l == GeneratorLabel::Lo || l == GeneratorLabel::Lx || l == GeneratorLabel::Ly ||
           l == GeneratorLabel::Lz;
}

bool is_active(GeneratorLabel l) {
    switch (l) {
        case GeneratorLabel::Kx:
        case GeneratorLabel::Ky:
        case GeneratorLabel::Kz:
        case GeneratorLabel::Mx:
        case GeneratorLabel::My:
        case GeneratorLabel::Mz: return true;
        default: return false;
    }
}

bool is_quadratic(GeneratorLabel l) { return is_passive(l) || is_active(l); }

bool is_su3(GeneratorLabel l) { return !is_quadratic(l); }

std::string label_name(GeneratorLabel l) {
    switch (l) {
        case GeneratorLabel::Lo: return "Lo";
        case GeneratorLabel::Lx: return "Lx";
        case GeneratorLabel::Ly: return "Ly";
        case GeneratorLabel::Lz: return "Lz";
        case GeneratorLabel::Kx: return "Kx";
        case GeneratorLabel::Ky: return "Ky";
        case GeneratorLabel::Kz: return "Kz";
        case GeneratorLabel::Mx: return "Mx";
        case GeneratorLabel::My: return "My";
        case GeneratorLabel::Mz: return "Mz";
        case GeneratorLabel::T1: return "T1";
        case GeneratorLabel::T2: return "T2";
        case GeneratorLabel::T3: return "T3";
        case GeneratorLabel::T4: return "T4";
        case GeneratorLabel::T5: return "T5";
        case GeneratorLabel::T6: return "T6";
        case GeneratorLabel::T7: return "T7";
        case GeneratorLabel::T8: return "T8";
    }
    throw std::invalid_argument("label_name: unknown label");
}

GeneratorLabel parse_label(const std::string& name) {
    for (GeneratorLabel l : all_generator_labels)
        if (label_name(l) == name) return l;
    throw std::invalid_argument("parse_label: unknown generator '" + name + "'");
}

FockOperator build_generator(GeneratorLabel label, const TruncationScheme& trunc) {
    const FockOperator ax = ladder_op(Axis::x, LadderKind::lower, trunc);
    const FockOperator ay = ladder_op(Axis::y, LadderKind::lower, trunc);
    const FockOperator axd = ax.adjoint();
    const FockOperator ayd = ay.adjoint();
    const Mat id = Mat::Identity(trunc.dim(), trunc.dim());

    switch (label) {
        case GeneratorLabel::Lo: return 0.5 * (axd * ax + ayd * ay);
        case GeneratorLabel::Lx: return 0.5 * (axd * ax - ayd * ay);
        case GeneratorLabel::Ly: return 0.5 * (axd * ay + ayd * ax);
        case GeneratorLabel::Lz: return (-I * 0.5) * (axd * ay - ayd * ax);

        case GeneratorLabel::Kx: return (-0.5) * (axd * ayd + ax * ay);
        case GeneratorLabel::Ky: return 0.25 * (axd * axd + ax * ax - ayd * ayd - ay * ay);
        case GeneratorLabel::Kz: return (-I * 0.25) * (axd * axd - ax * ax + ayd * ayd - ay * ay);
        case GeneratorLabel::Mx: return (-I * 0.5) * (axd * ayd - ax * ay);
        case GeneratorLabel::My: return (I * 0.25) * (axd * axd - ax * ax - ayd * ayd + ay * ay);
        case GeneratorLabel::Mz: return 0.25 * (axd * axd + ax * ax + ayd * ayd + ay * ay);

        case GeneratorLabel::T1: return 0.5 * (axd * ay + ayd * ax);
        case GeneratorLabel::T2: return (-I * 0.5) * (axd * ay - ayd * ax);
        case GeneratorLabel::T3: return 0.5 * (axd * ax - ayd * ay);
        case GeneratorLabel::T4:
            return 0.5 * (axd + ax - axd * axd * ax - axd * ax * ax - axd * ayd * ay - ax * ayd * ay);
        case GeneratorLabel::T5:
            return (-I * 0.5) *
                   (axd - ax - axd * axd * ax + axd * ax * ax - axd * ayd * ay + ax * ayd * ay);
        case GeneratorLabel::T6:
            return 0.5 * (ayd + ay - ayd * ayd * ay - ayd * ay * ay - ayd * axd * ax - ay * axd * ax);
        case GeneratorLabel::T7:
            return (-I * 0.5) *
                   (ayd - ay - ayd * ayd * ay + ayd * ay * ay - ayd * axd * ax + ay * axd * ax);
        case GeneratorLabel::T8:
            return FockOperator{(1.0 / (2.0 * std::sqrt(3.0))) *
                                    (-2.0 * id + 3.0 * (axd * ax + ayd * ay).matrix),
                                trunc};
    }
    throw std::invalid_argument("build_generator: unknown label");
}

FockOperator commutator(const FockOperator& a, const FockOperator& b) {
    return a * b - b * a;
}

double StructureTable::f(int a, int b, int c) const {
    // Sort indices, tracking the permutation sign.
    std::array<int, 3> idx = {a, b, c};
    int sign = 1;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2 - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
    if (a == b || b == c || a == c) return 0.0;
    auto it = entries.find(idx);
    return it == entries.end() ? 0.0 : sign * it->second;
}

StructureTable StructureTable::su3_reference() {
    StructureTable t;
    auto put = [&t](int a, int b, int c, double v) {
        // Store with ascending indices and the matching sign.
        std::array<int, 3> idx = {a, b, c};
        int sign = 1;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2 - i; ++j)
                if (idx[j] > idx[j + 1]) {
                    std::swap(idx[j], idx[j + 1]);
                    sign = -sign;
                }
        t.entries[idx] = sign * v;
    };
    const double half = 0.5;
    const double s32 = std::sqrt(3.0) / 2.0;
    put(1, 2, 3, 1.0);
    put(1, 4, 7, half);
    put(1, 6, 5, half);
    put(2, 4, 6, half);
    put(2, 5, 7, half);
    put(3, 4, 5, half);
    put(3, 7, 6, half);
    put(4, 5, 8, s32);
    put(6, 7, 8, s32);
    return t;
}

std::array<int, 3> ht_ordinals(const TruncationScheme& trunc) {
    return {basis_index({0, 0}, trunc), basis_index({1, 0}, trunc), basis_index({0, 1}, trunc)};
}

FockOperator ht_projector(const TruncationScheme& trunc) {
    FockOperator p(trunc);
    for (int i : ht_ordinals(trunc)) p.matrix(i, i) = 1.0;
    return p;
}

Eigen::Matrix3cd restrict_to_ht(const FockOperator& op) {
    const auto ord = ht_ordinals(op.trunc);
    Eigen::Matrix3cd r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = op.matrix(ord[i], ord[j]);
    return r;
}

StructureReport verify_structure_constants(const TruncationScheme& trunc, double tol) {
    if (trunc.n_max < 3)
        throw std::invalid_argument("verify_structure_constants: needs n_max >= 3");

    std::array<FockOperator, 8> t{FockOperator(trunc), FockOperator(trunc), FockOperator(trunc),
                                  FockOperator(trunc), FockOperator(trunc), FockOperator(trunc),
                                  FockOperator(trunc), FockOperator(trunc)};
    for (int a = 0; a < 8; ++a) t[a] = build_generator(su3_labels[a], trunc);

    std::array<Eigen::Matrix3cd, 8> t_ht;
    for (int a = 0; a < 8; ++a) t_ht[a] = restrict_to_ht(t[a]);

    const StructureTable ref = StructureTable::su3_reference();
    StructureReport rep;

    // The projected T_c are orthogonal under the Hilbert-Schmidt product with
    // Tr(T_a T_b) = delta_ab / 2, so the least-squares solution is
    // f_abc = 2 Re Tr(T_c^dag (-i) [T_a, T_b]).
    for (int a = 1; a <= 8; ++a) {
        for (int b = a + 1; b <= 8; ++b) {
            const Eigen::Matrix3cd comm =
                t_ht[a - 1] * t_ht[b - 1] - t_ht[b - 1] * t_ht[a - 1];
            Eigen::Matrix3cd fit = Eigen::Matrix3cd::Zero();
            for (int c = 1; c <= 8; ++c) {
                const complexd coef = 2.0 * ((-I) * comm).cwiseProduct(t_ht[c - 1].conjugate()).sum();
                const double measured = coef.real();
                fit += I * measured * t_ht[c - 1];

                StructureCheckRow row;
                row.a = a;
                row.b = b;
                row.c = c;
                row.expected_f = ref.f(a, b, c);
                row.measured_f = measured;
                row.residual = std::abs(measured - row.expected_f);
                rep.max_deviation = std::max(rep.max_deviation, row.residual);
                rep.rows.push_back(row);
                if (std::abs(measured) > tol) {
                    std::array<int, 3> idx = {a, b, c};
                    rep.measured.entries[idx] = measured;
                }
            }
            rep.max_fit_residual = std::max(rep.max_fit_residual, (comm - fit).norm());

            // Full-space remainder after removing the same i f_abc T_c
            // combination; reported, not asserted.
            Mat full = commutator(t[a - 1], t[b - 1]).matrix;
            for (int c = 1; c <= 8; ++c) full -= I * ref.f(a, b, c) * t[c - 1].matrix;
            rep.max_fullspace_residual = std::max(rep.max_fullspace_residual, full.norm());
        }
    }
    rep.ok = rep.max_deviation <= tol && rep.max_fit_residual <= tol;
    return rep;
}

std::string StructureReport::to_json(int indent) const {
    nlohmann::json j;
    j["max_deviation"] = max_deviation;
    j["max_fit_residual"] = max_fit_residual;
    j["max_fullspace_residual_informational"] = max_fullspace_residual;
    j["ok"] = ok;
    auto& rows_json = j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        if (std::abs(r.expected_f) < 1e-15 && std::abs(r.measured_f) < 1e-13) continue;
        rows_json.push_back({{"pair", {r.a, r.b, r.c}},
                             {"expected_f", r.expected_f},
                             {"measured_f", r.measured_f},
                             {"residual", r.residual}});
    }
    return j.dump(indent);
}

}  // namespace modesim
