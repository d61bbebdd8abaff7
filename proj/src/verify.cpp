#include "modesim/verify.hpp"

#include <cmath>

#include <json.hpp>

namespace modesim {

namespace {
constexpr complexd I{0.0, 1.0};

double epsilon_ijk(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0.0;
    return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
}
}  // namespace

VerificationReport verify_commutator_tables(const TruncationScheme& trunc, double passive_tol,
                                            double active_tol) {
    VerificationReport rep;

    const FockOperator lo = build_generator(GeneratorLabel::Lo, trunc);
    const std::array<FockOperator, 3> l = {build_generator(GeneratorLabel::Lx, trunc),
                                           build_generator(GeneratorLabel::Ly, trunc),
                                           build_generator(GeneratorLabel::Lz, trunc)};
    const std::array<FockOperator, 3> k = {build_generator(GeneratorLabel::Kx, trunc),
                                           build_generator(GeneratorLabel::Ky, trunc),
                                           build_generator(GeneratorLabel::Kz, trunc)};
    const std::array<FockOperator, 3> m = {build_generator(GeneratorLabel::Mx, trunc),
                                           build_generator(GeneratorLabel::My, trunc),
                                           build_generator(GeneratorLabel::Mz, trunc)};
    const char* axis = "xyz";

    const Mat id = Mat::Identity(trunc.dim(), trunc.dim());
    const Mat p_int = interior_projector(trunc.n_max - 2, trunc).matrix;

    auto spectral_norm = [](const Mat& a) {
        return a.jacobiSvd().singularValues().maxCoeff();
    };

    auto add_row = [&rep](std::string relation, double residual, double tol, bool active) {
        rep.rows.push_back({std::move(relation), residual, tol, residual <= tol});
        (active ? rep.max_active_residual : rep.max_passive_residual) =
            std::max(active ? rep.max_active_residual : rep.max_passive_residual, residual);
    };

    // Passive table, full space.
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Mat lhs = commutator(l[i], l[j]).matrix;
            for (int kk = 0; kk < 3; ++kk) lhs -= I * epsilon_ijk(i, j, kk) * l[kk].matrix;
            add_row(std::string("[L") + axis[i] + ",L" + axis[j] + "] - i eps L",
                    spectral_norm(lhs), passive_tol, false);
        }
        add_row(std::string("[L") + axis[i] + ",Lo]", spectral_norm(commutator(l[i], lo).matrix),
                passive_tol, false);
    }

    // Active table, interior subspace N <= n_max - 2.
    auto interior_norm = [&](const Mat& a) { return spectral_norm(a * p_int); };
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Mat lhs = commutator(l[i], k[j]).matrix;
            for (int kk = 0; kk < 3; ++kk) lhs -= I * epsilon_ijk(i, j, kk) * k[kk].matrix;
            add_row(std::string("[L") + axis[i] + ",K" + axis[j] + "] - i eps K",
                    interior_norm(lhs), active_tol, true);

            lhs = commutator(l[i], m[j]).matrix;
            for (int kk = 0; kk < 3; ++kk) lhs -= I * epsilon_ijk(i, j, kk) * m[kk].matrix;
            add_row(std::string("[L") + axis[i] + ",M" + axis[j] + "] - i eps M",
                    interior_norm(lhs), active_tol, true);

            lhs = commutator(k[i], m[j]).matrix;
            if (i == j) lhs -= I * (lo.matrix + 0.5 * id);
            add_row(std::string("[K") + axis[i] + ",M" + axis[j] + "] - i delta (Lo + 1/2)",
                    interior_norm(lhs), active_tol, true);

            lhs = commutator(k[i], k[j]).matrix;
            for (int kk = 0; kk < 3; ++kk) lhs += I * epsilon_ijk(i, j, kk) * l[kk].matrix;
            add_row(std::string("[K") + axis[i] + ",K" + axis[j] + "] + i eps L",
                    interior_norm(lhs), active_tol, true);

            lhs = commutator(m[i], m[j]).matrix;
            for (int kk = 0; kk < 3; ++kk) lhs += I * epsilon_ijk(i, j, kk) * l[kk].matrix;
            add_row(std::string("[M") + axis[i] + ",M" + axis[j] + "] + i eps L",
                    interior_norm(lhs), active_tol, true);
        }

        // Lo ladder relation: [Lo, K_j +- i M_j] = -+ (K_j +- i M_j).
        const Mat plus = k[i].matrix + I * m[i].matrix;
        const Mat minus = k[i].matrix - I * m[i].matrix;
        add_row(std::string("[Lo,K") + axis[i] + "+iM" + axis[i] + "] + (K+iM)",
                interior_norm(lo.matrix * plus - plus * lo.matrix + plus), active_tol, true);
        add_row(std::string("[Lo,K") + axis[i] + "-iM" + axis[i] + "] - (K-iM)",
                interior_norm(lo.matrix * minus - minus * lo.matrix - minus), active_tol, true);
    }

    // The first three SU(3) generators coincide with passive ones.
    add_row("T1 - Ly",
            spectral_norm(build_generator(GeneratorLabel::T1, trunc).matrix - l[1].matrix),
            1e-14, false);
    add_row("T2 - Lz",
            spectral_norm(build_generator(GeneratorLabel::T2, trunc).matrix - l[2].matrix),
            1e-14, false);
    add_row("T3 - Lx",
            spectral_norm(build_generator(GeneratorLabel::T3, trunc).matrix - l[0].matrix),
            1e-14, false);

    rep.ok = true;
    for (const auto& row : rep.rows) rep.ok = rep.ok && row.ok;
    return rep;
}

std::string VerificationReport::to_json(int indent) const {
    nlohmann::json j;
    j["ok"] = ok;
    j["max_passive_residual"] = max_passive_residual;
    j["max_active_residual"] = max_active_residual;
    auto& rows_json = j["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
        rows_json.push_back(
            {{"relation", r.relation}, {"residual", r.residual}, {"tol", r.tol}, {"ok", r.ok}});
    return j.dump(indent);
}

}  // namespace modesim
