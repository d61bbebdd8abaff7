#include "modesim/nogo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace modesim {

namespace {
constexpr complexd I{0.0, 1.0};

double binomial(int n, int k) {
    double b = 1.0;
    for (int j = 1; j <= k; ++j) b *= static_cast<double>(n - k + j) / j;
    return b;
}

complexd ipow(complexd z, int k) {
    complexd r{1.0, 0.0};
    for (int j = 0; j < k; ++j) r *= z;
    return r;
}
}  // namespace

SubspaceProjector::SubspaceProjector(std::vector<ModeIndex> modes_, const TruncationScheme& trunc_)
    : modes(std::move(modes_)), trunc(trunc_) {
    std::set<int> seen;
    for (const auto& m : modes) {
        if (!trunc.contains(m))
            throw std::out_of_range("SubspaceProjector: mode outside cutoff");
        if (!seen.insert(basis_index(m, trunc)).second)
            throw std::invalid_argument("SubspaceProjector: duplicate mode");
    }
}

FockOperator SubspaceProjector::matrix() const {
    FockOperator p(trunc);
    for (const auto& m : modes) {
        const int i = basis_index(m, trunc);
        p.matrix(i, i) = 1.0;
    }
    return p;
}

FockVector SubspaceProjector::random_state(std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    FockVector v(trunc);
    for (const auto& m : modes) v[m] = complexd(gauss(rng), gauss(rng));
    return v.normalized_copy();
}

double leakage(const FockOperator& u, const SubspaceProjector& p, const FockVector& v) {
    const FockVector uv = apply(u, v);
    const Mat pm = p.matrix().matrix;
    return (uv.amplitudes - pm * uv.amplitudes).norm();
}

double commutator_obstruction(const MetaplecticParams& p, const SubspaceProjector& proj,
                              int interior_order) {
    if (interior_order < 0) interior_order = proj.trunc.n_max - 2;
    FockOperator sj(proj.trunc);
    for (int i = 0; i < 10; ++i) {
        if (p.s[i] == 0.0) continue;
        sj = sj + complexd(p.s[i]) * build_generator(MetaplecticParams::labels[i], proj.trunc);
    }
    const Mat pm = proj.matrix().matrix;
    const Mat comm = sj.matrix * pm - pm * sj.matrix;
    const Mat p_int = interior_projector(interior_order, proj.trunc).matrix;
    return (p_int * comm * p_int).norm();
}

OrbitReport orbit_rank(const std::vector<GeneratorLabel>& set, const FockVector& v,
                       double sv_threshold, double gap_factor) {
    if (!v.normalized(1e-10))
        throw std::invalid_argument("orbit_rank: state must be normalized");

    const int dim = v.dim();
    const int n_gen = static_cast<int>(set.size());
    const Vec& psi = v.amplitudes;
    const Vec phase_dir = I * psi;  // global-phase direction

    Eigen::MatrixXd tangents(2 * dim, n_gen);
    for (int a = 0; a < n_gen; ++a) {
        const FockOperator g = build_generator(set[a], v.trunc);
        Vec t = I * (g.matrix * psi);
        // Remove the norm direction and the global-phase direction
        // (real-linear projections).
        t -= complexd((psi.adjoint() * t).value().real()) * psi;
        t -= complexd((phase_dir.adjoint() * t).value().real()) * phase_dir;
        tangents.col(a).head(dim) = t.real();
        tangents.col(a).tail(dim) = t.imag();
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(tangents);
    const Eigen::VectorXd sv = svd.singularValues();

    OrbitReport rep(set, v);
    rep.singular_values.assign(sv.data(), sv.data() + sv.size());
    for (double s : rep.singular_values)
        if (s > sv_threshold) ++rep.rank;
    if (rep.rank < static_cast<int>(sv.size())) {
        const double first_discarded = rep.singular_values[rep.rank];
        if (first_discarded > 0.0 && rep.rank > 0)
            rep.gap_ok = rep.singular_values[rep.rank - 1] >= gap_factor * first_discarded;
    }
    return rep;
}

FockVector spin_coherent(int n, double theta, double phi, const TruncationScheme& trunc) {
    if (n < 0 || n > trunc.n_max)
        throw std::out_of_range("spin_coherent: order outside cutoff");
    FockVector v(trunc);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    for (int k = 0; k <= n; ++k) {
        const complexd amp = std::sqrt(binomial(n, k)) * std::pow(c, n - k) *
                             ipow(complexd(s * std::cos(phi), s * std::sin(phi)), k);
        v[{n - k, k}] = amp;
    }
    return v.normalized_copy();
}

MajoranaResult majorana_coincident(const FockVector& v, double chordal_tol) {
    const double nrm = v.norm();
    if (nrm == 0.0) throw std::invalid_argument("majorana_coincident: zero vector");

    // The state must live in a single order-n block.
    int n = -1;
    const auto dist = v.order_distribution();
    for (int order = 0; order <= v.trunc.n_max; ++order) {
        if (dist[order] > 1e-20 * nrm * nrm) {
            if (n >= 0)
                throw std::invalid_argument(
                    "majorana_coincident: state is not supported on a single order block");
            n = order;
        }
    }

    // Amplitude polynomial sum_k c_k sqrt(C(n,k)) z^k.
    std::vector<complexd> coeff(n + 1);
    double cmax = 0.0;
    for (int k = 0; k <= n; ++k) {
        coeff[k] = v[{n - k, k}] * std::sqrt(binomial(n, k));
        cmax = std::max(cmax, std::abs(coeff[k]));
    }
    int degree = 0;
    for (int k = n; k >= 0; --k)
        if (std::abs(coeff[k]) > 1e-12 * cmax) {
            degree = k;
            break;
        }

    MajoranaResult res;
    auto to_sphere = [](const complexd& z) {
        const double d = 1.0 + std::norm(z);
        return Eigen::Vector3d(2.0 * z.real() / d, 2.0 * z.imag() / d, (std::norm(z) - 1.0) / d);
    };

    if (degree > 0) {
        // Companion-matrix roots of the degree-d prefix.
        Mat comp = Mat::Zero(degree, degree);
        for (int k = 0; k < degree - 1; ++k) comp(k + 1, k) = 1.0;
        for (int k = 0; k < degree; ++k) comp(k, degree - 1) = -coeff[k] / coeff[degree];
        Eigen::ComplexEigenSolver<Mat> es(comp);
        for (int k = 0; k < degree; ++k) res.sphere_points.push_back(to_sphere(es.eigenvalues()(k)));
    }
    // Degree deficit: roots at infinity (north pole).
    for (int k = degree; k < n; ++k) res.sphere_points.emplace_back(0.0, 0.0, 1.0);

    for (size_t i = 0; i < res.sphere_points.size(); ++i)
        for (size_t j = i + 1; j < res.sphere_points.size(); ++j)
            res.spread = std::max(res.spread,
                                  (res.sphere_points[i] - res.sphere_points[j]).norm());
    // An n-fold root computed in double precision splits into a cluster of
    // diameter ~ eps^(1/n); the coincidence threshold cannot sit below that
    // floor for n >= 3.
    const double splitting_floor =
        200.0 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / std::max(n, 1));
    res.coincident = res.spread < std::max(chordal_tol, splitting_floor);
    return res;
}

namespace {

std::vector<std::string> names_of(const std::vector<GeneratorLabel>& set) {
    std::vector<std::string> out;
    out.reserve(set.size());
    for (auto l : set) out.push_back(label_name(l));
    return out;
}

nlohmann::json mode_list_json(const std::vector<ModeIndex>& modes) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& m : modes) j.push_back({m.n_x, m.n_y});
    return j;
}

}  // namespace

NogoReport run_nogo_suite(const TruncationScheme& trunc, std::uint64_t seed, int samples) {
    NogoReport rep;
    rep.seed = seed;
    rep.n_max = trunc.n_max;
    rep.samples = samples;

    const std::vector<GeneratorLabel> passive(passive_labels.begin(), passive_labels.end());
    const std::vector<GeneratorLabel> su3(su3_labels.begin(), su3_labels.end());

    auto rank_claim = [&](const std::string& id, const std::vector<GeneratorLabel>& set,
                          const std::vector<ModeIndex>& modes, int expected_rank,
                          int rank_required, bool expect_below_required) {
        std::mt19937_64 rng(seed);
        const SubspaceProjector proj(modes, trunc);
        NogoClaim claim;
        claim.claim_id = id;
        claim.generator_set = names_of(set);
        claim.subspace = modes;
        claim.rank_required = rank_required;
        claim.pass = true;
        int common_rank = -2;
        for (int k = 0; k < samples; ++k) {
            const OrbitReport r = orbit_rank(set, proj.random_state(rng));
            if (common_rank == -2) common_rank = r.rank;
            if (r.rank != expected_rank || !r.gap_ok) claim.pass = false;
            if (r.rank != common_rank) common_rank = -1;
        }
        claim.rank_found = common_rank;
        if (expect_below_required && common_rank >= rank_required) claim.pass = false;
        claim.verdict = claim.pass
                            ? (expect_below_required ? "rank deficit confirmed" : "full control confirmed")
                            : "unexpected rank";
        rep.claims.push_back(claim);
    };

    const std::vector<ModeIndex> ht = {{0, 0}, {1, 0}, {0, 1}};
    const std::vector<ModeIndex> mixed = {{0, 0}, {1, 0}, {2, 0}};
    const std::vector<ModeIndex> qubit = {{1, 0}, {0, 1}};

    // Passive generators are stuck at rank 3 on qutrits (< 4 = 2(d-1)) ...
    rank_claim("passive_qutrit_same_order", passive, ht, 3, 4, true);
    rank_claim("passive_qutrit_mixed_order", passive, mixed, 3, 4, true);
    // ... while qubits are fully controllable inside U(2) ...
    rank_claim("passive_qubit", passive, qubit, 2, 2, false);
    // ... and the SU(3) set reaches full qutrit control.
    rank_claim("su3_qutrit", su3, ht, 4, 4, false);

    // Any parameter vector with a nonzero active entry fails to commute with
    // the projector and leaks out of H_T.
    {
        std::mt19937_64 rng(seed + 1);
        std::uniform_real_distribution<double> mag(0.25, 2.0);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        const SubspaceProjector proj(ht, trunc);
        NogoClaim claim;
        claim.claim_id = "active_obstruction_and_leakage";
        claim.generator_set = names_of({active_labels.begin(), active_labels.end()});
        claim.subspace = ht;
        claim.pass = true;
        claim.obstruction_min = std::numeric_limits<double>::infinity();
        auto probe = [&](const MetaplecticParams& p) {
            const double obs = commutator_obstruction(p, proj);
            claim.obstruction_min = std::min(claim.obstruction_min, obs);
            const FockOperator u = metaplectic(p, trunc);
            double worst_leak = 0.0;
            std::mt19937_64 rng_states(seed + 2);
            for (int k = 0; k < 5; ++k)
                worst_leak = std::max(worst_leak, leakage(u, proj, proj.random_state(rng_states)));
            claim.leakage_max = std::max(claim.leakage_max, worst_leak);
            if (obs <= 1e-6 || worst_leak <= 1e-6) claim.pass = false;
        };
        for (GeneratorLabel l : active_labels) {
            MetaplecticParams p;
            p[l] = 1.0;
            probe(p);
        }
        for (int k = 0; k < samples; ++k) {
            MetaplecticParams p;
            for (int i = 0; i < 4; ++i) p.s[i] = uni(rng);
            const int active_slot = 4 + static_cast<int>(rng() % 6);
            p.s[active_slot] = (uni(rng) < 0 ? -1.0 : 1.0) * mag(rng);
            probe(p);
        }
        claim.verdict = claim.pass ? "active generators break subspace invariance"
                                   : "obstruction or leakage unexpectedly small";
        rep.claims.push_back(claim);
    }

    // Rank gain from an active augmentation comes with leakage.
    {
        std::mt19937_64 rng(seed + 3);
        const SubspaceProjector proj(ht, trunc);
        NogoClaim claim;
        claim.claim_id = "active_augmentation_rank_vs_leakage";
        std::vector<GeneratorLabel> augmented = passive;
        augmented.push_back(GeneratorLabel::Kz);
        claim.generator_set = names_of(augmented);
        claim.subspace = ht;
        claim.rank_required = 4;
        claim.pass = true;
        int common_rank = -2;
        MetaplecticParams pk;
        pk[GeneratorLabel::Kz] = 0.5;
        const FockOperator uk = metaplectic(pk, trunc);
        for (int k = 0; k < samples; ++k) {
            const FockVector v = proj.random_state(rng);
            const OrbitReport r = orbit_rank(augmented, v);
            if (common_rank == -2) common_rank = r.rank;
            if (r.rank != common_rank) common_rank = -1;
            const double leak = leakage(uk, proj, v);
            claim.leakage_max = std::max(claim.leakage_max, leak);
            if (r.rank <= 3 || leak <= 1e-6) claim.pass = false;
        }
        claim.rank_found = common_rank;
        claim.verdict = claim.pass ? "rank gain accompanied by leakage" : "unexpected behavior";
        rep.claims.push_back(claim);
    }

    // Passive evolution cannot connect modes of different order.
    {
        std::mt19937_64 rng(seed + 4);
        std::uniform_real_distribution<double> uni(-2.0, 2.0);
        NogoClaim claim;
        claim.claim_id = "mixed_order_transition_forbidden";
        claim.generator_set = names_of(passive);
        claim.subspace = mixed;
        claim.pass = true;
        double worst = 0.0;
        const FockVector from = FockVector::basis_state({0, 0}, trunc);
        const int to = basis_index({2, 0}, trunc);
        for (int k = 0; k < samples; ++k) {
            MetaplecticParams p;
            for (int i = 0; i < 4; ++i) p.s[i] = uni(rng);
            const FockOperator u = metaplectic(p, trunc);
            worst = std::max(worst, std::abs(apply(u, from).amplitudes(to)));
        }
        claim.leakage_max = worst;
        claim.pass = worst < 1e-12;
        claim.verdict = claim.pass ? "order-changing transition amplitude vanishes"
                                   : "unexpected order-changing amplitude";
        rep.claims.push_back(claim);
    }

    // Forward direction of the Dicke/spin-coherent remark: the passive orbit
    // of a spin-coherent state stays spin-coherent.
    {
        std::mt19937_64 rng(seed + 5);
        std::uniform_real_distribution<double> uni(-2.0, 2.0);
        std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
        NogoClaim claim;
        claim.claim_id = "passive_orbit_spin_coherent";
        claim.generator_set = names_of(passive);
        claim.pass = true;
        double worst_spread = 0.0;
        for (int k = 0; k < samples; ++k) {
            const int n = 1 + static_cast<int>(rng() % 4);
            const FockVector sc = spin_coherent(n, ang(rng) / 2.0, ang(rng), trunc);
            MetaplecticParams p;
            for (int i = 0; i < 4; ++i) p.s[i] = uni(rng);
            const FockVector evolved = apply(metaplectic(p, trunc), sc);
            const MajoranaResult m = majorana_coincident(evolved);
            worst_spread = std::max(worst_spread, m.spread);
            if (!m.coincident) claim.pass = false;
        }
        claim.leakage_max = worst_spread;
        claim.verdict = claim.pass ? "spin-coherent orbit closed under passive evolution"
                                   : "orbit left the spin-coherent family";
        rep.claims.push_back(claim);
    }

    rep.ok = std::all_of(rep.claims.begin(), rep.claims.end(),
                         [](const NogoClaim& c) { return c.pass; });
    return rep;
}

std::string NogoReport::to_json(int indent) const {
    nlohmann::json j;
    j["seed"] = seed;
    j["n_max"] = n_max;
    j["samples"] = samples;
    j["ok"] = ok;
    auto& rows = j["claims"] = nlohmann::json::array();
    for (const auto& c : claims) {
        nlohmann::json row;
        row["claim_id"] = c.claim_id;
        row["generator_set"] = c.generator_set;
        row["subspace"] = mode_list_json(c.subspace);
        row["rank_found"] = c.rank_found;
        row["rank_required"] = c.rank_required;
        row["leakage_max"] = c.leakage_max;
        if (std::isfinite(c.obstruction_min) && c.obstruction_min > 0.0)
            row["obstruction_min"] = c.obstruction_min;
        row["verdict"] = c.verdict;
        row["pass"] = c.pass;
        rows.push_back(row);
    }
    return j.dump(indent);
}

}  // namespace modesim
