#ifndef MODESIM_NOGO_HPP
#define MODESIM_NOGO_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "modesim/evolve.hpp"
#include "modesim/fock.hpp"
#include "modesim/generators.hpp"

namespace modesim {

/// Projector onto the span of a list of basis modes (diagonal 0/1 matrix;
/// idempotent and Hermitian exactly).
struct SubspaceProjector {
    std::vector<ModeIndex> modes;
    TruncationScheme trunc;

    SubspaceProjector(std::vector<ModeIndex> modes_, const TruncationScheme& trunc_);

    FockOperator matrix() const;
    int dim() const { return static_cast<int>(modes.size()); }

    /// Random normalized state supported on the subspace.
    FockVector random_state(std::mt19937_64& rng) const;
};

/// || (1 - P) U v ||: how much of U v escapes the subspace.
double leakage(const FockOperator& u, const SubspaceProjector& p, const FockVector& v);

/// Frobenius norm of [s.J, P] restricted to total order <= interior_order
/// (default n_max - 2).  Zero iff the generator combination preserves the
/// subspace.
double commutator_obstruction(const MetaplecticParams& p, const SubspaceProjector& proj,
                              int interior_order = -1);

struct OrbitReport {
    OrbitReport(std::vector<GeneratorLabel> set, FockVector st)
        : generator_set(std::move(set)), state(std::move(st)) {}

    int rank = 0;
    std::vector<double> singular_values;
    std::vector<GeneratorLabel> generator_set;
    FockVector state;
    /// True when the kept/discarded singular values are separated by the
    /// required gap factor (or nothing was discarded).
    bool gap_ok = true;
};

/// Numerical rank of the projective tangent space {i G_a v} at v, after
/// projecting out the state direction and the global-phase direction.
/// Full local controllability of a d-level state requires rank 2(d-1).
OrbitReport orbit_rank(const std::vector<GeneratorLabel>& set, const FockVector& v,
                       double sv_threshold = 1e-9, double gap_factor = 1e3);

/// SU(2) spin-coherent state within the order-n block:
/// sum_k sqrt(C(n,k)) cos^{n-k}(theta/2) (e^{i phi} sin(theta/2))^k |n-k, k>.
FockVector spin_coherent(int n, double theta, double phi, const TruncationScheme& trunc);

struct MajoranaResult {
    bool coincident = false;
    double spread = 0.0;                          // max pairwise chordal distance
    std::vector<Eigen::Vector3d> sphere_points;   // roots mapped to the unit sphere
};

/// Majorana root test for a state supported on a single order-n block:
/// forms sum_k c_k sqrt(C(n,k)) z^k, finds its roots on the extended complex
/// plane (degree deficit = roots at infinity, mapped to the north pole), and
/// reports whether all roots coincide within the chordal tolerance.
MajoranaResult majorana_coincident(const FockVector& v, double chordal_tol = 1e-6);

/// One row of the proposition verification suite.
struct NogoClaim {
    std::string claim_id;
    std::vector<std::string> generator_set;
    std::vector<ModeIndex> subspace;
    int rank_found = -1;     // -1 when the claim is not about rank
    int rank_required = -1;  // 2(d-1) where applicable
    double leakage_max = 0.0;
    double obstruction_min = 0.0;
    bool pass = false;
    std::string verdict;  // human-readable outcome
};

struct NogoReport {
    std::uint64_t seed = 0;
    int n_max = 0;
    int samples = 0;
    std::vector<NogoClaim> claims;
    bool ok = false;

    std::string to_json(int indent = -1) const;
};

/// Runs the full numerical content of the no-go proposition: passive orbit
/// ranks on qutrits (same-order and mixed-order) and qubits, SU(3) ranks,
/// active-generator obstruction and leakage, order-preservation, and the
/// spin-coherent forward check.  Deterministic for a fixed seed.
NogoReport run_nogo_suite(const TruncationScheme& trunc, std::uint64_t seed = 42,
                          int samples = 20);

}  // namespace modesim

#endif
