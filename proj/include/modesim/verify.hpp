#ifndef MODESIM_VERIFY_HPP
#define MODESIM_VERIFY_HPP

#include <string>
#include <vector>

#include "modesim/fock.hpp"
#include "modesim/generators.hpp"

namespace modesim {

struct CommutatorCheckRow {
    std::string relation;
    double residual = 0.0;
    double tol = 0.0;
    bool ok = false;
};

struct VerificationReport {
    std::vector<CommutatorCheckRow> rows;
    bool ok = false;
    double max_passive_residual = 0.0;
    double max_active_residual = 0.0;

    std::string to_json(int indent = -1) const;
};

/// Verifies the full commutator table of the quadratic algebra:
///   [L_i, L_j] = i eps_ijk L_k and [L_i, Lo] = 0 on the full space;
///   [L_i, K_j] = i eps K_k, [L_i, M_j] = i eps M_k,
///   [K_i, K_j] = [M_i, M_j] = -i eps L_k,
///   [K_i, M_j] = i delta_ij (Lo + 1/2),
///   [Lo, K_j +- i M_j] = -+ (K_j +- i M_j)
/// on the interior subspace N <= n_max - 2 (active operators shift the order
/// by +-2, so truncation artifacts live in the outermost shells), plus the
/// matrix identities T1 = Ly, T2 = Lz, T3 = Lx.
///
/// Note the 1/2 in [K_i, M_i]: with the normal-ordered Lo (eigenvalue N/2)
/// the algebra closes only up to this central constant, which is what the
/// matrices actually satisfy.
VerificationReport verify_commutator_tables(const TruncationScheme& trunc,
                                            double passive_tol = 1e-12,
                                            double active_tol = 1e-10);

}  // namespace modesim

#endif
