#ifndef MODESIM_EVOLVE_HPP
#define MODESIM_EVOLVE_HPP

#include <array>
#include <string>

#include "modesim/fock.hpp"
#include "modesim/generators.hpp"

namespace modesim {

/// The ten real parameters of the general metaplectic operator
/// U(s) = exp(-i s . J), ordered (Lo, Lx, Ly, Lz, Kx, Ky, Kz, Mx, My, Mz).
struct MetaplecticParams {
    std::array<double, 10> s{};

    static constexpr std::array<GeneratorLabel, 10> labels = {
        GeneratorLabel::Lo, GeneratorLabel::Lx, GeneratorLabel::Ly, GeneratorLabel::Lz,
        GeneratorLabel::Kx, GeneratorLabel::Ky, GeneratorLabel::Kz,
        GeneratorLabel::Mx, GeneratorLabel::My, GeneratorLabel::Mz};

    double& operator[](GeneratorLabel l);
    double operator[](GeneratorLabel l) const;

    /// True when all six active entries vanish.
    bool passive_only(double tol = 0.0) const;
    bool has_active_entry(double tol = 0.0) const { return !passive_only(tol); }
};

/// 4x4 real phase-space matrix over the quadrature ordering
/// (q_x, q_y, p_x, p_y); S Omega S^T = Omega.
struct SymplecticMatrix {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();

    /// Block metric Omega = [[0, I], [-I, 0]].
    static Eigen::Matrix4d omega();

    double symplectic_defect() const;  // max-abs entry of S Omega S^T - Omega
    bool is_symplectic(double tol = 1e-12) const { return symplectic_defect() <= tol; }

    std::string to_json() const;  // 16-element row-major array
    static SymplecticMatrix from_json(const std::string& text);
};

SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b);

/// exp(-i t h) by spectral decomposition of the Hermitian h.
/// Throws if h is not Hermitian within hermiticity_tol (scaled by the
/// largest matrix entry).
FockOperator expi(const FockOperator& h, double t, double hermiticity_tol = 1e-12);

/// The general metaplectic operator of the ten-parameter vector s:
/// one exponential of the weighted generator sum, never a product of
/// per-generator factors.
FockOperator metaplectic(const MetaplecticParams& p, const TruncationScheme& trunc);

/// Symmetric 4x4 form G of a quadratic generator: J = (1/2) xi^T G xi up to
/// an additive constant.  Throws for SU(3) labels.
Eigen::Matrix4d hamiltonian_form(GeneratorLabel label);

/// Classical symplectic matrix implemented by exp(-i t J_label):
/// S(t) = exp(t Omega G_label).  SU(3) labels are rejected (their
/// phase-space action is not defined here).
SymplecticMatrix symplectic_of(GeneratorLabel label, double t);

/// Symplectic matrix of the full ten-parameter sum: exp(Omega sum_i s_i G_i).
SymplecticMatrix symplectic_of(const MetaplecticParams& p);

/// Quadrature operators (q_x, q_y, p_x, p_y) built from ladder operators.
std::array<FockOperator, 4> quadrature_ops(const TruncationScheme& trunc);

/// Residual of the Stone-von Neumann relation U^dag xi U = S xi, measured as
/// the max over quadrature components of the spectral norm of
/// (U^dag xi_a U - sum_b S_ab xi_b) restricted on both sides to total order
/// <= interior_order.  interior_order < 0 means n_max - 4.  For active
/// labels the residual is pure truncation error and scales roughly like
/// t^((n_max - interior_order)/2 + 3) at fixed geometry.
double stone_von_neumann_check(GeneratorLabel label, double t, const TruncationScheme& trunc,
                               int interior_order = -1);

struct PapDecomposition {
    SymplecticMatrix k1;  // orthogonal symplectic
    SymplecticMatrix d;   // positive-diagonal symplectic diag(s1, s2, 1/s1, 1/s2)
    SymplecticMatrix k2;  // orthogonal symplectic
};

/// Euler (Bloch-Messiah) factorization S = K1 D K2 at the 4x4 matrix level.
/// Throws if the input is not symplectic.
PapDecomposition pap_decompose(const SymplecticMatrix& s, double symplectic_tol = 1e-8);

}  // namespace modesim

#endif
