#ifndef MODESIM_GENERATORS_HPP
#define MODESIM_GENERATORS_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "modesim/fock.hpp"

namespace modesim {

/// The 18 named generators: four passive (Lo..Lz, the compact U(2)),
/// six active (Kx..Mz, squeezing, order-changing), eight SU(3) (T1..T8,
/// four of them cubic).
enum class GeneratorLabel {
    Lo, Lx, Ly, Lz,
    Kx, Ky, Kz,
    Mx, My, Mz,
    T1, T2, T3, T4, T5, T6, T7, T8,
};

inline constexpr std::array<GeneratorLabel, 18> all_generator_labels = {
    GeneratorLabel::Lo, GeneratorLabel::Lx, GeneratorLabel::Ly, GeneratorLabel::Lz,
    GeneratorLabel::Kx, GeneratorLabel::Ky, GeneratorLabel::Kz,
    GeneratorLabel::Mx, GeneratorLabel::My, GeneratorLabel::Mz,
    GeneratorLabel::T1, GeneratorLabel::T2, GeneratorLabel::T3, GeneratorLabel::T4,
    GeneratorLabel::T5, GeneratorLabel::T6, GeneratorLabel::T7, GeneratorLabel::T8,
};

inline constexpr std::array<GeneratorLabel, 4> passive_labels = {
    GeneratorLabel::Lo, GeneratorLabel::Lx, GeneratorLabel::Ly, GeneratorLabel::Lz};
inline constexpr std::array<GeneratorLabel, 6> active_labels = {
    GeneratorLabel::Kx, GeneratorLabel::Ky, GeneratorLabel::Kz,
    GeneratorLabel::Mx, GeneratorLabel::My, GeneratorLabel::Mz};
inline constexpr std::array<GeneratorLabel, 8> su3_labels = {
    GeneratorLabel::T1, GeneratorLabel::T2, GeneratorLabel::T3, GeneratorLabel::T4,
    GeneratorLabel::T5, GeneratorLabel::T6, GeneratorLabel::T7, GeneratorLabel::T8};

bool is_passive(GeneratorLabel l);
bool is_active(GeneratorLabel l);
bool is_quadratic(GeneratorLabel l);  // passive or active
bool is_su3(GeneratorLabel l);

std::string label_name(GeneratorLabel l);
GeneratorLabel parse_label(const std::string& name);

/// Hermitian matrix of the named generator, assembled from ladder-operator
/// products.  Exactly Hermitian by construction (each term appears with its
/// conjugate transpose).
FockOperator build_generator(GeneratorLabel label, const TruncationScheme& trunc);

/// ab - ba.  Throws on truncation mismatch.
FockOperator commutator(const FockOperator& a, const FockOperator& b);

/// SU(3) structure constants f_abc (1-based indices a < b, any c).
struct StructureTable {
    std::map<std::array<int, 3>, double> entries;

    /// Fully antisymmetrized lookup: f for any index order, 0 if absent.
    double f(int a, int b, int c) const;

    /// The nonvanishing constants of the standard SU(3) algebra, entered
    /// as f_123 = 1, f_147 = f_165 = f_246 = f_257 = f_345 = f_376 = 1/2,
    /// f_458 = f_678 = sqrt(3)/2.
    static StructureTable su3_reference();
};

struct StructureCheckRow {
    int a = 0, b = 0, c = 0;
    double expected_f = 0.0;
    double measured_f = 0.0;
    double residual = 0.0;  // |measured - expected|
};

struct StructureReport {
    StructureTable measured;
    std::vector<StructureCheckRow> rows;   // every (a<b, c) triple
    double max_deviation = 0.0;            // vs. reference, over all triples
    double max_fit_residual = 0.0;         // least-squares remainder within H_T
    /// Informational: full-space commutator remainder per pair after the
    /// same fit (the T algebra is only claimed within H_T).
    double max_fullspace_residual = 0.0;
    bool ok = false;

    std::string to_json(int indent = -1) const;
};

/// Measures P_T [T_a, T_b] P_T against the projected T_c by least squares
/// (P_T projects onto H_T = {|0,0>, |1,0>, |0,1>}) and compares with the
/// reference table.  Requires n_max >= 3.  tol flags any deviation above it.
StructureReport verify_structure_constants(const TruncationScheme& trunc, double tol = 1e-12);

/// Projector onto H_T = {|0,0>, |1,0>, |0,1>}.
FockOperator ht_projector(const TruncationScheme& trunc);

/// The three ordinals of H_T in basis order.
std::array<int, 3> ht_ordinals(const TruncationScheme& trunc);

/// 3x3 restriction of an operator to H_T.
Eigen::Matrix3cd restrict_to_ht(const FockOperator& op);

}  // namespace modesim

#endif
