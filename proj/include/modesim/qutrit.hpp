#ifndef MODESIM_QUTRIT_HPP
#define MODESIM_QUTRIT_HPP

#include <string>
#include <variant>
#include <vector>

#include "modesim/fock.hpp"
#include "modesim/generators.hpp"

namespace modesim {

/// The three SU(2) subalgebras inside the SU(3) set.  Each rotates one pair
/// of H_T basis states and fixes the third:
///   G1 = {T1, T2, T3}                     rotates |1,0> <-> |0,1>
///   G2 = {T4, T5, (T3 + sqrt3 T8)/2}      rotates |0,0> <-> |1,0>
///   G3 = {T6, T7, (-T3 + sqrt3 T8)/2}     rotates |0,0> <-> |0,1>
enum class Triad { G1, G2, G3 };

std::string triad_name(Triad t);
Triad parse_triad(const std::string& name);

struct TriadRotation {
    Triad triad = Triad::G1;
    double theta = 0.0;
    double phi = 0.0;

    /// Wraps both angles into [0, 2 pi).
    TriadRotation canonicalized() const;
};

/// exp(-i (alpha T3 + beta T8)); diagonal on H_T.
struct DiagonalPhase {
    double alpha = 0.0;
    double beta = 0.0;
};

using GateElement = std::variant<TriadRotation, DiagonalPhase>;

/// Gate list applied left-to-right to the state; the global phase is
/// reported separately and not part of the evaluated operator.
struct GateSequence {
    std::vector<GateElement> elements;
    double global_phase = 0.0;

    std::string to_json(int indent = -1) const;
    static GateSequence from_json(const std::string& text);
};

/// Qutrit amplitudes over (|0,0>, |1,0>, |0,1>).
struct QutritAmplitudes {
    complexd c00{0.0, 0.0};
    complexd c10{0.0, 0.0};
    complexd c01{0.0, 0.0};

    double norm() const;
    bool normalized(double tol = 1e-12) const;
    /// Global phase fixed so the first nonzero amplitude is real nonnegative.
    QutritAmplitudes canonical() const;
    Eigen::Vector3cd as_vector() const { return {c00, c10, c01}; }
};

/// Full-space unitary of a triad rotation.  The generator mixing is pinned so
/// that the action on the triad's lowered basis state |a> is exactly
/// cos(theta/2)|a> + e^{i phi} sin(theta/2)|b>.
FockOperator triad_unitary(const TriadRotation& r, const TruncationScheme& trunc);

/// 3x3 restriction of a triad rotation to H_T (same convention, closed form).
Eigen::Matrix3cd triad_rotation_ht(const TriadRotation& r);

/// 3x3 restriction of exp(-i (alpha T3 + beta T8)).
Eigen::Matrix3cd diagonal_phase_ht(const DiagonalPhase& d);

/// Evaluates the sequence on H_T: product of the element matrices in
/// application order, without the global phase.
Eigen::Matrix3cd evaluate_ht(const GateSequence& seq);

/// Applies G2(theta, phi) then G1(theta_p, phi_p) to |0,0>.
QutritAmplitudes prepare_qutrit(double theta, double phi, double theta_p, double phi_p,
                                const TruncationScheme& trunc);

struct PreparationAngles {
    double theta = 0.0;
    double phi = 0.0;
    double theta_p = 0.0;
    double phi_p = 0.0;
    /// Set when |c10| = |c01| = 0 (theta_p, phi_p arbitrary, returned as 0).
    bool degenerate = false;
};

/// Analytic inversion of the preparation: prepare(solve(t)) == t (canonical
/// phase) to 1e-10.  The target must be normalized and in canonical phase.
PreparationAngles solve_preparation(const QutritAmplitudes& target);

/// Givens-style decomposition of a 3x3 unitary on H_T into at most three
/// triad rotations (in application order: G1 last) plus one diagonal phase
/// element; the remaining global phase is reported in the sequence.
GateSequence decompose_su3(const Eigen::Matrix3cd& u, double unitary_tol = 1e-10);

}  // namespace modesim

#endif
