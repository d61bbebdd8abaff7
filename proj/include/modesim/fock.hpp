#ifndef MODESIM_FOCK_HPP
#define MODESIM_FOCK_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace modesim {

using complexd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Occupation numbers of the two transverse modes.  The total order
/// N = n_x + n_y is always derived, never stored.
struct ModeIndex {
    int n_x = 0;
    int n_y = 0;

    int order() const { return n_x + n_y; }

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Total-order cutoff defining the finite basis: every |n_x, n_y> with
/// n_x + n_y <= n_max is kept, nothing else.
struct TruncationScheme {
    int n_max = 8;

    explicit TruncationScheme(int n_max_ = 8);

    /// Basis dimension (n_max+1)(n_max+2)/2.
    int dim() const { return (n_max + 1) * (n_max + 2) / 2; }

    bool contains(const ModeIndex& m) const {
        return m.n_x >= 0 && m.n_y >= 0 && m.order() <= n_max;
    }

    friend bool operator==(const TruncationScheme&, const TruncationScheme&) = default;
};

/// Basis ordering: ascending total order N, ties broken by descending n_x.
/// (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
/// Groups equal-order blocks contiguously, so order-preserving operators
/// are block diagonal.
int basis_index(const ModeIndex& mode, const TruncationScheme& trunc);

/// Inverse of basis_index.
ModeIndex basis_mode(int ordinal, const TruncationScheme& trunc);

/// First ordinal of the order-n block (valid for n in 0..n_max+1).
inline int block_start(int n) { return n * (n + 1) / 2; }

enum class Axis { x, y };
enum class LadderKind { lower, raise };

struct FockOperator;

/// Complex state vector over the truncated basis.
struct FockVector {
    Vec amplitudes;
    TruncationScheme trunc;

    explicit FockVector(const TruncationScheme& t)
        : amplitudes(Vec::Zero(t.dim())), trunc(t) {}
    FockVector(Vec amps, const TruncationScheme& t);

    /// Basis state |n_x, n_y>.
    static FockVector basis_state(const ModeIndex& m, const TruncationScheme& t);

    int dim() const { return trunc.dim(); }
    double norm() const { return amplitudes.norm(); }
    bool normalized(double tol = 1e-12) const { return std::abs(norm() - 1.0) <= tol; }
    FockVector normalized_copy() const;

    complexd operator[](const ModeIndex& m) const {
        return amplitudes(basis_index(m, trunc));
    }
    complexd& operator[](const ModeIndex& m) {
        return amplitudes(basis_index(m, trunc));
    }

    /// Probability weight per total order N (|amplitude|^2 summed over each block).
    std::vector<double> order_distribution() const;
};

/// Complex square matrix over the truncated basis.  Hermitian / unitary are
/// checked properties, not declarations.
struct FockOperator {
    Mat matrix;
    TruncationScheme trunc;

    explicit FockOperator(const TruncationScheme& t)
        : matrix(Mat::Zero(t.dim(), t.dim())), trunc(t) {}
    FockOperator(Mat m, const TruncationScheme& t);

    static FockOperator identity(const TruncationScheme& t);

    int dim() const { return trunc.dim(); }
    FockOperator adjoint() const { return {matrix.adjoint(), trunc}; }
    bool is_hermitian(double tol = 1e-12) const;
    bool is_unitary(double tol = 1e-11) const;
};

FockOperator operator*(const FockOperator& a, const FockOperator& b);
FockOperator operator+(const FockOperator& a, const FockOperator& b);
FockOperator operator-(const FockOperator& a, const FockOperator& b);
FockOperator operator*(complexd c, const FockOperator& a);

/// Ladder operator matrix: <n-1|a|n> = sqrt(n) on the chosen axis.
/// raise is the exact conjugate transpose of lower; raising past the
/// cutoff maps to zero (truncation convention).
FockOperator ladder_op(Axis axis, LadderKind kind, const TruncationScheme& trunc);

/// Matrix-vector product.  Throws on dimension mismatch.
FockVector apply(const FockOperator& op, const FockVector& v);

/// Projector onto modes with total order <= n_cut (diagonal 0/1 matrix).
FockOperator interior_projector(int n_cut, const TruncationScheme& trunc);

/// JSON serialization: {"n_max": ..., "amplitudes": [[n_x, n_y, re, im], ...]}
/// in basis_index order.
std::string to_json(const FockVector& v, int indent = -1);
FockVector fock_vector_from_json(const std::string& json_text);

}  // namespace modesim

#endif
