#ifndef MODESIM_OPTICS_HPP
#define MODESIM_OPTICS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "modesim/fock.hpp"

namespace modesim {

/// Waist-plane sampling window: `resolution` points per axis spanning
/// [-half_extent, half_extent] in units of the waist.
struct SpatialGrid {
    double half_extent = 4.0;
    int resolution = 256;
    double waist = 1.0;

    SpatialGrid() = default;
    SpatialGrid(double half_extent_, int resolution_, double waist_ = 1.0);

    /// Sample coordinates along one axis (shared by x and y).
    std::vector<double> coords() const;
    double spacing() const { return 2.0 * half_extent / (resolution - 1); }
    double cell_area() const { return spacing() * spacing(); }
};

/// HG(n_x, n_y) or LG(l, p) mode selector for sample_mode.
struct ModeSpec {
    enum class Kind { HG, LG } kind = Kind::HG;
    int a = 0;  // n_x or l
    int b = 0;  // n_y or p

    static ModeSpec hg(int n_x, int n_y) { return {Kind::HG, n_x, n_y}; }
    static ModeSpec lg(int l, int p) { return {Kind::LG, l, p}; }
};

/// Waist-plane 1D Hermite-Gaussian value u_n(x).
double hg_value_1d(int n, double x, double waist);

/// Waist-plane HG_{n_x, n_y}(x, y) = u_{n_x}(x) u_{n_y}(y).
double hg_value(int n_x, int n_y, double x, double y, double waist);

/// Synthesized field psi(x, y) = sum c_{n_x,n_y} HG_{n_x,n_y}(x, y).
complexd field_value(const FockVector& state, double x, double y, double waist);

/// Fock vector of LG_{l,p} under the fixed convention
/// LG_{+1,0} = (|1,0> + i |0,1>)/sqrt(2) (Lz eigenvalue +l/2): built from
/// circular ladder operators (a_x^dag +- i a_y^dag)/sqrt(2).
/// Requires |l| + 2p <= n_max.
FockVector lg_state(int l, int p, const TruncationScheme& trunc);

/// Complex field samples of an HG or LG mode on the grid; element (row, col)
/// is the value at (x = coords[col], y = coords[row]).
Eigen::MatrixXcd sample_mode(const ModeSpec& mode, const SpatialGrid& grid);

/// Position distribution I(x, y) = |psi(x, y)|^2 of a normalized state.
Eigen::MatrixXd intensity_profile(const FockVector& state, const SpatialGrid& grid);

/// CSV emission: three header lines (half_extent, resolution, waist) followed
/// by the row-major grid.
void write_intensity_csv(std::ostream& os, const Eigen::MatrixXd& intensity,
                         const SpatialGrid& grid);
std::string intensity_json(const Eigen::MatrixXd& intensity, const SpatialGrid& grid,
                           int indent = -1);

struct ConversionReport {
    double min_fidelity = 0.0;
    /// HG target of each order-1 LG mode under exp(-i (pi/2) Ly):
    /// entries for l = +1 and l = -1, convention-dependent.
    struct Assignment {
        int l = 0;
        ModeIndex hg_target;
        double fidelity = 0.0;
    };
    std::vector<Assignment> assignments;
};

/// Applies the metaplectic operator with only s_Ly = pi/2 (times `scale`)
/// to the order-1 LG modes and reports the best |<HG|U|LG>| per mode.
ConversionReport lg_hg_conversion_check(const TruncationScheme& trunc, double scale = 1.0);

/// Polarization (H, V) x OAM (l = +1, -1) state; amplitude order
/// (H,+1), (H,-1), (V,+1), (V,-1).
struct PolOamState {
    Eigen::Vector4cd amp = Eigen::Vector4cd::Zero();

    static PolOamState basis(int pol /*0=H,1=V*/, int l /*+1 or -1*/);
    bool normalized(double tol = 1e-12) const { return std::abs(amp.norm() - 1.0) <= tol; }
};

/// Gate-level CNOT: H component untouched, V component has l = +1 and
/// l = -1 swapped.
Eigen::Matrix4cd cnot_gate_matrix();
PolOamState cnot_apply(const PolOamState& state);

/// Path-level Sagnac model of the Fig.-3 gate: PBS routing into
/// counter-propagating arms, a pi/2 cylindrical-lens converter seen with
/// arm-dependent orientation, recombination, and a common output converter.
/// One calibration phase per polarization is fitted against the gate level.
struct InterferometerModel {
    Eigen::Matrix4cd raw;         // before phase calibration
    Eigen::Matrix4cd calibrated;  // after per-polarization phases
    complexd phase_h{1.0, 0.0};
    complexd phase_v{1.0, 0.0};
    double max_deviation = 0.0;   // vs. cnot_gate_matrix, after calibration
};

InterferometerModel build_cnot_interferometer();

/// Applies the calibrated interferometer model.
PolOamState cnot_interferometer(const PolOamState& state);

}  // namespace modesim

#endif
