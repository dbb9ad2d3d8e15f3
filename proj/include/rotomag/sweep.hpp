#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rotomag/response.hpp"
#include "rotomag/stability.hpp"

namespace rotomag {

// The two spectral neighborhoods where the hybrid response concentrates:
// around the rotation-mode frequency and around the magnon frequency.
enum class Window { Rotation, Magnon };

struct RegimeWindow {
    double center = 0.0;
    double half_width = 0.0;
    double lo() const { return center - half_width; }
    double hi() const { return center + half_width; }
};

// Half-width is min(0.04 * omega_phi, |omega_m - omega_phi| / 2), so the two
// windows never overlap; they abut at the midpoint when the modes are close.
// Throws WindowTooShort when the modes are (near-)degenerate.
RegimeWindow regime_window(const PhysicalConfig& cfg, const DerivedParams& d, Window which);

struct DelayExtremum {
    double delta = 0.0;  // rad/s
    double tau = 0.0;    // seconds
};

struct WindowExtremes {
    DelayExtremum maximum, minimum;
};

// Grid scan across the window followed by golden-section refinement of both
// extrema; the detuning is resolved to kappa_m / 100.
WindowExtremes window_delay_extremes(const ResponseKernel& kr, const RegimeWindow& win,
                                     double kappa_m, int grid_points = 401);

// Conversion signal for slow/fast classification: whichever extremum has the
// larger magnitude.  Positive = slow light, negative = fast light.
double dominant_delay(const WindowExtremes& we);

// Why a sweep cell carries no value.  Masked cells write 0 with the reason
// code beside it; output files never contain NaN.
enum class CellStatus { Ok = 0, Unstable = 1, BistableUnrefined = 2, NumericalFailure = 3 };
const char* to_string(CellStatus status);

struct SweepOptions {
    // Explicit steady-state branch.  Without it, multistable cells are
    // masked as BistableUnrefined rather than silently picking one.
    std::optional<int> branch;
    Execution exec = Execution::Parallel;
    int window_grid = 401;
};

// ---- spectrum pipeline -------------------------------------------------

// Config -> derived -> steady state -> kernel -> spectrum in one call.
// Uses the default (low-power-connected) branch unless opt.branch is set.
SpectrumResult spectrum_for_config(PhysicalConfig cfg, const std::vector<double>& deltas,
                                   const SweepOptions& opt = {});

// ---- 1D conversion scan ------------------------------------------------

struct ConversionScan {
    std::string field;
    Window window = Window::Rotation;
    std::vector<double> axis;        // parameter values
    std::vector<double> signal;      // dominant extremal delay (s); masked -> 0
    std::vector<CellStatus> status;  // per axis point
    std::vector<double> crossings;   // bisection-refined sign changes
};

ConversionScan scan_conversion(const PhysicalConfig& base, const std::string& field,
                               const std::vector<double>& axis, Window window,
                               const SweepOptions& opt = {});

// ---- 2D delay map: parameter rows x detuning columns --------------------

struct DelayMap {
    std::string field;
    std::vector<double> param;       // row values
    std::vector<double> delta;       // column values (rad/s)
    std::vector<double> tau;         // row-major [i_param * n_delta + j]; masked -> 0
    std::vector<CellStatus> status;  // same layout
};

DelayMap compute_delay_map(const PhysicalConfig& base, const std::string& field,
                           const std::vector<double>& param_values,
                           const std::vector<double>& deltas,
                           const SweepOptions& opt = {});

// ---- 2D slow/fast phase diagram -----------------------------------------

struct PhaseDiagram {
    std::string x_field, y_field;
    Window window = Window::Rotation;
    std::vector<double> x, y;
    std::vector<double> signal;      // row-major [iy * nx + ix]; masked -> 0
    std::vector<int> sign;           // +1 slow, -1 fast, 0 masked
    std::vector<CellStatus> status;
};

PhaseDiagram compute_phase_diagram(const PhysicalConfig& base, const std::string& x_field,
                                   const std::vector<double>& x_values,
                                   const std::string& y_field,
                                   const std::vector<double>& y_values, Window window,
                                   const SweepOptions& opt = {});

// ---- stability scan (1D or 2D) -------------------------------------------

struct StabilityScan {
    std::string x_field, y_field;    // y_field empty for 1D scans
    std::vector<double> x, y;        // y holds {0} when 1D
    std::vector<double> max_real;    // row-major [iy * nx + ix]; masked -> 0
    std::vector<int> branch_count;
    std::vector<int> stable;         // 1 = all eigenvalues in the left half-plane
    std::vector<CellStatus> status;  // Ok or NumericalFailure
};

// Reports the chosen branch (default: low-power-connected) and how many
// branches coexist; multistability is reported, not masked, here.
StabilityScan scan_stability(const PhysicalConfig& base, const std::string& x_field,
                             const std::vector<double>& x_values,
                             const std::string& y_field,
                             const std::vector<double>& y_values,
                             const SweepOptions& opt = {});

}  // namespace rotomag
