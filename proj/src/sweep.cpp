#include "rotomag/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "rotomag/errors.hpp"

namespace rotomag {

RegimeWindow regime_window(const PhysicalConfig& cfg, const DerivedParams& d, Window which) {
    const double separation = std::abs(d.omega_m - cfg.omega_phi);
    const double half = std::min(0.04 * cfg.omega_phi, 0.5 * separation);
    if (!(half > 1e-9 * cfg.omega_phi))
        throw WindowTooShort("rotation and magnon modes are degenerate; "
                             "their spectral windows would be empty");
    RegimeWindow w;
    w.center = which == Window::Rotation ? cfg.omega_phi : d.omega_m;
    w.half_width = half;
    return w;
}

namespace {

constexpr double bad = -std::numeric_limits<double>::infinity();

// Group delay or -inf where the point is not evaluable (exact transmission
// zeros); -inf never wins a maximization.
double tau_or_bad(const ResponseKernel& kr, double delta, double sign) {
    try {
        return sign * evaluate_probe_point(kr, delta).group_delay;
    } catch (const Error&) {
        return bad;
    }
}

struct Peak {
    double x = 0.0, fx = bad;
};

// Golden-section maximization of sign*tau over [a, b], seeded with the best
// grid point; falls back to that seed if refinement never improves on it.
Peak golden_max(const ResponseKernel& kr, double sign, double a, double b, double tol,
                Peak seed) {
    constexpr double gr = 0.6180339887498949;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = tau_or_bad(kr, x1, sign);
    double f2 = tau_or_bad(kr, x2, sign);
    Peak best = seed;
    auto consider = [&](double x, double f) {
        if (f > best.fx) best = {x, f};
    };
    consider(x1, f1);
    consider(x2, f2);
    while (b - a > tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = tau_or_bad(kr, x1, sign);
            consider(x1, f1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = tau_or_bad(kr, x2, sign);
            consider(x2, f2);
        }
    }
    return best;
}

}  // namespace

WindowExtremes window_delay_extremes(const ResponseKernel& kr, const RegimeWindow& win,
                                     double kappa_m, int grid_points) {
    const int n = std::max(grid_points, 5);
    const std::vector<double> grid = linspace(win.lo(), win.hi(), n);
    std::vector<double> tau(n);
    int valid = 0;
    for (int k = 0; k < n; ++k) {
        tau[k] = tau_or_bad(kr, grid[k], 1.0);
        if (tau[k] != bad) ++valid;
    }
    if (valid == 0) throw Error("no evaluable point inside the spectral window");

    const double tol = kappa_m / 100.0;
    auto refine = [&](double sign) -> DelayExtremum {
        int ibest = -1;
        double fbest = bad;
        for (int k = 0; k < n; ++k) {
            const double f = tau[k] == bad ? bad : sign * tau[k];
            if (f > fbest) {
                fbest = f;
                ibest = k;
            }
        }
        const double a = grid[std::max(0, ibest - 1)];
        const double b = grid[std::min(n - 1, ibest + 1)];
        const Peak p = golden_max(kr, sign, a, b, tol, {grid[ibest], fbest});
        return {p.x, sign * p.fx};
    };

    WindowExtremes we;
    we.maximum = refine(+1.0);
    we.minimum = refine(-1.0);
    return we;
}

double dominant_delay(const WindowExtremes& we) {
    return std::abs(we.maximum.tau) >= std::abs(we.minimum.tau) ? we.maximum.tau
                                                                : we.minimum.tau;
}

const char* to_string(CellStatus status) {
    switch (status) {
        case CellStatus::Ok: return "ok";
        case CellStatus::Unstable: return "unstable";
        case CellStatus::BistableUnrefined: return "bistable-unrefined";
        case CellStatus::NumericalFailure: return "numerical-failure";
    }
    return "unknown";
}

namespace {

// One parameter point brought to the edge of spectrum evaluation, or the
// reason why it cannot be.
struct ResponseCell {
    CellStatus status = CellStatus::NumericalFailure;
    PhysicalConfig cfg;
    DerivedParams d;
    SteadyState steady;
    ResponseKernel kernel{};
};

ResponseCell make_response_cell(PhysicalConfig cfg, const std::optional<int>& branch) {
    ResponseCell c;
    c.cfg = std::move(cfg);
    try {
        c.d = derive_params(c.cfg);
        if (!branch && detuning_cubic_roots(c.cfg, c.d).size() > 1) {
            c.status = CellStatus::BistableUnrefined;
            return c;
        }
        c.steady = solve_steady_state(c.cfg, c.d, branch);
        if (!analyze_stability(c.cfg, c.d, c.steady).stable) {
            c.status = CellStatus::Unstable;
            return c;
        }
        c.kernel = make_response_kernel(c.cfg, c.d, c.steady);
        c.status = CellStatus::Ok;
    } catch (...) {
        c.status = CellStatus::NumericalFailure;
    }
    return c;
}

std::optional<double> cell_dominant_delay(const PhysicalConfig& base,
                                          const std::string& field, double value,
                                          Window window, const SweepOptions& opt,
                                          CellStatus* status_out = nullptr) {
    PhysicalConfig cfg = base;
    set_field(cfg, field, value);
    ResponseCell cell = make_response_cell(std::move(cfg), opt.branch);
    if (status_out) *status_out = cell.status;
    if (cell.status != CellStatus::Ok) return std::nullopt;
    try {
        const RegimeWindow win = regime_window(cell.cfg, cell.d, window);
        const WindowExtremes we =
            window_delay_extremes(cell.kernel, win, cell.cfg.kappa_m, opt.window_grid);
        return dominant_delay(we);
    } catch (...) {
        if (status_out) *status_out = CellStatus::NumericalFailure;
        return std::nullopt;
    }
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

}  // namespace

SpectrumResult spectrum_for_config(PhysicalConfig cfg, const std::vector<double>& deltas,
                                   const SweepOptions& opt) {
    const DerivedParams d = derive_params(cfg);
    const SteadyState s = solve_steady_state(cfg, d, opt.branch);
    const ResponseKernel kr = make_response_kernel(cfg, d, s);
    return compute_spectrum(kr, deltas, opt.exec);
}

ConversionScan scan_conversion(const PhysicalConfig& base, const std::string& field,
                               const std::vector<double>& axis, Window window,
                               const SweepOptions& opt) {
    const int n = static_cast<int>(axis.size());
    ConversionScan scan;
    scan.field = field;
    scan.window = window;
    scan.axis = axis;
    scan.signal.assign(n, 0.0);
    scan.status.assign(n, CellStatus::NumericalFailure);

    #pragma omp parallel for schedule(static) if (opt.exec == Execution::Parallel)
    for (int k = 0; k < n; ++k) {
        CellStatus st = CellStatus::NumericalFailure;
        const std::optional<double> s =
            cell_dominant_delay(base, field, axis[k], window, opt, &st);
        scan.status[k] = st;
        scan.signal[k] = s.value_or(0.0);
    }

    if (n < 2) return scan;
    const double span = std::abs(axis.back() - axis.front());
    const double tol = span > 0.0 ? 1e-9 * span : 0.0;

    for (int k = 0; k < n; ++k)
        if (scan.status[k] == CellStatus::Ok && scan.signal[k] == 0.0)
            scan.crossings.push_back(axis[k]);

    for (int k = 0; k + 1 < n; ++k) {
        if (scan.status[k] != CellStatus::Ok || scan.status[k + 1] != CellStatus::Ok)
            continue;
        double fa = scan.signal[k], fb = scan.signal[k + 1];
        if (sign_of(fa) == 0 || sign_of(fb) == 0 || sign_of(fa) == sign_of(fb)) continue;
        double a = axis[k], b = axis[k + 1];
        for (int it = 0; it < 80 && std::abs(b - a) > tol; ++it) {
            const double mid = 0.5 * (a + b);
            const std::optional<double> fm = cell_dominant_delay(base, field, mid, window, opt);
            if (!fm) break;  // masked interior point: keep the current bracket
            if (sign_of(*fm) == 0) {
                a = b = mid;
                break;
            }
            if (sign_of(*fm) == sign_of(fa)) {
                a = mid;
                fa = *fm;
            } else {
                b = mid;
                fb = *fm;
            }
        }
        scan.crossings.push_back(0.5 * (a + b));
    }
    std::sort(scan.crossings.begin(), scan.crossings.end());
    return scan;
}

DelayMap compute_delay_map(const PhysicalConfig& base, const std::string& field,
                           const std::vector<double>& param_values,
                           const std::vector<double>& deltas, const SweepOptions& opt) {
    const int rows = static_cast<int>(param_values.size());
    const int cols = static_cast<int>(deltas.size());
    DelayMap map;
    map.field = field;
    map.param = param_values;
    map.delta = deltas;
    map.tau.assign(static_cast<std::size_t>(rows) * cols, 0.0);
    map.status.assign(static_cast<std::size_t>(rows) * cols, CellStatus::NumericalFailure);

    #pragma omp parallel for schedule(static) if (opt.exec == Execution::Parallel)
    for (int i = 0; i < rows; ++i) {
        PhysicalConfig cfg = base;
        set_field(cfg, field, param_values[i]);
        const ResponseCell cell = make_response_cell(std::move(cfg), opt.branch);
        const std::size_t row0 = static_cast<std::size_t>(i) * cols;
        if (cell.status != CellStatus::Ok) {
            for (int j = 0; j < cols; ++j) map.status[row0 + j] = cell.status;
            continue;
        }
        for (int j = 0; j < cols; ++j) {
            try {
                map.tau[row0 + j] = evaluate_probe_point(cell.kernel, deltas[j]).group_delay;
                map.status[row0 + j] = CellStatus::Ok;
            } catch (...) {
                map.tau[row0 + j] = 0.0;
                map.status[row0 + j] = CellStatus::NumericalFailure;
            }
        }
    }
    return map;
}

PhaseDiagram compute_phase_diagram(const PhysicalConfig& base, const std::string& x_field,
                                   const std::vector<double>& x_values,
                                   const std::string& y_field,
                                   const std::vector<double>& y_values, Window window,
                                   const SweepOptions& opt) {
    const int nx = static_cast<int>(x_values.size());
    const int ny = static_cast<int>(y_values.size());
    PhaseDiagram pd;
    pd.x_field = x_field;
    pd.y_field = y_field;
    pd.window = window;
    pd.x = x_values;
    pd.y = y_values;
    pd.signal.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    pd.sign.assign(static_cast<std::size_t>(nx) * ny, 0);
    pd.status.assign(static_cast<std::size_t>(nx) * ny, CellStatus::NumericalFailure);

    #pragma omp parallel for schedule(static) if (opt.exec == Execution::Parallel)
    for (int idx = 0; idx < nx * ny; ++idx) {
        const int iy = idx / nx, ix = idx % nx;
        PhysicalConfig cfg = base;
        set_field(cfg, y_field, y_values[iy]);
        CellStatus st = CellStatus::NumericalFailure;
        const std::optional<double> s =
            cell_dominant_delay(cfg, x_field, x_values[ix], window, opt, &st);
        pd.status[idx] = st;
        pd.signal[idx] = s.value_or(0.0);
        pd.sign[idx] = s ? sign_of(*s) : 0;
    }
    return pd;
}

StabilityScan scan_stability(const PhysicalConfig& base, const std::string& x_field,
                             const std::vector<double>& x_values,
                             const std::string& y_field,
                             const std::vector<double>& y_values,
                             const SweepOptions& opt) {
    StabilityScan scan;
    scan.x_field = x_field;
    scan.y_field = y_field;
    scan.x = x_values;
    scan.y = y_field.empty() ? std::vector<double>{0.0} : y_values;
    const int nx = static_cast<int>(scan.x.size());
    const int ny = static_cast<int>(scan.y.size());
    const std::size_t total = static_cast<std::size_t>(nx) * ny;
    scan.max_real.assign(total, 0.0);
    scan.branch_count.assign(total, 0);
    scan.stable.assign(total, 0);
    scan.status.assign(total, CellStatus::NumericalFailure);

    #pragma omp parallel for schedule(static) if (opt.exec == Execution::Parallel)
    for (int idx = 0; idx < nx * ny; ++idx) {
        const int iy = idx / nx, ix = idx % nx;
        PhysicalConfig cfg = base;
        set_field(cfg, x_field, scan.x[ix]);
        if (!y_field.empty()) set_field(cfg, y_field, scan.y[iy]);
        try {
            const DerivedParams d = derive_params(cfg);
            const SteadyState s = solve_steady_state(cfg, d, opt.branch);
            const StabilityReport rep = analyze_stability(cfg, d, s);
            scan.max_real[idx] = rep.max_real_part;
            scan.branch_count[idx] = s.branch_count;
            scan.stable[idx] = rep.stable ? 1 : 0;
            scan.status[idx] = CellStatus::Ok;
        } catch (...) {
            scan.status[idx] = CellStatus::NumericalFailure;
        }
    }
    return scan;
}

}  // namespace rotomag
