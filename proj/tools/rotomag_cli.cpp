// Batch front end: computes probe spectra, delay maps, slow/fast conversion
// scans, phase diagrams, stability scans, oracle cross-checks, and
// magneto-optic selection-rule tables, writing CSV files plus a JSON run
// manifest (and optional gnuplot scripts).  Data files carry no timestamps,
// so a repeated run with the same arguments is byte-identical.

#include <chrono>
#include <complex>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotomag/io.hpp"
#include "rotomag/magnetooptic.hpp"
#include "rotomag/stability.hpp"
#include "rotomag/sweep.hpp"
#include "rotomag/timedomain.hpp"

using namespace rotomag;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out = "";
    std::string convention;
    std::optional<int> branch;
    bool serial = false;
    bool plot = false;
};

void add_common(CLI::App* cmd, CommonArgs& c, const std::string& default_out) {
    c.out = default_out;
    cmd->add_option("--config", c.config_path, "JSON configuration file (defaults built in)");
    cmd->add_option("--out", c.out, "output CSV path")->capture_default_str();
    cmd->add_option("--convention", c.convention,
                    "intensity convention: modulus_squared | literal_square")
        ->check(CLI::IsMember({"modulus_squared", "literal_square"}));
    cmd->add_option_function<int>(
        "--branch", [&c](const int& b) { c.branch = b; },
        "explicit steady-state branch index (ascending); default: low-power-connected");
    cmd->add_flag("--serial", c.serial, "disable the OpenMP parallel path");
    cmd->add_flag("--plot", c.plot, "also write a gnuplot script next to the CSV");
}

PhysicalConfig load_base(const CommonArgs& c) {
    PhysicalConfig cfg = c.config_path.empty() ? PhysicalConfig::reference_defaults()
                                               : load_config(c.config_path);
    if (c.convention == "modulus_squared")
        cfg.intensity_convention = IntensityConvention::ModulusSquared;
    else if (c.convention == "literal_square")
        cfg.intensity_convention = IntensityConvention::LiteralSquare;
    return cfg;
}

SweepOptions sweep_options(const CommonArgs& c) {
    SweepOptions opt;
    opt.branch = c.branch;
    opt.exec = c.serial ? Execution::Serial : Execution::Parallel;
    return opt;
}

// ---- axis grammar: field:start:stop:count[:unit] -------------------------

struct AxisSpec {
    std::string field;
    double start = 0.0, stop = 0.0;
    int count = 0;
    std::string unit = "si";
};

AxisSpec parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4 && parts.size() != 5)
        throw Error("axis must be field:start:stop:count[:unit], got '" + text + "'");
    AxisSpec a;
    a.field = parts[0];
    try {
        a.start = std::stod(parts[1]);
        a.stop = std::stod(parts[2]);
        a.count = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw Error("axis numbers could not be parsed in '" + text + "'");
    }
    if (parts.size() == 5) a.unit = parts[4];
    if (!is_axis_field(a.field)) throw Error("unknown axis field '" + a.field + "'");
    if (a.count < 1) throw Error("axis needs at least one point");
    return a;
}

bool is_freq_field(const std::string& f) {
    return f == "omega_phi" || f == "omega_m" || f == "Delta_a" || f == "g_m" ||
           f == "kappa_a" || f == "kappa_phi" || f == "kappa_m";
}

// Ratio units resolve against the *base* configuration's derived scales.
std::vector<double> materialize_axis(const AxisSpec& a, const PhysicalConfig& base,
                                     const DerivedParams& d) {
    double scale = 1.0;
    if (a.unit == "si") {
        scale = 1.0;
    } else if (a.unit == "hz") {
        if (!is_freq_field(a.field))
            throw Error("unit 'hz' only applies to frequency-like fields");
        scale = constants::two_pi;
    } else if (a.unit == "mw" || a.unit == "uw") {
        if (a.field != "P_c" && a.field != "P_p")
            throw Error("unit '" + a.unit + "' only applies to powers");
        scale = a.unit == "mw" ? 1e-3 : 1e-6;
    } else if (a.unit == "ratio_omega_phi") {
        if (!is_freq_field(a.field))
            throw Error("unit 'ratio_omega_phi' only applies to frequency-like fields");
        scale = base.omega_phi;
    } else if (a.unit == "ratio_g_phi") {
        if (a.field != "g_m") throw Error("unit 'ratio_g_phi' only applies to g_m");
        scale = d.g_phi;
    } else {
        throw Error("unknown axis unit '" + a.unit +
                    "' (si, hz, mw, uw, ratio_omega_phi, ratio_g_phi)");
    }
    std::vector<double> v = linspace(a.start, a.stop, a.count);
    for (double& x : v) x *= scale;
    return v;
}

std::vector<double> delta_grid(double from, double to, int points, const std::string& unit,
                               const PhysicalConfig& base) {
    double scale = 1.0;
    if (unit == "ratio_omega_phi") scale = base.omega_phi;
    else if (unit == "hz") scale = constants::two_pi;
    else if (unit != "rad_per_s") throw Error("unknown detuning unit '" + unit + "'");
    return linspace(from * scale, to * scale, points);
}

std::string plot_path(const std::string& csv) {
    const auto dot = csv.find_last_of('.');
    return (dot == std::string::npos ? csv : csv.substr(0, dot)) + ".gp";
}

void finish(const CommonArgs& c, const PhysicalConfig& resolved,
            const std::vector<std::string>& args, std::vector<std::string> outputs,
            std::chrono::steady_clock::time_point t0,
            std::vector<std::pair<std::string, std::string>> info) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string manifest_path = c.out + ".manifest.json";
    io::write_text(manifest_path,
                   io::manifest_json(resolved, args, outputs, wall, info));
    outputs.push_back(manifest_path);
    for (const auto& o : outputs) std::cout << "wrote " << o << "\n";
}

// ---- subcommand bodies ----------------------------------------------------

int run_spectrum(const CommonArgs& c, double from, double to, int points,
                 const std::string& unit, const std::vector<std::string>& args) {
    const auto t0 = std::chrono::steady_clock::now();
    PhysicalConfig cfg = load_base(c);
    const DerivedParams d = derive_params(cfg);
    const SteadyState s = solve_steady_state(cfg, d, sweep_options(c).branch);
    const ResponseKernel kr = make_response_kernel(cfg, d, s);
    const auto deltas = delta_grid(from, to, points, unit, cfg);
    const SpectrumResult r = compute_spectrum(
        kr, deltas, c.serial ? Execution::Serial : Execution::Parallel);

    io::CsvTable t = io::spectrum_table(r, cfg.omega_phi);
    io::write_csv(t, c.out);
    std::vector<std::string> outputs = {c.out};
    if (c.plot) {
        io::write_text(plot_path(c.out), io::spectrum_plot_script(c.out));
        outputs.push_back(plot_path(c.out));
    }
    finish(c, cfg, args, outputs, t0,
           {{"branch_count", std::to_string(s.branch_count)},
            {"branch_index", std::to_string(s.branch_index)},
            {"delta_eff_over_omega_phi", io::format_double(s.Delta_eff / cfg.omega_phi)},
            {"photon_number", io::format_double(s.n_cav)}});
    return 0;
}

int run_delay_map(const CommonArgs& c, const std::string& axis_text, double from, double to,
                  int points, const std::string& unit, const std::vector<std::string>& args) {
    const auto t0 = std::chrono::steady_clock::now();
    PhysicalConfig cfg = load_base(c);
    const DerivedParams d = derive_params(cfg);
    const AxisSpec axis = parse_axis(axis_text);
    const auto values = materialize_axis(axis, cfg, d);
    const auto deltas = delta_grid(from, to, points, unit, cfg);
    const DelayMap map = compute_delay_map(cfg, axis.field, values, deltas, sweep_options(c));

    io::write_csv(io::delay_map_table(map), c.out);
    std::vector<std::string> outputs = {c.out};
    if (c.plot) {
        io::write_text(plot_path(c.out),
                       io::map_plot_script(c.out, "delta (rad/s)", axis.field, 2, 1, 3,
                                           "group delay (s)"));
        outputs.push_back(plot_path(c.out));
    }
    int masked = 0;
    for (const auto st : map.status)
        if (st != CellStatus::Ok) ++masked;
    finish(c, cfg, args, outputs, t0, {{"masked_cells", std::to_string(masked)}});
    return 0;
}

int run_conversions(const CommonArgs& c, const std::string& axis_text,
                    const std::string& window_name, int grid,
                    const std::vector<std::string>& args) {
    const auto t0 = std::chrono::steady_clock::now();
    PhysicalConfig cfg = load_base(c);
    const DerivedParams d = derive_params(cfg);
    const AxisSpec axis = parse_axis(axis_text);
    const auto values = materialize_axis(axis, cfg, d);
    SweepOptions opt = sweep_options(c);
    opt.window_grid = grid;
    const Window window = window_name == "magnon" ? Window::Magnon : Window::Rotation;
    const ConversionScan scan = scan_conversion(cfg, axis.field, values, window, opt);

    io::write_csv(io::conversion_table(scan), c.out);
    std::vector<std::string> outputs = {c.out};
    if (c.plot) {
        io::write_text(plot_path(c.out),
                       io::map_plot_script(c.out, axis.field, "dominant delay (s)", 1, 2, 2,
                                           "conversion scan"));
        outputs.push_back(plot_path(c.out));
    }
    std::string crossings = "[";
    for (std::size_t k = 0; k < scan.crossings.size(); ++k) {
        if (k) crossings += ",";
        crossings += io::format_double(scan.crossings[k]);
    }
    crossings += "]";
    finish(c, cfg, args, outputs, t0, {{"crossings", crossings}});
    for (double x : scan.crossings) std::cout << "conversion at " << axis.field << " = " << x << "\n";
    return 0;
}

int run_phase_diagram(const CommonArgs& c, const std::string& x_text, const std::string& y_text,
                      const std::string& window_name, int grid,
                      const std::vector<std::string>& args) {
    const auto t0 = std::chrono::steady_clock::now();
    PhysicalConfig cfg = load_base(c);
    const DerivedParams d = derive_params(cfg);
    const AxisSpec xa = parse_axis(x_text), ya = parse_axis(y_text);
    const auto xs = materialize_axis(xa, cfg, d);
    const auto ys = materialize_axis(ya, cfg, d);
    SweepOptions opt = sweep_options(c);
    opt.window_grid = grid;
    const Window window = window_name == "magnon" ? Window::Magnon : Window::Rotation;
    const PhaseDiagram pd =
        compute_phase_diagram(cfg, xa.field, xs, ya.field, ys, window, opt);

    io::write_csv(io::phase_diagram_table(pd), c.out);
    std::vector<std::string> outputs = {c.out};
    if (c.plot) {
        io::write_text(plot_path(c.out),
                       io::map_plot_script(c.out, xa.field, ya.field, 1, 2, 4,
                                           "slow(+1) / fast(-1)"));
        outputs.push_back(plot_path(c.out));
    }
    int slow = 0, fast = 0, masked = 0;
    for (int sgn : pd.sign) (sgn > 0 ? slow : sgn < 0 ? fast : masked)++;
    finish(c, cfg, args, outputs, t0,
           {{"slow_cells", std::to_string(slow)},
            {"fast_cells", std::to_string(fast)},
            {"masked_cells", std::to_string(masked)}});
    return 0;
}

int run_stability(const CommonArgs& c, const std::string& x_text, const std::string& y_text,
                  const std::vector<std::string>& args) {
    const auto t0 = std::chrono::steady_clock::now();
    PhysicalConfig cfg = load_base(c);
    const DerivedParams d = derive_params(cfg);
    const AxisSpec xa = parse_axis(x_text);
    const auto xs = materialize_axis(xa, cfg, d);
    std::string y_field;
    std::vector<double> ys;
    if (!y_text.empty()) {
        const AxisSpec ya = parse_axis(y_text);
        y_field = ya.field;
        ys = materialize_axis(ya, cfg, d);
    }
    const StabilityScan scan = scan_stability(cfg, xa.field, xs, y_field, ys, sweep_options(c));

    io::write_csv(io::stability_table(scan), c.out);
    std::vector<std::string> outputs = {c.out};
    int unstable = 0;
    for (std::size_t k = 0; k < scan.stable.size(); ++k)
        if (scan.status[k] == CellStatus::Ok && scan.stable[k] == 0) ++unstable;
    finish(c, cfg, args, outputs, t0, {{"unstable_cells", std::to_string(unstable)}});
    return 0;
}

int run_oracle_check(const CommonArgs& c, double from, double to, int points,
                     const std::string& unit, bool with_timedomain, int td_points,
                     const std::vector<std::string>& args) {
    const auto t0 = std::chrono::steady_clock::now();
    PhysicalConfig cfg = load_base(c);
    const DerivedParams d = derive_params(cfg);
    const SteadyState s = solve_steady_state(cfg, d, c.branch);
    const ResponseKernel kr = make_response_kernel(cfg, d, s);
    const Matrix6c M = drift_matrix(cfg, d, s);
    const auto deltas = delta_grid(from, to, points, unit, cfg);

    io::CsvTable t;
    t.header = {"delta_rad_per_s", "re_closed", "im_closed", "re_resolvent", "im_resolvent",
                "rel_err_closed_vs_resolvent"};
    if (with_timedomain) {
        t.header.push_back("re_timedomain");
        t.header.push_back("im_timedomain");
        t.header.push_back("rel_err_timedomain_vs_closed");
    }
    double worst_matrix = 0.0, worst_td = 0.0;
    const int td_every = with_timedomain ? std::max(1, points / std::max(1, td_points)) : 0;
    for (int k = 0; k < points; ++k) {
        const double delta = deltas[k];
        const std::complex<double> closed = evaluate_probe_point(kr, delta).a_minus;
        const std::complex<double> matrix = resolvent_a_minus(M, delta);
        const double rel = std::abs(closed - matrix) / std::abs(matrix);
        worst_matrix = std::max(worst_matrix, rel);
        std::vector<std::string> row = {
            io::format_double(delta),          io::format_double(closed.real()),
            io::format_double(closed.imag()),  io::format_double(matrix.real()),
            io::format_double(matrix.imag()),  io::format_double(rel)};
        if (with_timedomain) {
            if (delta > 0.0 && k % td_every == 0) {
                const DemodResult demod = demodulate_probe(cfg, d, s, delta);
                const double rel_td = std::abs(demod.a_minus - closed) / std::abs(closed);
                worst_td = std::max(worst_td, rel_td);
                row.push_back(io::format_double(demod.a_minus.real()));
                row.push_back(io::format_double(demod.a_minus.imag()));
                row.push_back(io::format_double(rel_td));
            } else {
                row.insert(row.end(), {"", "", ""});
            }
        }
        t.rows.push_back(std::move(row));
    }
    io::write_csv(t, c.out);
    std::vector<std::pair<std::string, std::string>> info = {
        {"max_rel_err_closed_vs_resolvent", io::format_double(worst_matrix)}};
    if (with_timedomain)
        info.push_back({"max_rel_err_timedomain_vs_closed", io::format_double(worst_td)});
    finish(c, cfg, args, {c.out}, t0, info);
    std::cout << "max closed-vs-resolvent relative error: " << worst_matrix << "\n";
    if (with_timedomain)
        std::cout << "max time-domain relative error: " << worst_td << "\n";
    return (worst_matrix <= 1e-8 && (!with_timedomain || worst_td <= 1e-3)) ? 0 : 3;
}

int run_selection_rules(const CommonArgs& c, double coupling, double magnetization,
                        double weight, int cells, double bias_field,
                        const std::vector<std::string>& args) {
    const auto t0 = std::chrono::steady_clock::now();
    PhysicalConfig cfg = load_base(c);
    (void)derive_params(cfg);
    FaradayMedium medium;
    medium.coupling = coupling;
    medium.saturation_magnetization = magnetization;
    medium.weight = weight;
    const auto table = selection_rule_table(medium, cells);

    io::CsvTable t = io::selection_rule_table_csv(table);
    std::vector<std::pair<std::string, std::string>> info;
    if (bias_field > 0.0) {
        const double wm = kittel_frequency(bias_field);
        t.comments.push_back("bias_field_T: " + io::format_double(bias_field));
        t.comments.push_back("kittel_omega_m_rad_per_s: " + io::format_double(wm));
        info.push_back({"kittel_omega_m_rad_per_s", io::format_double(wm)});
    }
    io::write_csv(t, c.out);
    finish(c, cfg, args, {c.out}, t0, info);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    CLI::App app{"hybrid cavity response and slow/fast-light analysis"};
    app.set_version_flag("--version", std::string("rotomag ") + io::tool_version);
    app.require_subcommand(1);

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "probe transmission and group delay vs detuning");
    CommonArgs sp_c;
    add_common(sp, sp_c, "spectrum.csv");
    double sp_from = 0.8, sp_to = 1.3;
    int sp_points = 2001;
    std::string sp_unit = "ratio_omega_phi";
    sp->add_option("--from", sp_from, "first detuning")->capture_default_str();
    sp->add_option("--to", sp_to, "last detuning")->capture_default_str();
    sp->add_option("--points", sp_points, "grid size")->capture_default_str();
    sp->add_option("--delta-unit", sp_unit, "ratio_omega_phi | rad_per_s | hz")
        ->capture_default_str();

    // delay-map
    auto* dm = app.add_subcommand("delay-map", "group delay over parameter x detuning");
    CommonArgs dm_c;
    add_common(dm, dm_c, "delay_map.csv");
    std::string dm_axis;
    double dm_from = 0.8, dm_to = 1.3;
    int dm_points = 401;
    std::string dm_unit = "ratio_omega_phi";
    dm->add_option("--axis", dm_axis, "parameter axis field:start:stop:count[:unit]")
        ->required();
    dm->add_option("--from", dm_from, "first detuning")->capture_default_str();
    dm->add_option("--to", dm_to, "last detuning")->capture_default_str();
    dm->add_option("--points", dm_points, "detuning grid size")->capture_default_str();
    dm->add_option("--delta-unit", dm_unit, "ratio_omega_phi | rad_per_s | hz")
        ->capture_default_str();

    // conversions
    auto* cv = app.add_subcommand("conversions",
                                  "slow/fast conversion points along a parameter axis");
    CommonArgs cv_c;
    add_common(cv, cv_c, "conversions.csv");
    std::string cv_axis, cv_window = "rotation";
    int cv_grid = 401;
    cv->add_option("--axis", cv_axis, "parameter axis field:start:stop:count[:unit]")
        ->required();
    cv->add_option("--window", cv_window, "rotation | magnon")
        ->check(CLI::IsMember({"rotation", "magnon"}))
        ->capture_default_str();
    cv->add_option("--window-grid", cv_grid, "points per spectral window")
        ->capture_default_str();

    // phase-diagram
    auto* pd = app.add_subcommand("phase-diagram", "slow/fast sign over two parameters");
    CommonArgs pd_c;
    add_common(pd, pd_c, "phase_diagram.csv");
    std::string pd_x, pd_y, pd_window = "rotation";
    int pd_grid = 401;
    pd->add_option("--x-axis", pd_x, "x axis field:start:stop:count[:unit]")->required();
    pd->add_option("--y-axis", pd_y, "y axis field:start:stop:count[:unit]")->required();
    pd->add_option("--window", pd_window, "rotation | magnon")
        ->check(CLI::IsMember({"rotation", "magnon"}))
        ->capture_default_str();
    pd->add_option("--window-grid", pd_grid, "points per spectral window")
        ->capture_default_str();

    // stability-scan
    auto* st = app.add_subcommand("stability-scan", "drift-matrix spectrum over 1 or 2 axes");
    CommonArgs st_c;
    add_common(st, st_c, "stability.csv");
    std::string st_x, st_y;
    st->add_option("--x-axis", st_x, "x axis field:start:stop:count[:unit]")->required();
    st->add_option("--y-axis", st_y, "optional y axis field:start:stop:count[:unit]");

    // oracle-check
    auto* oc = app.add_subcommand(
        "oracle-check", "closed-form response vs matrix resolvent (and RK4 demodulation)");
    CommonArgs oc_c;
    add_common(oc, oc_c, "oracle_check.csv");
    double oc_from = 0.8, oc_to = 1.3;
    int oc_points = 101, oc_td_points = 5;
    std::string oc_unit = "ratio_omega_phi";
    bool oc_td = false;
    oc->add_option("--from", oc_from, "first detuning")->capture_default_str();
    oc->add_option("--to", oc_to, "last detuning")->capture_default_str();
    oc->add_option("--points", oc_points, "grid size")->capture_default_str();
    oc->add_option("--delta-unit", oc_unit, "ratio_omega_phi | rad_per_s | hz")
        ->capture_default_str();
    oc->add_flag("--timedomain", oc_td, "also run RK4 demodulation at sample points");
    oc->add_option("--td-points", oc_td_points, "approximate number of time-domain samples")
        ->capture_default_str();

    // selection-rules
    auto* sr = app.add_subcommand("selection-rules",
                                  "magneto-optic mode-overlap table for LCP/RCP/TE/TM");
    CommonArgs sr_c;
    add_common(sr, sr_c, "selection_rules.csv");
    double sr_coupling = 1.0, sr_mag = 1.0, sr_weight = 1.0, sr_bias = 0.0;
    int sr_cells = 32;
    sr->add_option("--coupling", sr_coupling, "magneto-optic response strength")
        ->capture_default_str();
    sr->add_option("--magnetization", sr_mag, "saturation magnetization")
        ->capture_default_str();
    sr->add_option("--weight", sr_weight, "uniform overlap weight")->capture_default_str();
    sr->add_option("--cells", sr_cells, "quadrature cells per axis")->capture_default_str();
    sr->add_option("--bias-field", sr_bias, "bias field (T): report the Kittel frequency");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sp->parsed()) return run_spectrum(sp_c, sp_from, sp_to, sp_points, sp_unit, args);
        if (dm->parsed())
            return run_delay_map(dm_c, dm_axis, dm_from, dm_to, dm_points, dm_unit, args);
        if (cv->parsed()) return run_conversions(cv_c, cv_axis, cv_window, cv_grid, args);
        if (pd->parsed())
            return run_phase_diagram(pd_c, pd_x, pd_y, pd_window, pd_grid, args);
        if (st->parsed()) return run_stability(st_c, st_x, st_y, args);
        if (oc->parsed())
            return run_oracle_check(oc_c, oc_from, oc_to, oc_points, oc_unit, oc_td,
                                    oc_td_points, args);
        if (sr->parsed())
            return run_selection_rules(sr_c, sr_coupling, sr_mag, sr_weight, sr_cells,
                                       sr_bias, args);
    } catch (const ValidationError& e) {
        nlohmann::json err;
        err["error"] = "validation";
        err["message"] = e.what();
        for (const auto& v : e.violations)
            err["violations"].push_back({{"field", v.field}, {"rule", v.rule}});
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const Error& e) {
        nlohmann::json err;
        err["error"] = "runtime";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 0;
}
