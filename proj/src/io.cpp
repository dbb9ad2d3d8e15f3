#include "rotomag/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "rotomag/errors.hpp"

namespace rotomag::io {

std::string format_double(double x) {
    if (!std::isfinite(x))
        throw Error("refusing to serialize a non-finite value; mask the cell instead");
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, p);
}

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string line;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k) line += ',';
        line += parts[k];
    }
    return line;
}

}  // namespace

void write_csv(const CsvTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    for (const auto& c : table.comments) out << "# " << c << '\n';
    out << join(table.header) << '\n';
    for (const auto& row : table.rows) out << join(row) << '\n';
    if (!out) throw Error("write failed: " + path);
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

CsvTable spectrum_table(const SpectrumResult& r, double omega_phi) {
    CsvTable t;
    t.header = {"delta_rad_per_s", "delta_over_omega_phi", "re_t_p",     "im_t_p",
                "magnitude",       "phase_rad",            "group_delay_s",
                "re_a_minus",      "im_a_minus"};
    const std::size_t n = r.delta.size();
    t.rows.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        t.rows.push_back({format_double(r.delta[k]), format_double(r.delta[k] / omega_phi),
                          format_double(r.t_p[k].real()), format_double(r.t_p[k].imag()),
                          format_double(r.magnitude[k]), format_double(r.phase[k]),
                          format_double(r.group_delay[k]), format_double(r.a_minus[k].real()),
                          format_double(r.a_minus[k].imag())});
    }
    return t;
}

CsvTable conversion_table(const ConversionScan& scan) {
    CsvTable t;
    t.comments.push_back("window: " + std::string(scan.window == Window::Rotation
                                                      ? "rotation"
                                                      : "magnon"));
    for (double c : scan.crossings) t.comments.push_back("crossing: " + format_double(c));
    t.header = {scan.field, "dominant_delay_s", "status"};
    for (std::size_t k = 0; k < scan.axis.size(); ++k) {
        t.rows.push_back({format_double(scan.axis[k]), format_double(scan.signal[k]),
                          to_string(scan.status[k])});
    }
    return t;
}

CsvTable delay_map_table(const DelayMap& map) {
    CsvTable t;
    t.header = {map.field, "delta_rad_per_s", "group_delay_s", "status"};
    const std::size_t cols = map.delta.size();
    for (std::size_t i = 0; i < map.param.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t idx = i * cols + j;
            t.rows.push_back({format_double(map.param[i]), format_double(map.delta[j]),
                              format_double(map.tau[idx]), to_string(map.status[idx])});
        }
    }
    return t;
}

CsvTable phase_diagram_table(const PhaseDiagram& pd) {
    CsvTable t;
    t.comments.push_back("window: " +
                         std::string(pd.window == Window::Rotation ? "rotation" : "magnon"));
    t.comments.push_back("sign: +1 slow light, -1 fast light, 0 masked");
    t.header = {pd.x_field, pd.y_field, "dominant_delay_s", "sign", "status"};
    const std::size_t nx = pd.x.size();
    for (std::size_t iy = 0; iy < pd.y.size(); ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const std::size_t idx = iy * nx + ix;
            t.rows.push_back({format_double(pd.x[ix]), format_double(pd.y[iy]),
                              format_double(pd.signal[idx]), std::to_string(pd.sign[idx]),
                              to_string(pd.status[idx])});
        }
    }
    return t;
}

CsvTable stability_table(const StabilityScan& scan) {
    CsvTable t;
    const bool two_d = !scan.y_field.empty();
    t.header = {scan.x_field};
    if (two_d) t.header.push_back(scan.y_field);
    t.header.insert(t.header.end(), {"max_real_part", "branch_count", "stable", "status"});
    const std::size_t nx = scan.x.size();
    for (std::size_t iy = 0; iy < scan.y.size(); ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const std::size_t idx = iy * nx + ix;
            std::vector<std::string> row = {format_double(scan.x[ix])};
            if (two_d) row.push_back(format_double(scan.y[iy]));
            row.push_back(format_double(scan.max_real[idx]));
            row.push_back(std::to_string(scan.branch_count[idx]));
            row.push_back(std::to_string(scan.stable[idx]));
            row.push_back(to_string(scan.status[idx]));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

CsvTable selection_rule_table_csv(const std::vector<SelectionRuleEntry>& entries) {
    CsvTable t;
    t.header = {"mode_p", "mode_q", "re_overlap", "im_overlap", "magnitude", "allowed"};
    for (const auto& e : entries) {
        t.rows.push_back({e.bra, e.ket, format_double(e.value.real()),
                          format_double(e.value.imag()), format_double(std::abs(e.value)),
                          e.allowed ? "1" : "0"});
    }
    return t;
}

std::string manifest_json(const PhysicalConfig& resolved_cfg,
                          const std::vector<std::string>& args,
                          const std::vector<std::string>& outputs, double wall_seconds,
                          const std::vector<std::pair<std::string, std::string>>& info) {
    nlohmann::json m;
    m["tool"] = "rotomag";
    m["version"] = tool_version;
    m["command"] = args;
    m["config"] = nlohmann::json::parse(canonical_config_json(resolved_cfg));
    char hex[19];
    std::snprintf(hex, sizeof hex, "0x%016llx",
                  static_cast<unsigned long long>(config_hash(resolved_cfg)));
    m["config_hash"] = hex;
    m["outputs"] = outputs;
    m["wall_seconds"] = wall_seconds;
    for (const auto& [key, raw] : info) m["info"][key] = nlohmann::json::parse(raw);
    return m.dump(2) + "\n";
}

std::string spectrum_plot_script(const std::string& csv_path) {
    std::string s;
    s += "set datafile separator ','\n";
    s += "set key off\n";
    s += "set multiplot layout 3,1\n";
    s += "set ylabel '|t_p|'\n";
    s += "plot '" + csv_path + "' using 2:5 with lines\n";
    s += "set ylabel 'phase (rad)'\n";
    s += "plot '" + csv_path + "' using 2:6 with lines\n";
    s += "set ylabel 'group delay (s)'\n";
    s += "set xlabel 'delta / omega_phi'\n";
    s += "plot '" + csv_path + "' using 2:7 with lines\n";
    s += "unset multiplot\n";
    return s;
}

std::string map_plot_script(const std::string& csv_path, const std::string& x_label,
                            const std::string& y_label, int x_col, int y_col, int val_col,
                            const std::string& title) {
    std::string s;
    s += "set datafile separator ','\n";
    s += "set title '" + title + "'\n";
    s += "set xlabel '" + x_label + "'\n";
    s += "set ylabel '" + y_label + "'\n";
    s += "set view map\n";
    s += "splot '" + csv_path + "' using " + std::to_string(x_col) + ":" +
         std::to_string(y_col) + ":" + std::to_string(val_col) + " with points pt 5 ps 1 palette\n";
    return s;
}

}  // namespace rotomag::io
