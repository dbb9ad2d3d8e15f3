#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rotomag/magnetooptic.hpp"
#include "rotomag/sweep.hpp"

namespace rotomag::io {

inline constexpr const char* tool_version = "0.1.0";

// Shortest decimal that round-trips to the same double.  Refuses non-finite
// values: masked cells must be written as 0 with a status code instead.
std::string format_double(double x);

// Plain CSV with optional leading '#' comment lines.  Written in binary mode
// with LF endings and no timestamps, so reruns are byte-identical.
struct CsvTable {
    std::vector<std::string> comments;  // written as "# <line>"
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const CsvTable& table, const std::string& path);
void write_text(const std::string& path, const std::string& content);

CsvTable spectrum_table(const SpectrumResult& r, double omega_phi);
CsvTable conversion_table(const ConversionScan& scan);
CsvTable delay_map_table(const DelayMap& map);
CsvTable phase_diagram_table(const PhaseDiagram& pd);
CsvTable stability_table(const StabilityScan& scan);
CsvTable selection_rule_table_csv(const std::vector<SelectionRuleEntry>& entries);

// Sidecar JSON describing one CLI run: resolved config and its hash, the
// command line, produced files, and wall time.  Unlike the CSVs, the
// manifest carries timing and is not part of the byte-identical guarantee.
std::string manifest_json(const PhysicalConfig& resolved_cfg,
                          const std::vector<std::string>& args,
                          const std::vector<std::string>& outputs, double wall_seconds,
                          const std::vector<std::pair<std::string, std::string>>& info = {});

// Small gnuplot scripts for a quick look at the CSVs.
std::string spectrum_plot_script(const std::string& csv_path);
std::string map_plot_script(const std::string& csv_path, const std::string& x_label,
                            const std::string& y_label, int x_col, int y_col, int val_col,
                            const std::string& title);

}  // namespace rotomag::io
