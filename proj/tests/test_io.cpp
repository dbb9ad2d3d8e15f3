#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "rotomag/io.hpp"
#include "test_helpers.hpp"

using namespace rotomag;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / "rotomag_io_test";
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("format_double round-trips exactly and rejects non-finite input") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e300, 1e-300, 0.0, -0.0, 123456.789,
                     std::numeric_limits<double>::denorm_min()}) {
        const std::string s = io::format_double(x);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == x);
    }
    CHECK_THROWS_AS((void)io::format_double(std::nan("")), Error);
    CHECK_THROWS_AS((void)io::format_double(std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("CSV files are LF-only with comments before the header") {
    TempDir tmp;
    io::CsvTable t;
    t.comments = {"alpha", "beta"};
    t.header = {"x", "y"};
    t.rows = {{"1", "2"}, {"3", "4"}};
    const auto path = tmp.path / "t.csv";
    io::write_csv(t, path.string());
    const std::string body = slurp(path);
    CHECK(body == "# alpha\n# beta\nx,y\n1,2\n3,4\n");
    CHECK(body.find('\r') == std::string::npos);
}

TEST_CASE("table builders cover every cell with parseable numbers") {
    SUBCASE("spectrum") {
        SpectrumResult r;
        r.delta = {1.0, 2.0};
        r.a_minus = {{0.1, -0.2}, {0.3, 0.4}};
        r.t_p = {{0.5, 0.6}, {0.7, -0.8}};
        r.magnitude = {0.78, 1.06};
        r.phase = {0.2, 0.3};
        r.group_delay = {1e-4, -2e-4};
        const io::CsvTable t = io::spectrum_table(r, 2.0);
        REQUIRE(t.rows.size() == 2);
        CHECK(t.header.size() == t.rows[0].size());
        CHECK(t.rows[0][1] == "0.5");  // delta normalized by the given scale
    }
    SUBCASE("conversion with crossing comments") {
        ConversionScan scan;
        scan.field = "P_c";
        scan.window = Window::Magnon;
        scan.axis = {1.0, 2.0};
        scan.signal = {1e-3, -1e-3};
        scan.status = {CellStatus::Ok, CellStatus::Ok};
        scan.crossings = {1.5};
        const io::CsvTable t = io::conversion_table(scan);
        REQUIRE(t.rows.size() == 2);
        REQUIRE(t.comments.size() == 2);
        CHECK(t.comments[0] == "window: magnon");
        CHECK(t.comments[1] == "crossing: 1.5");
        CHECK(t.rows[0][2] == "ok");
    }
    SUBCASE("delay map long format with status strings") {
        DelayMap m;
        m.field = "P_c";
        m.param = {1.0, 2.0};
        m.delta = {10.0, 20.0, 30.0};
        m.tau = {1, 2, 3, 0, 0, 0};
        m.status = {CellStatus::Ok, CellStatus::Ok, CellStatus::Ok,
                    CellStatus::Unstable, CellStatus::Unstable, CellStatus::Unstable};
        const io::CsvTable t = io::delay_map_table(m);
        REQUIRE(t.rows.size() == 6);
        CHECK(t.rows[3][3] == "unstable");
        CHECK(t.rows[3][2] == "0");
    }
    SUBCASE("phase diagram carries signs") {
        PhaseDiagram pd;
        pd.x_field = "g_m";
        pd.y_field = "omega_m";
        pd.x = {1.0, 2.0};
        pd.y = {3.0};
        pd.signal = {1e-3, -2e-3};
        pd.sign = {1, -1};
        pd.status = {CellStatus::Ok, CellStatus::Ok};
        const io::CsvTable t = io::phase_diagram_table(pd);
        REQUIRE(t.rows.size() == 2);
        CHECK(t.rows[0][3] == "1");
        CHECK(t.rows[1][3] == "-1");
    }
    SUBCASE("stability 1D omits the empty second axis") {
        StabilityScan s;
        s.x_field = "P_c";
        s.x = {1.0};
        s.y = {0.0};
        s.max_real = {-5.0};
        s.branch_count = {1};
        s.stable = {1};
        s.status = {CellStatus::Ok};
        const io::CsvTable t = io::stability_table(s);
        REQUIRE(t.header.size() == 5);
        CHECK(t.header[0] == "P_c");
        CHECK(t.rows[0][1] == "-5");
    }
}

TEST_CASE("manifest is valid JSON tied to the canonical config hash") {
    auto [cfg, d] = testutil::defaults();
    (void)d;
    const std::string m = io::manifest_json(cfg, {"rotomag", "spectrum"}, {"out.csv"}, 1.25,
                                            {{"branch_count", "1"}});
    const nlohmann::json j = nlohmann::json::parse(m);
    CHECK(j["tool"] == "rotomag");
    CHECK(j["version"] == io::tool_version);
    CHECK(j["outputs"][0] == "out.csv");
    CHECK(j["info"]["branch_count"] == 1);

    char expect[19];
    std::snprintf(expect, sizeof expect, "0x%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    CHECK(j["config_hash"] == expect);

    // embedded config reparses to the same hash
    PhysicalConfig back = parse_config(j["config"].dump());
    CHECK(config_hash(back) == config_hash(cfg));
}

TEST_CASE("plot scripts reference the data file") {
    const std::string s = io::spectrum_plot_script("spec.csv");
    CHECK(s.find("spec.csv") != std::string::npos);
    CHECK(s.find("multiplot") != std::string::npos);
    const std::string m = io::map_plot_script("map.csv", "x", "y", 1, 2, 3, "title");
    CHECK(m.find("map.csv") != std::string::npos);
    CHECK(m.find("1:2:3") != std::string::npos);
}
