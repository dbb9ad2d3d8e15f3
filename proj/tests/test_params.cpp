#include <doctest.h>

#include <cmath>

#include "rotomag/constants.hpp"
#include "rotomag/params.hpp"
#include "test_helpers.hpp"

using namespace rotomag;
namespace k = constants;

TEST_CASE("derived parameters at the default operating point") {
    auto [cfg, d] = testutil::defaults();

    // thin-disc inertia of a 10 ug, 10 um mirror
    CHECK(d.inertia == doctest::Approx(5e-16).epsilon(1e-12));

    // frozen reference values, computed independently before implementation
    CHECK(d.g_phi / k::two_pi == doctest::Approx(0.2472574).epsilon(1e-5));
    CHECK(d.g_m / k::two_pi == doctest::Approx(0.2843460).epsilon(1e-5));
    CHECK(d.finesse_a == doctest::Approx(99930.8193).epsilon(1e-6));
    CHECK(d.finesse_m == doctest::Approx(1642.857142857).epsilon(1e-9));

    CHECK(d.omega_m == doctest::Approx(1.15 * cfg.omega_phi).epsilon(1e-12));
    CHECK(d.Delta_a == doctest::Approx(0.9 * cfg.omega_phi).epsilon(1e-12));
    CHECK(d.g_m == doctest::Approx(1.15 * d.g_phi).epsilon(1e-12));

    // drive amplitudes invert back to the configured powers
    CHECK(d.eps_c * d.eps_c * k::hbar * d.omega_c / (2.0 * cfg.kappa_a) ==
          doctest::Approx(cfg.P_c).epsilon(1e-12));
    CHECK(d.eps_p * d.eps_p * k::hbar * d.omega_c / (2.0 * cfg.kappa_a) ==
          doctest::Approx(cfg.P_p).epsilon(1e-12));

    CHECK(d.omega_c == d.omega_a - d.Delta_a);
    CHECK(d.omega_c > 0.0);
}

TEST_CASE("ratio resolution happens once and is idempotent") {
    PhysicalConfig cfg = PhysicalConfig::reference_defaults();
    CHECK(!cfg.omega_m.resolved());
    const DerivedParams d1 = derive_params(cfg);
    CHECK(cfg.omega_m.resolved());
    CHECK(cfg.g_m.resolved());
    CHECK(cfg.Delta_a.resolved());

    PhysicalConfig copy = cfg;
    const DerivedParams d2 = derive_params(copy);
    CHECK(d1.omega_m == d2.omega_m);
    CHECK(d1.g_m == d2.g_m);
    CHECK(d1.Delta_a == d2.Delta_a);
    CHECK(d1.eps_c == d2.eps_c);
}

TEST_CASE("validation rejects out-of-domain inputs with field names") {
    PhysicalConfig cfg = PhysicalConfig::reference_defaults();
    cfg.mirror_mass = -1.0;
    cfg.P_c = 0.0;
    const auto violations = validate_config(cfg);
    REQUIRE(violations.size() == 2);
    CHECK(violations[0].field == "mirror_mass");
    CHECK(violations[1].field == "P_c");
    CHECK_THROWS_AS(derive_params(cfg), ValidationError);
}

TEST_CASE("JSON parsing: tagged frequencies, defaults, unknown keys") {
    SUBCASE("hz tag multiplies by 2 pi at the boundary") {
        PhysicalConfig cfg = parse_config(R"({"kappa_a": {"hz": 350.0}})");
        CHECK(cfg.kappa_a == doctest::Approx(k::two_pi * 350.0).epsilon(1e-15));
    }
    SUBCASE("rad_per_s tag passes through") {
        PhysicalConfig cfg = parse_config(R"({"omega_m": {"rad_per_s": 123.0}})");
        CHECK(cfg.omega_m.value == 123.0);
        CHECK(cfg.omega_m.resolved());
    }
    SUBCASE("ratio tags stay unresolved until derive_params") {
        PhysicalConfig cfg = parse_config(R"({"g_m": {"ratio_g_phi": 2.0}})");
        CHECK(!cfg.g_m.resolved());
        const DerivedParams d = derive_params(cfg);
        CHECK(d.g_m == doctest::Approx(2.0 * d.g_phi).epsilon(1e-15));
    }
    SUBCASE("missing keys keep defaults") {
        PhysicalConfig cfg = parse_config("{}");
        CHECK(cfg.P_c == doctest::Approx(10e-3));
        CHECK(cfg.topological_charge == 200);
    }
    SUBCASE("unknown key is an error") {
        CHECK_THROWS_AS(parse_config(R"({"coupling": 1.0})"), ValidationError);
    }
    SUBCASE("untagged frequency is an error") {
        CHECK_THROWS_AS(parse_config(R"({"omega_m": 5.0})"), ValidationError);
    }
    SUBCASE("wrong tag for the field is an error") {
        CHECK_THROWS_AS(parse_config(R"({"omega_m": {"ratio_g_phi": 5.0}})"), ValidationError);
    }
    SUBCASE("malformed json is an error") {
        CHECK_THROWS_AS(parse_config("{"), ValidationError);
    }
    SUBCASE("intensity convention strings") {
        PhysicalConfig cfg = parse_config(R"({"intensity_convention": "literal_square"})");
        CHECK(cfg.intensity_convention == IntensityConvention::LiteralSquare);
        CHECK_THROWS_AS(parse_config(R"({"intensity_convention": "x"})"), ValidationError);
    }
}

TEST_CASE("canonical serialization and hashing are stable and sensitive") {
    auto [cfg, d] = testutil::defaults();
    (void)d;
    const std::string s1 = canonical_config_json(cfg);
    const std::string s2 = canonical_config_json(cfg);
    CHECK(s1 == s2);
    const std::uint64_t h1 = config_hash(cfg);

    // round trip through the parser preserves the hash
    PhysicalConfig reparsed = parse_config(s1);
    CHECK(config_hash(reparsed) == h1);

    PhysicalConfig other = cfg;
    other.P_c = 11e-3;
    CHECK(config_hash(other) != h1);
}

TEST_CASE("axis field registry round-trips every field") {
    auto [cfg, d] = testutil::defaults();
    (void)d;
    for (const auto& name : axis_field_names()) {
        CHECK(is_axis_field(name));
        const double before = get_field(cfg, name);
        set_field(cfg, name, before * 2.0);
        CHECK(get_field(cfg, name) == before * 2.0);
        set_field(cfg, name, before);
        CHECK(get_field(cfg, name) == before);
    }
    CHECK(!is_axis_field("no_such_field"));
    CHECK_THROWS_AS(set_field(cfg, "no_such_field", 1.0), Error);
    CHECK_THROWS_AS((void)get_field(cfg, "no_such_field"), Error);
}
