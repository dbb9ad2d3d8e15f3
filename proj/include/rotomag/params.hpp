#pragma once

// Physical configuration of the hybrid cavity (photon + rotating mirror +
// magnon) and the parameters derived from it. All internal frequencies are
// angular (rad/s); values given in Hz are multiplied by 2*pi at the parse
// boundary, never later.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rotomag/errors.hpp"

namespace rotomag {

enum class IntensityConvention {
    ModulusSquared,  // |a_s|^2 drives the back-action kernel (default)
    LiteralSquare,   // complex a_s^2, kept as a sensitivity switch
};

// A frequency-like input that may still be expressed relative to omega_phi
// or g_phi. Resolution to absolute rad/s happens once, in derive_params.
struct FreqField {
    enum class Unit { RadPerS, RatioOmegaPhi, RatioGPhi };
    double value = 0.0;
    Unit unit = Unit::RadPerS;

    static FreqField rad(double v) { return {v, Unit::RadPerS}; }
    static FreqField ratio_omega_phi(double v) { return {v, Unit::RatioOmegaPhi}; }
    static FreqField ratio_g_phi(double v) { return {v, Unit::RatioGPhi}; }

    bool resolved() const { return unit == Unit::RadPerS; }
    // Absolute value in rad/s; only valid once resolved.
    double rad_per_s() const;
};

struct PhysicalConfig {
    double cavity_length = 0.0;   // m
    double wavelength = 0.0;      // m
    double mirror_mass = 0.0;     // kg
    double mirror_radius = 0.0;   // m
    int topological_charge = 0;   // orbital angular momentum index of the beam
    double omega_phi = 0.0;       // rotational mode frequency, rad/s
    FreqField omega_m;            // magnon frequency
    FreqField g_m;                // optomagnonic coupling
    FreqField Delta_a;            // control-field detuning from the bare cavity
    double kappa_a = 0.0;         // cavity amplitude decay, rad/s
    double kappa_phi = 0.0;       // rotational damping, rad/s
    double kappa_m = 0.0;         // magnon damping, rad/s
    double P_c = 0.0;             // control power, W
    double P_p = 0.0;             // probe power, W
    IntensityConvention intensity_convention = IntensityConvention::ModulusSquared;

    static PhysicalConfig reference_defaults();
};

struct DerivedParams {
    double inertia = 0.0;     // mirror moment of inertia, kg m^2 (thin disc)
    double g_phi = 0.0;       // optorotational coupling, rad/s
    double omega_a = 0.0;     // bare cavity frequency, rad/s
    double omega_c = 0.0;     // control field frequency = omega_a - Delta_a
    double eps_c = 0.0;       // control drive amplitude, sqrt(photons)/s
    double eps_p = 0.0;       // probe drive amplitude
    double finesse_a = 0.0;   // cavity finesse, pi*c/(kappa_a*L)
    double finesse_m = 0.0;   // magnon quality proxy, omega_m/kappa_m
    // Resolved absolute copies (rad/s) of the ratio-capable fields.
    double omega_m = 0.0;
    double g_m = 0.0;
    double Delta_a = 0.0;
};

// Empty vector means the configuration is acceptable. Ratio fields are
// validated on their resolved sign only when already resolved.
std::vector<Violation> validate_config(const PhysicalConfig& cfg);

// Resolves ratio fields in place (idempotent) and computes the derived set.
// Throws ValidationError if validate_config reports anything.
DerivedParams derive_params(PhysicalConfig& cfg);

// JSON front end. Accepts only known top-level keys; frequency-like fields
// must be tagged objects: {"hz": x}, {"rad_per_s": x}, {"ratio_omega_phi": x}
// or {"ratio_g_phi": x} where meaningful. Unknown keys are errors.
// Missing keys keep their built-in reference defaults.
PhysicalConfig parse_config(const std::string& json_text);
PhysicalConfig load_config(const std::string& path);

// Canonical serialization of a resolved config: fixed key order, 17
// significant digit numbers. Equal configs serialize identically.
std::string canonical_config_json(const PhysicalConfig& cfg);

// FNV-1a over the canonical serialization; stable across runs and platforms.
std::uint64_t config_hash(const PhysicalConfig& cfg);

// Names accepted by sweep axes and stability scans.
const std::vector<std::string>& axis_field_names();
bool is_axis_field(std::string_view name);
// Sets a scalar field by name; frequency-like fields take absolute rad/s.
void set_field(PhysicalConfig& cfg, std::string_view name, double value);
double get_field(const PhysicalConfig& cfg, std::string_view name);

}  // namespace rotomag
