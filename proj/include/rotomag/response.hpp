#pragma once

#include <complex>
#include <vector>

#include "rotomag/execution.hpp"
#include "rotomag/steady_state.hpp"

namespace rotomag {

// Frozen scalar inputs for evaluating the probe response at one detuning.
// Building it once amortizes the steady-state work across a whole spectrum.
struct ResponseKernel {
    double kappa_a, kappa_phi, kappa_m;
    double omega_phi, omega_m;
    double g_phi, g_m;
    double Delta;            // power-shifted cavity detuning
    std::complex<double> S;  // intensity factor: |a_s|^2 or a_s^2 by convention
};

ResponseKernel make_response_kernel(const PhysicalConfig& cfg, const DerivedParams& d,
                                    const SteadyState& s);

// Response at a single probe-control detuning delta (rad/s).  All field
// quantities are normalized per unit probe drive, so they are independent
// of the probe power.
struct ProbePoint {
    std::complex<double> a_minus;   // intracavity lower-sideband amplitude
    std::complex<double> eps_out;   // output-field ratio, 2 kappa_a a_minus
    std::complex<double> t_p;       // probe transmission, 1 - eps_out
    double phase = 0.0;             // arg t_p, wrapped to (-pi, pi]
    double group_delay = 0.0;       // d(arg t_p)/d(delta), seconds
};

// Throws PoleError when the response denominator collapses and
// ZeroTransmission when t_p vanishes (group delay undefined there).
ProbePoint evaluate_probe_point(const ResponseKernel& kr, double delta);

struct SpectrumResult {
    std::vector<double> delta;                  // rad/s
    std::vector<std::complex<double>> a_minus;
    std::vector<std::complex<double>> t_p;
    std::vector<double> magnitude;              // |t_p|
    std::vector<double> phase;                  // arg t_p, unwrapped along grid
    std::vector<double> group_delay;            // seconds
};

SpectrumResult compute_spectrum(const ResponseKernel& kr, const std::vector<double>& deltas,
                                Execution exec = Execution::Parallel);

// Uniform detuning grid helper, endpoints included.
std::vector<double> linspace(double start, double stop, int count);

}  // namespace rotomag
