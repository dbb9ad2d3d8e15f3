#pragma once

#include <complex>

#include "rotomag/stability.hpp"

namespace rotomag {

// Fixed-step RK4 propagation of the linearized fluctuation state
// u = (da, da*, dL_z, dphi, dm, dm*) under u' = M u + b(t), where the probe
// drive is b(t) = (eps_p e^{-i delta t}, eps_p e^{+i delta t}, 0, 0, 0, 0).
// These integrators are deliberately independent of the closed-form
// frequency response so they can serve as its cross-check.

// Advance nsteps from time t0; returns the state at t0 + nsteps*dt.
Vector6c rk4_driven(const Matrix6c& M, Vector6c u, double t0, long long nsteps,
                    double dt, double eps_p, double delta);

// Homogeneous propagation (no drive), for decay checks.
Vector6c rk4_free(const Matrix6c& M, Vector6c u, long long nsteps, double dt);

struct TimeDomainOptions {
    double dt = 0.0;                    // 0 -> fastest period / steps_per_fastest_period
    double transient_time = 0.0;        // 0 -> 10 / (slowest damping rate)
    int demod_periods = 40;             // beat periods averaged after the transient
    int steps_per_fastest_period = 400;
    double eps_p_override = 0.0;        // 0 -> use the derived probe amplitude
};

struct DemodResult {
    std::complex<double> a_minus;  // demodulated sideband per unit probe drive
    double dt = 0.0;
    double transient_time = 0.0;
    double window_time = 0.0;
    long long steps = 0;
};

// Drive the system from rest, wait out the transient, then average
// u_1(t) e^{+i delta t} over an integer number of beat periods.  The step is
// snapped to divide the beat period exactly, which makes the counter-rotating
// sideband average to zero identically.  Requires delta > 0.
DemodResult demodulate_probe(const PhysicalConfig& cfg, const DerivedParams& d,
                             const SteadyState& s, double delta,
                             const TimeDomainOptions& opt = {});

}  // namespace rotomag
