#include "rotomag/timedomain.hpp"

#include <algorithm>
#include <cmath>

#include "rotomag/constants.hpp"
#include "rotomag/errors.hpp"

namespace rotomag {

namespace {

inline Vector6c drive(double eps_p, double delta, double t) {
    Vector6c b = Vector6c::Zero();
    const std::complex<double> e = std::polar(eps_p, -delta * t);
    b(0) = e;
    b(1) = std::conj(e);
    return b;
}

inline Vector6c rk4_step_driven(const Matrix6c& M, const Vector6c& u, double t,
                                double dt, double eps_p, double delta) {
    const Vector6c k1 = M * u + drive(eps_p, delta, t);
    const Vector6c k2 = M * (u + 0.5 * dt * k1) + drive(eps_p, delta, t + 0.5 * dt);
    const Vector6c k3 = M * (u + 0.5 * dt * k2) + drive(eps_p, delta, t + 0.5 * dt);
    const Vector6c k4 = M * (u + dt * k3) + drive(eps_p, delta, t + dt);
    return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Vector6c rk4_driven(const Matrix6c& M, Vector6c u, double t0, long long nsteps,
                    double dt, double eps_p, double delta) {
    for (long long k = 0; k < nsteps; ++k)
        u = rk4_step_driven(M, u, t0 + static_cast<double>(k) * dt, dt, eps_p, delta);
    return u;
}

Vector6c rk4_free(const Matrix6c& M, Vector6c u, long long nsteps, double dt) {
    for (long long k = 0; k < nsteps; ++k) {
        const Vector6c k1 = M * u;
        const Vector6c k2 = M * (u + 0.5 * dt * k1);
        const Vector6c k3 = M * (u + 0.5 * dt * k2);
        const Vector6c k4 = M * (u + dt * k3);
        u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
}

DemodResult demodulate_probe(const PhysicalConfig& cfg, const DerivedParams& d,
                             const SteadyState& s, double delta,
                             const TimeDomainOptions& opt) {
    if (!(delta > 0.0))
        throw Error("time-domain demodulation needs a positive probe detuning");

    const Matrix6c M = drift_matrix(cfg, d, s);
    const double eps_p = opt.eps_p_override > 0.0 ? opt.eps_p_override : d.eps_p;

    // Step resolving the fastest oscillation present, then snapped so an
    // integer number of steps tiles one beat period exactly.
    const double omega_fast = std::max({std::abs(s.Delta_eff), d.omega_m,
                                        cfg.omega_phi, delta});
    double dt = opt.dt;
    if (dt <= 0.0)
        dt = (constants::two_pi / omega_fast) / opt.steps_per_fastest_period;
    const double beat = constants::two_pi / delta;
    const long long per_beat = std::max<long long>(4, std::llround(std::ceil(beat / dt)));
    dt = beat / static_cast<double>(per_beat);

    double t_tr = opt.transient_time;
    if (t_tr <= 0.0)
        t_tr = 10.0 / std::min({cfg.kappa_a, cfg.kappa_phi, cfg.kappa_m});
    const long long n_tr = std::llround(std::ceil(t_tr / dt));
    const long long n_win = per_beat * std::max(1, opt.demod_periods);

    Vector6c u = Vector6c::Zero();
    u = rk4_driven(M, u, 0.0, n_tr, dt, eps_p, delta);

    const double t_start = static_cast<double>(n_tr) * dt;
    std::complex<double> acc = 0.0;
    for (long long k = 0; k < n_win; ++k) {
        const double t = t_start + static_cast<double>(k) * dt;
        acc += u(0) * std::polar(1.0, delta * t);
        u = rk4_step_driven(M, u, t, dt, eps_p, delta);
    }

    DemodResult r;
    r.a_minus = acc / (static_cast<double>(n_win) * eps_p);
    r.dt = dt;
    r.transient_time = t_start;
    r.window_time = static_cast<double>(n_win) * dt;
    r.steps = n_tr + n_win;
    return r;
}

}  // namespace rotomag
