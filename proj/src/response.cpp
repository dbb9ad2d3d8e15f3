#include "rotomag/response.hpp"

#include <cmath>
#include <exception>
#include <numbers>

#include "rotomag/errors.hpp"

namespace rotomag {

ResponseKernel make_response_kernel(const PhysicalConfig& cfg, const DerivedParams& d,
                                    const SteadyState& s) {
    ResponseKernel kr;
    kr.kappa_a = cfg.kappa_a;
    kr.kappa_phi = cfg.kappa_phi;
    kr.kappa_m = cfg.kappa_m;
    kr.omega_phi = cfg.omega_phi;
    kr.omega_m = d.omega_m;
    kr.g_phi = d.g_phi;
    kr.g_m = d.g_m;
    kr.Delta = s.Delta_eff;
    kr.S = cfg.intensity_convention == IntensityConvention::ModulusSquared
               ? std::complex<double>(s.n_cav, 0.0)
               : s.a_s * s.a_s;
    return kr;
}

ProbePoint evaluate_probe_point(const ResponseKernel& kr, double delta) {
    const std::complex<double> i(0.0, 1.0);
    const double wp = kr.omega_phi, wm = kr.omega_m;
    const double gp2 = kr.g_phi * kr.g_phi, gm2 = kr.g_m * kr.g_m;

    // resonant denominators of the two mechanical/magnonic susceptibilities
    const std::complex<double> d_phi(wp * wp - delta * delta, -kr.kappa_phi * delta);
    const std::complex<double> shift = delta + i * kr.kappa_m;
    const std::complex<double> d_m = wm * wm - shift * shift;

    // combined back-action self-energy seen by the probe sideband
    const std::complex<double> F = i * kr.S * (gp2 * wp / d_phi + 2.0 * gm2 * wm / d_m);

    const std::complex<double> z(kr.kappa_a, -delta);
    const std::complex<double> num = z - i * kr.Delta + F;
    const std::complex<double> iDmF = i * kr.Delta - F;
    const std::complex<double> den = F * F + z * z - iDmF * iDmF;

    const double scale = std::abs(F * F) + std::abs(z * z) + kr.Delta * kr.Delta;
    if (std::abs(den) < 1e-30 * scale)
        throw PoleError("probe-response denominator vanished at delta = " +
                        std::to_string(delta) + " rad/s");

    ProbePoint p;
    p.a_minus = num / den;

    // analytic detuning derivative, for the group delay
    const std::complex<double> d_phi_p(-2.0 * delta, -kr.kappa_phi);
    const std::complex<double> d_m_p = -2.0 * shift;
    const std::complex<double> F_p =
        i * kr.S * (-gp2 * wp * d_phi_p / (d_phi * d_phi) - 2.0 * gm2 * wm * d_m_p / (d_m * d_m));
    const std::complex<double> num_p = -i + F_p;
    const std::complex<double> den_p = 2.0 * F * F_p - 2.0 * i * z + 2.0 * iDmF * F_p;
    const std::complex<double> a_minus_p = (num_p * den - num * den_p) / (den * den);

    p.eps_out = 2.0 * kr.kappa_a * p.a_minus;
    p.t_p = 1.0 - p.eps_out;
    p.phase = std::arg(p.t_p);
    if (std::abs(p.t_p) < 1e-14)
        throw ZeroTransmission("probe transmission vanished at delta = " +
                               std::to_string(delta) + " rad/s; group delay undefined");
    const std::complex<double> t_p_p = -2.0 * kr.kappa_a * a_minus_p;
    p.group_delay = (t_p_p / p.t_p).imag();
    return p;
}

namespace {

void unwrap_phase(std::vector<double>& phase) {
    for (std::size_t k = 1; k < phase.size(); ++k) {
        double jump = phase[k] - phase[k - 1];
        while (jump > std::numbers::pi) {
            phase[k] -= 2.0 * std::numbers::pi;
            jump = phase[k] - phase[k - 1];
        }
        while (jump < -std::numbers::pi) {
            phase[k] += 2.0 * std::numbers::pi;
            jump = phase[k] - phase[k - 1];
        }
    }
}

}  // namespace

SpectrumResult compute_spectrum(const ResponseKernel& kr, const std::vector<double>& deltas,
                                Execution exec) {
    const int n = static_cast<int>(deltas.size());
    SpectrumResult r;
    r.delta = deltas;
    r.a_minus.resize(n);
    r.t_p.resize(n);
    r.magnitude.resize(n);
    r.phase.resize(n);
    r.group_delay.resize(n);

    std::exception_ptr first_error = nullptr;
    // Each point writes only its own slots, so the parallel loop is
    // bit-identical to the serial one for any thread count.
    #pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
    for (int k = 0; k < n; ++k) {
        try {
            const ProbePoint p = evaluate_probe_point(kr, deltas[k]);
            r.a_minus[k] = p.a_minus;
            r.t_p[k] = p.t_p;
            r.magnitude[k] = std::abs(p.t_p);
            r.phase[k] = p.phase;
            r.group_delay[k] = p.group_delay;
        } catch (...) {
            #pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    unwrap_phase(r.phase);
    return r;
}

std::vector<double> linspace(double start, double stop, int count) {
    if (count < 1) throw Error("grid needs at least one point");
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = start;
        return v;
    }
    const double h = (stop - start) / (count - 1);
    for (int k = 0; k < count; ++k) v[k] = start + h * k;
    v[count - 1] = stop;  // exact endpoint
    return v;
}

}  // namespace rotomag
