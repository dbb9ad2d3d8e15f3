// Timing harness for the OpenMP kernels against their serial reference
// implementations.  Also asserts bitwise-identical results, since the
// parallel paths are required to be deterministic.

#include <chrono>
#include <cstdio>
#include <cstring>

#include <omp.h>

#include "rotomag/sweep.hpp"

using namespace rotomag;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    return a.empty() ||
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void report(const char* name, double t_serial, double t_parallel, bool identical) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name,
                t_serial, t_parallel, t_serial / t_parallel,
                identical ? "bitwise-identical" : "MISMATCH");
}

}  // namespace

int main() {
    PhysicalConfig cfg = PhysicalConfig::reference_defaults();
    const DerivedParams d = derive_params(cfg);
    const SteadyState s = solve_steady_state(cfg, d);
    const ResponseKernel kr = make_response_kernel(cfg, d, s);
    std::printf("threads available: %d\n\n", omp_get_max_threads());

    bool ok = true;

    {  // dense spectrum
        const auto deltas = linspace(0.5 * cfg.omega_phi, 1.5 * cfg.omega_phi, 2'000'000);
        auto t0 = std::chrono::steady_clock::now();
        const SpectrumResult rs = compute_spectrum(kr, deltas, Execution::Serial);
        const double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const SpectrumResult rp = compute_spectrum(kr, deltas, Execution::Parallel);
        const double tp = seconds_since(t0);
        const bool same = bitwise_equal(rs.group_delay, rp.group_delay) &&
                          bitwise_equal(rs.magnitude, rp.magnitude) &&
                          bitwise_equal(rs.phase, rp.phase);
        report("spectrum (2M points)", ts, tp, same);
        ok = ok && same;
    }

    {  // delay map: steady state + eigensolve + window refinement per row
        const auto powers = linspace(0.5e-3, 5e-3, 48);
        const auto deltas = linspace(0.8 * cfg.omega_phi, 1.3 * cfg.omega_phi, 1024);
        SweepOptions opt;
        opt.exec = Execution::Serial;
        auto t0 = std::chrono::steady_clock::now();
        const DelayMap ms = compute_delay_map(cfg, "P_c", powers, deltas, opt);
        const double ts = seconds_since(t0);
        opt.exec = Execution::Parallel;
        t0 = std::chrono::steady_clock::now();
        const DelayMap mp = compute_delay_map(cfg, "P_c", powers, deltas, opt);
        const double tp = seconds_since(t0);
        const bool same = bitwise_equal(ms.tau, mp.tau) && ms.status == mp.status;
        report("delay map (48 x 1024)", ts, tp, same);
        ok = ok && same;
    }

    {  // phase diagram: full window extremes per cell
        const auto gs = linspace(0.5 * d.g_phi, 12.0 * d.g_phi, 24);
        const auto ws = linspace(1.05 * cfg.omega_phi, 1.25 * cfg.omega_phi, 24);
        SweepOptions opt;
        opt.window_grid = 201;
        opt.exec = Execution::Serial;
        auto t0 = std::chrono::steady_clock::now();
        const PhaseDiagram ps =
            compute_phase_diagram(cfg, "g_m", gs, "omega_m", ws, Window::Magnon, opt);
        const double ts = seconds_since(t0);
        opt.exec = Execution::Parallel;
        t0 = std::chrono::steady_clock::now();
        const PhaseDiagram pp =
            compute_phase_diagram(cfg, "g_m", gs, "omega_m", ws, Window::Magnon, opt);
        const double tp = seconds_since(t0);
        const bool same = bitwise_equal(ps.signal, pp.signal) && ps.sign == pp.sign &&
                          ps.status == pp.status;
        report("phase diagram (24 x 24)", ts, tp, same);
        ok = ok && same;
    }

    if (!ok) {
        std::printf("\nFAIL: parallel result diverged from the serial reference\n");
        return 1;
    }
    return 0;
}
