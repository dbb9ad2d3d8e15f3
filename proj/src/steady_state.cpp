#include "rotomag/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotomag/errors.hpp"

namespace rotomag {

double backaction_coefficient(const PhysicalConfig& cfg, const DerivedParams& d) {
    const double wm = d.omega_m, km = cfg.kappa_m;
    return d.g_phi * d.g_phi / cfg.omega_phi +
           2.0 * d.g_m * d.g_m * wm / (wm * wm + km * km);
}

namespace {

// Real roots of y^3 + b y^2 + c y + e, ascending.  Trig form for the
// three-root case, Cardano otherwise, then Newton polish on each root.
std::vector<double> cubic_real_roots(double b, double c, double e) {
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + e;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;

    std::vector<double> roots;
    if (disc > 0.0) {
        // three distinct real roots; p < 0 is guaranteed here
        const double r = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p);
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(r * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - b / 3.0);
    } else {
        const double s = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
        const double t = std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s);
        roots.push_back(t - b / 3.0);
        if (disc == 0.0 && (p != 0.0 || q != 0.0)) {
            // double root accompanies the simple one
            roots.push_back(-t / 2.0 - b / 3.0);
        }
    }

    auto poly = [&](double y) { return ((y + b) * y + c) * y + e; };
    auto dpoly = [&](double y) { return (3.0 * y + 2.0 * b) * y + c; };
    for (double& y : roots) {
        for (int it = 0; it < 8; ++it) {
            const double f = poly(y), fp = dpoly(y);
            if (fp == 0.0) break;
            const double step = f / fp;
            y -= step;
            if (std::abs(step) <= 1e-16 * std::abs(y)) break;
        }
    }

    std::sort(roots.begin(), roots.end());
    // Newton polish can merge nearly-degenerate roots; collapse duplicates.
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) {
                                return std::abs(x - y) <= 1e-9 * (std::abs(x) + std::abs(y) + 1e-300);
                            }),
                roots.end());
    return roots;
}

}  // namespace

std::vector<double> detuning_cubic_roots(const PhysicalConfig& cfg, const DerivedParams& d) {
    // Delta^3 - Delta_a Delta^2 + kappa_a^2 Delta + (C eps_c^2 - Delta_a kappa_a^2) = 0,
    // solved in units of omega_phi for conditioning.
    const double w = cfg.omega_phi;
    const double C = backaction_coefficient(cfg, d);
    const double b = -d.Delta_a / w;
    const double c = (cfg.kappa_a / w) * (cfg.kappa_a / w);
    const double e = (C * d.eps_c * d.eps_c - d.Delta_a * cfg.kappa_a * cfg.kappa_a) / (w * w * w);
    std::vector<double> roots = cubic_real_roots(b, c, e);
    for (double& y : roots) y *= w;
    return roots;
}

SteadyState solve_steady_state(const PhysicalConfig& cfg, const DerivedParams& d,
                               std::optional<int> branch) {
    const std::vector<double> roots = detuning_cubic_roots(cfg, d);
    const int count = static_cast<int>(roots.size());
    // Largest root continues the low-power solution Delta -> Delta_a.
    const int index = branch.value_or(count - 1);
    if (index < 0 || index >= count)
        throw BranchOutOfRange("steady-state branch " + std::to_string(index) +
                               " requested but only " + std::to_string(count) + " exist");

    SteadyState s;
    s.Delta_eff = roots[index];
    s.branch_count = count;
    s.branch_index = index;
    const std::complex<double> denom(cfg.kappa_a, s.Delta_eff);
    s.a_s = d.eps_c / denom;
    s.n_cav = std::norm(s.a_s);
    s.phi_s = d.g_phi * s.n_cav / cfg.omega_phi;
    s.L_zs = 0.0;
    s.m_s = std::complex<double>(0.0, -1.0) * d.g_m * s.n_cav /
            std::complex<double>(cfg.kappa_m, d.omega_m);
    return s;
}

}  // namespace rotomag
