#include <doctest.h>

#include <cmath>
#include <complex>

#include "rotomag/steady_state.hpp"
#include "test_helpers.hpp"

using namespace rotomag;

namespace {

// Independent oracle: damped fixed-point iteration on the photon number,
//   n <- (1-r) n + r eps_c^2 / (kappa_a^2 + (Delta_a - C n)^2),
// which converges to the solution continuously connected to low power.
double fixed_point_photon_number(const PhysicalConfig& cfg, const DerivedParams& d) {
    const double C = backaction_coefficient(cfg, d);
    const double e2 = d.eps_c * d.eps_c;
    double n = 0.0;
    for (int it = 0; it < 200000; ++it) {
        const double delta = d.Delta_a - C * n;
        const double next = 0.5 * n + 0.5 * e2 / (cfg.kappa_a * cfg.kappa_a + delta * delta);
        if (std::abs(next - n) <= 1e-14 * next) return next;
        n = next;
    }
    return n;
}

double cubic_residual_scale(const PhysicalConfig& cfg, const DerivedParams& d, double x) {
    const double C = backaction_coefficient(cfg, d);
    return std::abs(x * x * x) + std::abs(d.Delta_a * x * x) +
           cfg.kappa_a * cfg.kappa_a * std::abs(x) +
           std::abs(C * d.eps_c * d.eps_c - d.Delta_a * cfg.kappa_a * cfg.kappa_a);
}

double cubic_value(const PhysicalConfig& cfg, const DerivedParams& d, double x) {
    const double C = backaction_coefficient(cfg, d);
    return ((x - d.Delta_a) * x + cfg.kappa_a * cfg.kappa_a) * x +
           (C * d.eps_c * d.eps_c - d.Delta_a * cfg.kappa_a * cfg.kappa_a);
}

}  // namespace

TEST_CASE("cubic roots are genuine, ordered, and below the bare detuning") {
    auto [cfg, d] = testutil::defaults();
    const auto roots = detuning_cubic_roots(cfg, d);
    REQUIRE(!roots.empty());
    for (std::size_t k = 0; k < roots.size(); ++k) {
        CHECK(std::abs(cubic_value(cfg, d, roots[k])) <=
              1e-10 * cubic_residual_scale(cfg, d, roots[k]));
        CHECK(roots[k] < d.Delta_a);
        if (k > 0) CHECK(roots[k] > roots[k - 1]);
    }
}

TEST_CASE("default branch matches the damped fixed-point oracle") {
    auto [cfg, d] = testutil::defaults();
    const SteadyState s = solve_steady_state(cfg, d);
    const double n_oracle = fixed_point_photon_number(cfg, d);
    CHECK(s.n_cav == doctest::Approx(n_oracle).epsilon(1e-10));
    CHECK(s.Delta_eff ==
          doctest::Approx(d.Delta_a - backaction_coefficient(cfg, d) * n_oracle).epsilon(1e-10));
}

TEST_CASE("frozen working point at defaults") {
    auto [cfg, d] = testutil::defaults();
    const SteadyState s = solve_steady_state(cfg, d);
    CHECK(s.branch_count == 1);
    CHECK(s.Delta_eff / cfg.omega_phi == doctest::Approx(0.890654).epsilon(1e-5));
    CHECK(s.n_cav == doctest::Approx(1.15818e10).epsilon(1e-4));
}

TEST_CASE("steady amplitudes satisfy their balance equations") {
    auto [cfg, d] = testutil::defaults();
    const SteadyState s = solve_steady_state(cfg, d);
    const std::complex<double> i(0.0, 1.0);

    const std::complex<double> photon_lhs = (cfg.kappa_a + i * s.Delta_eff) * s.a_s;
    CHECK(std::abs(photon_lhs - d.eps_c) <= 1e-12 * d.eps_c);

    CHECK(s.phi_s == doctest::Approx(d.g_phi * s.n_cav / cfg.omega_phi).epsilon(1e-14));
    CHECK(s.L_zs == 0.0);

    const std::complex<double> magnon_lhs = (i * d.omega_m + cfg.kappa_m) * s.m_s;
    const std::complex<double> magnon_rhs = -i * d.g_m * s.n_cav;
    CHECK(std::abs(magnon_lhs - magnon_rhs) <= 1e-12 * std::abs(magnon_rhs));

    CHECK(std::norm(s.a_s) == doctest::Approx(s.n_cav).epsilon(1e-14));
}

TEST_CASE("branch bookkeeping across a power scan") {
    auto [cfg, d] = testutil::defaults();
    (void)d;
    bool saw_multistable = false;
    for (double p = 1e-3; p <= 320.0; p *= 2.0) {
        PhysicalConfig c = cfg;
        c.P_c = p;
        const DerivedParams dd = derive_params(c);
        const auto roots = detuning_cubic_roots(c, dd);
        CHECK((roots.size() == 1 || roots.size() == 2 || roots.size() == 3));
        if (roots.size() > 1) saw_multistable = true;
        const SteadyState lo = solve_steady_state(c, dd, 0);
        const SteadyState hi = solve_steady_state(c, dd);
        CHECK(lo.Delta_eff <= hi.Delta_eff);
        CHECK(hi.branch_index == hi.branch_count - 1);
        CHECK_THROWS_AS(solve_steady_state(c, dd, static_cast<int>(roots.size())),
                        BranchOutOfRange);
        CHECK_THROWS_AS(solve_steady_state(c, dd, -1), BranchOutOfRange);
    }
    // the scan is expected to cross the multistable window at high drive
    INFO("multistability observed in scan: ", saw_multistable);
}
