#include <doctest.h>

#include <cmath>
#include <complex>

#include "rotomag/response.hpp"
#include "rotomag/stability.hpp"
#include "test_helpers.hpp"

using namespace rotomag;

namespace {

struct Prepared {
    PhysicalConfig cfg;
    DerivedParams d;
    SteadyState s;
    ResponseKernel kr;
    Matrix6c M;
};

Prepared prepare(IntensityConvention conv = IntensityConvention::ModulusSquared) {
    Prepared p;
    p.cfg = PhysicalConfig::reference_defaults();
    p.cfg.intensity_convention = conv;
    p.d = derive_params(p.cfg);
    p.s = solve_steady_state(p.cfg, p.d);
    p.kr = make_response_kernel(p.cfg, p.d, p.s);
    p.M = drift_matrix(p.cfg, p.d, p.s);
    return p;
}

}  // namespace

TEST_CASE("bare-cavity limit: couplings off collapse to a single Lorentzian") {
    Prepared p = prepare();
    ResponseKernel bare = p.kr;
    bare.g_phi = 0.0;
    bare.g_m = 0.0;
    for (double x : {0.5, 0.89, 1.0, 1.2}) {
        const double delta = x * p.cfg.omega_phi;
        const std::complex<double> got = evaluate_probe_point(bare, delta).a_minus;
        const std::complex<double> expected =
            1.0 / std::complex<double>(p.kr.kappa_a, p.kr.Delta - delta);
        CHECK(std::abs(got - expected) <= 1e-12 * std::abs(expected));
    }
}

TEST_CASE("closed form equals the matrix resolvent across the band") {
    Prepared p = prepare();
    const auto deltas = linspace(0.8 * p.cfg.omega_phi, 1.3 * p.cfg.omega_phi, 1001);
    double worst = 0.0;
    for (double delta : deltas) {
        const std::complex<double> closed = evaluate_probe_point(p.kr, delta).a_minus;
        const std::complex<double> matrix = resolvent_a_minus(p.M, delta);
        worst = std::max(worst, std::abs(closed - matrix) / std::abs(matrix));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("the literal-square sensitivity switch really changes the kernel") {
    Prepared mod = prepare(IntensityConvention::ModulusSquared);
    Prepared lit = prepare(IntensityConvention::LiteralSquare);
    CHECK(std::abs(mod.kr.S - lit.kr.S) > 0.0);
    CHECK(std::abs(mod.kr.S) == doctest::Approx(std::abs(lit.kr.S)).epsilon(1e-12));

    // only the modulus-squared kernel agrees with the matrix resolvent
    const double delta = 1.149 * mod.cfg.omega_phi;
    const std::complex<double> matrix = resolvent_a_minus(mod.M, delta);
    const std::complex<double> a_mod = evaluate_probe_point(mod.kr, delta).a_minus;
    const std::complex<double> a_lit = evaluate_probe_point(lit.kr, delta).a_minus;
    CHECK(std::abs(a_mod - matrix) / std::abs(matrix) <= 1e-10);
    CHECK(std::abs(a_lit - matrix) / std::abs(matrix) > 1e-6);
}

TEST_CASE("analytic group delay matches finite differences, order 2") {
    Prepared p = prepare();
    for (double x : {0.97, 1.05, 1.149}) {
        const double delta = x * p.cfg.omega_phi;
        const double tau = evaluate_probe_point(p.kr, delta).group_delay;

        auto fd = [&](double h) {
            const std::complex<double> tp = evaluate_probe_point(p.kr, delta + h).t_p;
            const std::complex<double> tm = evaluate_probe_point(p.kr, delta - h).t_p;
            return std::arg(tp / tm) / (2.0 * h);  // ratio form avoids branch cuts
        };
        CHECK(std::abs(fd(1.0) - tau) <= 1e-6 * std::abs(tau));
        // order check with steps big enough to stay above the rounding floor
        const double e1 = std::abs(fd(64.0) - tau);
        const double e2 = std::abs(fd(32.0) - tau);
        if (e2 > 1e-12 * std::abs(tau)) {
            CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.25));
        }
    }
}

TEST_CASE("transmission dips sit at the two mode frequencies") {
    Prepared p = prepare();
    const auto deltas = linspace(0.8 * p.cfg.omega_phi, 1.3 * p.cfg.omega_phi, 2001);
    const SpectrumResult r = compute_spectrum(p.kr, deltas);

    // local minima of |t_p|
    std::vector<double> minima;
    for (std::size_t k = 1; k + 1 < r.magnitude.size(); ++k)
        if (r.magnitude[k] < r.magnitude[k - 1] && r.magnitude[k] < r.magnitude[k + 1])
            minima.push_back(r.delta[k] / p.cfg.omega_phi);
    REQUIRE(minima.size() >= 2);
    double best_rot = 1e9, best_mag = 1e9;
    for (double m : minima) {
        best_rot = std::min(best_rot, std::abs(m - 1.0));
        best_mag = std::min(best_mag, std::abs(m - 1.15));
    }
    CHECK(best_rot <= 0.01);
    CHECK(best_mag <= 0.01);
}

TEST_CASE("spectrum phase is continuous after unwrapping") {
    Prepared p = prepare();
    const auto deltas = linspace(0.8 * p.cfg.omega_phi, 1.3 * p.cfg.omega_phi, 4001);
    const SpectrumResult r = compute_spectrum(p.kr, deltas);
    for (std::size_t k = 1; k < r.phase.size(); ++k) {
        CHECK(std::abs(r.phase[k] - r.phase[k - 1]) <= std::numbers::pi);
        // unwrapped phase reduces to the wrapped one modulo 2 pi
        const double back = std::remainder(r.phase[k] - std::arg(r.t_p[k]),
                                           2.0 * std::numbers::pi);
        CHECK(std::abs(back) <= 1e-9);
    }
}

TEST_CASE("serial and parallel spectra are bit-identical") {
    Prepared p = prepare();
    const auto deltas = linspace(0.8 * p.cfg.omega_phi, 1.3 * p.cfg.omega_phi, 1001);
    const SpectrumResult a = compute_spectrum(p.kr, deltas, Execution::Serial);
    const SpectrumResult b = compute_spectrum(p.kr, deltas, Execution::Parallel);
    REQUIRE(a.group_delay.size() == b.group_delay.size());
    for (std::size_t k = 0; k < a.group_delay.size(); ++k) {
        CHECK(a.a_minus[k] == b.a_minus[k]);
        CHECK(a.t_p[k] == b.t_p[k]);
        CHECK(a.group_delay[k] == b.group_delay[k]);
        CHECK(a.phase[k] == b.phase[k]);
    }
}

TEST_CASE("pole guard trips on a synthetic degenerate kernel") {
    ResponseKernel kr{};
    kr.Delta = 1.0;  // with kappa_a = 0 and F = 0 the denominator is delta^2 - Delta^2
    CHECK_THROWS_AS((void)evaluate_probe_point(kr, 1.0), PoleError);
}

TEST_CASE("linspace hits both endpoints exactly") {
    const auto v = linspace(0.1, 0.9, 7);
    REQUIRE(v.size() == 7);
    CHECK(v.front() == 0.1);
    CHECK(v.back() == 0.9);
    for (std::size_t k = 1; k < v.size(); ++k) CHECK(v[k] > v[k - 1]);
    CHECK_THROWS_AS(linspace(0.0, 1.0, 0), Error);
}
