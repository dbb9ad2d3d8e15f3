#include "rotomag/stability.hpp"

#include <algorithm>

#include "rotomag/errors.hpp"

namespace rotomag {

Matrix6c drift_matrix(const PhysicalConfig& cfg, const DerivedParams& d,
                      const SteadyState& s) {
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> a = s.a_s;
    const double D = s.Delta_eff;
    const double gp = d.g_phi, gm = d.g_m;

    Matrix6c M = Matrix6c::Zero();

    // photon row
    M(0, 0) = -(i * D + cfg.kappa_a);
    M(0, 3) = i * gp * a;
    M(0, 4) = -i * gm * a;
    M(0, 5) = -i * gm * a;

    // angular momentum and angle rows
    M(2, 0) = gp * std::conj(a);
    M(2, 1) = gp * a;
    M(2, 2) = -cfg.kappa_phi;
    M(2, 3) = -cfg.omega_phi;
    M(3, 2) = cfg.omega_phi;

    // magnon row
    M(4, 0) = -i * gm * std::conj(a);
    M(4, 1) = -i * gm * a;
    M(4, 4) = -(i * d.omega_m + cfg.kappa_m);

    // conjugate-partner rows, generated so the pairing symmetry holds exactly
    const auto swap_col = [](int j) {
        if (j == 0) return 1;
        if (j == 1) return 0;
        if (j == 4) return 5;
        if (j == 5) return 4;
        return j;
    };
    for (int j = 0; j < 6; ++j) {
        M(1, j) = std::conj(M(0, swap_col(j)));
        M(5, j) = std::conj(M(4, swap_col(j)));
    }
    return M;
}

StabilityReport analyze_stability(const Matrix6c& M) {
    Eigen::ComplexEigenSolver<Matrix6c> solver(M, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw EigenFailure("eigenvalue iteration did not converge on the drift matrix");

    StabilityReport r;
    std::array<int, 6> order{0, 1, 2, 3, 4, 5};
    const auto& vals = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int p, int q) {
        if (vals[p].real() != vals[q].real()) return vals[p].real() > vals[q].real();
        return vals[p].imag() > vals[q].imag();
    });

    const double m_norm = M.norm();
    double worst = 0.0;
    for (int k = 0; k < 6; ++k) {
        const int idx = order[k];
        r.eigenvalues[k] = vals[idx];
        const Vector6c v = solver.eigenvectors().col(idx).normalized();
        worst = std::max(worst, (M * v - vals[idx] * v).norm());
    }
    r.residual = m_norm > 0.0 ? worst / m_norm : worst;
    r.max_real_part = r.eigenvalues[0].real();
    r.stable = r.max_real_part < 0.0;
    return r;
}

StabilityReport analyze_stability(const PhysicalConfig& cfg, const DerivedParams& d,
                                  const SteadyState& s) {
    return analyze_stability(drift_matrix(cfg, d, s));
}

std::complex<double> resolvent_a_minus(const Matrix6c& M, double delta) {
    const std::complex<double> i(0.0, 1.0);
    Matrix6c A = -i * delta * Matrix6c::Identity() - M;
    Vector6c b = Vector6c::Zero();
    b(0) = 1.0;
    const Vector6c u = A.partialPivLu().solve(b);
    if ((A * u - b).norm() > 1e-8 * b.norm())
        throw SingularSystem("sideband linear system is singular at delta = " +
                             std::to_string(delta) + " rad/s");
    return u(0);
}

}  // namespace rotomag
