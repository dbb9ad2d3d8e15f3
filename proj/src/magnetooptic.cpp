#include "rotomag/magnetooptic.hpp"

#include <cmath>

#include "rotomag/errors.hpp"

namespace rotomag {

Eigen::Matrix3cd permittivity_perturbation(double f, const Eigen::Vector3d& m) {
    const std::complex<double> i(0.0, 1.0);
    Eigen::Matrix3cd e = Eigen::Matrix3cd::Zero();
    e(0, 1) = -i * f * m.z();
    e(0, 2) = i * f * m.y();
    e(1, 0) = i * f * m.z();
    e(1, 2) = -i * f * m.x();
    e(2, 0) = -i * f * m.y();
    e(2, 1) = i * f * m.x();
    return e;
}

namespace {
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
}

OpticalMode make_lcp(double k_z) { return {"LCP", inv_sqrt2, {0.0, -inv_sqrt2}, k_z}; }
OpticalMode make_rcp(double k_z) { return {"RCP", inv_sqrt2, {0.0, inv_sqrt2}, k_z}; }
OpticalMode make_te(double k_z) { return {"TE", 1.0, 0.0, k_z}; }
OpticalMode make_tm(double k_z) { return {"TM", 0.0, 1.0, k_z}; }

namespace {

// Pairwise (tree) reduction: one fixed association order regardless of how
// the values were produced, so repeated runs agree bit for bit.
std::complex<double> pairwise_sum(std::vector<std::complex<double>>& v) {
    if (v.empty()) return 0.0;
    std::size_t n = v.size();
    while (n > 1) {
        const std::size_t half = n / 2;
        for (std::size_t k = 0; k < half; ++k) v[k] = v[2 * k] + v[2 * k + 1];
        if (n % 2 == 1) {
            v[half] = v[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return v[0];
}

}  // namespace

OverlapResult coupling_overlap(const FaradayMedium& medium, const OpticalMode& p,
                               const OpticalMode& q, int cells_per_axis) {
    if (cells_per_axis < 2) throw Error("overlap quadrature needs at least 2 cells per axis");
    const int n = cells_per_axis;
    const double hx = medium.box[0] / n, hy = medium.box[1] / n, hz = medium.box[2] / n;
    const double cell_volume = hx * hy * hz;
    const double dk = q.k_z - p.k_z;

    // z-component of u_p^* x u_q; the transverse factor is position-free
    // while the axial phases beat at k_q - k_p.
    const std::complex<double> transverse =
        std::conj(p.ex) * q.ey - std::conj(p.ey) * q.ex;

    std::vector<std::complex<double>> cells;
    cells.reserve(static_cast<std::size_t>(n) * n * n);
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            for (int iz = 0; iz < n; ++iz) {
                const double z = (iz + 0.5) * hz;
                const std::complex<double> phase = std::polar(1.0, dk * z);
                cells.push_back(medium.weight * transverse * phase * cell_volume);
            }
        }
    }

    OverlapResult r;
    const std::complex<double> integral = pairwise_sum(cells);
    const std::complex<double> prefactor(0.0, medium.coupling * medium.saturation_magnetization / 4.0);
    r.value = prefactor * integral;
    r.quadrature_warning = dk != 0.0;
    r.cells_per_axis = n;
    return r;
}

std::vector<SelectionRuleEntry> selection_rule_table(const FaradayMedium& medium,
                                                     int cells_per_axis, double threshold) {
    const OpticalMode basis[4] = {make_lcp(), make_rcp(), make_te(), make_tm()};
    // reference scale: magnitude of the circular-diagonal element
    const double scale = std::abs(medium.coupling * medium.saturation_magnetization *
                                  medium.weight * medium.volume() / 4.0);
    std::vector<SelectionRuleEntry> table;
    table.reserve(16);
    for (const auto& p : basis) {
        for (const auto& q : basis) {
            const OverlapResult o = coupling_overlap(medium, p, q, cells_per_axis);
            table.push_back({p.name, q.name, o.value, std::abs(o.value) > threshold * scale});
        }
    }
    return table;
}

double kittel_frequency(double bias_field_tesla, double gamma) {
    return gamma * bias_field_tesla;
}

double kittel_field(double omega_m, double gamma) {
    if (gamma == 0.0) throw Error("gyromagnetic ratio must be nonzero");
    return omega_m / gamma;
}

}  // namespace rotomag
