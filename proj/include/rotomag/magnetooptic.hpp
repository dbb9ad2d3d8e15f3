#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotomag/constants.hpp"

namespace rotomag {

// Gyrotropic permittivity perturbation i f [M]_x for magnetization M:
// antisymmetric in the vector indices and Hermitian for real M, so the
// medium rotates polarization without absorbing.
Eigen::Matrix3cd permittivity_perturbation(double f, const Eigen::Vector3d& magnetization);

// Transversally uniform cavity mode: Jones vector (ex, ey) rotating as
// e^{i k_z z} along the magnetization axis.
struct OpticalMode {
    std::string name;
    std::complex<double> ex, ey;
    double k_z = 0.0;  // rad/m
};

OpticalMode make_lcp(double k_z = 0.0);
OpticalMode make_rcp(double k_z = 0.0);
OpticalMode make_te(double k_z = 0.0);
OpticalMode make_tm(double k_z = 0.0);

// Uniformly magnetized Faraday medium filling a rectangular box.
struct FaradayMedium {
    double coupling = 1.0;                    // magneto-optic response strength
    double saturation_magnetization = 1.0;
    double weight = 1.0;                      // uniform mode-overlap weight w0
    std::array<double, 3> box = {1.0, 1.0, 1.0};  // integration volume (m)
    double volume() const { return box[0] * box[1] * box[2]; }
};

struct OverlapResult {
    std::complex<double> value;
    bool quadrature_warning = false;  // axial wavenumbers differ: the
                                      // integrand oscillates and the result
                                      // rests on cancellation
    int cells_per_axis = 0;
};

// Photon-magnon coupling overlap between two modes,
//   G = (i * coupling * M_s / 4) Int_V w(r) z . (u_p^* x u_q) d^3r,
// evaluated by midpoint quadrature with a fixed pairwise reduction so the
// sum is deterministic.  Satisfies G(q,p) = conj(G(p,q)).
OverlapResult coupling_overlap(const FaradayMedium& medium, const OpticalMode& p,
                               const OpticalMode& q, int cells_per_axis = 32);

struct SelectionRuleEntry {
    std::string bra, ket;
    std::complex<double> value;
    bool allowed = false;  // |value| above threshold * (circular diagonal scale)
};

// Full overlap table over the {LCP, RCP, TE, TM} basis at common k_z.
std::vector<SelectionRuleEntry> selection_rule_table(const FaradayMedium& medium,
                                                     int cells_per_axis = 32,
                                                     double threshold = 1e-9);

// Uniform-mode magnon frequency under a bias field (Kittel relation) and its
// inverse.  gamma defaults to the electron value, 2*pi * 28 GHz/T.
inline constexpr double gyromagnetic_ratio = constants::two_pi * 28e9;
double kittel_frequency(double bias_field_tesla, double gamma = gyromagnetic_ratio);
double kittel_field(double omega_m, double gamma = gyromagnetic_ratio);

}  // namespace rotomag
