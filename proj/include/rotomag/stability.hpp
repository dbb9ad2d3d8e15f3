#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "rotomag/steady_state.hpp"

namespace rotomag {

using Matrix6c = Eigen::Matrix<std::complex<double>, 6, 6>;
using Vector6c = Eigen::Matrix<std::complex<double>, 6, 1>;

// Linearized drift matrix in the fluctuation basis
// (da, da*, dL_z, dphi, dm, dm*).  Rows for da* and dm* are generated as
// exact conjugate-swaps of the da and dm rows, so the matrix satisfies
// P conj(M) P = M bitwise (P swaps the conjugate partners) and its spectrum
// closes under complex conjugation.
Matrix6c drift_matrix(const PhysicalConfig& cfg, const DerivedParams& d,
                      const SteadyState& s);

struct StabilityReport {
    std::array<std::complex<double>, 6> eigenvalues;  // descending real part
    double max_real_part = 0.0;
    bool stable = false;     // strict: max real part < 0
    double residual = 0.0;   // max ||M v - lambda v|| / ||M||_F over eigenpairs
};

StabilityReport analyze_stability(const Matrix6c& M);
StabilityReport analyze_stability(const PhysicalConfig& cfg, const DerivedParams& d,
                                  const SteadyState& s);

// Lower-sideband amplitude per unit probe drive obtained directly from the
// linear system (-i delta I - M) u = b with b = (1, 0, 0, 0, 0, 0): the
// matrix-level answer the closed-form response must reproduce.
std::complex<double> resolvent_a_minus(const Matrix6c& M, double delta);

}  // namespace rotomag
