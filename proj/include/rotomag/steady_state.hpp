#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rotomag/params.hpp"

namespace rotomag {

// Classical working point of the driven three-mode system.  The rotation
// angle and magnon amplitude sit at fixed displaced values; the steady
// angular momentum is zero because the torque balance is purely static.
struct SteadyState {
    std::complex<double> a_s;  // intracavity control-field amplitude
    double n_cav = 0.0;        // |a_s|^2, circulating photon number
    double phi_s = 0.0;        // static rotation-angle displacement
    double L_zs = 0.0;         // steady angular momentum (always 0)
    std::complex<double> m_s;  // static magnon displacement
    double Delta_eff = 0.0;    // power-shifted cavity detuning (rad/s)
    int branch_count = 0;      // number of coexisting real solutions
    int branch_index = 0;      // which one this state is (ascending order)
};

// Coupling-weighted back-action coefficient entering the detuning cubic:
// Delta = Delta_a - C * n_cav.
double backaction_coefficient(const PhysicalConfig& cfg, const DerivedParams& d);

// All real solutions of the effective-detuning cubic, ascending (rad/s).
// One root in the monostable regime, three across the bistable window.
std::vector<double> detuning_cubic_roots(const PhysicalConfig& cfg, const DerivedParams& d);

// Full steady state on a chosen branch.  Default branch is the solution
// continuously connected to the low-power limit (the largest root).
// Throws BranchOutOfRange for an invalid explicit index.
SteadyState solve_steady_state(const PhysicalConfig& cfg, const DerivedParams& d,
                               std::optional<int> branch = std::nullopt);

}  // namespace rotomag
