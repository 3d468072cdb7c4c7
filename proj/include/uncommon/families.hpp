#pragma once

#include <vector>

#include "uncommon/qlinalg.hpp"

namespace uncommon {

// Named two-qubit states.
PureState bell_phi_plus();  // (|00> + |11>)/sqrt(2)
PureState bell_psi_plus();  // (|01> + |10>)/sqrt(2)
PureState bell_psi_minus(); // (|01> - |10>)/sqrt(2)

/// Classical state sum_ab p_ab |ab><ab| from a joint distribution.
DensityMatrix classical_state(const Eigen::MatrixXd& joint);

/// One-sided classical state sum_a p_a |a><a| (x) sigma_a.
DensityMatrix one_sided_state(const std::vector<double>& probs,
                              const std::vector<Matrix>& conditionals);

// Parameterized families used by the sweep runner.
DensityMatrix werner(double p);                  // p |psi-><psi-| + (1-p) I/4
DensityMatrix isotropic(double p);               // p |phi+><phi+| + (1-p) I/4
DensityMatrix classical_grid_interp(double t);   // uniform bits (t=0) -> correlated bits (t=1)
DensityMatrix symmetric_mixture(double lambda);  // lambda |00><00| + (1-lambda) |psi+><psi+|
DensityMatrix one_sided_family(double t);        // conditional angle sweep on Bob's side

} // namespace uncommon
