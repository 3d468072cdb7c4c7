#pragma once

#include <vector>

#include "uncommon/entropy.hpp"
#include "uncommon/optimizer.hpp"
#include "uncommon/qlinalg.hpp"

namespace uncommon {

/// Real vector of length d(d-1) parameterizing a d x d special unitary as a
/// product of two-level rotations with phases; the zero vector is the
/// identity. Consecutive pairs are (theta, phi) per index pair (j, k), j < k,
/// with the rotation acting as
///   [cos(theta/2), -e^{i phi} sin(theta/2); e^{-i phi} sin(theta/2), cos(theta/2)].
using BasisParams = std::vector<double>;

inline int basis_param_count(int d) { return d * (d - 1); }

Matrix unitary_from_params(const BasisParams& theta, int d);

/// Make the first nonzero component of each column real-positive.
Matrix fix_column_phases(Matrix u);
Vector fix_phase(Vector v);

struct PureEnsemble {
    std::vector<double> probs;
    std::vector<PureState> states;
};

struct DensityEnsemble {
    std::vector<double> probs;
    std::vector<DensityMatrix> states;
};

/// Rank-1 projective measurement of one subsystem of a pure state in the
/// basis given by the columns of `u`; conditionals are the normalized
/// post-measurement pure states on the remaining subsystems (original order,
/// global phase fixed). Outcomes with probability <= 1e-12 are dropped.
PureEnsemble measure_in_basis(const PureState& psi, int target, const Matrix& u);
PureEnsemble measure_subsystem(const PureState& psi, int target, const BasisParams& theta);

/// Same measurement applied to one side of a bipartite density matrix;
/// conditionals live on the unmeasured side.
DensityEnsemble measure_density(const DensityMatrix& rho, int measured, const Matrix& u);

struct MinAvgEntropyResult {
    double value = 0.0;
    BasisParams params;
    OptimizationResult opt;
};

/// min over measurement bases on `measured` of sum_a p_a S(sigma^a) where
/// sigma^a are the conditional states on the other side of a bipartite rho.
MinAvgEntropyResult min_avg_conditional_entropy(const DensityMatrix& rho, int measured,
                                                const OptimizerConfig& cfg);

/// SH(target|given): conditional entropy after dephasing `given` in its
/// optimal projective basis. Equals min_avg_conditional_entropy measured on
/// `given`, and is >= the fully quantum S(target|given).
double sh_conditional(const DensityMatrix& rho, int given, const OptimizerConfig& cfg);

/// Henderson-Vedral classical correlation S(unmeasured) - min_avg(measured),
/// single-copy projective version.
double henderson_vedral(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg);

/// Ensemble {q_i, |phi_i>} with sum q_i |phi_i><phi_i| = rho, realized by
/// purifying rho into an ancilla of dimension k >= rank(rho) and measuring
/// the ancilla in the basis parameterized by theta (length k(k-1)). The zero
/// vector yields the eigendecomposition ensemble.
PureEnsemble decompositions(const DensityMatrix& rho, int k, const BasisParams& theta);

} // namespace uncommon
