#pragma once

#include "uncommon/measurement.hpp"
#include "uncommon/optimizer.hpp"
#include "uncommon/qlinalg.hpp"

namespace uncommon {

enum class Party { A, B };

enum class EntanglementMethod { ExactWootters, NumericDecomposition, Hashing, MeasuredHashing };

struct EntanglementValue {
    double value = 0.0;
    EntanglementMethod method = EntanglementMethod::Hashing;
    OptimizationResult opt; // populated for optimizer-backed methods
};

const char* entanglement_method_name(EntanglementMethod m);

/// Entropy of the reduced state across the cut of a pure state.
double entanglement_entropy(const PureState& psi, const SubsystemSelector& cut);

/// Wootters concurrence of a two-qubit density matrix.
double concurrence(const DensityMatrix& rho);

/// Exact two-qubit entanglement of formation h((1 + sqrt(1 - C^2)) / 2).
double eof_wootters(const DensityMatrix& rho);

/// Entanglement of formation upper bound from optimized pure-state
/// decompositions of size k (k >= rank). Default ensemble size for callers:
/// min(rank^2, 16).
EntanglementValue eof_numeric(const DensityMatrix& rho, int k, const OptimizerConfig& cfg);
int default_decomposition_size(const DensityMatrix& rho);

/// Hashing (coherent-information) lower bound on one-way distillable
/// entanglement from the reference of a tripartite pure state |psi>_ABR to
/// the given party: max(0, S(A) - S(B)) toward A, and symmetrically toward B.
EntanglementValue hashing_lb(const PureState& psi_abr, Party to);

/// Strengthened hashing bound: the reference applies an instrument (isometry
/// into kept-factor x measured-factor, optimized over factorization placements
/// and unitaries), then hashing is applied per outcome:
///   max over instruments of sum_m p_m max(0, S(A)_m - S(B)_m).
/// k is the measured-factor outcome count (>= 2). Never below hashing_lb:
/// the trivial instrument is always in the search space.
EntanglementValue measured_hashing_lb(const PureState& psi_abr, Party to, int k,
                                      const OptimizerConfig& cfg);

} // namespace uncommon
