#pragma once

#include <vector>

#include "uncommon/qlinalg.hpp"

namespace uncommon {

/// Nonnegative reals summing to 1 (within 1e-9). Entries in [-1e-9, 0) are
/// clipped to zero on construction.
class ProbVector {
public:
    explicit ProbVector(std::vector<double> p);
    const std::vector<double>& values() const { return p_; }
    size_t size() const { return p_.size(); }

private:
    std::vector<double> p_;
};

/// Shannon entropy in bits. 0*log0 := 0 (probabilities <= 1e-12 are skipped).
double shannon(const ProbVector& p);

/// h(p) = -p log2 p - (1-p) log2 (1-p).
double binary_entropy(double p);

/// Entropy of a raw spectrum; assumes entries are clipped/nonnegative.
double shannon_of(const RealVector& p);
double shannon_of(const std::vector<double>& p);

/// Von Neumann entropy in qubits (base-2), from cached eigenvalues.
double von_neumann(const DensityMatrix& rho);

/// Entropy of the reduced state on the selected subsystems.
double subsystem_entropy(const DensityMatrix& rho, const SubsystemSelector& keep);
double subsystem_entropy(const PureState& psi, const SubsystemSelector& keep);

/// S(target | given) = S(target+given) - S(given). May be negative.
double conditional_entropy(const DensityMatrix& rho, const SubsystemSelector& target,
                           const SubsystemSelector& given);

/// I(A:B) = S(A) + S(B) - S(AB) for a bipartite state.
double mutual_information(const DensityMatrix& rho);

/// Coherent information I(from > to) = S(to) - S(AB) for a bipartite state.
double coherent_information(const DensityMatrix& rho, int from, int to);

/// Classical uncommon information U(X:Y) = H(X|Y) + H(Y|X) of a joint
/// distribution given as a matrix p(x, y).
double classical_uncommon(const Eigen::MatrixXd& joint);

/// H(XY), H(X), H(Y) of a joint distribution (helper for U and I).
struct JointEntropies {
    double xy;
    double x;
    double y;
};
JointEntropies joint_entropies(const Eigen::MatrixXd& joint);

/// Entropy of a raw Hermitian PSD matrix whose trace is `trace` (spectrum is
/// normalized by it). Hot path for optimizer objectives; skips the
/// DensityMatrix invariant checks. 2x2 inputs use the closed-form spectrum.
double entropy_of_hermitian(const Matrix& m, double trace = 1.0);

} // namespace uncommon
