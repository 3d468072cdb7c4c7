#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "uncommon/rng.hpp"

namespace uncommon {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<int>;

/// Positions of subsystems (into a state's dims vector) to keep or act on.
/// Order matters: kept subsystems appear in the order listed, so a selector
/// containing every subsystem doubles as a permutation.
using SubsystemSelector = std::vector<int>;

// Validation tolerances for state invariants.
inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kEigClip = 1e-12;

/// Hermitian, PSD, unit-trace matrix over a tensor product of subsystems.
/// Invariants are enforced at construction; instances are immutable and the
/// eigenvalue spectrum (descending, clipped at zero) is cached.
class DensityMatrix {
public:
    DensityMatrix(Matrix entries, Dims dims);

    const Matrix& matrix() const { return mat_; }
    const Dims& dims() const { return dims_; }
    int dim() const { return static_cast<int>(mat_.rows()); }
    int subsystem_count() const { return static_cast<int>(dims_.size()); }

    /// Eigenvalues, descending, with [-1e-12, 0) clipped to 0.
    const RealVector& eigenvalues() const { return eigvals_; }
    /// Number of eigenvalues above 1e-12.
    int rank() const;

private:
    Matrix mat_;
    Dims dims_;
    RealVector eigvals_;
};

/// Unit-norm complex amplitude vector over a tensor product of subsystems.
class PureState {
public:
    PureState(Vector amplitudes, Dims dims);

    const Vector& amplitudes() const { return amps_; }
    const Dims& dims() const { return dims_; }
    int dim() const { return static_cast<int>(amps_.size()); }
    int subsystem_count() const { return static_cast<int>(dims_.size()); }

private:
    Vector amps_;
    Dims dims_;
};

struct HermitianEig {
    RealVector values;  // descending
    Matrix vectors;     // columns match values
};

// -- core operations ---------------------------------------------------------

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

/// Reduced state on the kept subsystems, in selector order.
DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemSelector& keep);

/// Reduced density of a pure state on the kept subsystems (selector order),
/// without forming the full projector.
DensityMatrix reduced_density(const PureState& psi, const SubsystemSelector& keep);
Matrix reduced_density_raw(const Vector& amps, const Dims& dims, const SubsystemSelector& keep);

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// Exactly diagonal inputs keep the computational basis (stable order).
/// Throws if the input is non-Hermitian beyond 1e-8 in max-entry norm.
HermitianEig eig_hermitian(const Matrix& m);
HermitianEig eig_hermitian(const DensityMatrix& rho);

/// Canonical purification sum_i sqrt(lambda_i) |v_i>|i>, with the reference
/// dimension equal to rank(rho); output dims are rho.dims() ++ [rank].
PureState purify(const DensityMatrix& rho);

/// Uhlmann fidelity Tr sqrt(sqrt(sigma) rho sqrt(sigma)); |<phi|chi>| on pure inputs.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

DensityMatrix to_density(const PureState& psi);

// -- structural helpers ------------------------------------------------------

PureState permute_subsystems(const PureState& psi, const std::vector<int>& order);
DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& order);

/// Swap the two factors of a bipartite state.
DensityMatrix swap_bipartite(const DensityMatrix& rho);

/// Apply a unitary acting on one subsystem factor.
PureState apply_to_subsystem(const PureState& psi, const Matrix& u, int subsystem);

/// Zero-pad one subsystem factor to a larger dimension.
PureState pad_subsystem(const PureState& psi, int subsystem, int new_dim);

/// Reinterpret one subsystem factor as a tensor product of the given factors
/// (row-major index split; amplitudes are untouched).
PureState split_subsystem(const PureState& psi, int subsystem, const Dims& factors);

// -- random sampling ---------------------------------------------------------

DensityMatrix random_density(int d, int rank, RandomStream& rs);
DensityMatrix random_density(int d, int rank, std::uint64_t seed);
DensityMatrix random_density(const Dims& dims, int rank, RandomStream& rs);
DensityMatrix random_density(const Dims& dims, int rank, std::uint64_t seed);

PureState random_pure(const Dims& dims, RandomStream& rs);
PureState random_pure(const Dims& dims, std::uint64_t seed);

Matrix haar_unitary(int d, RandomStream& rs);
Matrix haar_unitary(int d, std::uint64_t seed);

} // namespace uncommon
