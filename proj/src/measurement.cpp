#include "uncommon/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace uncommon {

namespace {
constexpr double kDropTol = 1e-12;
}

Matrix unitary_from_params(const BasisParams& theta, int d) {
    if (d < 1) throw std::invalid_argument("unitary_from_params: dimension must be >= 1");
    if (static_cast<int>(theta.size()) != basis_param_count(d))
        throw std::invalid_argument("unitary_from_params: expected " +
                                    std::to_string(basis_param_count(d)) + " parameters, got " +
                                    std::to_string(theta.size()));
    for (double t : theta)
        if (!std::isfinite(t)) throw std::invalid_argument("unitary_from_params: non-finite parameter");

    Matrix u = Matrix::Identity(d, d);
    size_t idx = 0;
    for (int j = 0; j < d - 1; ++j)
        for (int k = j + 1; k < d; ++k) {
            const double half = 0.5 * theta[idx++];
            const double phi = theta[idx++];
            const double c = std::cos(half);
            const double s = std::sin(half);
            if (s == 0.0) continue;
            const Cplx e(std::cos(phi), std::sin(phi));
            // left-multiply by the two-level rotation on rows (j, k)
            for (int col = 0; col < d; ++col) {
                const Cplx uj = u(j, col);
                const Cplx uk = u(k, col);
                u(j, col) = c * uj - e * s * uk;
                u(k, col) = std::conj(e) * s * uj + c * uk;
            }
        }
    return u;
}

Vector fix_phase(Vector v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > kDropTol) {
            v *= std::conj(v(i)) / a;
            break;
        }
    }
    return v;
}

Matrix fix_column_phases(Matrix u) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) u.col(c) = fix_phase(u.col(c));
    return u;
}

PureEnsemble measure_in_basis(const PureState& psi, int target, const Matrix& u) {
    const Dims& dims = psi.dims();
    if (target < 0 || target >= psi.subsystem_count())
        throw std::invalid_argument("measure_in_basis: target out of range");
    const int dt = dims[static_cast<size_t>(target)];
    if (u.rows() != dt || u.cols() != dt)
        throw std::invalid_argument("measure_in_basis: basis size does not match subsystem");

    // Rotate so the measurement basis becomes computational, then slice.
    const PureState rotated = apply_to_subsystem(psi, u.adjoint(), target);

    int stride = 1;
    for (int s = target + 1; s < psi.subsystem_count(); ++s)
        stride *= dims[static_cast<size_t>(s)];
    const int block = dt * stride;
    const int outer = psi.dim() / block;
    const int rest_dim = psi.dim() / dt;

    Dims rest_dims;
    for (int s = 0; s < psi.subsystem_count(); ++s)
        if (s != target) rest_dims.push_back(dims[static_cast<size_t>(s)]);
    if (rest_dims.empty()) rest_dims.push_back(1);

    PureEnsemble ens;
    for (int a = 0; a < dt; ++a) {
        Vector slice(rest_dim);
        int w = 0;
        for (int o = 0; o < outer; ++o)
            for (int in = 0; in < stride; ++in)
                slice(w++) = rotated.amplitudes()(o * block + a * stride + in);
        const double p = slice.squaredNorm();
        if (p <= kDropTol) continue;
        slice /= std::sqrt(p);
        ens.probs.push_back(p);
        ens.states.emplace_back(fix_phase(std::move(slice)), rest_dims);
    }
    return ens;
}

PureEnsemble measure_subsystem(const PureState& psi, int target, const BasisParams& theta) {
    const int dt = psi.dims()[static_cast<size_t>(target)];
    return measure_in_basis(psi, target, unitary_from_params(theta, dt));
}

namespace {

// Conditional blocks of a bipartite density matrix under a rank-1 projective
// measurement of `measured` in the basis u: block_a = (<a| (x) I) rho (|a> (x) I)
// up to the side ordering. Returns unnormalized blocks; trace = outcome prob.
std::vector<Matrix> conditional_blocks(const Matrix& rho, int d0, int d1, int measured,
                                       const Matrix& u) {
    const int dm = (measured == 0) ? d0 : d1;
    const int dr = (measured == 0) ? d1 : d0;
    const int sm = (measured == 0) ? d1 : 1; // stride of measured index
    const int sr = (measured == 0) ? 1 : d1; // stride of remaining index

    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<size_t>(dm));
    for (int a = 0; a < dm; ++a) {
        Matrix b = Matrix::Zero(dr, dr);
        for (int it = 0; it < dm; ++it) {
            const Cplx ca = std::conj(u(it, a));
            if (std::abs(ca) < 1e-15) continue;
            for (int jt = 0; jt < dm; ++jt) {
                const Cplx w = ca * u(jt, a);
                if (std::abs(w) < 1e-15) continue;
                for (int m = 0; m < dr; ++m)
                    for (int n = 0; n < dr; ++n)
                        b(m, n) += w * rho(it * sm + m * sr, jt * sm + n * sr);
            }
        }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

void require_bipartite(const DensityMatrix& rho, const char* what) {
    if (rho.subsystem_count() != 2)
        throw std::invalid_argument(std::string(what) + ": state must be bipartite");
}

} // namespace

DensityEnsemble measure_density(const DensityMatrix& rho, int measured, const Matrix& u) {
    require_bipartite(rho, "measure_density");
    if (measured < 0 || measured > 1)
        throw std::invalid_argument("measure_density: measured side must be 0 or 1");
    const int d0 = rho.dims()[0];
    const int d1 = rho.dims()[1];
    const int other = (measured == 0) ? d1 : d0;

    DensityEnsemble ens;
    for (Matrix& b : conditional_blocks(rho.matrix(), d0, d1, measured, u)) {
        const double p = b.trace().real();
        if (p <= kDropTol) continue;
        b /= p;
        b = 0.5 * (b + b.adjoint().eval());
        ens.probs.push_back(p);
        ens.states.emplace_back(std::move(b), Dims{other});
    }
    return ens;
}

MinAvgEntropyResult min_avg_conditional_entropy(const DensityMatrix& rho, int measured,
                                                const OptimizerConfig& cfg) {
    require_bipartite(rho, "min_avg_conditional_entropy");
    if (measured < 0 || measured > 1)
        throw std::invalid_argument("min_avg_conditional_entropy: measured side must be 0 or 1");
    const int d0 = rho.dims()[0];
    const int d1 = rho.dims()[1];
    const int dm = (measured == 0) ? d0 : d1;
    const Matrix& m = rho.matrix();

    auto objective = [&](const std::vector<double>& theta) {
        const Matrix u = unitary_from_params(theta, dm);
        double avg = 0.0;
        for (const Matrix& b : conditional_blocks(m, d0, d1, measured, u)) {
            const double p = b.trace().real();
            if (p <= kDropTol) continue;
            avg += p * entropy_of_hermitian(b, p);
        }
        return avg;
    };

    MinAvgEntropyResult out;
    out.opt = minimize(objective, basis_param_count(dm), cfg);
    out.value = out.opt.value;
    out.params = out.opt.params;
    return out;
}

double sh_conditional(const DensityMatrix& rho, int given, const OptimizerConfig& cfg) {
    return min_avg_conditional_entropy(rho, given, cfg).value;
}

double henderson_vedral(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg) {
    require_bipartite(rho, "henderson_vedral");
    const int unmeasured = 1 - measured;
    const double s_other = subsystem_entropy(rho, {unmeasured});
    return s_other - min_avg_conditional_entropy(rho, measured, cfg).value;
}

PureEnsemble decompositions(const DensityMatrix& rho, int k, const BasisParams& theta) {
    const int rank = rho.rank();
    if (k < rank)
        throw std::invalid_argument("decompositions: ensemble size " + std::to_string(k) +
                                    " below rank " + std::to_string(rank));
    PureState psi = purify(rho);
    const int ancilla = psi.subsystem_count() - 1;
    psi = pad_subsystem(psi, ancilla, k);
    return measure_in_basis(psi, ancilla, unitary_from_params(theta, k));
}

} // namespace uncommon
