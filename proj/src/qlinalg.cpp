#include "uncommon/qlinalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace uncommon {

namespace {

long long dims_product(const Dims& dims) {
    long long p = 1;
    for (int d : dims) p *= d;
    return p;
}

void check_dims(const Dims& dims, long long expected, const char* what) {
    if (dims.empty()) throw std::invalid_argument(std::string(what) + ": dims must be non-empty");
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument(std::string(what) + ": dims entries must be >= 1");
    }
    if (dims_product(dims) != expected) {
        throw std::invalid_argument(std::string(what) + ": dims product " +
                                    std::to_string(dims_product(dims)) +
                                    " does not match size " + std::to_string(expected));
    }
}

// Strides for row-major multi-indices: flat = sum_i idx[i] * stride[i].
std::vector<int> strides_of(const Dims& dims) {
    std::vector<int> s(dims.size());
    int acc = 1;
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
        s[static_cast<size_t>(i)] = acc;
        acc *= dims[static_cast<size_t>(i)];
    }
    return s;
}

void check_selector(const SubsystemSelector& sel, int count, const char* what) {
    for (size_t i = 0; i < sel.size(); ++i) {
        if (sel[i] < 0 || sel[i] >= count)
            throw std::invalid_argument(std::string(what) + ": subsystem index out of range");
        for (size_t j = i + 1; j < sel.size(); ++j)
            if (sel[i] == sel[j])
                throw std::invalid_argument(std::string(what) + ": subsystem indices must be distinct");
    }
}

// Flat offsets of every multi-index over the selected subsystems.
std::vector<int> selector_offsets(const Dims& dims, const std::vector<int>& strides,
                                  const SubsystemSelector& sel) {
    int total = 1;
    for (int s : sel) total *= dims[static_cast<size_t>(s)];
    std::vector<int> offs(static_cast<size_t>(total), 0);
    int block = total;
    for (int s : sel) {
        const int d = dims[static_cast<size_t>(s)];
        const int stride = strides[static_cast<size_t>(s)];
        block /= d;
        for (int i = 0; i < total; ++i) {
            const int digit = (i / block) % d;
            offs[static_cast<size_t>(i)] += digit * stride;
        }
    }
    return offs;
}

SubsystemSelector complement_of(const SubsystemSelector& sel, int count) {
    std::vector<bool> used(static_cast<size_t>(count), false);
    for (int s : sel) used[static_cast<size_t>(s)] = true;
    SubsystemSelector rest;
    for (int i = 0; i < count; ++i)
        if (!used[static_cast<size_t>(i)]) rest.push_back(i);
    return rest;
}

} // namespace

// -- DensityMatrix / PureState -----------------------------------------------

DensityMatrix::DensityMatrix(Matrix entries, Dims dims)
    : mat_(std::move(entries)), dims_(std::move(dims)) {
    if (mat_.rows() != mat_.cols())
        throw std::invalid_argument("dims: density matrix must be square");
    check_dims(dims_, mat_.rows(), "dims");

    const double herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermTol)
        throw std::invalid_argument("hermitian: max |rho - rho^dagger| = " + std::to_string(herm) +
                                    " exceeds tolerance");

    const double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol || std::abs(mat_.trace().imag()) > kTraceTol)
        throw std::invalid_argument("trace: Tr(rho) = " + std::to_string(tr) +
                                    " differs from 1 beyond tolerance");

    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (mat_ + mat_.adjoint().eval()),
                                             Eigen::EigenvaluesOnly);
    RealVector ev = es.eigenvalues();
    if (ev.minCoeff() < -kPsdTol)
        throw std::invalid_argument("psd: eigenvalue " + std::to_string(ev.minCoeff()) +
                                    " below -1e-10");
    eigvals_.resize(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        double v = ev(ev.size() - 1 - i); // descending
        eigvals_(i) = (v < 0.0 && v >= -kEigClip) ? 0.0 : std::max(v, 0.0);
    }
}

int DensityMatrix::rank() const {
    int r = 0;
    for (Eigen::Index i = 0; i < eigvals_.size(); ++i)
        if (eigvals_(i) > kEigClip) ++r;
    return std::max(r, 1);
}

PureState::PureState(Vector amplitudes, Dims dims)
    : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
    check_dims(dims_, amps_.size(), "dims");
    const double n = amps_.norm();
    if (std::abs(n - 1.0) > kNormTol)
        throw std::invalid_argument("norm: amplitude norm = " + std::to_string(n) +
                                    " differs from 1 beyond tolerance");
}

// -- tensor ------------------------------------------------------------------

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    Matrix m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
    Dims d = a.dims();
    d.insert(d.end(), b.dims().begin(), b.dims().end());
    return DensityMatrix(std::move(m), std::move(d));
}

PureState tensor(const PureState& a, const PureState& b) {
    Vector v(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        v.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
    Dims d = a.dims();
    d.insert(d.end(), b.dims().begin(), b.dims().end());
    return PureState(std::move(v), std::move(d));
}

// -- partial trace / reduced density -----------------------------------------

DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemSelector& keep) {
    const Dims& dims = rho.dims();
    check_selector(keep, rho.subsystem_count(), "partial_trace");
    const auto strides = strides_of(dims);
    const auto traced = complement_of(keep, rho.subsystem_count());
    const auto keep_offs = selector_offsets(dims, strides, keep);
    const auto tr_offs = selector_offsets(dims, strides, traced);

    const int dk = static_cast<int>(keep_offs.size());
    Matrix out = Matrix::Zero(dk, dk);
    const Matrix& m = rho.matrix();
    for (int r = 0; r < dk; ++r)
        for (int c = 0; c < dk; ++c) {
            Cplx acc = 0.0;
            for (int t : tr_offs) acc += m(keep_offs[static_cast<size_t>(r)] + t,
                                           keep_offs[static_cast<size_t>(c)] + t);
            out(r, c) = acc;
        }

    Dims kd;
    kd.reserve(keep.size());
    for (int s : keep) kd.push_back(dims[static_cast<size_t>(s)]);
    if (kd.empty()) kd.push_back(1);
    return DensityMatrix(std::move(out), std::move(kd));
}

Matrix reduced_density_raw(const Vector& amps, const Dims& dims, const SubsystemSelector& keep) {
    const auto strides = strides_of(dims);
    const auto rest = complement_of(keep, static_cast<int>(dims.size()));
    const auto keep_offs = selector_offsets(dims, strides, keep);
    const auto rest_offs = selector_offsets(dims, strides, rest);
    const int dk = static_cast<int>(keep_offs.size());
    const int dr = static_cast<int>(rest_offs.size());

    // Gather into (dk x dr), then rho = M M^dagger.
    Matrix m(dk, dr);
    for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dr; ++j)
            m(i, j) = amps(keep_offs[static_cast<size_t>(i)] + rest_offs[static_cast<size_t>(j)]);
    return m * m.adjoint();
}

DensityMatrix reduced_density(const PureState& psi, const SubsystemSelector& keep) {
    check_selector(keep, psi.subsystem_count(), "reduced_density");
    Matrix out = reduced_density_raw(psi.amplitudes(), psi.dims(), keep);
    out = 0.5 * (out + out.adjoint().eval());
    Dims kd;
    for (int s : keep) kd.push_back(psi.dims()[static_cast<size_t>(s)]);
    if (kd.empty()) kd.push_back(1);
    return DensityMatrix(std::move(out), std::move(kd));
}

// -- eigendecomposition ------------------------------------------------------

HermitianEig eig_hermitian(const Matrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("eig_hermitian: matrix must be square");
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-8)
        throw std::invalid_argument("hermitian: max |m - m^dagger| = " + std::to_string(herm) +
                                    " exceeds tolerance");
    const int n = static_cast<int>(m.rows());

    HermitianEig out;
    out.values.resize(n);
    out.vectors.resize(n, n);

    // Exactly (to machine noise) diagonal input: keep the computational basis.
    // Matters for degenerate spectra, where the canonical purification of a
    // classical state should stay classical.
    double offdiag = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) offdiag = std::max(offdiag, std::abs(m(i, j)));
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    if (offdiag <= 1e-14) {
        std::vector<double> diag(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) diag[static_cast<size_t>(i)] = m(i, i).real();
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return diag[static_cast<size_t>(a)] > diag[static_cast<size_t>(b)]; });
        out.vectors.setZero();
        for (int i = 0; i < n; ++i) {
            out.values(i) = diag[static_cast<size_t>(order[static_cast<size_t>(i)])];
            out.vectors(order[static_cast<size_t>(i)], i) = 1.0;
        }
        return out;
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint().eval()));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
    // Eigen sorts ascending; reverse for descending.
    for (int i = 0; i < n; ++i) {
        out.values(i) = es.eigenvalues()(n - 1 - i);
        out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return out;
}

HermitianEig eig_hermitian(const DensityMatrix& rho) { return eig_hermitian(rho.matrix()); }

// -- purification ------------------------------------------------------------

PureState purify(const DensityMatrix& rho) {
    HermitianEig eig = eig_hermitian(rho.matrix());
    int rank = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (eig.values(i) > kEigClip) ++rank;
    rank = std::max(rank, 1);

    const int d = rho.dim();
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(d) * rank);
    for (int i = 0; i < rank; ++i) {
        const double lam = std::max(eig.values(i), 0.0);
        const double s = std::sqrt(lam);
        for (int j = 0; j < d; ++j) amps(static_cast<Eigen::Index>(j) * rank + i) = s * eig.vectors(j, i);
    }
    amps /= amps.norm();
    Dims dims = rho.dims();
    dims.push_back(rank);
    return PureState(std::move(amps), std::move(dims));
}

// -- fidelity ----------------------------------------------------------------

namespace {
// Eigenvalues at or below the clip threshold are dropped so that exact rank
// deficiencies do not leak sqrt(noise)-sized entries into the root.
Matrix psd_sqrt(const Matrix& m) {
    HermitianEig eig = eig_hermitian(m);
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values(i) > kEigClip)
            out += std::sqrt(eig.values(i)) * eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    }
    return out;
}
} // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dims() != sigma.dims())
        throw std::invalid_argument("fidelity: dimension mismatch");
    // Tr sqrt(sqrt(sigma) rho sqrt(sigma)) equals the trace norm of
    // sqrt(rho) sqrt(sigma), which is symmetric in the arguments by
    // construction (a matrix and its adjoint share singular values).
    const Matrix product = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
    Eigen::JacobiSVD<Matrix> svd(product);
    const double f = svd.singularValues().sum();
    return std::min(f, 1.0 + 1e-9);
}

DensityMatrix to_density(const PureState& psi) {
    Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
    return DensityMatrix(std::move(m), psi.dims());
}

// -- structural helpers ------------------------------------------------------

PureState permute_subsystems(const PureState& psi, const std::vector<int>& order) {
    check_selector(order, psi.subsystem_count(), "permute_subsystems");
    if (static_cast<int>(order.size()) != psi.subsystem_count())
        throw std::invalid_argument("permute_subsystems: order must list every subsystem");
    const Dims& dims = psi.dims();
    Dims nd;
    for (int s : order) nd.push_back(dims[static_cast<size_t>(s)]);
    const auto old_strides = strides_of(dims);
    const auto new_strides = strides_of(nd);

    Vector out(psi.dim());
    const int n = psi.subsystem_count();
    std::vector<int> idx(static_cast<size_t>(n), 0);
    for (int flat = 0; flat < psi.dim(); ++flat) {
        int rem = flat;
        for (int s = 0; s < n; ++s) {
            idx[static_cast<size_t>(s)] = rem / old_strides[static_cast<size_t>(s)];
            rem %= old_strides[static_cast<size_t>(s)];
        }
        int nf = 0;
        for (int s = 0; s < n; ++s)
            nf += idx[static_cast<size_t>(order[static_cast<size_t>(s)])] * new_strides[static_cast<size_t>(s)];
        out(nf) = psi.amplitudes()(flat);
    }
    return PureState(std::move(out), std::move(nd));
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& order) {
    check_selector(order, rho.subsystem_count(), "permute_subsystems");
    if (static_cast<int>(order.size()) != rho.subsystem_count())
        throw std::invalid_argument("permute_subsystems: order must list every subsystem");
    const Dims& dims = rho.dims();
    Dims nd;
    for (int s : order) nd.push_back(dims[static_cast<size_t>(s)]);
    const auto old_strides = strides_of(dims);
    const auto new_strides = strides_of(nd);
    const int n = rho.subsystem_count();
    const int d = rho.dim();

    std::vector<int> map(static_cast<size_t>(d));
    std::vector<int> idx(static_cast<size_t>(n), 0);
    for (int flat = 0; flat < d; ++flat) {
        int rem = flat;
        for (int s = 0; s < n; ++s) {
            idx[static_cast<size_t>(s)] = rem / old_strides[static_cast<size_t>(s)];
            rem %= old_strides[static_cast<size_t>(s)];
        }
        int nf = 0;
        for (int s = 0; s < n; ++s)
            nf += idx[static_cast<size_t>(order[static_cast<size_t>(s)])] * new_strides[static_cast<size_t>(s)];
        map[static_cast<size_t>(flat)] = nf;
    }
    Matrix out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]) = rho.matrix()(i, j);
    return DensityMatrix(std::move(out), std::move(nd));
}

DensityMatrix swap_bipartite(const DensityMatrix& rho) {
    if (rho.subsystem_count() != 2)
        throw std::invalid_argument("swap_bipartite: state must be bipartite");
    return permute_subsystems(rho, {1, 0});
}

PureState apply_to_subsystem(const PureState& psi, const Matrix& u, int subsystem) {
    const Dims& dims = psi.dims();
    check_selector({subsystem}, psi.subsystem_count(), "apply_to_subsystem");
    const int ds = dims[static_cast<size_t>(subsystem)];
    if (u.rows() != ds || u.cols() != ds)
        throw std::invalid_argument("apply_to_subsystem: unitary size does not match subsystem");
    const auto strides = strides_of(dims);
    const int stride = strides[static_cast<size_t>(subsystem)];
    const int block = ds * stride;
    const int outer = psi.dim() / block;

    Vector out = Vector::Zero(psi.dim());
    for (int o = 0; o < outer; ++o)
        for (int in = 0; in < stride; ++in) {
            const int base = o * block + in;
            for (int a = 0; a < ds; ++a) {
                Cplx acc = 0.0;
                for (int b = 0; b < ds; ++b) acc += u(a, b) * psi.amplitudes()(base + b * stride);
                out(base + a * stride) = acc;
            }
        }
    return PureState(std::move(out), dims);
}

PureState pad_subsystem(const PureState& psi, int subsystem, int new_dim) {
    const Dims& dims = psi.dims();
    check_selector({subsystem}, psi.subsystem_count(), "pad_subsystem");
    const int ds = dims[static_cast<size_t>(subsystem)];
    if (new_dim < ds) throw std::invalid_argument("pad_subsystem: new dimension below current");
    if (new_dim == ds) return psi;
    Dims nd = dims;
    nd[static_cast<size_t>(subsystem)] = new_dim;
    const auto strides = strides_of(dims);
    const int stride = strides[static_cast<size_t>(subsystem)];
    const auto new_strides = strides_of(nd);
    const int nstride = new_strides[static_cast<size_t>(subsystem)];
    const int outer = psi.dim() / (ds * stride);

    Vector out = Vector::Zero(static_cast<Eigen::Index>(psi.dim()) / ds * new_dim);
    for (int o = 0; o < outer; ++o)
        for (int a = 0; a < ds; ++a)
            for (int in = 0; in < stride; ++in)
                out(o * new_dim * nstride + a * nstride + in) =
                    psi.amplitudes()(o * ds * stride + a * stride + in);
    return PureState(std::move(out), std::move(nd));
}

PureState split_subsystem(const PureState& psi, int subsystem, const Dims& factors) {
    const Dims& dims = psi.dims();
    check_selector({subsystem}, psi.subsystem_count(), "split_subsystem");
    long long p = 1;
    for (int f : factors) {
        if (f < 1) throw std::invalid_argument("split_subsystem: factors must be >= 1");
        p *= f;
    }
    if (p != dims[static_cast<size_t>(subsystem)])
        throw std::invalid_argument("split_subsystem: factor product does not match subsystem dimension");
    Dims nd;
    for (int i = 0; i < psi.subsystem_count(); ++i) {
        if (i == subsystem)
            nd.insert(nd.end(), factors.begin(), factors.end());
        else
            nd.push_back(dims[static_cast<size_t>(i)]);
    }
    return PureState(psi.amplitudes(), std::move(nd));
}

// -- random sampling ---------------------------------------------------------

DensityMatrix random_density(int d, int rank, RandomStream& rs) {
    if (rank < 1 || rank > d) throw std::invalid_argument("random_density: rank out of range");
    Matrix g(d, rank);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = rs.complex_gaussian();
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    m = 0.5 * (m + m.adjoint().eval());
    return DensityMatrix(std::move(m), Dims{d});
}

DensityMatrix random_density(int d, int rank, std::uint64_t seed) {
    RandomStream rs(seed);
    return random_density(d, rank, rs);
}

DensityMatrix random_density(const Dims& dims, int rank, RandomStream& rs) {
    const int d = static_cast<int>(dims_product(dims));
    DensityMatrix base = random_density(d, rank, rs);
    return DensityMatrix(base.matrix(), dims);
}

DensityMatrix random_density(const Dims& dims, int rank, std::uint64_t seed) {
    RandomStream rs(seed);
    return random_density(dims, rank, rs);
}

PureState random_pure(const Dims& dims, RandomStream& rs) {
    const int d = static_cast<int>(dims_product(dims));
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = rs.complex_gaussian();
    v /= v.norm();
    return PureState(std::move(v), dims);
}

PureState random_pure(const Dims& dims, std::uint64_t seed) {
    RandomStream rs(seed);
    return random_pure(dims, rs);
}

Matrix haar_unitary(int d, RandomStream& rs) {
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rs.complex_gaussian();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const Cplx rii = r(i, i);
        const double a = std::abs(rii);
        q.col(i) *= (a > 0.0) ? rii / a : Cplx(1.0, 0.0);
    }
    return q;
}

Matrix haar_unitary(int d, std::uint64_t seed) {
    RandomStream rs(seed);
    return haar_unitary(d, rs);
}

} // namespace uncommon
