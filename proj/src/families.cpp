#include "uncommon/families.hpp"

#include <cmath>
#include <stdexcept>

namespace uncommon {

namespace {
PureState two_qubit(std::initializer_list<Cplx> amps) {
    Vector v(4);
    int i = 0;
    for (Cplx a : amps) v(i++) = a;
    v /= v.norm();
    return PureState(std::move(v), Dims{2, 2});
}

DensityMatrix mix_with_identity(const PureState& psi, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("family: weight must lie in [0, 1]");
    const int d = psi.dim();
    Matrix m = p * (psi.amplitudes() * psi.amplitudes().adjoint()) +
               (1.0 - p) / d * Matrix::Identity(d, d);
    return DensityMatrix(std::move(m), psi.dims());
}
} // namespace

PureState bell_phi_plus() { return two_qubit({1.0, 0.0, 0.0, 1.0}); }
PureState bell_psi_plus() { return two_qubit({0.0, 1.0, 1.0, 0.0}); }
PureState bell_psi_minus() { return two_qubit({0.0, 1.0, -1.0, 0.0}); }

DensityMatrix classical_state(const Eigen::MatrixXd& joint) {
    const int dx = static_cast<int>(joint.rows());
    const int dy = static_cast<int>(joint.cols());
    Matrix m = Matrix::Zero(dx * dy, dx * dy);
    for (int x = 0; x < dx; ++x)
        for (int y = 0; y < dy; ++y) m(x * dy + y, x * dy + y) = joint(x, y);
    return DensityMatrix(std::move(m), Dims{dx, dy});
}

DensityMatrix one_sided_state(const std::vector<double>& probs,
                              const std::vector<Matrix>& conditionals) {
    if (probs.empty() || probs.size() != conditionals.size())
        throw std::invalid_argument("one_sided_state: probs and conditionals must match");
    const int da = static_cast<int>(probs.size());
    const int db = static_cast<int>(conditionals.front().rows());
    Matrix m = Matrix::Zero(da * db, da * db);
    for (int a = 0; a < da; ++a)
        m.block(a * db, a * db, db, db) = probs[static_cast<size_t>(a)] * conditionals[static_cast<size_t>(a)];
    return DensityMatrix(std::move(m), Dims{da, db});
}

DensityMatrix werner(double p) { return mix_with_identity(bell_psi_minus(), p); }

DensityMatrix isotropic(double p) { return mix_with_identity(bell_phi_plus(), p); }

DensityMatrix classical_grid_interp(double t) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("family: parameter must lie in [0, 1]");
    Eigen::MatrixXd joint(2, 2);
    const double corr = 0.5 * t + 0.25 * (1.0 - t);
    const double anti = 0.25 * (1.0 - t);
    joint << corr, anti, anti, corr;
    return classical_state(joint);
}

DensityMatrix symmetric_mixture(double lambda) {
    if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("family: weight must lie in [0, 1]");
    const PureState psi = bell_psi_plus();
    Matrix m = (1.0 - lambda) * (psi.amplitudes() * psi.amplitudes().adjoint());
    m(0, 0) += lambda;
    return DensityMatrix(std::move(m), Dims{2, 2});
}

DensityMatrix one_sided_family(double t) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("family: parameter must lie in [0, 1]");
    const double angle = 0.5 * 3.14159265358979323846 * t;
    Vector v(2);
    v << std::cos(angle), std::sin(angle);
    Matrix sigma0 = Matrix::Zero(2, 2);
    sigma0(0, 0) = 1.0;
    Matrix sigma1 = v * v.adjoint();
    return one_sided_state({0.5, 0.5}, {sigma0, sigma1});
}

} // namespace uncommon
