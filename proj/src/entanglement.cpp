#include "uncommon/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uncommon/entropy.hpp"

namespace uncommon {

const char* entanglement_method_name(EntanglementMethod m) {
    switch (m) {
        case EntanglementMethod::ExactWootters: return "exact-wootters";
        case EntanglementMethod::NumericDecomposition: return "numeric-decomposition";
        case EntanglementMethod::Hashing: return "hashing";
        case EntanglementMethod::MeasuredHashing: return "measured-hashing";
    }
    return "unknown";
}

double entanglement_entropy(const PureState& psi, const SubsystemSelector& cut) {
    return subsystem_entropy(psi, cut);
}

double concurrence(const DensityMatrix& rho) {
    if (rho.dims() != Dims{2, 2})
        throw std::invalid_argument("concurrence: state must be two qubits");
    Matrix yy = Matrix::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Matrix spin_flipped = yy * rho.matrix().conjugate() * yy;
    Eigen::ComplexEigenSolver<Matrix> ces(rho.matrix() * spin_flipped, false);

    std::vector<double> lam;
    for (Eigen::Index i = 0; i < 4; ++i)
        lam.push_back(std::sqrt(std::max(ces.eigenvalues()(i).real(), 0.0)));
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double eof_wootters(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(1.0 - c * c, 0.0))));
}

int default_decomposition_size(const DensityMatrix& rho) {
    const int r = rho.rank();
    return std::max(r, std::min(r * r, 16));
}

EntanglementValue eof_numeric(const DensityMatrix& rho, int k, const OptimizerConfig& cfg) {
    if (rho.subsystem_count() != 2)
        throw std::invalid_argument("eof_numeric: state must be bipartite");
    if (k < rho.rank())
        throw std::invalid_argument("eof_numeric: ensemble size below rank");

    PureState psi = purify(rho);
    const int ancilla = psi.subsystem_count() - 1;
    psi = pad_subsystem(psi, ancilla, k);

    auto objective = [&](const std::vector<double>& theta) {
        const Matrix u = unitary_from_params(theta, k);
        const PureEnsemble ens = measure_in_basis(psi, ancilla, u);
        double avg = 0.0;
        for (size_t i = 0; i < ens.probs.size(); ++i) {
            const Matrix red = reduced_density_raw(ens.states[i].amplitudes(), ens.states[i].dims(), {0});
            avg += ens.probs[i] * entropy_of_hermitian(red);
        }
        return avg;
    };

    EntanglementValue out;
    out.method = EntanglementMethod::NumericDecomposition;
    out.opt = minimize(objective, basis_param_count(k), cfg);
    out.value = std::max(out.opt.value, 0.0);
    return out;
}

namespace {

void require_tripartite(const PureState& psi, const char* what) {
    if (psi.subsystem_count() != 3)
        throw std::invalid_argument(std::string(what) + ": expected a tripartite pure state |psi>_ABR");
}

// One placement of the instrument's measured factor within the padded
// reference: R is padded to d_first * d_second and viewed as two factors;
// `measured_pos` selects which factor is read out.
struct InstrumentView {
    int d_first;
    int d_second;
    int measured_pos; // 0 or 1
};

std::vector<InstrumentView> instrument_views(int d_ref, int k) {
    std::vector<InstrumentView> views;
    for (int b = 2; b <= k; ++b)
        for (int a = 1; a <= d_ref; ++a) {
            if (a * b < d_ref) continue;
            views.push_back({b, a, 0});
            views.push_back({a, b, 1});
        }
    return views;
}

} // namespace

EntanglementValue hashing_lb(const PureState& psi_abr, Party to) {
    require_tripartite(psi_abr, "hashing_lb");
    const double s_a = subsystem_entropy(psi_abr, {0});
    const double s_b = subsystem_entropy(psi_abr, {1});
    EntanglementValue out;
    out.method = EntanglementMethod::Hashing;
    out.value = std::max(0.0, (to == Party::A) ? s_a - s_b : s_b - s_a);
    return out;
}

EntanglementValue measured_hashing_lb(const PureState& psi_abr, Party to, int k,
                                      const OptimizerConfig& cfg) {
    require_tripartite(psi_abr, "measured_hashing_lb");
    if (k < 2) throw std::invalid_argument("measured_hashing_lb: outcome count must be >= 2");
    const int d_ref = psi_abr.dims()[2];
    const int sign = (to == Party::A) ? 1 : -1;

    EntanglementValue best;
    best.method = EntanglementMethod::MeasuredHashing;
    best.value = -1.0;
    for (const InstrumentView& view : instrument_views(d_ref, k)) {
        const int padded = view.d_first * view.d_second;
        const PureState padded_psi = pad_subsystem(psi_abr, 2, padded);
        const int measured = 2 + view.measured_pos;
        const int d_measured = (view.measured_pos == 0) ? view.d_first : view.d_second;
        const Matrix readout = Matrix::Identity(d_measured, d_measured);

        auto objective = [&](const std::vector<double>& params) {
            const Matrix w = unitary_from_params(params, padded);
            PureState rotated = apply_to_subsystem(padded_psi, w, 2);
            rotated = split_subsystem(rotated, 2, {view.d_first, view.d_second});
            const PureEnsemble ens = measure_in_basis(rotated, measured, readout);
            double total = 0.0;
            for (size_t i = 0; i < ens.probs.size(); ++i) {
                const PureState& cond = ens.states[i];
                const double s_a = entropy_of_hermitian(
                    reduced_density_raw(cond.amplitudes(), cond.dims(), {0}));
                const double s_b = entropy_of_hermitian(
                    reduced_density_raw(cond.amplitudes(), cond.dims(), {1}));
                total += ens.probs[i] * std::max(0.0, sign * (s_a - s_b));
            }
            return total;
        };

        OptimizationResult res = maximize(objective, basis_param_count(padded), cfg);
        if (res.value > best.value) {
            best.value = res.value;
            best.opt = std::move(res);
        }
    }
    best.value = std::max(best.value, 0.0);
    return best;
}

} // namespace uncommon
