#include "uncommon/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace uncommon {

namespace {
constexpr double kProbTol = 1e-9;
constexpr double kLog2 = 0.6931471805599453094; // ln 2

double plog2p_sum(const double* p, size_t n) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i)
        if (p[i] > kEigClip) s -= p[i] * std::log(p[i]);
    // probabilities a rounding error above 1 must not leak a negative entropy
    return std::max(s, 0.0) / kLog2;
}
} // namespace

ProbVector::ProbVector(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw std::invalid_argument("distribution: must be non-empty");
    double sum = 0.0;
    for (double& x : p_) {
        if (x < -kProbTol)
            throw std::invalid_argument("distribution: negative probability " + std::to_string(x));
        if (x < 0.0) x = 0.0;
        sum += x;
    }
    if (std::abs(sum - 1.0) > kProbTol)
        throw std::invalid_argument("distribution: probabilities sum to " + std::to_string(sum) +
                                    ", not 1");
}

double shannon(const ProbVector& p) { return plog2p_sum(p.values().data(), p.size()); }

double binary_entropy(double p) {
    const double q[2] = {p, 1.0 - p};
    return plog2p_sum(q, 2);
}

double shannon_of(const RealVector& p) {
    return plog2p_sum(p.data(), static_cast<size_t>(p.size()));
}

double shannon_of(const std::vector<double>& p) { return plog2p_sum(p.data(), p.size()); }

double von_neumann(const DensityMatrix& rho) { return shannon_of(rho.eigenvalues()); }

double subsystem_entropy(const DensityMatrix& rho, const SubsystemSelector& keep) {
    return von_neumann(partial_trace(rho, keep));
}

double subsystem_entropy(const PureState& psi, const SubsystemSelector& keep) {
    return von_neumann(reduced_density(psi, keep));
}

double conditional_entropy(const DensityMatrix& rho, const SubsystemSelector& target,
                           const SubsystemSelector& given) {
    for (int t : target)
        for (int g : given)
            if (t == g) throw std::invalid_argument("conditional_entropy: selectors overlap");
    SubsystemSelector joint = target;
    joint.insert(joint.end(), given.begin(), given.end());
    const double s_joint = subsystem_entropy(rho, joint);
    const double s_given = given.empty() ? 0.0 : subsystem_entropy(rho, given);
    return s_joint - s_given;
}

double mutual_information(const DensityMatrix& rho) {
    if (rho.subsystem_count() != 2)
        throw std::invalid_argument("mutual_information: state must be bipartite");
    return subsystem_entropy(rho, {0}) + subsystem_entropy(rho, {1}) - von_neumann(rho);
}

double coherent_information(const DensityMatrix& rho, int from, int to) {
    if (rho.subsystem_count() != 2)
        throw std::invalid_argument("coherent_information: state must be bipartite");
    if (from == to || from < 0 || from > 1 || to < 0 || to > 1)
        throw std::invalid_argument("coherent_information: invalid subsystem roles");
    return subsystem_entropy(rho, {to}) - von_neumann(rho);
}

JointEntropies joint_entropies(const Eigen::MatrixXd& joint) {
    std::vector<double> flat, px, py;
    px.assign(static_cast<size_t>(joint.rows()), 0.0);
    py.assign(static_cast<size_t>(joint.cols()), 0.0);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < joint.rows(); ++i)
        for (Eigen::Index j = 0; j < joint.cols(); ++j) {
            double v = joint(i, j);
            if (v < -kProbTol)
                throw std::invalid_argument("distribution: negative probability " + std::to_string(v));
            v = std::max(v, 0.0);
            flat.push_back(v);
            px[static_cast<size_t>(i)] += v;
            py[static_cast<size_t>(j)] += v;
            sum += v;
        }
    if (std::abs(sum - 1.0) > kProbTol)
        throw std::invalid_argument("distribution: probabilities sum to " + std::to_string(sum) +
                                    ", not 1");
    return {shannon_of(flat), shannon_of(px), shannon_of(py)};
}

double classical_uncommon(const Eigen::MatrixXd& joint) {
    const JointEntropies h = joint_entropies(joint);
    return 2.0 * h.xy - h.x - h.y;
}

double entropy_of_hermitian(const Matrix& m, double trace) {
    if (trace <= kEigClip) return 0.0;
    const Eigen::Index n = m.rows();
    if (n == 1) return 0.0;
    if (n == 2) {
        const double tr = m(0, 0).real() + m(1, 1).real();
        const double det = m(0, 0).real() * m(1, 1).real() - std::norm(m(0, 1));
        const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
        const double l1 = std::max(0.5 * (tr + disc) / trace, 0.0);
        const double l2 = std::max(0.5 * (tr - disc) / trace, 0.0);
        double s = 0.0;
        if (l1 > kEigClip) s -= l1 * std::log(l1);
        if (l2 > kEigClip) s -= l2 * std::log(l2);
        return std::max(s, 0.0) / kLog2;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint().eval()), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double p = es.eigenvalues()(i) / trace;
        if (p > kEigClip) s -= p * std::log(p);
    }
    return std::max(s, 0.0) / kLog2;
}

} // namespace uncommon
