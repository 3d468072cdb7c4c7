#include <doctest.h>

#include <cmath>

#include "uncommon/entropy.hpp"
#include "uncommon/families.hpp"
#include "uncommon/measurement.hpp"

using namespace uncommon;

namespace {
const double kPi = 3.14159265358979323846;

OptimizerConfig quick(std::uint64_t seed, int starts = 12) {
    OptimizerConfig cfg;
    cfg.seed = seed;
    cfg.starts = starts;
    cfg.max_iters = 250;
    return cfg;
}
} // namespace

TEST_CASE("unitary parameterization") {
    CHECK((unitary_from_params(BasisParams(2, 0.0), 2) - Matrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-15);

    // rotation angle pi/2 maps the computational basis to {|+>, |->} up to phases
    const Matrix u = unitary_from_params({kPi / 2.0, 0.0}, 2);
    const double r = std::sqrt(0.5);
    CHECK(std::abs(std::abs(u(0, 0)) - r) < 1e-12);
    CHECK(std::abs(std::abs(u(1, 0)) - r) < 1e-12);
    CHECK(std::abs(u(0, 0) - u(1, 0)) < 1e-12); // first column is |+> exactly

    RandomStream rs(1);
    for (int d : {2, 3, 5}) {
        BasisParams theta(static_cast<size_t>(basis_param_count(d)));
        for (double& t : theta) t = rs.uniform(-kPi, kPi);
        const Matrix v = unitary_from_params(theta, d);
        CHECK((v.adjoint() * v - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);
    }

    CHECK_THROWS_AS(unitary_from_params({0.0}, 2), std::invalid_argument);
}

TEST_CASE("measuring a subsystem of a pure state") {
    const PureEnsemble bell = measure_subsystem(bell_phi_plus(), 0, BasisParams(2, 0.0));
    REQUIRE(bell.probs.size() == 2);
    CHECK(bell.probs[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(bell.states[0].amplitudes()(0) - 1.0) < 1e-12);
    CHECK(std::abs(bell.states[1].amplitudes()(1) - 1.0) < 1e-12);

    // |+>_A (x) |0>_B measured on A: both outcomes leave |0>_B
    Vector plus(2);
    plus << std::sqrt(0.5), std::sqrt(0.5);
    Vector zero(2);
    zero << 1.0, 0.0;
    const PureState prod = tensor(PureState(plus, {2}), PureState(zero, {2}));
    const PureEnsemble pe = measure_subsystem(prod, 0, BasisParams(2, 0.0));
    REQUIRE(pe.probs.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(pe.probs[i] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(pe.states[i].amplitudes()(0) - 1.0) < 1e-12);
    }

    // zero-probability branches are dropped
    Vector z(2);
    z << 1.0, 0.0;
    const PureState zero_a = tensor(PureState(z, {2}), bell_phi_plus());
    const PureEnsemble ze = measure_subsystem(zero_a, 0, BasisParams(2, 0.0));
    CHECK(ze.probs.size() == 1);
    CHECK(ze.probs[0] == doctest::Approx(1.0).epsilon(1e-12));

    // purified I/4, measured on A in a random basis: two even outcomes whose
    // conditionals carry a full bit of entropy on B
    const DensityMatrix quarter(Matrix::Identity(4, 4) / 4.0, Dims{2, 2});
    const PureState psi = purify(quarter);
    RandomStream rs(5);
    BasisParams theta(2);
    for (double& t : theta) t = rs.uniform(-kPi, kPi);
    const PureEnsemble qe = measure_subsystem(psi, 0, theta);
    REQUIRE(qe.probs.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(qe.probs[i] == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(subsystem_entropy(qe.states[i], {0}) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("measurement probabilities sum to one and reassemble the dephased state") {
    RandomStream rs(7);
    for (int trial = 0; trial < 5; ++trial) {
        const PureState psi = random_pure({3, 2}, rs);
        BasisParams theta(static_cast<size_t>(basis_param_count(3)));
        for (double& t : theta) t = rs.uniform(-kPi, kPi);
        const Matrix u = unitary_from_params(theta, 3);
        const PureEnsemble ens = measure_in_basis(psi, 0, u);

        double total = 0.0;
        for (double p : ens.probs) total += p;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

        // sum_a p_a |a><a| (x) |cond_a><cond_a| equals the dephased state
        Matrix reassembled = Matrix::Zero(6, 6);
        Matrix dephased = Matrix::Zero(6, 6);
        const Matrix full = psi.amplitudes() * psi.amplitudes().adjoint();
        for (size_t i = 0; i < ens.probs.size(); ++i) {
            const Vector& cond = ens.states[i].amplitudes();
            Vector basis_vec = u.col(static_cast<Eigen::Index>(i));
            Vector joint(6);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 2; ++b) joint(a * 2 + b) = basis_vec(a) * cond(b);
            reassembled += ens.probs[i] * (joint * joint.adjoint());
        }
        for (int a = 0; a < 3; ++a) {
            Matrix proj = u.col(a) * u.col(a).adjoint();
            Matrix lift = Matrix::Zero(6, 6);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    lift.block(i * 2, j * 2, 2, 2) = proj(i, j) * Matrix::Identity(2, 2);
            dephased += lift * full * lift;
        }
        CHECK((reassembled - dephased).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("minimum average conditional entropy") {
    // classical grid: computational measurement gives exactly H(Y|X)
    Eigen::MatrixXd joint(2, 2);
    joint << 0.5, 0.25, 0.0, 0.25;
    const DensityMatrix cls = classical_state(joint);
    const JointEntropies h = joint_entropies(joint);
    const MinAvgEntropyResult r = min_avg_conditional_entropy(cls, 0, quick(2));
    CHECK(r.value == doctest::Approx(h.xy - h.x).epsilon(1e-9));
    CHECK(r.opt.start_index == 0);

    const MinAvgEntropyResult bell = min_avg_conditional_entropy(to_density(bell_phi_plus()), 0, quick(3));
    CHECK(bell.value == doctest::Approx(0.0).epsilon(1e-9));

    const DensityMatrix quarter(Matrix::Identity(4, 4) / 4.0, Dims{2, 2});
    CHECK(min_avg_conditional_entropy(quarter, 0, quick(4)).value ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("min average conditional entropy is locally unitary invariant") {
    RandomStream rs(11);
    const DensityMatrix rho = random_density(Dims{2, 2}, 3, rs);
    const Matrix ua = haar_unitary(2, rs);
    const Matrix ub = haar_unitary(2, rs);
    Matrix u = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) u.block(i * 2, j * 2, 2, 2) = ua(i, j) * ub;
    const DensityMatrix rotated(u * rho.matrix() * u.adjoint(), rho.dims());
    const double v1 = min_avg_conditional_entropy(rho, 0, quick(12, 16)).value;
    const double v2 = min_avg_conditional_entropy(rotated, 0, quick(12, 16)).value;
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-3));
}

TEST_CASE("sh conditional entropy") {
    Eigen::MatrixXd joint(2, 2);
    joint << 0.5, 0.25, 0.0, 0.25;
    const DensityMatrix cls = classical_state(joint);
    const JointEntropies h = joint_entropies(joint);
    // SH(A|B): dephase the conditioning side B
    CHECK(sh_conditional(cls, 1, quick(5)) == doctest::Approx(h.xy - h.y).epsilon(1e-9));
    CHECK(sh_conditional(cls, 1, quick(5)) >= conditional_entropy(cls, {0}, {1}) - 1e-9);

    CHECK(sh_conditional(to_density(bell_phi_plus()), 1, quick(6)) ==
          doctest::Approx(0.0).epsilon(1e-9));

    // one-sided classical: measuring the classical side leaves sum p_a S(sigma_a)
    Matrix sigma0 = Matrix::Zero(2, 2);
    sigma0(0, 0) = 1.0;
    Matrix sigma1(2, 2);
    sigma1 << 0.5, 0.5, 0.5, 0.5;
    Matrix noisy = 0.7 * sigma1 + 0.3 * Matrix::Identity(2, 2) / 2.0;
    const DensityMatrix acl = one_sided_state({0.5, 0.5}, {sigma0, noisy});
    const double expected = 0.5 * 0.0 + 0.5 * entropy_of_hermitian(noisy);
    CHECK(sh_conditional(acl, 0, quick(7)) == doctest::Approx(expected).epsilon(1e-6));
    CHECK(sh_conditional(acl, 0, quick(7)) >= conditional_entropy(acl, {1}, {0}) - 1e-9);
}

TEST_CASE("henderson-vedral classical correlations") {
    Eigen::MatrixXd corr(2, 2);
    corr << 0.5, 0.0, 0.0, 0.5;
    CHECK(henderson_vedral(classical_state(corr), 0, quick(8)) ==
          doctest::Approx(1.0).epsilon(1e-9));

    Matrix prod = Matrix::Zero(4, 4);
    prod(0, 0) = 0.5;
    prod(1, 1) = 0.5;
    CHECK(henderson_vedral(DensityMatrix(prod, Dims{2, 2}), 0, quick(9)) ==
          doctest::Approx(0.0).epsilon(1e-9));

    CHECK(henderson_vedral(to_density(bell_phi_plus()), 0, quick(10)) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // C_HV + min-average-entropy = S(unmeasured) exactly
    RandomStream rs(13);
    const DensityMatrix rho = random_density(Dims{2, 2}, 4, rs);
    const double chv = henderson_vedral(rho, 0, quick(11));
    const double mac = min_avg_conditional_entropy(rho, 0, quick(11)).value;
    CHECK(chv + mac == doctest::Approx(subsystem_entropy(rho, {1})).epsilon(1e-12));
}

TEST_CASE("pure-state decompositions of a density matrix") {
    RandomStream rs(17);
    const DensityMatrix rho = random_density(Dims{2, 2}, 3, rs);

    // zero parameters reproduce the eigendecomposition
    const PureEnsemble eigens = decompositions(rho, rho.rank(), BasisParams(
        static_cast<size_t>(basis_param_count(rho.rank())), 0.0));
    const HermitianEig eig = eig_hermitian(rho);
    REQUIRE(static_cast<int>(eigens.probs.size()) == rho.rank());
    for (size_t i = 0; i < eigens.probs.size(); ++i)
        CHECK(eigens.probs[i] == doctest::Approx(eig.values(static_cast<Eigen::Index>(i))).epsilon(1e-9));

    // Hadamard-like rotation on I/2 gives the {|+>, |->} ensemble
    const DensityMatrix half(Matrix::Identity(2, 2) / 2.0, Dims{2});
    const PureEnsemble pm = decompositions(half, 2, {kPi / 2.0, 0.0});
    REQUIRE(pm.probs.size() == 2);
    CHECK(pm.probs[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(pm.states[0].amplitudes()(0) - std::sqrt(0.5)) < 1e-9);
    CHECK(std::abs(pm.states[0].amplitudes()(1) - std::sqrt(0.5)) < 1e-9);
    CHECK(std::abs(pm.states[1].amplitudes()(0) - std::sqrt(0.5)) < 1e-9);
    CHECK(std::abs(pm.states[1].amplitudes()(1) + std::sqrt(0.5)) < 1e-9);

    // any parameters rebuild rho
    for (int trial = 0; trial < 5; ++trial) {
        BasisParams theta(static_cast<size_t>(basis_param_count(4)));
        for (double& t : theta) t = rs.uniform(-kPi, kPi);
        const PureEnsemble ens = decompositions(rho, 4, theta);
        Matrix mix = Matrix::Zero(4, 4);
        for (size_t i = 0; i < ens.probs.size(); ++i)
            mix += ens.probs[i] * (ens.states[i].amplitudes() * ens.states[i].amplitudes().adjoint());
        CHECK((mix - rho.matrix()).cwiseAbs().maxCoeff() < 1e-9);
    }

    CHECK_THROWS_AS(decompositions(rho, rho.rank() - 1, BasisParams()), std::invalid_argument);
}

TEST_CASE("joint basis optimization cannot beat the decoupled sum") {
    RandomStream rs(19);
    const DensityMatrix rho = random_density(Dims{2, 2}, 2, rs);
    const OptimizerConfig cfg = quick(20, 16);

    const double sum = min_avg_conditional_entropy(rho, 0, cfg).value +
                       min_avg_conditional_entropy(rho, 1, cfg).value;

    auto joint_objective = [&](const std::vector<double>& x) {
        const BasisParams ta(x.begin(), x.begin() + 2);
        const BasisParams tb(x.begin() + 2, x.end());
        const Matrix ua = unitary_from_params(ta, 2);
        const Matrix ub = unitary_from_params(tb, 2);
        double total = 0.0;
        const DensityEnsemble ea = measure_density(rho, 0, ua);
        for (size_t i = 0; i < ea.probs.size(); ++i)
            total += ea.probs[i] * von_neumann(ea.states[i]);
        const DensityEnsemble eb = measure_density(rho, 1, ub);
        for (size_t i = 0; i < eb.probs.size(); ++i)
            total += eb.probs[i] * von_neumann(eb.states[i]);
        return total;
    };
    const OptimizationResult joint = minimize(joint_objective, 4, cfg);
    CHECK(joint.value >= sum - 1e-6);
}
