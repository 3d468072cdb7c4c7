#include <doctest.h>

#include <cmath>

#include "uncommon/entanglement.hpp"
#include "uncommon/entropy.hpp"
#include "uncommon/families.hpp"

using namespace uncommon;

namespace {

PureState bell_with_reference_times_bell() {
    // Bell(A, R1) (x) Bell(B, R2) as |psi>_ABR with R = R1 R2 of dimension 4.
    Vector v = Vector::Zero(16);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) v((a * 2 + b) * 4 + (a * 2 + b)) = 0.5;
    return PureState(std::move(v), Dims{2, 2, 4});
}

OptimizerConfig quick(std::uint64_t seed, int starts = 8, int iters = 200) {
    OptimizerConfig cfg;
    cfg.seed = seed;
    cfg.starts = starts;
    cfg.max_iters = iters;
    return cfg;
}

} // namespace

TEST_CASE("entanglement entropy of pure states") {
    CHECK(entanglement_entropy(bell_phi_plus(), {0}) == doctest::Approx(1.0).epsilon(1e-9));

    Vector prod = Vector::Zero(4);
    prod(2) = 1.0;
    CHECK(entanglement_entropy(PureState(prod, {2, 2}), {0}) ==
          doctest::Approx(0.0).epsilon(1e-12));

    Vector three(4);
    three << 1.0, 1.0, 1.0, 0.0;
    three /= std::sqrt(3.0);
    CHECK(entanglement_entropy(PureState(three, {2, 2}), {0}) ==
          doctest::Approx(0.55004775958275744).epsilon(1e-8));
}

TEST_CASE("concurrence and the Wootters closed form") {
    const DensityMatrix bell = to_density(bell_phi_plus());
    CHECK(concurrence(bell) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(eof_wootters(bell) == doctest::Approx(1.0).epsilon(1e-9));

    const DensityMatrix quarter(Matrix::Identity(4, 4) / 4.0, Dims{2, 2});
    CHECK(concurrence(quarter) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(eof_wootters(quarter) == doctest::Approx(0.0).epsilon(1e-9));

    // Werner state at p = 0.8: C = (3p-1)/2 = 0.7, E = h((1+sqrt(0.51))/2)
    const DensityMatrix w = werner(0.8);
    CHECK(concurrence(w) == doctest::Approx(0.7).epsilon(1e-9));
    const double oracle = binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - 0.7 * 0.7)));
    CHECK(oracle == doctest::Approx(0.5918574071706771).epsilon(1e-12));
    CHECK(eof_wootters(w) == doctest::Approx(oracle).epsilon(1e-9));

    CHECK_THROWS_AS(concurrence(DensityMatrix(Matrix::Identity(6, 6) / 6.0, Dims{2, 3})),
                    std::invalid_argument);
}

TEST_CASE("numeric entanglement of formation") {
    const DensityMatrix bell = to_density(bell_phi_plus());
    CHECK(eof_numeric(bell, 2, quick(1)).value == doctest::Approx(1.0).epsilon(1e-4));

    // separable classical-correlated state decomposes into products
    Eigen::MatrixXd corr(2, 2);
    corr << 0.5, 0.0, 0.0, 0.5;
    CHECK(eof_numeric(classical_state(corr), 2, quick(2, 16)).value <= 1e-6);

    // restricted minimum stays within [wootters - 1e-9, wootters + 1e-3]
    RandomStream rs(3);
    OptimizerConfig cfg = quick(4, 32, 400);
    for (int trial = 0; trial < 8; ++trial) {
        const DensityMatrix rho = random_density(Dims{2, 2}, 2, rs);
        const double exact = eof_wootters(rho);
        const double numeric = eof_numeric(rho, 4, cfg).value;
        CHECK(numeric >= exact - 1e-9);
        CHECK(numeric <= exact + 1e-3);
    }
}

TEST_CASE("hashing lower bound") {
    const PureState two_bells = bell_with_reference_times_bell();
    CHECK(hashing_lb(two_bells, Party::A).value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(hashing_lb(two_bells, Party::B).value == doctest::Approx(0.0).epsilon(1e-9));

    // Bell(A, R) with a spectator B
    Vector v = Vector::Zero(8);
    v(0) = std::sqrt(0.5); // |a=0, b=0, r=0>
    v(5) = std::sqrt(0.5); // |a=1, b=0, r=1>
    const PureState bell_ar(v, Dims{2, 2, 2});
    CHECK(hashing_lb(bell_ar, Party::A).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(hashing_lb(bell_ar, Party::B).value == doctest::Approx(0.0).epsilon(1e-9));

    RandomStream rs(5);
    const PureState product = tensor(tensor(random_pure({2}, rs), random_pure({2}, rs)),
                                     random_pure({2}, rs));
    CHECK(hashing_lb(product, Party::A).value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(hashing_lb(product, Party::B).value == doctest::Approx(0.0).epsilon(1e-9));

    // the two directions sum to |S(A) - S(B)|
    for (int trial = 0; trial < 10; ++trial) {
        const PureState psi = random_pure({2, 3, 2}, rs);
        const double sum = hashing_lb(psi, Party::A).value + hashing_lb(psi, Party::B).value;
        const double expected =
            std::abs(subsystem_entropy(psi, {0}) - subsystem_entropy(psi, {1}));
        CHECK(sum == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("measured hashing lower bound") {
    // measuring the right reference register recovers the Bell pair toward A
    const PureState two_bells = bell_with_reference_times_bell();
    const EntanglementValue a = measured_hashing_lb(two_bells, Party::A, 2, quick(6));
    CHECK(a.value >= 1.0 - 1e-3);
    const EntanglementValue b = measured_hashing_lb(two_bells, Party::B, 2, quick(7));
    CHECK(b.value >= 1.0 - 1e-3);

    // pure rho_AB: the reference is trivial, nothing to distill
    RandomStream rs(8);
    const PureState pure_ab = random_pure({2, 2}, rs);
    const PureState trivial_ref(pure_ab.amplitudes(), Dims{2, 2, 1});
    CHECK(measured_hashing_lb(trivial_ref, Party::A, 2, quick(9)).value <= 1e-9);

    // perfectly correlated classical bits: the reference correlations are
    // genuinely separable, nothing distills in either direction
    Eigen::MatrixXd corr(2, 2);
    corr << 0.5, 0.0, 0.0, 0.5;
    const PureState cls = purify(classical_state(corr));
    CHECK(measured_hashing_lb(cls, Party::A, 2, quick(10, 4, 120)).value <= 1e-6);
    CHECK(measured_hashing_lb(cls, Party::B, 2, quick(11, 4, 120)).value <= 1e-6);

    // generic classical grid: the reference holds distillable entanglement
    // with each party, but the two directions never beat the exchange rate
    Eigen::MatrixXd joint(2, 2);
    joint << 0.4, 0.1, 0.2, 0.3;
    const PureState clsg = purify(classical_state(joint));
    const double da = measured_hashing_lb(clsg, Party::A, 2, quick(10, 6, 150)).value;
    const double db = measured_hashing_lb(clsg, Party::B, 2, quick(11, 6, 150)).value;
    CHECK(da >= 0.0);
    CHECK(db >= 0.0);
    CHECK(da + db <= classical_uncommon(joint) + 2e-3);

    // never below plain hashing
    for (int trial = 0; trial < 3; ++trial) {
        const PureState psi = random_pure({2, 2, 2}, rs);
        const double plain = hashing_lb(psi, Party::A).value;
        const double measured = measured_hashing_lb(psi, Party::A, 2, quick(12, 3, 80)).value;
        CHECK(measured >= plain - 1e-9);
    }
}
