#include "uncommon/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "uncommon/bounds.hpp"
#include "uncommon/entanglement.hpp"
#include "uncommon/entropy.hpp"
#include "uncommon/families.hpp"
#include "uncommon/rng.hpp"
#include "uncommon/version.hpp"

namespace uncommon {

namespace {

// A check accumulates per-sample margins; a sample passes iff its margin is
// >= 0 (tolerances are already folded into the margin).
struct Check {
    std::string name;
    int passed = 0;
    int failed = 0;
    double worst = std::numeric_limits<double>::infinity();

    void record(double margin) {
        worst = std::min(worst, margin);
        if (margin >= 0.0)
            ++passed;
        else
            ++failed;
    }
};

std::string format_line(const Check& c) {
    char buf[160];
    const double worst = (c.passed + c.failed) ? c.worst : 0.0;
    std::snprintf(buf, sizeof(buf), "%-24s %6d %6d   % .3e", c.name.c_str(), c.passed, c.failed,
                  worst);
    return buf;
}

Dims pick_dims(RandomStream& rs) {
    switch (rs.next_u64() % 3) {
        case 0: return {2, 2};
        case 1: return {2, 3};
        default: return {3, 3};
    }
}

} // namespace

int run_verify(const VerifyOptions& opts, std::ostream& out) {
    const int n = std::max(opts.samples, 1);
    RandomStream rs(opts.seed);
    std::vector<Check> checks;

    // -- state invariants (psd / hermitian / trace) on raw sampled matrices
    {
        Check psd{"psd"};
        Check herm{"hermitian"};
        Check trace{"trace"};
        for (int i = 0; i < n; ++i) {
            const Dims dims = pick_dims(rs);
            const int d = dims[0] * dims[1];
            const int rank = 1 + static_cast<int>(rs.next_u64() % static_cast<std::uint64_t>(d));
            Matrix g(d, rank);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < rank; ++c) g(r, c) = rs.complex_gaussian();
            Matrix m = g * g.adjoint();
            m /= m.trace().real();

            herm.record(kHermTol - (m - m.adjoint()).cwiseAbs().maxCoeff());
            trace.record(kTraceTol - std::abs(m.trace().real() - 1.0));
            const HermitianEig eig = eig_hermitian(0.5 * (m + m.adjoint().eval()));
            psd.record(eig.values.minCoeff() + kPsdTol);
        }
        if (opts.inject_broken) {
            Matrix bad = Matrix::Zero(2, 2);
            bad(0, 0) = 1.001;
            bad(1, 1) = -0.001;
            const HermitianEig eig = eig_hermitian(bad);
            psd.record(eig.values.minCoeff() + kPsdTol);
        }
        checks.push_back(psd);
        checks.push_back(herm);
        checks.push_back(trace);
    }

    // -- entropy inequalities on random bipartite states
    {
        Check sub{"subadditivity"};
        Check araki{"araki-lieb"};
        for (int i = 0; i < 2 * n; ++i) {
            const Dims dims = pick_dims(rs);
            const int d = dims[0] * dims[1];
            const DensityMatrix rho = random_density(dims, 1 + static_cast<int>(rs.next_u64() % static_cast<std::uint64_t>(d)), rs);
            const double s_ab = von_neumann(rho);
            const double s_a = subsystem_entropy(rho, {0});
            const double s_b = subsystem_entropy(rho, {1});
            sub.record(s_a + s_b - s_ab + 1e-9);
            araki.record(s_ab - std::abs(s_a - s_b) + 1e-9);
        }
        checks.push_back(sub);
        checks.push_back(araki);
    }

    // -- strong subadditivity on tripartite reductions
    {
        Check ssa{"strong-subadditivity"};
        for (int i = 0; i < std::max(n / 2, 1); ++i) {
            const Dims dims{2, 2, 2};
            const DensityMatrix rho = random_density(dims, 1 + static_cast<int>(rs.next_u64() % 8), rs);
            const double lhs = subsystem_entropy(rho, {0, 1}) + subsystem_entropy(rho, {1, 2});
            const double rhs = von_neumann(rho) + subsystem_entropy(rho, {1});
            ssa.record(lhs - rhs + 1e-9);
        }
        checks.push_back(ssa);
    }

    // -- purification duality S(AB)=S(R), S(A)=S(BR), S(RA)=S(B)
    {
        Check dual{"purification-duality"};
        for (int i = 0; i < std::max(n / 2, 1); ++i) {
            const Dims dims = pick_dims(rs);
            const int d = dims[0] * dims[1];
            const DensityMatrix rho = random_density(dims, 1 + static_cast<int>(rs.next_u64() % static_cast<std::uint64_t>(d)), rs);
            const PureState psi = purify(rho);
            double dev = std::abs(von_neumann(rho) - subsystem_entropy(psi, {2}));
            dev = std::max(dev, std::abs(subsystem_entropy(rho, {0}) - subsystem_entropy(psi, {1, 2})));
            dev = std::max(dev, std::abs(subsystem_entropy(psi, {2, 0}) - subsystem_entropy(rho, {1})));
            dual.record(1e-9 - dev);
        }
        checks.push_back(dual);
    }

    // -- numeric entanglement of formation against the Wootters closed form
    {
        Check woot{"wootters-agreement"};
        OptimizerConfig cfg;
        cfg.starts = 16;
        cfg.max_iters = 300;
        cfg.seed = opts.seed;
        const int count = std::max(n / 12, 4);
        for (int i = 0; i < count; ++i) {
            const DensityMatrix rho = random_density(Dims{2, 2}, 2, rs);
            const double exact = eof_wootters(rho);
            const double numeric = eof_numeric(rho, 4, cfg).value;
            woot.record(std::min(numeric - exact + 1e-9, exact + 1e-3 - numeric));
        }
        checks.push_back(woot);
    }

    // -- every lower bound below every upper bound, and the common-information
    //    window inside [0, S(AB)]
    {
        Check order{"bounds-ordering"};
        Check window{"common-info-window"};
        AggregateConfig cfg;
        cfg.opt.starts = 2;
        cfg.opt.max_iters = 60;
        cfg.opt.seed = opts.seed;
        auto run_one = [&](const DensityMatrix& rho) {
            const UncommonInfoReport rep = aggregate(rho, cfg);
            order.record(rep.upsilon_ub - rep.upsilon_lb + 2e-3);
            window.record(std::min(rep.common_info_lb + 1e-6, rep.s_ab + 1e-6 - rep.common_info_ub));
        };
        for (int i = 0; i < n; ++i)
            run_one(random_density(Dims{2, 2}, 1 + static_cast<int>(rs.next_u64() % 4), rs));
        for (int i = 0; i < std::max(n / 2, 1); ++i)
            run_one(random_density(Dims{2, 3}, 1 + static_cast<int>(rs.next_u64() % 6), rs));
        checks.push_back(order);
        checks.push_back(window);
    }

    // -- local-unitary invariance of the interval on states whose bounds have
    //    structurally robust optima (rank <= 2 or landscape-free)
    {
        Check lu{"lu-invariance"};
        AggregateConfig cfg;
        cfg.opt.starts = 12;
        cfg.opt.max_iters = 250;
        cfg.opt.seed = opts.seed;

        std::vector<DensityMatrix> states;
        states.push_back(DensityMatrix(0.25 * Matrix::Identity(4, 4), Dims{2, 2}));
        states.push_back(to_density(random_pure(Dims{2, 2}, rs)));
        Eigen::MatrixXd corr(2, 2);
        corr << 0.5, 0.0, 0.0, 0.5;
        states.push_back(classical_state(corr));
        states.push_back(random_density(Dims{2, 2}, 2, rs));

        for (const DensityMatrix& rho : states) {
            const Matrix ua = haar_unitary(2, rs);
            const Matrix ub = haar_unitary(2, rs);
            Matrix u = Matrix::Zero(4, 4);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) u.block(i * 2, j * 2, 2, 2) = ua(i, j) * ub;
            const DensityMatrix rotated(u * rho.matrix() * u.adjoint(), rho.dims());

            const UncommonInfoReport r1 = aggregate(rho, cfg);
            const UncommonInfoReport r2 = aggregate(rotated, cfg);
            const double dev =
                std::max(std::abs(r1.upsilon_lb - r2.upsilon_lb), std::abs(r1.upsilon_ub - r2.upsilon_ub));
            lu.record(2e-3 - dev);
        }
        checks.push_back(lu);
    }

    out << "uncommon " << kVersion << " verify (seed " << opts.seed << ", samples " << n << ")\n";
    char header[160];
    std::snprintf(header, sizeof(header), "%-24s %6s %6s   %s\n", "check", "pass", "fail",
                  "worst margin");
    out << header;
    bool all_ok = true;
    std::string failing;
    for (const Check& c : checks) {
        out << format_line(c) << "\n";
        if (c.failed > 0) {
            all_ok = false;
            if (!failing.empty()) failing += ", ";
            failing += c.name;
        }
    }
    if (all_ok)
        out << "result: PASS\n";
    else
        out << "result: FAIL (" << failing << ")\n";
    return all_ok ? 0 : 1;
}

} // namespace uncommon
