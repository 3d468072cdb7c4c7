#include "uncommon/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "uncommon/rng.hpp"

namespace uncommon {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct StartOutcome {
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    int iterations = 0;
    bool converged = false;
    bool abandoned = false;
    long evaluations = 0;
};

// Standard Nelder-Mead (alpha=1, gamma=2, beta=0.5, shrink=0.5) tracking the
// best point ever evaluated, not just the final simplex.
StartOutcome run_simplex(const Objective& f, const std::vector<double>& x0,
                         const OptimizerConfig& cfg) {
    const int n = static_cast<int>(x0.size());
    StartOutcome out;

    auto eval = [&](const std::vector<double>& x) {
        const double v = f(x);
        ++out.evaluations;
        if (std::isfinite(v) && v < out.best) {
            out.best = v;
            out.best_x = x;
        }
        return v;
    };

    std::vector<std::vector<double>> simplex;
    std::vector<double> fv;
    simplex.reserve(static_cast<size_t>(n) + 1);
    simplex.push_back(x0);
    const double step = 0.5;
    for (int i = 0; i < n; ++i) {
        std::vector<double> x = x0;
        x[static_cast<size_t>(i)] += step;
        simplex.push_back(std::move(x));
    }
    for (auto& v : simplex) {
        const double fx = eval(v);
        if (!std::isfinite(fx)) {
            out.abandoned = true;
            return out;
        }
        fv.push_back(fx);
    }

    std::vector<int> ord(simplex.size());
    for (int it = 0; it < cfg.max_iters; ++it) {
        out.iterations = it + 1;
        std::iota(ord.begin(), ord.end(), 0);
        std::stable_sort(ord.begin(), ord.end(),
                         [&](int a, int b) { return fv[static_cast<size_t>(a)] < fv[static_cast<size_t>(b)]; });
        const int best = ord.front();
        const int worst = ord.back();
        const int second_worst = ord[ord.size() - 2];

        double spread = 0.0;
        for (int i = 0; i < n; ++i)
            spread = std::max(spread, std::abs(simplex[static_cast<size_t>(worst)][static_cast<size_t>(i)] -
                                               simplex[static_cast<size_t>(best)][static_cast<size_t>(i)]));
        if (fv[static_cast<size_t>(worst)] - fv[static_cast<size_t>(best)] <= cfg.ftol || spread <= cfg.xtol) {
            out.converged = true;
            break;
        }

        std::vector<double> centroid(static_cast<size_t>(n), 0.0);
        for (int k = 0; k < static_cast<int>(simplex.size()); ++k) {
            if (k == worst) continue;
            for (int i = 0; i < n; ++i)
                centroid[static_cast<size_t>(i)] += simplex[static_cast<size_t>(k)][static_cast<size_t>(i)];
        }
        for (double& c : centroid) c /= n;

        auto blend = [&](double coef) {
            std::vector<double> x(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                x[static_cast<size_t>(i)] = centroid[static_cast<size_t>(i)] +
                                            coef * (centroid[static_cast<size_t>(i)] -
                                                    simplex[static_cast<size_t>(worst)][static_cast<size_t>(i)]);
            return x;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = eval(xr);
        if (!std::isfinite(fr)) {
            out.abandoned = true;
            return out;
        }

        if (fr < fv[static_cast<size_t>(best)]) {
            std::vector<double> xe = blend(2.0);
            const double fe = eval(xe);
            if (!std::isfinite(fe)) {
                out.abandoned = true;
                return out;
            }
            if (fe < fr) {
                simplex[static_cast<size_t>(worst)] = std::move(xe);
                fv[static_cast<size_t>(worst)] = fe;
            } else {
                simplex[static_cast<size_t>(worst)] = std::move(xr);
                fv[static_cast<size_t>(worst)] = fr;
            }
        } else if (fr < fv[static_cast<size_t>(second_worst)]) {
            simplex[static_cast<size_t>(worst)] = std::move(xr);
            fv[static_cast<size_t>(worst)] = fr;
        } else {
            const bool outside = fr < fv[static_cast<size_t>(worst)];
            std::vector<double> xc = blend(outside ? 0.5 : -0.5);
            const double fc = eval(xc);
            if (!std::isfinite(fc)) {
                out.abandoned = true;
                return out;
            }
            if (fc < (outside ? fr : fv[static_cast<size_t>(worst)])) {
                simplex[static_cast<size_t>(worst)] = std::move(xc);
                fv[static_cast<size_t>(worst)] = fc;
            } else {
                // shrink toward the best vertex
                for (int k = 0; k < static_cast<int>(simplex.size()); ++k) {
                    if (k == best) continue;
                    for (int i = 0; i < n; ++i)
                        simplex[static_cast<size_t>(k)][static_cast<size_t>(i)] =
                            0.5 * (simplex[static_cast<size_t>(k)][static_cast<size_t>(i)] +
                                   simplex[static_cast<size_t>(best)][static_cast<size_t>(i)]);
                    const double fx = eval(simplex[static_cast<size_t>(k)]);
                    if (!std::isfinite(fx)) {
                        out.abandoned = true;
                        return out;
                    }
                    fv[static_cast<size_t>(k)] = fx;
                }
            }
        }
    }
    return out;
}

} // namespace

OptimizationResult minimize(const Objective& f, int dim, const OptimizerConfig& cfg) {
    if (cfg.starts < 1) throw std::invalid_argument("optimizer: starts must be >= 1");
    if (dim < 0) throw std::invalid_argument("optimizer: negative dimension");

    OptimizationResult res;
    if (dim == 0) {
        const std::vector<double> empty;
        res.value = f(empty);
        res.params = empty;
        res.converged = true;
        res.evaluations = 1;
        if (!std::isfinite(res.value)) {
            res.abandoned_starts = 1;
            res.converged = false;
        }
        return res;
    }

    // All start points come out of the stream up front, so the first k starts
    // are identical for any configured number of starts >= k.
    RandomStream rs(cfg.seed);
    std::vector<std::vector<double>> starts;
    starts.reserve(static_cast<size_t>(cfg.starts));
    starts.emplace_back(static_cast<size_t>(dim), 0.0);
    for (int s = 1; s < cfg.starts; ++s) {
        std::vector<double> x(static_cast<size_t>(dim));
        for (double& v : x) v = rs.uniform(-kPi, kPi);
        starts.push_back(std::move(x));
    }

    bool have_best = false;
    for (int s = 0; s < cfg.starts; ++s) {
        StartOutcome o = run_simplex(f, starts[static_cast<size_t>(s)], cfg);
        res.evaluations += o.evaluations;
        if (o.abandoned && o.best_x.empty()) {
            ++res.abandoned_starts;
            continue;
        }
        if (o.abandoned) ++res.abandoned_starts;
        if (!have_best || o.best < res.value) {
            have_best = true;
            res.value = o.best;
            res.params = o.best_x;
            res.start_index = s;
            res.iterations = o.iterations;
            res.converged = o.converged;
        }
    }
    if (!have_best) throw std::runtime_error("optimizer: every start produced non-finite values");
    return res;
}

OptimizationResult maximize(const Objective& f, int dim, const OptimizerConfig& cfg) {
    OptimizationResult res = minimize([&](const std::vector<double>& x) { return -f(x); }, dim, cfg);
    res.value = -res.value;
    return res;
}

} // namespace uncommon
