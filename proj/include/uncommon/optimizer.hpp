#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace uncommon {

struct OptimizerConfig {
    int starts = 32;
    int max_iters = 400;     // per start
    double ftol = 1e-6;
    double xtol = 1e-6;
    std::uint64_t seed = 0;
};

struct OptimizationResult {
    double value = 0.0;
    std::vector<double> params;
    int start_index = 0;     // start that produced the best value (lowest index on ties)
    int iterations = 0;      // iterations used by that start
    bool converged = false;  // that start hit ftol/xtol before max_iters
    int abandoned_starts = 0;
    long evaluations = 0;    // total objective evaluations across starts
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Deterministic multistart downhill simplex. Start 0 is the zero vector
/// (identity unitary under the basis parameterization); the remaining starts
/// are drawn uniformly from [-pi, pi]^dim out of the seeded stream, so a
/// longer run extends a shorter one with the same seed. The reported optimum
/// is the best point ever evaluated, ties broken by lowest start index.
/// A start whose objective returns a non-finite value is abandoned and
/// counted in the metadata.
OptimizationResult minimize(const Objective& f, int dim, const OptimizerConfig& cfg);

/// maximize(f) = -minimize(-f), with the value sign flipped back.
OptimizationResult maximize(const Objective& f, int dim, const OptimizerConfig& cfg);

} // namespace uncommon
