#pragma once

#include <optional>
#include <vector>

#include "uncommon/entanglement.hpp"
#include "uncommon/measurement.hpp"

namespace uncommon {

struct StateFlags {
    bool is_pure = false;
    bool is_classical = false;
    bool is_one_sided_classical_a = false;
    bool is_one_sided_classical_b = false;
    bool classicality_undecided_a = false;
    bool classicality_undecided_b = false;
    bool is_symmetric_support = false;
    bool is_antisymmetric_support = false;
    bool classical_gap = false; // computed lower bounds fall short of the classical rate
};

/// One-sided classicality detection. A side is classical iff its correlation
/// operator family commutes; the common eigenbasis (when it can be extracted,
/// which can fail for degenerate spectra) gives the classical basis and the
/// conditional states.
struct ClassicalDetection {
    bool a_classical = false;
    bool b_classical = false;
    bool fully_classical = false;
    bool undecided_a = false; // family commutes but no common basis was verified
    bool undecided_b = false;
    std::optional<Matrix> basis_a;
    std::optional<Matrix> basis_b;
};

ClassicalDetection detect_classical(const DensityMatrix& rho, double tol = 1e-9);

struct SupportFlags {
    bool pure = false;
    bool symmetric = false;
    bool antisymmetric = false;
};

SupportFlags detect_support(const DensityMatrix& rho, double tol = 1e-9);

/// Compact optimizer metadata carried per bound in the report.
struct OptMeta {
    int start_index = 0;
    int iterations = 0;
    bool converged = true;
    int abandoned_starts = 0;
    long evaluations = 0;

    static OptMeta from(const OptimizationResult& r) {
        return {r.start_index, r.iterations, r.converged, r.abandoned_starts, r.evaluations};
    }
};

// -- protocol rates and bounds -----------------------------------------------

/// Merge one way, send back the other: rate S(AB).
double merge_and_send_ub(const DensityMatrix& rho);

struct DoubleCopyResult {
    double value = 0.0;         // min_a sum p_a S(sigma_B^a) + min_b sum p_b S(sigma_A^b)
    double hv_form = 0.0;       // S(A)+S(B) - C_HV(measure A) - C_HV(measure B)
    BasisParams basis_a;
    BasisParams basis_b;
    MinAvgEntropyResult side_a; // measurement on A
    MinAvgEntropyResult side_b; // measurement on B
};

/// Coherent-copy-in-an-optimized-basis exchange rate (both independent
/// single-side minimizations, shared with the Henderson-Vedral form).
DoubleCopyResult double_copy_ub(const DensityMatrix& rho, const OptimizerConfig& cfg);

/// S(A|B) + S(B|A); valid only when the state is classical on `side`.
double one_sided_classical_rate(const DensityMatrix& rho, Party side,
                                const ClassicalDetection& detection);

/// 0 when the state is pure or supported on the symmetric/antisymmetric
/// subspace (exchange needs nothing); empty otherwise.
std::optional<double> do_nothing_check(const DensityMatrix& rho);

struct SplitFactorization {
    int d_v;
    int d_e;
};

/// All (d_v, d_e) with factors <= 2*d_ref and d_ref <= d_v*d_e <= pad_factor*d_ref.
std::vector<SplitFactorization> default_split_factorizations(int d_ref, int pad_factor = 2);

struct SplitBound {
    double value = 0.0;
    int d_v = 0;
    int d_e = 0;
    OptimizationResult opt;
};

/// max over isometric splittings R -> V x E (padding + unitary + trace out E)
/// of |S(BV) - S(AV)|; every splitting is a valid lower bound on the
/// exchange cost, so any factorization list keeps the bound sound.
SplitBound channel_split_lb(const PureState& psi_abr,
                            const std::vector<SplitFactorization>& factorizations,
                            const OptimizerConfig& cfg);

struct DistillBound {
    double value = 0.0;
    EntanglementValue toward_a;
    EntanglementValue toward_b;
};

/// measured_hashing_lb toward A plus toward B (one-way distillation from the
/// reference in both directions).
DistillBound distill_lb(const PureState& psi_abr, int outcomes, const OptimizerConfig& cfg);

// -- aggregation ---------------------------------------------------------------

struct AggregateConfig {
    OptimizerConfig opt;
    bool ef_bound = false;     // compute and fold in the entanglement-of-formation bound
    int hashing_outcomes = 2;  // measured-hashing outcome count
    int split_pad_factor = 2;  // channel-split padding cap (products <= factor * rank)
};

struct UncommonInfoReport {
    Dims dims;

    double s_ab = 0.0;
    double s_a = 0.0;
    double s_b = 0.0;
    double s_a_given_b = 0.0;
    double s_b_given_a = 0.0;
    double mutual = 0.0;

    double ub_merge_send = 0.0;
    double ub_double_copy = 0.0;
    double ub_double_copy_hv_form = 0.0;
    std::optional<double> ub_one_sided;
    std::optional<double> ub_do_nothing;
    std::optional<double> ub_ef;

    double lb_channel_split = 0.0;
    double lb_distill = 0.0;
    double lb_hashing_a = 0.0;
    double lb_hashing_b = 0.0;
    std::optional<double> classical_rate; // reference line for fully classical states

    double upsilon_lb = 0.0;
    double upsilon_ub = 0.0;
    double common_info_lb = 0.0;
    double common_info_ub = 0.0;

    StateFlags flags;
    BasisParams dc_basis_a;
    BasisParams dc_basis_b;

    OptMeta meta_dc_a, meta_dc_b, meta_split, meta_distill_a, meta_distill_b;
    std::optional<OptMeta> meta_ef_a, meta_ef_b;
    int split_d_v = 0;
    int split_d_e = 0;

    std::uint64_t seed = 0;
    int starts = 0;
};

/// Runs every applicable detector, protocol rate and bound on a bipartite
/// state and assembles the interval [upsilon_lb, upsilon_ub] together with
/// the common-information interval [S(AB) - ub, S(AB) - lb] clipped at 0.
UncommonInfoReport aggregate(const DensityMatrix& rho, const AggregateConfig& cfg);

} // namespace uncommon
