#include "uncommon/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uncommon/entropy.hpp"
#include "uncommon/rng.hpp"

namespace uncommon {

namespace {

void require_bipartite(const DensityMatrix& rho, const char* what) {
    if (rho.subsystem_count() != 2)
        throw std::invalid_argument(std::string(what) + ": state must be bipartite");
}

// Hermitian operators on `side` spanning the cross-correlation content of
// rho; rho is classical on that side iff this family commutes pairwise
// (equivalently: iff all blocks off the classical basis vanish).
std::vector<Matrix> correlation_family(const DensityMatrix& rho, int side) {
    const int d0 = rho.dims()[0];
    const int d1 = rho.dims()[1];
    const int dm = (side == 0) ? d0 : d1; // family acts here
    const int dr = (side == 0) ? d1 : d0;
    const Matrix& m = rho.matrix();
    const Cplx im(0.0, 1.0);

    auto entry = [&](int i, int j, int p, int q) {
        return (side == 0) ? m(i * d1 + p, j * d1 + q) : m(p * d1 + i, q * d1 + j);
    };

    std::vector<Matrix> family;
    for (int p = 0; p < dr; ++p)
        for (int q = p; q < dr; ++q) {
            Matrix t(dm, dm);
            for (int i = 0; i < dm; ++i)
                for (int j = 0; j < dm; ++j) t(i, j) = entry(i, j, p, q);
            if (p == q) {
                family.push_back(std::move(t));
            } else {
                family.push_back(t + t.adjoint());
                family.push_back(im * (t - t.adjoint().eval()));
            }
        }
    return family;
}

bool family_commutes(const std::vector<Matrix>& family, double tol) {
    for (size_t i = 0; i < family.size(); ++i)
        for (size_t j = i + 1; j < family.size(); ++j) {
            const Matrix comm = family[i] * family[j] - family[j] * family[i];
            if (comm.cwiseAbs().maxCoeff() > tol) return false;
        }
    return true;
}

// Common eigenbasis of a commuting Hermitian family via a generic random
// combination; verified against every member before being accepted.
std::optional<Matrix> common_eigenbasis(const std::vector<Matrix>& family, double tol) {
    const Eigen::Index d = family.front().rows();
    for (int attempt = 0; attempt < 3; ++attempt) {
        RandomStream rs(0x5eedb0b5ULL + static_cast<std::uint64_t>(attempt));
        Matrix h = Matrix::Zero(d, d);
        for (const Matrix& f : family) h += rs.uniform(-1.0, 1.0) * f;
        const HermitianEig eig = eig_hermitian(0.5 * (h + h.adjoint().eval()));
        bool ok = true;
        for (const Matrix& f : family) {
            const Matrix rotated = eig.vectors.adjoint() * f * eig.vectors;
            for (Eigen::Index i = 0; i < d && ok; ++i)
                for (Eigen::Index j = 0; j < d; ++j)
                    if (i != j && std::abs(rotated(i, j)) > tol) {
                        ok = false;
                        break;
                    }
            if (!ok) break;
        }
        if (ok) return eig.vectors;
    }
    return std::nullopt;
}

// Conditional blocks of rho in the candidate classical basis on `side`.
std::vector<std::pair<double, Matrix>> classical_conditionals(const DensityMatrix& rho, int side,
                                                              const Matrix& basis) {
    const int d0 = rho.dims()[0];
    const int d1 = rho.dims()[1];
    const int dm = (side == 0) ? d0 : d1;
    const int dr = (side == 0) ? d1 : d0;
    const Matrix& m = rho.matrix();

    std::vector<std::pair<double, Matrix>> out;
    for (int a = 0; a < dm; ++a) {
        Matrix b = Matrix::Zero(dr, dr);
        for (int i = 0; i < dm; ++i)
            for (int j = 0; j < dm; ++j) {
                const Cplx w = std::conj(basis(i, a)) * basis(j, a);
                if (std::abs(w) < 1e-15) continue;
                for (int p = 0; p < dr; ++p)
                    for (int q = 0; q < dr; ++q)
                        b(p, q) += w * ((side == 0) ? m(i * d1 + p, j * d1 + q)
                                                    : m(p * d1 + i, q * d1 + j));
            }
        const double prob = b.trace().real();
        if (prob > 1e-12) out.emplace_back(prob, b / prob);
    }
    return out;
}

} // namespace

ClassicalDetection detect_classical(const DensityMatrix& rho, double tol) {
    require_bipartite(rho, "detect_classical");
    ClassicalDetection det;

    for (int side = 0; side < 2; ++side) {
        const auto family = correlation_family(rho, side);
        if (!family_commutes(family, tol)) continue;
        const auto basis = common_eigenbasis(family, tol);
        bool& classical = (side == 0) ? det.a_classical : det.b_classical;
        bool& undecided = (side == 0) ? det.undecided_a : det.undecided_b;
        if (basis) {
            classical = true;
            if (side == 0)
                det.basis_a = fix_column_phases(*basis);
            else
                det.basis_b = fix_column_phases(*basis);
        } else {
            undecided = true;
        }
    }

    if (det.a_classical && det.b_classical && det.basis_a) {
        const auto conds = classical_conditionals(rho, 0, *det.basis_a);
        bool commuting = true;
        for (size_t i = 0; i < conds.size() && commuting; ++i)
            for (size_t j = i + 1; j < conds.size(); ++j) {
                const Matrix c = conds[i].second * conds[j].second - conds[j].second * conds[i].second;
                if (c.cwiseAbs().maxCoeff() > tol) {
                    commuting = false;
                    break;
                }
            }
        det.fully_classical = commuting;
    }
    return det;
}

SupportFlags detect_support(const DensityMatrix& rho, double tol) {
    require_bipartite(rho, "detect_support");
    SupportFlags flags;
    const RealVector& ev = rho.eigenvalues();
    flags.pure = ev.size() < 2 || ev(1) <= 1e-9;

    const int da = rho.dims()[0];
    const int db = rho.dims()[1];
    if (da != db) return flags;

    const int d = rho.dim();
    Matrix swap = Matrix::Zero(d, d);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) swap(j * da + i, i * db + j) = 1.0;

    const Matrix eye = Matrix::Identity(d, d);
    for (int sign = 0; sign < 2; ++sign) {
        const Matrix p = 0.5 * (eye + (sign == 0 ? 1.0 : -1.0) * swap);
        const Matrix diff = p * rho.matrix() * p - rho.matrix();
        if (diff.cwiseAbs().maxCoeff() <= tol) {
            if (sign == 0)
                flags.symmetric = true;
            else
                flags.antisymmetric = true;
        }
    }
    return flags;
}

double merge_and_send_ub(const DensityMatrix& rho) {
    require_bipartite(rho, "merge_and_send_ub");
    return von_neumann(rho);
}

DoubleCopyResult double_copy_ub(const DensityMatrix& rho, const OptimizerConfig& cfg) {
    require_bipartite(rho, "double_copy_ub");
    DoubleCopyResult out;
    out.side_a = min_avg_conditional_entropy(rho, 0, cfg);
    out.side_b = min_avg_conditional_entropy(rho, 1, cfg);
    out.value = out.side_a.value + out.side_b.value;
    out.basis_a = out.side_a.params;
    out.basis_b = out.side_b.params;

    const double s_a = subsystem_entropy(rho, {0});
    const double s_b = subsystem_entropy(rho, {1});
    const double chv_measure_a = s_b - out.side_a.value;
    const double chv_measure_b = s_a - out.side_b.value;
    out.hv_form = s_a + s_b - chv_measure_a - chv_measure_b;
    return out;
}

double one_sided_classical_rate(const DensityMatrix& rho, Party side,
                                const ClassicalDetection& detection) {
    require_bipartite(rho, "one_sided_classical_rate");
    const bool ok = (side == Party::A) ? detection.a_classical : detection.b_classical;
    if (!ok)
        throw std::invalid_argument(
            "one_sided_classical_rate: state is not classical on the requested side");
    return conditional_entropy(rho, {0}, {1}) + conditional_entropy(rho, {1}, {0});
}

std::optional<double> do_nothing_check(const DensityMatrix& rho) {
    const SupportFlags flags = detect_support(rho);
    if (flags.pure || flags.symmetric || flags.antisymmetric) return 0.0;
    return std::nullopt;
}

std::vector<SplitFactorization> default_split_factorizations(int d_ref, int pad_factor) {
    std::vector<SplitFactorization> out;
    const int fmax = 2 * d_ref;
    const long long pmax = static_cast<long long>(std::max(pad_factor, 1)) * d_ref;
    for (int dv = 1; dv <= fmax; ++dv)
        for (int de = 1; de <= fmax; ++de) {
            const long long p = static_cast<long long>(dv) * de;
            if (p >= d_ref && p <= pmax) out.push_back({dv, de});
        }
    return out;
}

SplitBound channel_split_lb(const PureState& psi_abr,
                            const std::vector<SplitFactorization>& factorizations,
                            const OptimizerConfig& cfg) {
    if (psi_abr.subsystem_count() != 3)
        throw std::invalid_argument("channel_split_lb: expected a tripartite pure state |psi>_ABR");
    if (factorizations.empty())
        throw std::invalid_argument("channel_split_lb: empty factorization list");
    const int d_ref = psi_abr.dims()[2];

    SplitBound best;
    best.value = -1.0;
    for (const SplitFactorization& fac : factorizations) {
        const int padded = fac.d_v * fac.d_e;
        if (padded < d_ref)
            throw std::invalid_argument("channel_split_lb: factorization smaller than the reference");
        const PureState padded_psi = pad_subsystem(psi_abr, 2, padded);

        auto objective = [&](const std::vector<double>& params) {
            const Matrix w = unitary_from_params(params, padded);
            PureState rotated = apply_to_subsystem(padded_psi, w, 2);
            rotated = split_subsystem(rotated, 2, {fac.d_v, fac.d_e});
            const double s_bv = entropy_of_hermitian(
                reduced_density_raw(rotated.amplitudes(), rotated.dims(), {1, 2}));
            const double s_av = entropy_of_hermitian(
                reduced_density_raw(rotated.amplitudes(), rotated.dims(), {0, 2}));
            return std::abs(s_bv - s_av);
        };

        OptimizationResult res = maximize(objective, basis_param_count(padded), cfg);
        if (res.value > best.value) {
            best.value = res.value;
            best.d_v = fac.d_v;
            best.d_e = fac.d_e;
            best.opt = std::move(res);
        }
    }
    best.value = std::max(best.value, 0.0);
    return best;
}

DistillBound distill_lb(const PureState& psi_abr, int outcomes, const OptimizerConfig& cfg) {
    DistillBound out;
    out.toward_a = measured_hashing_lb(psi_abr, Party::A, outcomes, cfg);
    out.toward_b = measured_hashing_lb(psi_abr, Party::B, outcomes, cfg);
    out.value = out.toward_a.value + out.toward_b.value;
    return out;
}

UncommonInfoReport aggregate(const DensityMatrix& rho, const AggregateConfig& cfg) {
    require_bipartite(rho, "aggregate");
    UncommonInfoReport rep;
    rep.dims = rho.dims();
    rep.seed = cfg.opt.seed;
    rep.starts = cfg.opt.starts;

    rep.s_ab = von_neumann(rho);
    rep.s_a = subsystem_entropy(rho, {0});
    rep.s_b = subsystem_entropy(rho, {1});
    rep.s_a_given_b = rep.s_ab - rep.s_b;
    rep.s_b_given_a = rep.s_ab - rep.s_a;
    rep.mutual = rep.s_a + rep.s_b - rep.s_ab;

    const SupportFlags support = detect_support(rho);
    const ClassicalDetection classical = detect_classical(rho);
    rep.flags.is_pure = support.pure;
    rep.flags.is_symmetric_support = support.symmetric;
    rep.flags.is_antisymmetric_support = support.antisymmetric;
    rep.flags.is_classical = classical.fully_classical;
    rep.flags.is_one_sided_classical_a = classical.a_classical;
    rep.flags.is_one_sided_classical_b = classical.b_classical;
    rep.flags.classicality_undecided_a = classical.undecided_a;
    rep.flags.classicality_undecided_b = classical.undecided_b;

    const PureState psi = purify(rho);

    rep.ub_merge_send = merge_and_send_ub(rho);

    const DoubleCopyResult dc = double_copy_ub(rho, cfg.opt);
    rep.ub_double_copy = dc.value;
    rep.ub_double_copy_hv_form = dc.hv_form;
    rep.dc_basis_a = dc.basis_a;
    rep.dc_basis_b = dc.basis_b;
    rep.meta_dc_a = OptMeta::from(dc.side_a.opt);
    rep.meta_dc_b = OptMeta::from(dc.side_b.opt);

    if (classical.a_classical || classical.b_classical) {
        rep.ub_one_sided =
            one_sided_classical_rate(rho, classical.a_classical ? Party::A : Party::B, classical);
    }
    rep.ub_do_nothing = do_nothing_check(rho);

    const SplitBound split =
        channel_split_lb(psi, default_split_factorizations(psi.dims()[2], cfg.split_pad_factor),
                         cfg.opt);
    rep.lb_channel_split = split.value;
    rep.meta_split = OptMeta::from(split.opt);
    rep.split_d_v = split.d_v;
    rep.split_d_e = split.d_e;

    const DistillBound distill = distill_lb(psi, cfg.hashing_outcomes, cfg.opt);
    rep.lb_distill = distill.value;
    rep.meta_distill_a = OptMeta::from(distill.toward_a.opt);
    rep.meta_distill_b = OptMeta::from(distill.toward_b.opt);
    rep.lb_hashing_a = hashing_lb(psi, Party::A).value;
    rep.lb_hashing_b = hashing_lb(psi, Party::B).value;

    if (cfg.ef_bound) {
        const DensityMatrix rho_ar = reduced_density(psi, {0, 2});
        const DensityMatrix rho_br = reduced_density(psi, {1, 2});
        const EntanglementValue ef_a =
            eof_numeric(rho_ar, default_decomposition_size(rho_ar), cfg.opt);
        const EntanglementValue ef_b =
            eof_numeric(rho_br, default_decomposition_size(rho_br), cfg.opt);
        rep.ub_ef = ef_a.value + ef_b.value;
        rep.meta_ef_a = OptMeta::from(ef_a.opt);
        rep.meta_ef_b = OptMeta::from(ef_b.opt);
    }

    double ub = std::min(rep.ub_merge_send, rep.ub_double_copy);
    if (rep.ub_one_sided) ub = std::min(ub, *rep.ub_one_sided);
    if (rep.ub_do_nothing) ub = std::min(ub, *rep.ub_do_nothing);
    if (rep.ub_ef) ub = std::min(ub, *rep.ub_ef);
    rep.upsilon_ub = ub;
    rep.upsilon_lb = std::max(rep.lb_channel_split, rep.lb_distill);

    rep.common_info_lb = std::max(rep.s_ab - rep.upsilon_ub, 0.0);
    rep.common_info_ub = std::max(rep.s_ab - rep.upsilon_lb, 0.0);

    if (classical.fully_classical) {
        rep.classical_rate = rep.s_a_given_b + rep.s_b_given_a;
        rep.flags.classical_gap = *rep.classical_rate > rep.upsilon_lb + 2e-3;
    }
    return rep;
}

} // namespace uncommon
