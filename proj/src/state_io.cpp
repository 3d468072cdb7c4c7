#include "uncommon/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "uncommon/version.hpp"

namespace uncommon {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json state_to_json(const DensityMatrix& rho, const std::optional<std::string>& label) {
    ordered_json j;
    j["dims"] = rho.dims();
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < rho.dim(); ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < rho.dim(); ++k) {
            const Cplx v = rho.matrix()(i, k);
            row.push_back({v.real(), v.imag()});
        }
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    if (label) j["label"] = *label;
    return j;
}

LoadedState state_from_json(const json& j) {
    if (!j.contains("dims") || !j["dims"].is_array())
        throw std::invalid_argument("dims: missing or not an array");
    if (!j.contains("matrix") || !j["matrix"].is_array())
        throw std::invalid_argument("matrix: missing or not an array");

    Dims dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer()) throw std::invalid_argument("dims: entries must be integers");
        dims.push_back(d.get<int>());
    }

    const auto& rows = j["matrix"];
    const int n = static_cast<int>(rows.size());
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (!rows[static_cast<size_t>(i)].is_array() ||
            static_cast<int>(rows[static_cast<size_t>(i)].size()) != n)
            throw std::invalid_argument("matrix: must be square");
        for (int k = 0; k < n; ++k) {
            const auto& cell = rows[static_cast<size_t>(i)][static_cast<size_t>(k)];
            if (!cell.is_array() || cell.size() != 2)
                throw std::invalid_argument("matrix: entries must be [re, im] pairs");
            m(i, k) = Cplx(cell[0].get<double>(), cell[1].get<double>());
        }
    }

    LoadedState out{DensityMatrix(std::move(m), std::move(dims)), std::nullopt};
    if (j.contains("label") && j["label"].is_string()) out.label = j["label"].get<std::string>();
    return out;
}

LoadedState load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("io: cannot open '" + path + "' for reading");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("parse: ") + e.what());
    }
    return state_from_json(j);
}

void write_state_file(const std::string& path, const DensityMatrix& rho,
                      const std::optional<std::string>& label) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io: cannot open '" + path + "' for writing");
    out << state_to_json(rho, label).dump(2) << "\n";
    if (!out) throw std::runtime_error("io: failed writing '" + path + "'");
}

namespace {
ordered_json meta_to_json(const OptMeta& m) {
    return {{"start_index", m.start_index},
            {"iterations", m.iterations},
            {"converged", m.converged},
            {"abandoned_starts", m.abandoned_starts},
            {"evaluations", m.evaluations}};
}
} // namespace

std::string flags_to_string(const StateFlags& f) {
    std::string s;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!s.empty()) s += ';';
        s += name;
    };
    add(f.is_pure, "pure");
    add(f.is_classical, "classical");
    add(f.is_one_sided_classical_a, "one-sided-classical-a");
    add(f.is_one_sided_classical_b, "one-sided-classical-b");
    add(f.classicality_undecided_a, "classicality-undecided-a");
    add(f.classicality_undecided_b, "classicality-undecided-b");
    add(f.is_symmetric_support, "symmetric-support");
    add(f.is_antisymmetric_support, "antisymmetric-support");
    add(f.classical_gap, "classical-gap");
    return s;
}

ordered_json report_to_json(const UncommonInfoReport& r, const std::optional<std::string>& label) {
    ordered_json j;
    j["version"] = kVersion;
    j["seed"] = r.seed;
    j["starts"] = r.starts;
    if (label) j["label"] = *label;
    j["dims"] = r.dims;

    j["entropies"] = {{"s_ab", r.s_ab},           {"s_a", r.s_a},
                      {"s_b", r.s_b},             {"s_a_given_b", r.s_a_given_b},
                      {"s_b_given_a", r.s_b_given_a}, {"mutual", r.mutual}};

    ordered_json ub;
    ub["merge_send"] = r.ub_merge_send;
    ub["double_copy"] = r.ub_double_copy;
    ub["double_copy_hv_form"] = r.ub_double_copy_hv_form;
    if (r.ub_one_sided) ub["one_sided"] = *r.ub_one_sided;
    if (r.ub_do_nothing) ub["do_nothing"] = *r.ub_do_nothing;
    if (r.ub_ef) ub["entanglement_of_formation"] = *r.ub_ef;
    j["upper_bounds"] = std::move(ub);

    ordered_json lb;
    lb["channel_split"] = r.lb_channel_split;
    lb["distill"] = r.lb_distill;
    lb["hashing_a"] = r.lb_hashing_a;
    lb["hashing_b"] = r.lb_hashing_b;
    j["lower_bounds"] = std::move(lb);

    if (r.classical_rate) j["classical_rate"] = *r.classical_rate;

    j["upsilon"] = {{"lb", r.upsilon_lb}, {"ub", r.upsilon_ub}};
    j["common_information"] = {{"lb", r.common_info_lb}, {"ub", r.common_info_ub}};

    j["flags"] = {{"pure", r.flags.is_pure},
                  {"classical", r.flags.is_classical},
                  {"one_sided_classical_a", r.flags.is_one_sided_classical_a},
                  {"one_sided_classical_b", r.flags.is_one_sided_classical_b},
                  {"classicality_undecided_a", r.flags.classicality_undecided_a},
                  {"classicality_undecided_b", r.flags.classicality_undecided_b},
                  {"symmetric_support", r.flags.is_symmetric_support},
                  {"antisymmetric_support", r.flags.is_antisymmetric_support},
                  {"classical_gap", r.flags.classical_gap}};

    j["double_copy_basis"] = {{"a", r.dc_basis_a}, {"b", r.dc_basis_b}};

    ordered_json meta;
    meta["double_copy_a"] = meta_to_json(r.meta_dc_a);
    meta["double_copy_b"] = meta_to_json(r.meta_dc_b);
    meta["channel_split"] = meta_to_json(r.meta_split);
    meta["channel_split_factors"] = {r.split_d_v, r.split_d_e};
    meta["distill_a"] = meta_to_json(r.meta_distill_a);
    meta["distill_b"] = meta_to_json(r.meta_distill_b);
    if (r.meta_ef_a) meta["ef_a"] = meta_to_json(*r.meta_ef_a);
    if (r.meta_ef_b) meta["ef_b"] = meta_to_json(*r.meta_ef_b);
    j["optimizer"] = std::move(meta);
    return j;
}

std::string csv_header() {
    return "param,S_AB,S_A_given_B,S_B_given_A,I_A_B,ub_merge_send,ub_double_copy,"
           "lb_channel_split,lb_distill,upsilon_lb,upsilon_ub,flags";
}

std::string csv_row(double param, const UncommonInfoReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,",
                  param, r.s_ab, r.s_a_given_b, r.s_b_given_a, r.mutual, r.ub_merge_send,
                  r.ub_double_copy, r.lb_channel_split, r.lb_distill, r.upsilon_lb, r.upsilon_ub);
    return std::string(buf) + flags_to_string(r.flags);
}

} // namespace uncommon
