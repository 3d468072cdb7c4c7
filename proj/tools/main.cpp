#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "uncommon/bounds.hpp"
#include "uncommon/state_io.hpp"
#include "uncommon/sweep.hpp"
#include "uncommon/verify.hpp"
#include "uncommon/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitIoFailure = 3;

uncommon::Dims parse_dims(const std::string& text) {
    uncommon::Dims dims;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            if (!token.empty()) dims.push_back(std::stoi(token));
            token.clear();
        } else {
            token += c;
        }
    }
    return dims;
}

int cmd_compute(const std::string& path, int starts, std::uint64_t seed, bool ef_bound,
                const std::string& csv_path) {
    uncommon::LoadedState loaded = uncommon::load_state_file(path);

    uncommon::AggregateConfig cfg;
    cfg.opt.starts = starts;
    cfg.opt.seed = seed;
    cfg.ef_bound = ef_bound;
    const uncommon::UncommonInfoReport report = uncommon::aggregate(loaded.state, cfg);
    std::cout << uncommon::report_to_json(report, loaded.label).dump(2) << "\n";

    if (!csv_path.empty()) {
        const bool fresh = !std::ifstream(csv_path).good();
        std::ofstream csv(csv_path, std::ios::app);
        if (!csv) {
            std::cerr << "error: cannot open '" << csv_path << "' for writing\n";
            return kExitIoFailure;
        }
        if (fresh) csv << uncommon::csv_header() << "\n";
        csv << uncommon::csv_row(0.0, report) << "\n";
    }
    return kExitOk;
}

int cmd_random(const std::string& dims_text, int rank, std::uint64_t seed, const std::string& out,
               const std::string& label) {
    const uncommon::Dims dims = parse_dims(dims_text);
    int total = 1;
    for (int d : dims) total *= d;
    if (rank < 1) rank = total;
    uncommon::DensityMatrix rho = uncommon::random_density(dims, rank, seed);
    uncommon::write_state_file(out, rho,
                               label.empty() ? std::nullopt : std::make_optional(label));
    std::cout << "wrote " << out << " (dims " << dims_text << ", rank " << rank << ", seed "
              << seed << ")\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounds on the entanglement cost of exchanging bipartite quantum states"};
    app.set_version_flag("--version", std::string("uncommon ") + uncommon::kVersion);
    app.require_subcommand(1);

    // compute
    std::string state_path, compute_csv;
    int starts = 32;
    std::uint64_t seed = 1;
    bool ef_bound = false;
    auto* compute = app.add_subcommand("compute", "Analyze a single state file (JSON report)");
    compute->add_option("file", state_path, "state file (JSON)")->required();
    compute->add_option("--starts", starts, "optimizer multistart count");
    compute->add_option("--seed", seed, "optimizer seed (recorded in the report)");
    compute->add_flag("--ef-bound", ef_bound, "fold in the entanglement-of-formation bound");
    compute->add_option("--csv", compute_csv, "append one CSV row to this file");

    // sweep
    uncommon::SweepSpec spec;
    std::string sweep_out;
    int sweep_starts = 8;
    auto* sweep = app.add_subcommand("sweep", "Run a parameterized state family, write CSV");
    sweep->add_option("--family", spec.family,
                      "werner | isotropic | classical-grid | symmetric-mixture | one-sided | random")
        ->required();
    sweep->add_option("--from", spec.from, "parameter range start");
    sweep->add_option("--to", spec.to, "parameter range stop");
    sweep->add_option("--steps", spec.steps, "number of parameter points");
    sweep->add_option("--samples", spec.samples, "sample count (random family)");
    sweep->add_option("--seed", spec.seed, "seed (recorded in the CSV)");
    sweep->add_option("--starts", sweep_starts, "optimizer multistart count per row");
    sweep->add_option("--out", sweep_out, "output CSV path")->required();

    // verify
    uncommon::VerifyOptions vopts;
    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    verify->add_option("--samples", vopts.samples, "two-qubit sample count (others scale)");
    verify->add_option("--seed", vopts.seed, "seed");
    verify->add_flag("--inject-broken", vopts.inject_broken,
                     "inject a known-bad matrix into the psd pool (forces failure)");

    // random
    std::string dims_text = "2,2", random_out, random_label;
    int rank = 0;
    std::uint64_t random_seed = 1;
    auto* random = app.add_subcommand("random", "Sample a random density matrix to a state file");
    random->add_option("--dims", dims_text, "subsystem dimensions, e.g. 2,2");
    random->add_option("--rank", rank, "rank (default: full)");
    random->add_option("--seed", random_seed, "seed");
    random->add_option("--label", random_label, "optional label");
    random->add_option("--out", random_out, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return cmd_compute(state_path, starts, seed, ef_bound, compute_csv);
        if (sweep->parsed()) {
            uncommon::AggregateConfig cfg;
            cfg.opt.starts = sweep_starts;
            return uncommon::run_sweep(spec, sweep_out, cfg, std::cerr);
        }
        if (verify->parsed()) return uncommon::run_verify(vopts, std::cout);
        if (random->parsed())
            return cmd_random(dims_text, rank, random_seed, random_out, random_label);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoFailure;
    }
    return kExitOk;
}
