#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "uncommon/families.hpp"
#include "uncommon/state_io.hpp"
#include "uncommon/sweep.hpp"
#include "uncommon/verify.hpp"

using namespace uncommon;

namespace {

std::string temp_path(const char* name) {
    return std::string("io_test_") + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

TEST_CASE("state files round trip") {
    RandomStream rs(1);
    const DensityMatrix rho = random_density(Dims{2, 3}, 4, rs);
    const std::string path = temp_path("roundtrip.json");
    write_state_file(path, rho, "sample");

    const LoadedState back = load_state_file(path);
    CHECK(back.state.dims() == rho.dims());
    CHECK((back.state.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(back.label.value_or("") == "sample");
    std::remove(path.c_str());
}

TEST_CASE("invalid state files name the violated invariant") {
    const std::string path = temp_path("bad_trace.json");
    {
        std::ofstream out(path);
        out << R"({"dims":[2],"matrix":[[[0.6,0],[0,0]],[[0,0],[0.3,0]]]})";
    }
    CHECK_THROWS_WITH_AS(load_state_file(path), doctest::Contains("trace"), std::invalid_argument);
    std::remove(path.c_str());

    const std::string garbled = temp_path("garbled.json");
    {
        std::ofstream out(garbled);
        out << "{not json";
    }
    CHECK_THROWS_AS(load_state_file(garbled), std::invalid_argument);
    std::remove(garbled.c_str());

    CHECK_THROWS_AS(load_state_file("does_not_exist.json"), std::runtime_error);
}

TEST_CASE("report serialization carries version, seed and the key quantities") {
    AggregateConfig cfg;
    cfg.opt.starts = 3;
    cfg.opt.max_iters = 60;
    cfg.opt.seed = 42;
    const UncommonInfoReport rep = aggregate(to_density(bell_phi_plus()), cfg);
    const nlohmann::ordered_json j = report_to_json(rep, "bell");
    CHECK(j.contains("version"));
    CHECK(j["seed"].get<std::uint64_t>() == 42);
    CHECK(j["label"] == "bell");
    CHECK(j["entropies"]["s_a_given_b"].get<double>() == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(j["upsilon"]["ub"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(j["flags"]["pure"].get<bool>());
    CHECK(j["optimizer"].contains("channel_split"));
}

TEST_CASE("csv schema is stable") {
    CHECK(csv_header() ==
          "param,S_AB,S_A_given_B,S_B_given_A,I_A_B,ub_merge_send,ub_double_copy,"
          "lb_channel_split,lb_distill,upsilon_lb,upsilon_ub,flags");
}

TEST_CASE("werner sweep hits the pure endpoint") {
    SweepSpec spec;
    spec.family = "werner";
    spec.from = 0.5;
    spec.to = 1.0;
    spec.steps = 2;
    spec.seed = 7;
    AggregateConfig cfg;
    cfg.opt.starts = 3;
    cfg.opt.max_iters = 60;
    const std::string path = temp_path("werner.csv");
    std::stringstream log;
    REQUIRE(run_sweep(spec, path, cfg, log) == 0);

    const auto rows = parse_csv_rows(slurp(path));
    REQUIRE(rows.size() == 3); // header + 2 rows
    const auto& last = rows.back();
    CHECK(std::stod(last[0]) == doctest::Approx(1.0));
    CHECK(std::stod(last[2]) == doctest::Approx(-1.0).epsilon(1e-6));  // S(A|B)
    CHECK(std::stod(last[10]) == doctest::Approx(0.0).epsilon(1e-9));  // upsilon_ub
    std::remove(path.c_str());
}

TEST_CASE("symmetric-mixture sweep stays free even with positive partial information") {
    SweepSpec spec;
    spec.family = "symmetric-mixture";
    spec.from = 0.25;
    spec.to = 0.75;
    spec.steps = 3;
    spec.seed = 3;
    AggregateConfig cfg;
    cfg.opt.starts = 3;
    cfg.opt.max_iters = 60;
    const std::string path = temp_path("symmix.csv");
    std::stringstream log;
    REQUIRE(run_sweep(spec, path, cfg, log) == 0);
    for (const auto& row : parse_csv_rows(slurp(path))) {
        if (row[0] == "param") continue;
        CHECK(std::stod(row[10]) == doctest::Approx(0.0).epsilon(1e-9)); // upsilon_ub
        CHECK(std::abs(std::stod(row[2])) > 1e-3);                       // S(A|B) nonzero
    }
    std::remove(path.c_str());
}

TEST_CASE("classical-grid sweep reports two bits for uniform independent bits") {
    SweepSpec spec;
    spec.family = "classical-grid";
    spec.from = 0.0;
    spec.to = 0.0;
    spec.steps = 1;
    spec.seed = 5;
    AggregateConfig cfg;
    cfg.opt.starts = 3;
    cfg.opt.max_iters = 60;
    const std::string path = temp_path("grid.csv");
    std::stringstream log;
    REQUIRE(run_sweep(spec, path, cfg, log) == 0);
    const auto rows = parse_csv_rows(slurp(path));
    REQUIRE(rows.size() == 2);
    CHECK(std::stod(rows[1][10]) == doctest::Approx(2.0).epsilon(1e-6)); // upsilon_ub
    std::remove(path.c_str());
}

TEST_CASE("isotropic and one-sided sweeps produce ordered bounds") {
    AggregateConfig cfg;
    cfg.opt.starts = 3;
    cfg.opt.max_iters = 60;
    std::stringstream log;
    for (const char* family : {"isotropic", "one-sided"}) {
        SweepSpec spec;
        spec.family = family;
        spec.from = 0.2;
        spec.to = 0.8;
        spec.steps = 2;
        spec.seed = 13;
        const std::string path = temp_path("family.csv");
        REQUIRE(run_sweep(spec, path, cfg, log) == 0);
        const auto rows = parse_csv_rows(slurp(path));
        REQUIRE(rows.size() == 3);
        for (size_t r = 1; r < rows.size(); ++r) {
            CHECK(std::stod(rows[r][9]) <= std::stod(rows[r][10]) + 2e-3); // lb <= ub
        }
        std::remove(path.c_str());
    }
}

TEST_CASE("sweeps are reproducible and invalid specs are rejected") {
    SweepSpec spec;
    spec.family = "random";
    spec.samples = 2;
    spec.seed = 11;
    AggregateConfig cfg;
    cfg.opt.starts = 2;
    cfg.opt.max_iters = 50;
    const std::string p1 = temp_path("rand1.csv");
    const std::string p2 = temp_path("rand2.csv");
    std::stringstream log;
    REQUIRE(run_sweep(spec, p1, cfg, log) == 0);
    REQUIRE(run_sweep(spec, p2, cfg, log) == 0);
    CHECK(slurp(p1) == slurp(p2));
    std::remove(p1.c_str());
    std::remove(p2.c_str());

    SweepSpec bad;
    bad.family = "unknown-family";
    CHECK(run_sweep(bad, temp_path("never.csv"), cfg, log) == 2);

    SweepSpec unwritable;
    unwritable.family = "werner";
    unwritable.steps = 1;
    CHECK(run_sweep(unwritable, "/nonexistent-dir/out.csv", cfg, log) == 3);
}

TEST_CASE("verify is deterministic and fails loudly on injected breakage") {
    VerifyOptions opts;
    opts.samples = 6;
    opts.seed = 7;
    std::stringstream s1, s2;
    CHECK(run_verify(opts, s1) == 0);
    CHECK(run_verify(opts, s2) == 0);
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().find("result: PASS") != std::string::npos);

    opts.inject_broken = true;
    std::stringstream s3;
    CHECK(run_verify(opts, s3) == 1);
    CHECK(s3.str().find("psd") != std::string::npos);
    CHECK(s3.str().find("result: FAIL") != std::string::npos);
}
