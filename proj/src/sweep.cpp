#include "uncommon/sweep.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <vector>

#include "uncommon/families.hpp"
#include "uncommon/rng.hpp"
#include "uncommon/state_io.hpp"
#include "uncommon/version.hpp"

namespace uncommon {

int run_sweep(const SweepSpec& spec, const std::string& out_path, const AggregateConfig& cfg,
              std::ostream& log) {
    std::function<DensityMatrix(double)> make;
    if (spec.family == "werner")
        make = werner;
    else if (spec.family == "isotropic")
        make = isotropic;
    else if (spec.family == "classical-grid")
        make = classical_grid_interp;
    else if (spec.family == "symmetric-mixture")
        make = symmetric_mixture;
    else if (spec.family == "one-sided")
        make = one_sided_family;
    else if (spec.family != "random") {
        log << "error: unknown family '" << spec.family << "'\n";
        return 2;
    }

    const bool random_family = spec.family == "random";
    const int rows = random_family ? spec.samples : spec.steps;
    if (rows < 1) {
        log << "error: sweep needs steps >= 1 (or samples >= 1 for the random family)\n";
        return 2;
    }

    std::vector<std::pair<double, DensityMatrix>> points;
    points.reserve(static_cast<size_t>(rows));
    RandomStream rs(spec.seed);
    for (int i = 0; i < rows; ++i) {
        if (random_family) {
            points.emplace_back(static_cast<double>(i), random_density(Dims{2, 2}, 4, rs));
        } else {
            const double t = (spec.steps == 1)
                                 ? spec.from
                                 : spec.from + (spec.to - spec.from) * i / (spec.steps - 1);
            points.emplace_back(t, make(t));
        }
    }

    std::ofstream out(out_path);
    if (!out) {
        log << "error: cannot open '" << out_path << "' for writing\n";
        return 3;
    }
    out << "# uncommon " << kVersion << " family=" << spec.family << " seed=" << spec.seed << "\n";
    out << csv_header() << "\n";
    for (const auto& [param, rho] : points) {
        AggregateConfig row_cfg = cfg;
        row_cfg.opt.seed = spec.seed;
        out << csv_row(param, aggregate(rho, row_cfg)) << "\n";
    }
    out.flush();
    if (!out) {
        log << "error: failed writing '" << out_path << "'\n";
        return 3;
    }
    return 0;
}

} // namespace uncommon
