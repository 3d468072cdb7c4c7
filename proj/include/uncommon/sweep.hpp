#pragma once

#include <iosfwd>
#include <string>

#include "uncommon/bounds.hpp"

namespace uncommon {

struct SweepSpec {
    std::string family; // werner | isotropic | classical-grid | symmetric-mixture | one-sided | random
    double from = 0.0;
    double to = 1.0;
    int steps = 1;      // rows for parametric families
    int samples = 0;    // rows for the random family
    std::uint64_t seed = 1;
};

/// Writes one CSV row per parameter point / sample. Returns a process exit
/// code: 0 ok, 2 invalid spec, 3 unwritable output.
int run_sweep(const SweepSpec& spec, const std::string& out_path, const AggregateConfig& cfg,
              std::ostream& log);

} // namespace uncommon
