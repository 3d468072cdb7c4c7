#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "uncommon/bounds.hpp"
#include "uncommon/qlinalg.hpp"

namespace uncommon {

/// On-disk state format: {"dims": [..], "matrix": [[[re, im], ..], ..],
/// "label": optional}. Loading enforces every DensityMatrix invariant and
/// throws std::invalid_argument naming the violated one.
struct LoadedState {
    DensityMatrix state;
    std::optional<std::string> label;
};

nlohmann::ordered_json state_to_json(const DensityMatrix& rho,
                                     const std::optional<std::string>& label = std::nullopt);
LoadedState state_from_json(const nlohmann::json& j);

LoadedState load_state_file(const std::string& path);
void write_state_file(const std::string& path, const DensityMatrix& rho,
                      const std::optional<std::string>& label = std::nullopt);

/// Full report serialization; carries the artifact version and the seed.
nlohmann::ordered_json report_to_json(const UncommonInfoReport& report,
                                      const std::optional<std::string>& label = std::nullopt);

std::string flags_to_string(const StateFlags& flags);

/// Fixed CSV schema shared by `sweep` and the per-run CSV row of `compute`.
std::string csv_header();
std::string csv_row(double param, const UncommonInfoReport& report);

} // namespace uncommon
