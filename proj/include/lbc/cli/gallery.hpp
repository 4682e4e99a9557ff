#pragma once

// Built-in scenarios, compiled from scenarios/gallery/*.toml.

#include <string>
#include <utility>
#include <vector>

#include "lbc/cli/scenario.hpp"

namespace lbc::cli {

/// (file stem, TOML source) in file-name order.
const std::vector<std::pair<std::string, std::string>>& gallery_sources();

std::vector<Scenario> gallery();

}  // namespace lbc::cli
