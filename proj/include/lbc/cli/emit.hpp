#pragma once

// Text and JSON renderings of run reports.

#include <string>
#include <vector>

#include "lbc/cli/runner.hpp"

namespace lbc::cli {

struct EmitOptions {
  bool timings = false;  // elapsed times make output run-dependent
};

std::string emit_text(const std::vector<RunReport>& runs, const EmitOptions& opts = {});

/// {"schema": 1, "seed": .., "scenarios": [..]}; byte-identical for equal runs without timings.
std::string emit_json(const std::vector<RunReport>& runs, const EmitOptions& opts = {});

}  // namespace lbc::cli
