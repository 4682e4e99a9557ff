#pragma once

// Registry of check kinds usable from scenario files.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "lbc/cli/scenario.hpp"

namespace lbc::cli {

struct ArgSpec {
  std::string name;
  ObjectType type;
  bool optional = false;
};

struct CheckKind {
  std::string kind;
  std::string summary;
  std::vector<ArgSpec> args;
  bool needs_some_optional = false;  // at least one optional argument must be given
  std::function<Report(const Scenario&, const CheckSpec&, std::uint64_t)> run;
};

const std::vector<CheckKind>& check_kinds();
const CheckKind* find_check_kind(std::string_view kind);

}  // namespace lbc::cli
