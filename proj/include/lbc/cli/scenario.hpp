#pragma once

// Scenario files: a chart, named objects on it, and a list of checks.
//
//   id = "contact_r3"
//   [chart]
//   vars = ["x", "y", "z"]
//   [form.theta]
//   degree = 1
//   components = { z = "1", x = "-y" }
//   [[check]]
//   kind = "jacobi_from_contact"
//   theta = "theta"
//   expect = "pass"
//
// Component keys name the slots by concatenated variables ("xy"), or with
// commas when names are long ("x_1,y_1"); reordering a key flips the sign.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lbc/atiyah.hpp"
#include "lbc/groupoid.hpp"
#include "lbc/report.hpp"
#include "lbc/tensor.hpp"

namespace lbc::cli {

/// Malformed TOML, bad expression, unknown check or undeclared symbol.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& msg, int line = 0, int column = 0);
  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

enum class ObjectType {
  Function,
  Vector,
  Form,
  Multivector,
  Tensor11,
  Biderivation,
  AtiyahTensor11,
  AtiyahForm,
  Groupoid,
};

const char* to_string(ObjectType t);

struct CheckSpec {
  std::string name;
  std::string kind;
  std::map<std::string, std::string> args;  // argument -> object name
  std::optional<Verdict> expect;
  int line = 0;
};

struct Scenario {
  std::string id;
  std::string description;
  Chart chart;
  std::string r_name = "r";

  std::map<std::string, Expr> functions;
  std::map<std::string, VectorField> vectors;
  std::map<std::string, Form> forms;
  std::map<std::string, Multivector> multivectors;
  std::map<std::string, Tensor11> tensors;
  std::map<std::string, Multiderivation> biderivations;
  std::map<std::string, AtiyahTensor11> atiyah_tensors;
  std::map<std::string, AtiyahForm> atiyah_forms;
  std::map<std::string, ChartGroupoid> groupoids;

  std::vector<CheckSpec> checks;

  std::optional<ObjectType> type_of(const std::string& name) const;
};

/// Parses and validates; `origin` names the source in error messages.
Scenario parse_scenario(std::string_view text, const std::string& origin = "scenario");

}  // namespace lbc::cli
