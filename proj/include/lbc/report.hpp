#pragma once

// Verdict bookkeeping shared by every checker.

#include <cstdint>
#include <string>
#include <vector>

#include "lbc/expr.hpp"

namespace lbc {

enum class Verdict { Pass, Fail, Unknown };

const char* to_string(Verdict v);

struct AxiomResult {
  std::string name;
  std::string anchor;
  ZeroVerdict verdict;
  std::string residual;  // printed first nonzero residual, empty when zero
  int residual_count = 0;

  Verdict outcome() const;
};

struct Report {
  std::string kind;
  std::vector<AxiomResult> axioms;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;

  Verdict overall() const;
  bool passed() const { return overall() == Verdict::Pass; }
  const AxiomResult* find(const std::string& name) const;
  Verdict verdict_of(const std::string& name) const;
};

/// Zero-tests a list of residuals: the first NonZero wins, otherwise the
/// first Unknown, otherwise Zero.
AxiomResult check_zero(std::string name, std::string anchor, const std::vector<Expr>& residuals,
                       std::uint64_t seed);

/// Axiom that failed before any residual could be formed (e.g. an exception).
AxiomResult failed_axiom(std::string name, std::string anchor, std::string why);

}  // namespace lbc
