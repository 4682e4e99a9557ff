#include "lbc/report.hpp"

namespace lbc {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

Verdict AxiomResult::outcome() const {
  switch (verdict.kind) {
    case ZeroVerdict::Kind::Zero: return Verdict::Pass;
    case ZeroVerdict::Kind::NonZero: return Verdict::Fail;
    case ZeroVerdict::Kind::Unknown: return Verdict::Unknown;
  }
  return Verdict::Unknown;
}

Verdict Report::overall() const {
  bool unknown = false;
  for (const auto& a : axioms) {
    Verdict v = a.outcome();
    if (v == Verdict::Fail) return Verdict::Fail;
    if (v == Verdict::Unknown) unknown = true;
  }
  return unknown ? Verdict::Unknown : Verdict::Pass;
}

const AxiomResult* Report::find(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.name == name) return &a;
  return nullptr;
}

Verdict Report::verdict_of(const std::string& name) const {
  const AxiomResult* a = find(name);
  return a ? a->outcome() : Verdict::Unknown;
}

AxiomResult check_zero(std::string name, std::string anchor, const std::vector<Expr>& residuals,
                       std::uint64_t seed) {
  AxiomResult r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.verdict.seed = seed;
  bool have_unknown = false;
  for (const auto& e : residuals) {
    if (e.is_zero()) continue;
    ++r.residual_count;
    ZeroVerdict v = is_zero(e, seed);
    if (v.nonzero()) {
      if (r.verdict.kind != ZeroVerdict::Kind::NonZero) {
        r.verdict = v;
        r.residual = to_string(e);
      }
    } else if (v.unknown() && !have_unknown && r.verdict.kind == ZeroVerdict::Kind::Zero) {
      have_unknown = true;
      r.verdict = v;
      r.residual = to_string(e);
    }
  }
  return r;
}

AxiomResult failed_axiom(std::string name, std::string anchor, std::string why) {
  AxiomResult r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.verdict.kind = ZeroVerdict::Kind::NonZero;
  r.residual = std::move(why);
  r.residual_count = 1;
  return r;
}

}  // namespace lbc
