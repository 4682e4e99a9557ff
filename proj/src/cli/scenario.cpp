#include "lbc/cli/scenario.hpp"

#include <algorithm>
#include <functional>
#include <set>

#define TOML_EXCEPTIONS 1
#include "tomlplusplus/toml.hpp"

#include "lbc/cli/checks.hpp"
#include "lbc/cli/parse_expr.hpp"
#include "lbc/errors.hpp"

namespace lbc::cli {

ScenarioError::ScenarioError(const std::string& msg, int line, int column)
    : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                                  : msg),
      message_(msg),
      line_(line),
      column_(column) {}

const char* to_string(ObjectType t) {
  switch (t) {
    case ObjectType::Function: return "function";
    case ObjectType::Vector: return "vector";
    case ObjectType::Form: return "form";
    case ObjectType::Multivector: return "multivector";
    case ObjectType::Tensor11: return "tensor11";
    case ObjectType::Biderivation: return "biderivation";
    case ObjectType::AtiyahTensor11: return "atiyah11";
    case ObjectType::AtiyahForm: return "atiyah_form";
    case ObjectType::Groupoid: return "groupoid";
  }
  return "?";
}

std::optional<ObjectType> Scenario::type_of(const std::string& name) const {
  if (functions.count(name)) return ObjectType::Function;
  if (vectors.count(name)) return ObjectType::Vector;
  if (forms.count(name)) return ObjectType::Form;
  if (multivectors.count(name)) return ObjectType::Multivector;
  if (tensors.count(name)) return ObjectType::Tensor11;
  if (biderivations.count(name)) return ObjectType::Biderivation;
  if (atiyah_tensors.count(name)) return ObjectType::AtiyahTensor11;
  if (atiyah_forms.count(name)) return ObjectType::AtiyahForm;
  if (groupoids.count(name)) return ObjectType::Groupoid;
  return std::nullopt;
}

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

[[noreturn]] void fail(const std::string& msg, const toml::node& at) {
  const auto& b = at.source().begin;
  throw ScenarioError(msg, static_cast<int>(b.line), static_cast<int>(b.column));
}

std::string text_of(const toml::node& n, const std::string& what) {
  if (auto s = n.value<std::string>()) return *s;
  if (auto i = n.value<std::int64_t>()) return std::to_string(*i);
  fail(what + ": expected a string or integer", n);
}

Expr expr_of(const toml::node& n, const Chart& ch, const std::string& what) {
  std::string s = text_of(n, what);
  std::set<std::string> vars(ch.vars().begin(), ch.vars().end());
  try {
    return parse_expr(s, vars);
  } catch (const ParseError& e) {
    fail(what + ": " + e.what() + " in \"" + s + "\"", n);
  } catch (const Error& e) {
    fail(what + ": " + e.what() + " in \"" + s + "\"", n);
  }
}

const toml::table& table_at(const toml::table& t, std::string_view key, const std::string& what) {
  const toml::node* n = t.get(key);
  if (!n || !n->is_table()) fail(what + ": missing table '" + std::string(key) + "'", t);
  return *n->as_table();
}

int int_at(const toml::table& t, std::string_view key, const std::string& what, std::optional<int> dflt = {}) {
  const toml::node* n = t.get(key);
  if (!n) {
    if (dflt) return *dflt;
    fail(what + ": missing integer '" + std::string(key) + "'", t);
  }
  auto v = n->value<std::int64_t>();
  if (!v) fail(what + ": '" + std::string(key) + "' must be an integer", *n);
  return static_cast<int>(*v);
}

// Splits a slot key into variable indices: "x_1,y_1", "x y" or "xy".
std::vector<int> slot_indices(const Chart& ch, const std::string& key, const toml::node& at, const std::string& what) {
  std::vector<int> out;
  if (key.find_first_of(", ") != std::string::npos) {
    std::string cur;
    auto flush = [&] {
      if (cur.empty()) return;
      auto i = ch.index_of(cur);
      if (!i) fail(what + ": unknown variable '" + cur + "' in key '" + key + "'", at);
      out.push_back(*i);
      cur.clear();
    };
    for (char c : key) {
      if (c == ',' || c == ' ') flush();
      else cur.push_back(c);
    }
    flush();
    return out;
  }
  // concatenated names: every split into chart variables, must be unique
  std::vector<std::vector<int>> splits;
  std::vector<int> stack;
  std::function<void(std::size_t)> go = [&](std::size_t pos) {
    if (splits.size() > 1) return;
    if (pos == key.size()) {
      splits.push_back(stack);
      return;
    }
    for (int i = 0; i < ch.dim(); ++i) {
      const std::string& v = ch.var(i);
      if (key.compare(pos, v.size(), v) == 0) {
        stack.push_back(i);
        go(pos + v.size());
        stack.pop_back();
      }
    }
  };
  go(0);
  if (splits.empty()) fail(what + ": key '" + key + "' is not a concatenation of chart variables", at);
  if (splits.size() > 1) fail(what + ": key '" + key + "' is ambiguous; separate variables with commas", at);
  return splits.front();
}

// Sorts the slots, returning the permutation sign (0 on a repeated slot).
int sort_slots(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return 0;
  return sign;
}

// Degree-k alternating array from a table of slot keys.
Alternating components(const toml::node* node, const Chart& ch, int degree, const std::string& what) {
  Alternating a(ch.dim(), degree);
  if (!node) return a;
  const toml::table* t = node->as_table();
  if (!t) fail(what + ": components must be a table", *node);
  for (auto&& [k, v] : *t) {
    std::string key(k.str());
    std::vector<int> idx = key == "1" && degree == 0 ? std::vector<int>{} : slot_indices(ch, key, v, what);
    if (static_cast<int>(idx.size()) != degree)
      fail(what + ": key '" + key + "' has " + std::to_string(idx.size()) + " slots, expected " + std::to_string(degree), v);
    int sign = sort_slots(idx);
    if (sign == 0) fail(what + ": key '" + key + "' repeats a variable", v);
    Expr e = expr_of(v, ch, what + "." + key);
    a.set(idx, a.get(idx) + (sign > 0 ? e : -e));
  }
  return a;
}

Matrix matrix_of(const toml::node& n, const Chart& ch, int size, const std::string& what) {
  const toml::array* rows = n.as_array();
  if (!rows || static_cast<int>(rows->size()) != size) fail(what + ": rows must be a " + std::to_string(size) + "x" + std::to_string(size) + " array", n);
  Matrix m = zero_matrix(size, size);
  for (int i = 0; i < size; ++i) {
    const toml::array* row = (*rows)[u(i)].as_array();
    if (!row || static_cast<int>(row->size()) != size) fail(what + ": row " + std::to_string(i) + " has the wrong length", (*rows)[u(i)]);
    for (int j = 0; j < size; ++j) m[u(i)][u(j)] = expr_of((*row)[u(j)], ch, what);
  }
  return m;
}

class Builder {
 public:
  Builder(const toml::table& root, std::string origin) : root_(root), origin_(std::move(origin)) {}

  Scenario build() {
    Scenario s;
    s.id = root_["id"].value_or(std::string(origin_));
    s.description = root_["description"].value_or<std::string>("");
    const toml::table& chart = table_at(root_, "chart", "scenario");
    const toml::array* vars = chart["vars"].as_array();
    if (!vars) fail("chart: 'vars' must be an array of names", chart);
    std::vector<std::string> names;
    for (const auto& v : *vars) {
      auto name = v.value<std::string>();
      if (!name) fail("chart: variable names must be strings", v);
      names.push_back(*name);
    }
    try {
      s.chart = Chart(chart["name"].value_or<std::string>("M"), names);
    } catch (const Error& e) {
      fail(std::string("chart: ") + e.what(), chart);
    }
    s.r_name = chart["r"].value_or<std::string>("r");
    scen_ = &s;

    if (const toml::table* g = root_["groupoid"].as_table())
      for (auto&& [k, v] : *g) groupoid(std::string(k.str()), *g);
    each("function", [&](const std::string& name, const toml::table& t) {
      const toml::node* n = t.get("value");
      if (!n) fail("function." + name + ": missing 'value'", t);
      s.functions[name] = expr_of(*n, chart_of(t, name), "function." + name);
    });
    each("vector", [&](const std::string& name, const toml::table& t) {
      Chart ch = chart_of(t, name);
      Alternating a = components(t.get("components"), ch, 1, "vector." + name);
      VectorField v(ch);
      for (int i = 0; i < ch.dim(); ++i) v[i] = a.get({i});
      s.vectors[name] = v;
    });
    each("form", [&](const std::string& name, const toml::table& t) {
      Chart ch = chart_of(t, name);
      int k = int_at(t, "degree", "form." + name);
      s.forms[name] = Form(ch, components(t.get("components"), ch, k, "form." + name));
    });
    each("bivector", [&](const std::string& name, const toml::table& t) {
      Chart ch = chart_of(t, name);
      s.multivectors[name] = Multivector(ch, components(t.get("components"), ch, 2, "bivector." + name));
    });
    each("multivector", [&](const std::string& name, const toml::table& t) {
      Chart ch = chart_of(t, name);
      int k = int_at(t, "degree", "multivector." + name);
      s.multivectors[name] = Multivector(ch, components(t.get("components"), ch, k, "multivector." + name));
    });
    each("tensor11", [&](const std::string& name, const toml::table& t) {
      Chart ch = chart_of(t, name);
      const std::string what = "tensor11." + name;
      if (const toml::node* rows = t.get("rows")) {
        s.tensors[name] = Tensor11(ch, matrix_of(*rows, ch, ch.dim(), what));
      } else if (const toml::node* d = t.get("scale")) {
        s.tensors[name] = expr_of(*d, ch, what) * Tensor11::identity(ch);
      } else {
        fail(what + ": needs 'rows' or 'scale'", t);
      }
    });
    each("biderivation", [&](const std::string& name, const toml::table& t) {
      const std::string what = "biderivation." + name;
      Multivector p(s.chart, components(t.get("P"), s.chart, 2, what + ".P"));
      Multivector q(s.chart, components(t.get("Q"), s.chart, 1, what + ".Q"));
      s.biderivations[name] = Multiderivation::from_parts(p, q);
    });
    each("atiyah11", [&](const std::string& name, const toml::table& t) {
      const std::string what = "atiyah11." + name;
      const Chart& ch = s.chart;
      if (const toml::node* rows = t.get("rows")) {
        s.atiyah_tensors[name] = AtiyahTensor11(ch, matrix_of(*rows, ch, ch.dim() + 1, what));
      } else if (const toml::node* d = t.get("scale")) {
        s.atiyah_tensors[name] = expr_of(*d, ch, what) * AtiyahTensor11::identity(ch);
      } else if (auto from = t["from_tensor"].value<std::string>()) {
        auto it = s.tensors.find(*from);
        if (it == s.tensors.end()) fail(what + ": undeclared tensor11 '" + *from + "'", t);
        Expr on_id;
        if (const toml::node* o = t.get("on_identity")) on_id = expr_of(*o, ch, what);
        s.atiyah_tensors[name] = AtiyahTensor11::from_tensor(it->second, on_id);
      } else {
        fail(what + ": needs 'rows', 'scale' or 'from_tensor'", t);
      }
    });
    each("atiyah_form", [&](const std::string& name, const toml::table& t) {
      const std::string what = "atiyah_form." + name;
      int k = int_at(t, "degree", what);
      Form beta(s.chart, components(t.get("beta"), s.chart, k, what + ".beta"));
      Form gamma = k >= 1 ? Form(s.chart, components(t.get("gamma"), s.chart, k - 1, what + ".gamma")) : Form();
      s.atiyah_forms[name] = AtiyahForm::from_parts(beta, gamma);
    });

    if (const toml::node* checks = root_.get("check")) {
      const toml::array* arr = checks->as_array();
      if (!arr) fail("'check' must be an array of tables ([[check]])", *checks);
      for (const auto& c : *arr) s.checks.push_back(check(c, s));
    }
    scen_ = nullptr;
    return s;
  }

 private:
  template <class F>
  void each(std::string_view section, F&& f) {
    const toml::node* n = root_.get(section);
    if (!n) return;
    const toml::table* t = n->as_table();
    if (!t) fail(std::string(section) + " must be a table", *n);
    for (auto&& [k, v] : *t) {
      std::string name(k.str());
      const toml::table* body = v.as_table();
      if (!body) fail(std::string(section) + "." + name + " must be a table", v);
      if (scen_->type_of(name)) fail("duplicate object name '" + name + "'", v);
      f(name, *body);
    }
  }

  Chart chart_of(const toml::table& t, const std::string& name) {
    auto on = t["on"].value<std::string>();
    if (!on) return scen_->chart;
    std::string g = *on;
    bool w = false;
    if (g.size() > 2 && g.compare(g.size() - 2, 2, ".W") == 0) {
      g.resize(g.size() - 2);
      w = true;
    }
    auto it = scen_->groupoids.find(g);
    if (it == scen_->groupoids.end()) fail(name + ": 'on' names undeclared groupoid '" + g + "'", t);
    return w ? it->second.comp.W : it->second.G;
  }

  void groupoid(const std::string& name, const toml::table& all) {
    if (scen_->groupoids.count(name)) return;
    if (!visiting_.insert(name).second) fail("groupoid." + name + ": cyclic 'of' reference", all);
    const toml::table* t = all[name].as_table();
    if (!t) fail("groupoid." + name + " must be a table", all);
    const std::string what = "groupoid." + name;
    std::string kind = (*t)["kind"].value_or<std::string>("");
    ChartGroupoid g;
    if (kind == "pair") {
      g = pair_groupoid(scen_->chart);
    } else if (kind == "vb") {
      int k = int_at(*t, "fiber_rank", what, 1);
      if (k < 1) fail(what + ": fiber_rank must be at least 1", *t);
      g = vb_addition_groupoid(scen_->chart, k);
    } else if (kind == "scaling") {
      auto of = (*t)["of"].value<std::string>();
      if (!of) fail(what + ": scaling needs 'of'", *t);
      if (!all.get(*of)) fail(what + ": 'of' names undeclared groupoid '" + *of + "'", *t);
      groupoid(*of, all);
      try {
        g = scaling_extension(scen_->groupoids.at(*of), scen_->r_name);
      } catch (const Error& e) {
        fail(what + ": " + e.what(), *t);
      }
    } else {
      fail(what + ": kind must be pair, vb or scaling", *t);
    }
    scen_->groupoids[name] = g;
  }

  CheckSpec check(const toml::node& node, const Scenario& s) {
    const toml::table* t = node.as_table();
    if (!t) fail("check entries must be tables", node);
    CheckSpec c;
    c.line = static_cast<int>(node.source().begin.line);
    auto kind = (*t)["kind"].value<std::string>();
    if (!kind) fail("check: missing 'kind'", node);
    c.kind = *kind;
    const CheckKind* ck = find_check_kind(c.kind);
    if (!ck) fail("check: unknown kind '" + c.kind + "'", node);
    c.name = (*t)["name"].value_or(std::string(c.kind));
    if (auto e = (*t)["expect"].value<std::string>()) {
      if (*e == "pass") c.expect = Verdict::Pass;
      else if (*e == "fail") c.expect = Verdict::Fail;
      else if (*e == "unknown") c.expect = Verdict::Unknown;
      else fail("check " + c.name + ": expect must be pass, fail or unknown", *(*t).get("expect"));
    }
    for (auto&& [k, v] : *t) {
      std::string key(k.str());
      if (key == "kind" || key == "name" || key == "expect") continue;
      auto it = std::find_if(ck->args.begin(), ck->args.end(), [&](const ArgSpec& a) { return a.name == key; });
      if (it == ck->args.end()) fail("check " + c.name + ": unknown argument '" + key + "' for " + c.kind, v);
      auto ref = v.value<std::string>();
      if (!ref) fail("check " + c.name + ": argument '" + key + "' must name an object", v);
      auto type = s.type_of(*ref);
      if (!type) fail("check " + c.name + ": undeclared symbol '" + *ref + "'", v);
      if (*type != it->type)
        fail("check " + c.name + ": '" + *ref + "' is a " + to_string(*type) + ", expected " + to_string(it->type), v);
      c.args[key] = *ref;
    }
    for (const auto& a : ck->args)
      if (!a.optional && !c.args.count(a.name)) fail("check " + c.name + ": missing argument '" + a.name + "'", node);
    if (ck->needs_some_optional && c.args.empty()) fail("check " + c.name + ": give at least one object to " + c.kind, node);
    return c;
  }

  const toml::table& root_;
  std::string origin_;
  Scenario* scen_ = nullptr;
  std::set<std::string> visiting_;
};

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& origin) {
  toml::table root;
  try {
    root = toml::parse(text, origin);
  } catch (const toml::parse_error& e) {
    const auto& b = e.source().begin;
    throw ScenarioError(origin + ": " + std::string(e.description()), static_cast<int>(b.line), static_cast<int>(b.column));
  }
  try {
    return Builder(root, origin).build();
  } catch (const ScenarioError& e) {
    throw ScenarioError(origin + ": " + e.message(), e.line(), e.column());
  } catch (const Error& e) {
    throw ScenarioError(origin + ": " + e.what());
  }
}

}  // namespace lbc::cli
