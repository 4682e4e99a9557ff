#pragma once

// Infix surface syntax for scalar expressions:
//   + - * / ^, integer exponents, sin( ) cos( ) exp( ), literals p/q.
// Division is exact: by a nonzero constant or a single monomial.

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lbc/expr.hpp"

namespace lbc::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at column " + std::to_string(pos + 1)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Parses `text`; identifiers must belong to `vars` unless it is empty.
Expr parse_expr(std::string_view text, const std::set<std::string>& vars = {});

}  // namespace lbc::cli
