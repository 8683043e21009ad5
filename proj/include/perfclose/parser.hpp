#pragma once

// Reader for the element and matrix grammar:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' integer)?
//   atom   := integer | 't' | name | 'rt' '(' expr ',' integer ')' | '(' expr ')'
//   matrix := '[' row (',' row)* ']'    row := '[' expr (',' expr)* ']'
//
// Integer literals are reduced mod p. Exponents may carry a leading '-'.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "perfclose/tannakian.hpp"

namespace perfclose {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Resolves workspace names; nullopt means unknown.
using NameLookup = std::function<std::optional<PerfElem>(std::string_view)>;

struct ParseContext {
  PrimeModulus modulus;
  int level_cap = kDefaultLevelCap;
  NameLookup names;
};

/// Throws ParseError (syntax, unknown name), DivisionByZero, LevelCapExceeded.
PerfElem parse_element(std::string_view text, const ParseContext& ctx);
PerfMatrix parse_matrix(std::string_view text, const ParseContext& ctx);

/// `[A-Za-z_][A-Za-z0-9_]*`, excluding the reserved `t` and `rt`.
bool is_valid_name(std::string_view name);

}  // namespace perfclose
