#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wzcert/hyperterm.hpp"

namespace wzcert {

/// Expression tree of the identity language. Positions are 1-based and do
/// not take part in equality.
struct Expr {
  enum class Kind { Number, Var, Call, Add, Sub, Mul, Div, Neg, Pow };

  Kind kind = Kind::Number;
  Rational value;    // Number
  std::string name;  // Var, Call
  std::vector<Expr> args;
  int line = 0;
  int column = 0;

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.value == b.value && a.name == b.name && a.args == b.args;
  }
};

struct SumClause {
  std::string var;
  std::optional<Expr> lo;
  std::optional<Expr> hi;
  int line = 0;
  int column = 0;

  friend bool operator==(const SumClause& a, const SumClause& b) {
    return a.var == b.var && a.lo == b.lo && a.hi == b.hi;
  }
};

/// [param x, y ;] sum k [= lo .. hi] ... : lhs [== rhs]
struct IdentityAst {
  std::vector<std::string> params;
  std::vector<SumClause> sums;
  Expr lhs;
  std::optional<Expr> rhs;

  friend bool operator==(const IdentityAst& a, const IdentityAst& b) {
    return a.params == b.params && a.sums == b.sums && a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

/// Throws ParseError with the position of the offending token.
IdentityAst parse_identity(const std::string& src);

std::string print_expr(const Expr& e);
/// Canonical source; parse_identity(print_identity(a)) == a.
std::string print_identity(const IdentityAst& ast);

/// Semantic pass: variables declared, factorial/binomial/Pochhammer
/// arguments integer-linear, symbolic powers over parameter bases. Throws
/// ParseError at the offending subexpression. The main variable is n.
Identity lower_identity(const IdentityAst& ast);

/// parse + lower. A missing right-hand side is an error here.
Identity load_identity(const std::string& src);

/// 64-bit FNV-1a of the canonical source, as 16 hex digits.
std::string identity_hash(const IdentityAst& ast);
/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a64(std::string_view text);

}  // namespace wzcert
