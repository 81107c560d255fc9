#include "wzcert/dsl.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <set>

#include "wzcert/errors.hpp"

namespace wzcert {

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { Ident, Number, LParen, RParen, Comma, Colon, Semi, Plus, Minus, Star, Slash, Caret, EqEq, Eq, DotDot, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t j = 0; j < count; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      advance(1);
      continue;
    }
    Token t{Tok::End, "", line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) != 0 || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])) != 0) ++j;
      t.kind = Tok::Number;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else {
      auto two = src.substr(i, 2);
      if (two == "==") {
        t.kind = Tok::EqEq;
      } else if (two == "..") {
        t.kind = Tok::DotDot;
      }
      if (t.kind != Tok::End) {
        t.text = two;
        advance(2);
      } else {
        switch (c) {
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case ',': t.kind = Tok::Comma; break;
          case ':': t.kind = Tok::Colon; break;
          case ';': t.kind = Tok::Semi; break;
          case '+': t.kind = Tok::Plus; break;
          case '-': t.kind = Tok::Minus; break;
          case '*': t.kind = Tok::Star; break;
          case '/': t.kind = Tok::Slash; break;
          case '^': t.kind = Tok::Caret; break;
          case '=': t.kind = Tok::Eq; break;
          default: {
            std::string shown = std::isprint(static_cast<unsigned char>(c)) != 0 ? std::string(1, c) : "\\x" + [&] {
              char buf[3];
              std::snprintf(buf, sizeof buf, "%02x", static_cast<unsigned char>(c));
              return std::string(buf);
            }();
            throw ParseError("unexpected character '" + shown + "'", line, col);
          }
        }
        t.text = std::string(1, c);
        advance(1);
      }
    }
    out.push_back(t);
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------- parser

constexpr int kMaxDepth = 200;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  IdentityAst identity() {
    IdentityAst ast;
    if (peek().kind == Tok::Ident && peek().text == "param") {
      next();
      ast.params.push_back(ident("parameter name"));
      while (accept(Tok::Comma)) ast.params.push_back(ident("parameter name"));
      expect(Tok::Semi, "';' after the parameter list");
    }
    while (peek().kind == Tok::Ident && peek().text == "sum") {
      Token kw = next();
      SumClause s;
      s.line = kw.line;
      s.column = kw.column;
      s.var = ident("summation variable");
      if (accept(Tok::Eq)) {
        s.lo = expr();
        expect(Tok::DotDot, "'..' in the summation range");
        s.hi = expr();
      }
      ast.sums.push_back(std::move(s));
    }
    if (ast.sums.empty()) fail(peek(), "expected 'sum'");
    expect(Tok::Colon, "':' after the summation clauses");
    ast.lhs = expr();
    if (accept(Tok::EqEq)) ast.rhs = expr();
    if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()));
    return ast;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.column); }
  void expect(Tok k, const std::string& what) {
    if (!accept(k)) fail(peek(), "expected " + what + ", found " + describe(peek()));
  }
  std::string ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail(peek(), "expected " + what + ", found " + describe(peek()));
    if (peek().text == "sum" || peek().text == "param") fail(peek(), "'" + peek().text + "' is a keyword");
    return next().text;
  }

  static bool is_function(const std::string& name) {
    return name == "binomial" || name == "factorial" || name == "poch";
  }

  /// Binary nodes are positioned at their left operand.
  static Expr node(Expr::Kind k, const Token& at, std::vector<Expr> args = {}) {
    Expr e;
    e.kind = k;
    e.line = at.line;
    e.column = at.column;
    if (args.size() == 2) {
      e.line = args[0].line;
      e.column = args[0].column;
    }
    e.args = std::move(args);
    return e;
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) fail(p.peek(), "expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
  };

  Expr expr() {
    DepthGuard g(*this);
    Expr left = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      Token op = next();
      Expr right = term();
      left = node(op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, op, {std::move(left), std::move(right)});
    }
    return left;
  }

  static bool starts_factor(Tok k) { return k == Tok::Ident || k == Tok::Number || k == Tok::LParen; }

  Expr term() {
    DepthGuard g(*this);
    Expr left = unary();
    while (true) {
      Tok k = peek().kind;
      if (k == Tok::Star || k == Tok::Slash) {
        Token op = next();
        Expr right = unary();
        left = node(k == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div, op, {std::move(left), std::move(right)});
      } else if (starts_factor(k) && !(peek().kind == Tok::Ident && (peek().text == "sum" || peek().text == "param"))) {
        // juxtaposition, e.g. 4k or 2(n+1)
        Token at = peek();
        Expr right = unary();
        left = node(Expr::Kind::Mul, at, {std::move(left), std::move(right)});
      } else {
        return left;
      }
    }
  }

  Expr unary() {
    DepthGuard g(*this);
    if (peek().kind == Tok::Minus) {
      Token op = next();
      return node(Expr::Kind::Neg, op, {unary()});
    }
    Expr base = primary();
    if (peek().kind == Tok::Caret) {
      Token op = next();
      Expr exponent = unary();
      return node(Expr::Kind::Pow, op, {std::move(base), std::move(exponent)});
    }
    return base;
  }

  Expr primary() {
    DepthGuard g(*this);
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        Token tok = next();
        Expr e = node(Expr::Kind::Number, tok);
        e.value = Rational(Integer(tok.text, 10));
        return e;
      }
      case Tok::Ident: {
        Token tok = next();
        if (tok.text == "sum" || tok.text == "param") fail(tok, "'" + tok.text + "' is a keyword");
        if (is_function(tok.text) && accept(Tok::LParen)) {
          Expr e = node(Expr::Kind::Call, tok);
          e.name = tok.text;
          e.args.push_back(expr());
          while (accept(Tok::Comma)) e.args.push_back(expr());
          expect(Tok::RParen, "')' closing " + tok.text + "(");
          return e;
        }
        Expr e = node(Expr::Kind::Var, tok);
        e.name = tok.text;
        return e;
      }
      case Tok::LParen: {
        next();
        Expr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      default:
        fail(t, "expected a number, variable, function or '(', found " + describe(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

// ---------------------------------------------------------------- printer

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap(const Expr& e, int min_prec) {
  std::string s = print_expr(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return to_string(e.value);
    case Expr::Kind::Var: return e.name;
    case Expr::Kind::Call: {
      std::string s = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + print_expr(e.args[i]);
      return s + ")";
    }
    case Expr::Kind::Add: return wrap(e.args[0], 1) + " + " + wrap(e.args[1], 2);
    case Expr::Kind::Sub: return wrap(e.args[0], 1) + " - " + wrap(e.args[1], 2);
    case Expr::Kind::Mul: return wrap(e.args[0], 2) + "*" + wrap(e.args[1], 3);
    case Expr::Kind::Div: return wrap(e.args[0], 2) + "/" + wrap(e.args[1], 3);
    case Expr::Kind::Neg: return "-" + wrap(e.args[0], 3);
    case Expr::Kind::Pow: return wrap(e.args[0], 5) + "^" + wrap(e.args[1], 3);
  }
  return "";
}

std::string print_identity(const IdentityAst& ast) {
  std::string s;
  if (!ast.params.empty()) {
    s += "param ";
    for (std::size_t i = 0; i < ast.params.size(); ++i) s += (i ? ", " : "") + ast.params[i];
    s += "; ";
  }
  for (const auto& c : ast.sums) {
    s += "sum " + c.var;
    if (c.lo) s += " = " + print_expr(*c.lo) + " .. " + print_expr(*c.hi);
    s += " ";
  }
  s += ": " + print_expr(ast.lhs);
  if (ast.rhs) s += " == " + print_expr(*ast.rhs);
  return s;
}

IdentityAst parse_identity(const std::string& src) { return Parser(lex(src)).identity(); }

// ---------------------------------------------------------------- lowering

namespace {

class Lowerer {
 public:
  explicit Lowerer(const IdentityAst& ast) {
    known_.insert(main_);
    for (const auto& p : ast.params) {
      if (!known_.insert(p).second) throw ParseError("parameter '" + p + "' declared twice", 1, 1);
      params_.insert(p);
    }
    for (const auto& s : ast.sums) {
      if (!known_.insert(s.var).second) {
        throw ParseError("summation variable '" + s.var + "' clashes with another name", s.line, s.column);
      }
      sum_vars_.insert(s.var);
    }
  }

  /// Polynomial value of e, or nullopt when e is not a polynomial.
  std::optional<MultiPoly> poly(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Number: return MultiPoly(e.value);
      case Expr::Kind::Var: return MultiPoly::variable(check_var(e));
      case Expr::Kind::Call: return std::nullopt;
      case Expr::Kind::Neg: {
        auto a = poly(e.args[0]);
        if (!a) return std::nullopt;
        return -*a;
      }
      case Expr::Kind::Add:
      case Expr::Kind::Sub:
      case Expr::Kind::Mul: {
        auto a = poly(e.args[0]);
        auto b = poly(e.args[1]);
        if (!a || !b) return std::nullopt;
        if (e.kind == Expr::Kind::Add) return *a + *b;
        if (e.kind == Expr::Kind::Sub) return *a - *b;
        return *a * *b;
      }
      case Expr::Kind::Div: {
        auto a = poly(e.args[0]);
        auto b = poly(e.args[1]);
        if (!a || !b || !b->is_constant()) return std::nullopt;
        if (b->is_zero()) throw ParseError("division by zero", e.line, e.column);
        return *a * Rational(1 / b->constant_value());
      }
      case Expr::Kind::Pow: {
        auto a = poly(e.args[0]);
        auto b = poly(e.args[1]);
        if (!a || !b || !b->is_constant()) return std::nullopt;
        Rational x = b->constant_value();
        if (!is_integer(x) || x < 0 || x > 64) return std::nullopt;
        return a->pow(static_cast<unsigned>(to_long(x)));
      }
    }
    return std::nullopt;
  }

  LinForm linear(const Expr& e, const std::string& what, bool integer_offset) const {
    auto p = poly(e);
    std::optional<LinForm> l;
    if (p) l = LinForm::from_poly(*p);
    if (!l && p && p->total_degree() <= 1) {
      throw ParseError(what + " " + print_expr(e) + " is not integer-valued", e.line, e.column);
    }
    if (!l) throw ParseError("non-linear " + what + " " + print_expr(e), e.line, e.column);
    for (const auto& [v, c] : l->coefficients()) {
      if (params_.count(v) != 0U) {
        throw ParseError(what + " must not involve the parameter " + v, e.line, e.column);
      }
    }
    if (integer_offset && !l->has_integer_offset()) {
      throw ParseError(what + " " + print_expr(e) + " is not integer-valued", e.line, e.column);
    }
    return *l;
  }

  HyperTerm term(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Number: return HyperTerm(e.value);
      case Expr::Kind::Var:
      case Expr::Kind::Add:
      case Expr::Kind::Sub: {
        auto p = poly(e);
        if (!p) throw ParseError("a sum inside a product must be a polynomial: " + print_expr(e), e.line, e.column);
        return poly_term(*p);
      }
      case Expr::Kind::Neg: return HyperTerm(-1) * term(e.args[0]);
      case Expr::Kind::Mul: return term(e.args[0]) * term(e.args[1]);
      case Expr::Kind::Div: {
        HyperTerm d = term(e.args[1]);
        if (d.is_zero()) throw ParseError("division by zero", e.args[1].line, e.args[1].column);
        return term(e.args[0]) / d;
      }
      case Expr::Kind::Pow: return power(e);
      case Expr::Kind::Call: return call(e);
    }
    throw ParseError("unsupported expression", e.line, e.column);
  }

  HyperTerm power(const Expr& e) const {
    const Expr& base = e.args[0];
    const Expr& ex = e.args[1];
    LinForm l = linear(ex, "exponent", false);
    if (l.is_constant()) {
      if (!l.has_integer_offset()) throw ParseError("fractional exponent " + print_expr(ex), ex.line, ex.column);
      Rational m = l.offset();
      if (abs(m) > 1000) throw ParseError("exponent too large", ex.line, ex.column);
      HyperTerm b = term(base);
      if (b.is_zero() && m < 0) throw ParseError("zero to a negative power", e.line, e.column);
      return b.pow(static_cast<int>(to_long(m)));
    }
    if (!l.has_integer_offset()) throw ParseError("exponent " + print_expr(ex) + " is not integer-valued", ex.line, ex.column);
    auto b = poly(base);
    if (!b) throw ParseError("base of a symbolic power must be a polynomial in the parameters", base.line, base.column);
    for (const auto& v : b->occurring_variables()) {
      if (params_.count(v) == 0U) {
        throw ParseError("base of a symbolic power must not depend on " + v, base.line, base.column);
      }
    }
    if (b->is_zero()) throw ParseError("zero base in a symbolic power", base.line, base.column);
    if (b->is_constant() && b->constant_value() == -1) return HyperTerm(1, {HyperAtom::sign(l)});
    if (b->is_constant() && b->constant_value() == 1) return HyperTerm(1);
    return HyperTerm(1, {HyperAtom::power(*b, l)});
  }

  HyperTerm call(const Expr& e) const {
    auto arity = [&](std::size_t n) {
      if (e.args.size() != n) {
        throw ParseError(e.name + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"), e.line, e.column);
      }
    };
    if (e.name == "factorial") {
      arity(1);
      return HyperTerm(1, {HyperAtom::factorial(linear(e.args[0], "factorial argument", true))});
    }
    if (e.name == "binomial") {
      arity(2);
      return HyperTerm(1, {HyperAtom::binomial(linear(e.args[0], "binomial argument", true),
                                               linear(e.args[1], "binomial argument", true))});
    }
    if (e.name == "poch") {
      arity(2);
      return HyperTerm(1, {HyperAtom::pochhammer(linear(e.args[0], "Pochhammer base", false),
                                                 linear(e.args[1], "Pochhammer length", true))});
    }
    throw ParseError("unknown function '" + e.name + "'", e.line, e.column);
  }

  std::vector<HyperTerm> rhs_terms(const Expr& e) const {
    std::vector<HyperTerm> out;
    collect(e, 1, out);
    return out;
  }

  const std::string& main() const { return main_; }

 private:
  void collect(const Expr& e, int sign, std::vector<HyperTerm>& out) const {
    bool poly_sum = (e.kind == Expr::Kind::Add || e.kind == Expr::Kind::Sub) && poly(e).has_value();
    if ((e.kind == Expr::Kind::Add || e.kind == Expr::Kind::Sub) && !poly_sum) {
      collect(e.args[0], sign, out);
      collect(e.args[1], e.kind == Expr::Kind::Add ? sign : -sign, out);
      return;
    }
    HyperTerm t = HyperTerm(sign) * term(e);
    if (!t.is_zero()) out.push_back(t);
  }

  const std::string& check_var(const Expr& e) const {
    if (known_.count(e.name) == 0U) throw ParseError("unknown variable '" + e.name + "'", e.line, e.column);
    return e.name;
  }

  static HyperTerm poly_term(const MultiPoly& p) {
    if (p.is_zero()) return HyperTerm(0);
    auto [unit, prim] = p.canonical_split();
    if (prim.is_constant()) return HyperTerm(unit * prim.constant_value());
    return HyperTerm(unit, {HyperAtom::poly(prim)});
  }

  std::string main_ = "n";
  std::set<std::string> known_;
  std::set<std::string> params_;
  std::set<std::string> sum_vars_;
};

}  // namespace

Identity lower_identity(const IdentityAst& ast) {
  Lowerer low(ast);
  Identity id;
  id.main_var = low.main();
  id.params = ast.params;
  for (const auto& s : ast.sums) {
    SumRange r;
    r.var = s.var;
    if (s.lo) r.lo = low.linear(*s.lo, "summation bound", true);
    if (s.hi) r.hi = low.linear(*s.hi, "summation bound", true);
    id.sums.push_back(r);
  }
  id.summand = low.term(ast.lhs);
  if (ast.rhs) id.rhs = low.rhs_terms(*ast.rhs);
  return id;
}

Identity load_identity(const std::string& src) {
  IdentityAst ast = parse_identity(src);
  Identity id = lower_identity(ast);
  if (!ast.rhs) throw ParseError("identity has no right-hand side ('== ...')", 1, 1);
  return id;
}

std::string fnv1a64(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string identity_hash(const IdentityAst& ast) { return fnv1a64(print_identity(ast)); }

}  // namespace wzcert
