#pragma once

#include <cctype>
#include <charconv>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "blaschke.hpp"
#include "core.hpp"
#include "rational.hpp"

namespace tkern {

class ParseFailure : public Error {
public:
  ParseFailure(size_t pos, std::vector<std::string> expected, const std::string& found)
      : Error(ErrorCode::ParseError, describe(pos, expected, found)), pos_(pos), expected_(std::move(expected)) {}

  size_t position() const { return pos_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  static std::string describe(size_t pos, const std::vector<std::string>& expected, const std::string& found) {
    std::string s = "at position " + std::to_string(pos) + ": expected ";
    for (size_t i = 0; i < expected.size(); ++i) s += (i ? ", " : "") + expected[i];
    return s + "; found " + found;
  }

  size_t pos_;
  std::vector<std::string> expected_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Z, Const, Blaschke, Bar, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind;
  Complex value{0.0};  // Const
  int exponent = 0;    // Pow
  std::vector<ExprPtr> args;

  static ExprPtr make(Kind k, std::vector<ExprPtr> a = {}, Complex v = 0.0, int e = 0) {
    return std::make_shared<const Expr>(Expr{k, v, e, std::move(a)});
  }
};

namespace detail {

class Parser {
public:
  explicit Parser(std::string_view text) : s_(text) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (i_ < s_.size()) fail({"operator", "end of input"});
    return e;
  }

private:
  static constexpr int max_depth = 200;
  static constexpr int max_exponent = 64;

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  bool accept_word(std::string_view w) {
    skip();
    if (s_.substr(i_, w.size()) == w) {
      size_t after = i_ + w.size();
      skip_to(after);
      return true;
    }
    return false;
  }

  void skip_to(size_t p) { i_ = p; }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip();
    std::string found = i_ < s_.size() ? "'" + std::string(1, s_[i_]) + "'" : "end of input";
    throw ParseFailure(i_, std::move(expected), found);
  }

  void expect(char c) {
    if (!accept(c)) fail({"'" + std::string(1, c) + "'"});
  }

  struct Depth {
    Parser& p;
    explicit Depth(Parser& q) : p(q) {
      if (++p.depth_ > max_depth) p.fail({"shallower nesting"});
    }
    ~Depth() { --p.depth_; }
  };

  ExprPtr expr() {
    Depth guard(*this);
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = Expr::make(Expr::Kind::Add, {lhs, term()});
      else if (accept('-')) lhs = Expr::make(Expr::Kind::Sub, {lhs, term()});
      else return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = Expr::make(Expr::Kind::Mul, {lhs, unary()});
      else if (accept('/')) lhs = Expr::make(Expr::Kind::Div, {lhs, unary()});
      else return lhs;
    }
  }

  ExprPtr unary() {
    Depth guard(*this);
    if (accept('-')) return Expr::make(Expr::Kind::Neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr b = base();
    if (accept('^')) {
      skip();
      bool neg = accept('-');
      if (!neg) accept('+');
      skip();
      size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ == start) fail({"integer exponent"});
      int e = 0;
      auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + i_, e);
      if (ec != std::errc() || e > max_exponent) {
        i_ = start;
        fail({"integer exponent of size at most " + std::to_string(max_exponent)});
      }
      return Expr::make(Expr::Kind::Pow, {b}, 0.0, neg ? -e : e);
    }
    return b;
  }

  ExprPtr base() {
    skip();
    if (accept_word("bar")) {
      expect('(');
      ExprPtr e = expr();
      expect(')');
      return Expr::make(Expr::Kind::Bar, {e});
    }
    if (accept_word("B")) {
      expect('(');
      ExprPtr e = expr();
      expect(')');
      return Expr::make(Expr::Kind::Blaschke, {e});
    }
    if (accept('z')) return Expr::make(Expr::Kind::Z);
    if (accept('i')) return Expr::make(Expr::Kind::Const, {}, I_unit);
    if (accept('(')) {
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) return number();
    fail({"'z'", "'i'", "number", "'B('", "'bar('", "'('", "'-'"});
  }

  ExprPtr number() {
    size_t start = i_;
    while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      size_t save = i_++;
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
      size_t digits = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ == digits) i_ = save;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + i_, v);
    if (ec != std::errc() || ptr != s_.data() + i_) {
      i_ = start;
      fail({"number"});
    }
    if (i_ < s_.size() && s_[i_] == 'i') {
      ++i_;
      return Expr::make(Expr::Kind::Const, {}, Complex{0.0, v});
    }
    return Expr::make(Expr::Kind::Const, {}, v);
  }

  std::string_view s_;
  size_t i_ = 0;
  int depth_ = 0;
};

}  // namespace detail

inline ExprPtr parse(std::string_view text) { return detail::Parser(text).parse(); }

// Pushes bar() down to the leaves: it distributes over the field operations,
// conjugates constants, sends z to 1/z and B(a) to 1/B(a). No Bar node
// survives.
inline ExprPtr normalize(const ExprPtr& e, bool bar = false) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::Z:
      return bar ? Expr::make(K::Div, {Expr::make(K::Const, {}, 1.0), e}) : e;
    case K::Const:
      return bar ? Expr::make(K::Const, {}, std::conj(e->value)) : e;
    case K::Blaschke: {
      ExprPtr inner = Expr::make(K::Blaschke, {normalize(e->args[0], false)});
      return bar ? Expr::make(K::Div, {Expr::make(K::Const, {}, 1.0), inner}) : inner;
    }
    case K::Bar:
      return normalize(e->args[0], !bar);
    case K::Neg:
      return Expr::make(K::Neg, {normalize(e->args[0], bar)});
    case K::Pow:
      return Expr::make(K::Pow, {normalize(e->args[0], bar)}, 0.0, e->exponent);
    default:
      return Expr::make(e->kind, {normalize(e->args[0], bar), normalize(e->args[1], bar)});
  }
}

inline RationalFunction evaluate(const ExprPtr& e) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::Z: return RationalFunction::z();
    case K::Const: return RationalFunction(e->value);
    case K::Blaschke: {
      RationalFunction a = evaluate(e->args[0]);
      if (!a.is_constant()) throw Error(ErrorCode::InvalidArgument, "B() takes a constant argument");
      return BlaschkeProduct::factor(a.gain()).to_rational();
    }
    case K::Bar: return boundary_conjugate(evaluate(e->args[0]));
    case K::Neg: return -evaluate(e->args[0]);
    case K::Add: return evaluate(e->args[0]) + evaluate(e->args[1]);
    case K::Sub: return evaluate(e->args[0]) - evaluate(e->args[1]);
    case K::Mul: return evaluate(e->args[0]) * evaluate(e->args[1]);
    case K::Div: {
      RationalFunction d = evaluate(e->args[1]);
      if (d.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
      return evaluate(e->args[0]) / d;
    }
    case K::Pow: {
      RationalFunction b = evaluate(e->args[0]);
      if (b.is_zero() && e->exponent < 0) throw Error(ErrorCode::InvalidArgument, "negative power of zero");
      return b.pow(e->exponent);
    }
  }
  return {};
}

inline RationalFunction parse_rational(std::string_view text) { return evaluate(normalize(parse(text))); }

inline std::string to_string(const ExprPtr& e) {
  using K = Expr::Kind;
  auto num = [](Complex c) {
    std::string s = "(" + std::to_string(c.real());
    if (c.imag() != 0.0) s += (c.imag() < 0 ? "-" : "+") + std::to_string(std::abs(c.imag())) + "i";
    return s + ")";
  };
  switch (e->kind) {
    case K::Z: return "z";
    case K::Const: return num(e->value);
    case K::Blaschke: return "B(" + to_string(e->args[0]) + ")";
    case K::Bar: return "bar(" + to_string(e->args[0]) + ")";
    case K::Neg: return "-(" + to_string(e->args[0]) + ")";
    case K::Add: return "(" + to_string(e->args[0]) + "+" + to_string(e->args[1]) + ")";
    case K::Sub: return "(" + to_string(e->args[0]) + "-" + to_string(e->args[1]) + ")";
    case K::Mul: return "(" + to_string(e->args[0]) + "*" + to_string(e->args[1]) + ")";
    case K::Div: return "(" + to_string(e->args[0]) + "/" + to_string(e->args[1]) + ")";
    case K::Pow: return "(" + to_string(e->args[0]) + ")^" + std::to_string(e->exponent);
  }
  return "";
}

}  // namespace tkern
