#pragma once

#include <cctype>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gstab/errors.hpp"
#include "gstab/state_vector.hpp"

namespace gstab {

// Tiny arithmetic grammar so user systems stay data, not code:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-')* power
//   power  := atom ('^' factor)?
//   atom   := number | 'pi' | 'e' | variable | func '(' args ')' | '(' expr ')'
// Variables are x1..xn (x, y, z alias the first three). Functions:
// sin, cos, tan, tanh, exp, ln, abs, and norm(...) (no arguments: the norm
// of the whole state).
class Expression {
 public:
  static Expression parse(const std::string& src, int dim) {
    Parser p(src, dim);
    Expression e;
    e.dim_ = dim;
    e.src_ = src;
    e.root_ = p.parse_expr();
    p.expect_end();
    return e;
  }

  double eval(const StateVector& x) const {
    if (x.dim() != dim_) {
      throw DimensionMismatch("expression evaluated at wrong dimension");
    }
    return root_->eval(x);
  }

  int dim() const { return dim_; }
  const std::string& source() const { return src_; }

 private:
  struct Node {
    virtual ~Node() = default;
    virtual double eval(const StateVector& x) const = 0;
  };
  using NodePtr = std::shared_ptr<const Node>;

  struct Const : Node {
    double v;
    explicit Const(double v) : v(v) {}
    double eval(const StateVector&) const override { return v; }
  };
  struct Var : Node {
    std::size_t idx;
    explicit Var(std::size_t idx) : idx(idx) {}
    double eval(const StateVector& x) const override { return x[idx]; }
  };
  struct Unary : Node {
    double (*fn)(double);
    NodePtr a;
    Unary(double (*fn)(double), NodePtr a) : fn(fn), a(std::move(a)) {}
    double eval(const StateVector& x) const override { return fn(a->eval(x)); }
  };
  struct Binary : Node {
    char op;
    NodePtr a, b;
    Binary(char op, NodePtr a, NodePtr b)
        : op(op), a(std::move(a)), b(std::move(b)) {}
    double eval(const StateVector& x) const override {
      double l = a->eval(x);
      double r = b->eval(x);
      switch (op) {
        case '+': return l + r;
        case '-': return l - r;
        case '*': return l * r;
        case '/': return l / r;
        default:  return std::pow(l, r);
      }
    }
  };
  struct Norm : Node {
    std::vector<NodePtr> args;  // empty: norm of the whole state
    double eval(const StateVector& x) const override {
      if (args.empty()) return x.norm();
      double s = 0.0;
      for (const auto& a : args) {
        double v = a->eval(x);
        s += v * v;
      }
      return std::sqrt(s);
    }
  };

  class Parser {
   public:
    Parser(const std::string& src, int dim) : s_(src), dim_(dim) {}

    NodePtr parse_expr() {
      NodePtr n = parse_term();
      for (;;) {
        skip_ws();
        if (peek() == '+' || peek() == '-') {
          char op = take();
          n = std::make_shared<Binary>(op, n, parse_term());
        } else {
          return n;
        }
      }
    }

    void expect_end() {
      skip_ws();
      if (pos_ != s_.size()) fail("unexpected trailing input");
    }

   private:
    NodePtr parse_term() {
      NodePtr n = parse_factor();
      for (;;) {
        skip_ws();
        if (peek() == '*' || peek() == '/') {
          char op = take();
          n = std::make_shared<Binary>(op, n, parse_factor());
        } else {
          return n;
        }
      }
    }

    NodePtr parse_factor() {
      skip_ws();
      int sign = 1;
      while (peek() == '+' || peek() == '-') {
        if (take() == '-') sign = -sign;
        skip_ws();
      }
      NodePtr n = parse_power();
      if (sign < 0) {
        n = std::make_shared<Binary>('-', std::make_shared<Const>(0.0), n);
      }
      return n;
    }

    NodePtr parse_power() {
      NodePtr base = parse_atom();
      skip_ws();
      if (peek() == '^') {
        take();
        return std::make_shared<Binary>('^', base, parse_factor());
      }
      return base;
    }

    NodePtr parse_atom() {
      skip_ws();
      char c = peek();
      if (c == '(') {
        take();
        NodePtr n = parse_expr();
        skip_ws();
        if (take() != ')') fail("expected ')'");
        return n;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        return parse_number();
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        return parse_ident();
      }
      fail("expected a number, name or '('");
      return nullptr;
    }

    NodePtr parse_number() {
      std::size_t start = pos_;
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(s_.substr(start), &used);
      } catch (const std::exception&) {
        fail("malformed number");
        return nullptr;
      }
      pos_ = start + used;
      return std::make_shared<Const>(v);
    }

    NodePtr parse_ident() {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '_')) {
        ++pos_;
      }
      std::string name = s_.substr(start, pos_ - start);
      if (name == "pi") return std::make_shared<Const>(3.14159265358979323846);
      if (name == "e") return std::make_shared<Const>(2.71828182845904523536);

      static const struct {
        const char* name;
        double (*fn)(double);
      } kFuncs[] = {
          {"sin", std::sin},   {"cos", std::cos}, {"tan", std::tan},
          {"tanh", std::tanh}, {"exp", std::exp}, {"ln", std::log},
          {"abs", std::fabs},
      };
      for (const auto& f : kFuncs) {
        if (name == f.name) {
          auto args = parse_args();
          if (args.size() != 1) {
            fail(name + " takes exactly one argument");
          }
          return std::make_shared<Unary>(f.fn, args[0]);
        }
      }
      if (name == "norm") {
        auto n = std::make_shared<Norm>();
        n->args = parse_args();
        return n;
      }

      if (auto idx = variable_index(name)) {
        return std::make_shared<Var>(*idx);
      }
      fail("unknown name '" + name + "'");
      return nullptr;
    }

    std::vector<NodePtr> parse_args() {
      skip_ws();
      if (take() != '(') fail("expected '(' after function name");
      std::vector<NodePtr> args;
      skip_ws();
      if (peek() == ')') {
        take();
        return args;
      }
      for (;;) {
        args.push_back(parse_expr());
        skip_ws();
        char c = take();
        if (c == ')') return args;
        if (c != ',') fail("expected ',' or ')' in argument list");
      }
    }

    std::optional<std::size_t> variable_index(const std::string& name) const {
      static const char* kAlias[] = {"x", "y", "z"};
      for (std::size_t i = 0; i < 3; ++i) {
        if (name == kAlias[i]) {
          if (static_cast<int>(i) >= dim_) return std::nullopt;
          return i;
        }
      }
      if (name.size() >= 2 && name[0] == 'x') {
        std::size_t idx = 0;
        for (std::size_t k = 1; k < name.size(); ++k) {
          if (!std::isdigit(static_cast<unsigned char>(name[k]))) {
            return std::nullopt;
          }
          idx = idx * 10 + static_cast<std::size_t>(name[k] - '0');
        }
        if (idx >= 1 && idx <= static_cast<std::size_t>(dim_)) return idx - 1;
      }
      return std::nullopt;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char take() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    void skip_ws() {
      while (pos_ < s_.size() &&
             std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      }
    }
    [[noreturn]] void fail(const std::string& msg) const {
      throw ConfigError("expression error at column " +
                        std::to_string(pos_ + 1) + ": " + msg);
    }

    const std::string& s_;
    int dim_;
    std::size_t pos_ = 0;
  };

  int dim_ = 1;
  std::string src_;
  NodePtr root_;
};

}  // namespace gstab
