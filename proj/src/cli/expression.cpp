#include "nonlocal/cli/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "nonlocal/errors.hpp"

namespace nonlocal::cli {

struct Expression::Node {
  enum class Kind { number, x, y, t, negate, add, sub, mul, div, pow, call1, call2 };
  Kind kind = Kind::number;
  double value = 0.0;
  double (*fn1)(double) = nullptr;
  double (*fn2)(double, double) = nullptr;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

double fmin2(double a, double b) { return std::fmin(a, b); }
double fmax2(double a, double b) { return std::fmax(a, b); }
double pow2(double a, double b) { return std::pow(a, b); }

NodePtr leaf(Node::Kind kind, double value = 0.0) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->value = value;
  return n;
}

NodePtr branch(Node::Kind kind, std::vector<NodePtr> args) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

  bool uses_time = false;

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigurationError("expression '" + std::string(s_) + "' at position " +
                             std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = branch(Node::Kind::add, {lhs, term()});
      else if (accept('-'))
        lhs = branch(Node::Kind::sub, {lhs, term()});
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = branch(Node::Kind::mul, {lhs, unary()});
      else if (accept('/'))
        lhs = branch(Node::Kind::div, {lhs, unary()});
      else
        return lhs;
    }
  }

  // -a^b parses as -(a^b)
  NodePtr unary() {
    if (accept('-')) return branch(Node::Kind::negate, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return branch(Node::Kind::pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (accept('(')) {
      NodePtr n = expr();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::string rest(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return leaf(Node::Kind::number, v);
  }

  NodePtr name() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string id(s_.substr(start, pos_ - start));
    if (id == "x" || id == "x1") return leaf(Node::Kind::x);
    if (id == "y" || id == "x2") return leaf(Node::Kind::y);
    if (id == "t") {
      uses_time = true;
      return leaf(Node::Kind::t);
    }
    if (id == "pi") return leaf(Node::Kind::number, std::numbers::pi);
    if (id == "e") return leaf(Node::Kind::number, std::numbers::e);

    static const std::pair<const char*, double (*)(double)> unary_fns[] = {
        {"sin", [](double v) { return std::sin(v); }},   {"cos", [](double v) { return std::cos(v); }},
        {"tan", [](double v) { return std::tan(v); }},   {"exp", [](double v) { return std::exp(v); }},
        {"log", [](double v) { return std::log(v); }},   {"sqrt", [](double v) { return std::sqrt(v); }},
        {"abs", [](double v) { return std::fabs(v); }},  {"tanh", [](double v) { return std::tanh(v); }},
    };
    static const std::pair<const char*, double (*)(double, double)> binary_fns[] = {
        {"min", fmin2}, {"max", fmax2}, {"pow", pow2}};
    for (const auto& [fname, fn] : unary_fns)
      if (id == fname) {
        expect('(');
        NodePtr arg = expr();
        expect(')');
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::call1;
        n->fn1 = fn;
        n->args = {arg};
        return n;
      }
    for (const auto& [fname, fn] : binary_fns)
      if (id == fname) {
        expect('(');
        NodePtr a = expr();
        expect(',');
        NodePtr b = expr();
        expect(')');
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::call2;
        n->fn2 = fn;
        n->args = {a, b};
        return n;
      }
    pos_ = start;
    fail("unknown name '" + id + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, double x, double y, double t) {
  switch (n.kind) {
    case Node::Kind::number: return n.value;
    case Node::Kind::x: return x;
    case Node::Kind::y: return y;
    case Node::Kind::t: return t;
    case Node::Kind::negate: return -eval(*n.args[0], x, y, t);
    case Node::Kind::add: return eval(*n.args[0], x, y, t) + eval(*n.args[1], x, y, t);
    case Node::Kind::sub: return eval(*n.args[0], x, y, t) - eval(*n.args[1], x, y, t);
    case Node::Kind::mul: return eval(*n.args[0], x, y, t) * eval(*n.args[1], x, y, t);
    case Node::Kind::div: return eval(*n.args[0], x, y, t) / eval(*n.args[1], x, y, t);
    case Node::Kind::pow: return std::pow(eval(*n.args[0], x, y, t), eval(*n.args[1], x, y, t));
    case Node::Kind::call1: return n.fn1(eval(*n.args[0], x, y, t));
    case Node::Kind::call2: return n.fn2(eval(*n.args[0], x, y, t), eval(*n.args[1], x, y, t));
  }
  return 0.0;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Parser p(text);
  Expression e;
  e.root_ = p.parse();
  e.text_ = std::string(text);
  e.uses_time_ = p.uses_time;
  return e;
}

double Expression::operator()(double x, double y, double t) const { return eval(*root_, x, y, t); }

}  // namespace nonlocal::cli
