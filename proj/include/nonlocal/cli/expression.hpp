#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace nonlocal::cli {

/// Compiled scalar expression in the variables x, y (aliases x1, x2) and t.
///
/// Grammar: numbers, the constants pi and e, + - * / ^ (right associative),
/// unary minus, parentheses, and the functions sin cos tan exp log sqrt abs
/// tanh (one argument) and min max pow (two arguments). Parsing throws
/// ConfigurationError with the offending position.
class Expression {
 public:
  static Expression parse(std::string_view text);

  double operator()(double x, double y, double t) const;

  const std::string& text() const { return text_; }
  /// True when the expression does not mention t.
  bool time_independent() const { return !uses_time_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
  bool uses_time_ = false;
};

}  // namespace nonlocal::cli
