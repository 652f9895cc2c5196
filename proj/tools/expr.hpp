#pragma once

#include <functional>
#include <map>
#include <string>

namespace fracgreen::cli {

/// Compiled arithmetic expression in the variables x and y.
///
/// Grammar: + - * / ^ (right associative), unary minus, parentheses, numbers,
/// the constants pi and e, the functions sin cos exp sqrt log abs gamma, and
/// any names bound in `symbols` (problem coefficients such as alpha or c).
class Expression {
 public:
  Expression() = default;
  static Expression parse(const std::string& text,
                          const std::map<std::string, double>& symbols = {});

  double operator()(double x, double y = 0.0) const { return fn_(x, y); }
  const std::string& text() const { return text_; }

 private:
  std::function<double(double, double)> fn_;
  std::string text_;
};

}  // namespace fracgreen::cli
