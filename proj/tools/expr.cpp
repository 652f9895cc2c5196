#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <vector>

#include "fracgreen/errors.hpp"

namespace fracgreen::cli {

namespace {

using Fn = std::function<double(double, double)>;

class Parser {
 public:
  Parser(const std::string& s, const std::map<std::string, double>& sym) : s_(s), sym_(sym) {}

  Fn parse() {
    Fn f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "expression '" << s_ << "': " << what << " at column " << pos_ + 1;
    throw InvalidParam(os.str());
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Fn expr() {
    Fn lhs = term();
    for (;;) {
      if (eat('+')) {
        Fn r = term();
        lhs = [l = lhs, r](double x, double y) { return l(x, y) + r(x, y); };
      } else if (eat('-')) {
        Fn r = term();
        lhs = [l = lhs, r](double x, double y) { return l(x, y) - r(x, y); };
      } else {
        return lhs;
      }
    }
  }

  Fn term() {
    Fn lhs = unary();
    for (;;) {
      if (eat('*')) {
        Fn r = unary();
        lhs = [l = lhs, r](double x, double y) { return l(x, y) * r(x, y); };
      } else if (eat('/')) {
        Fn r = unary();
        lhs = [l = lhs, r](double x, double y) { return l(x, y) / r(x, y); };
      } else {
        return lhs;
      }
    }
  }

  Fn unary() {
    if (eat('-')) {
      Fn a = unary();
      return [a](double x, double y) { return -a(x, y); };
    }
    if (eat('+')) return unary();
    return power();
  }

  Fn power() {
    Fn base = primary();
    if (eat('^')) {
      Fn ex = unary();
      return [base, ex](double x, double y) { return std::pow(base(x, y), ex(x, y)); };
    }
    return base;
  }

  Fn primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Fn f = expr();
      if (!eat(')')) fail("missing ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return [v](double, double) { return v; };
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (eat('(')) {
        Fn a = expr();
        if (!eat(')')) fail("missing ')' after argument of " + name);
        return call(name, a);
      }
      if (name == "x") return [](double x, double) { return x; };
      if (name == "y") return [](double, double y) { return y; };
      if (name == "pi") return [](double, double) { return M_PI; };
      if (name == "e") return [](double, double) { return M_E; };
      auto it = sym_.find(name);
      if (it == sym_.end()) fail("unknown name '" + name + "'");
      const double v = it->second;
      return [v](double, double) { return v; };
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Fn call(const std::string& name, Fn a) {
    double (*f)(double) = nullptr;
    if (name == "sin") f = [](double t) { return std::sin(t); };
    else if (name == "cos") f = [](double t) { return std::cos(t); };
    else if (name == "exp") f = [](double t) { return std::exp(t); };
    else if (name == "sqrt") f = [](double t) { return std::sqrt(t); };
    else if (name == "log") f = [](double t) { return std::log(t); };
    else if (name == "abs") f = [](double t) { return std::abs(t); };
    else if (name == "gamma") f = [](double t) { return std::tgamma(t); };
    else fail("unknown function '" + name + "'");
    return [f, a](double x, double y) { return f(a(x, y)); };
  }

  const std::string& s_;
  const std::map<std::string, double>& sym_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text, const std::map<std::string, double>& symbols) {
  Expression e;
  e.text_ = text;
  e.fn_ = Parser(e.text_, symbols).parse();
  return e;
}

}  // namespace fracgreen::cli
