#include "berger/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <type_traits>
#include <sstream>
#include <system_error>

namespace berger {

namespace {

using Node = Expression::Node;
using NodePtr = Expression::NodePtr;

constexpr std::array<std::pair<std::string_view, Function>, 9> kFunctions{{
    {"sin", Function::Sin},
    {"cos", Function::Cos},
    {"tan", Function::Tan},
    {"sinh", Function::Sinh},
    {"cosh", Function::Cosh},
    {"tanh", Function::Tanh},
    {"exp", Function::Exp},
    {"log", Function::Log},
    {"sqrt", Function::Sqrt},
}};

NodePtr make(auto&& payload) { return std::make_shared<const Node>(Node{std::forward<decltype(payload)>(payload)}); }

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> coords) : src_(src), coords_(coords) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
    NodePtr e = parse_sum();
    skip_ws();
    if (pos_ < src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      if (accept('+'))
        lhs = make(Expression::Binary{BinaryOp::Add, lhs, parse_product()});
      else if (accept('-'))
        lhs = make(Expression::Binary{BinaryOp::Sub, lhs, parse_product()});
      else
        return lhs;
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Expression::Binary{BinaryOp::Mul, lhs, parse_unary()});
      else if (accept('/'))
        lhs = make(Expression::Binary{BinaryOp::Div, lhs, parse_unary()});
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make(Expression::Negate{parse_unary()});
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make(Expression::Binary{BinaryOp::Pow, base, parse_unary()});
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (is_digit(c) || c == '.') return parse_number();
    if (is_ident_start(c)) return parse_identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && is_digit(src_[p])) {
        while (p < src_.size() && is_digit(src_[p])) ++p;
        pos_ = p;
      }
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    if (text == ".") throw ParseError("malformed number", start);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) throw ParseError("malformed number", start);
    return make(Expression::Number{value});
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      for (const auto& [fname, f] : kFunctions) {
        if (fname == name) {
          ++pos_;
          NodePtr arg = parse_sum();
          if (!accept(')')) throw ParseError("expected ')'", pos_);
          return make(Expression::Call{f, arg});
        }
      }
      throw ParseError("unknown function '" + std::string(name) + "'", start);
    }
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] == name) return make(Expression::Variable{static_cast<int>(i)});
    if (name == "pi") return make(Expression::Constant{"pi", std::numbers::pi});
    if (name == "e") return make(Expression::Constant{"e", std::numbers::e});
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view src_;
  std::span<const std::string> coords_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

int precedence(const Node& n) {
  if (const auto* b = std::get_if<Expression::Binary>(&n.data)) {
    switch (b->op) {
      case BinaryOp::Add:
      case BinaryOp::Sub:
        return 1;
      case BinaryOp::Mul:
      case BinaryOp::Div:
        return 2;
      case BinaryOp::Pow:
        return 4;
    }
  }
  if (std::holds_alternative<Expression::Negate>(n.data)) return 3;
  if (const auto* num = std::get_if<Expression::Number>(&n.data))
    return num->value < 0 || std::signbit(num->value) ? 3 : 5;  // negative literals print with a sign
  return 5;
}

void print(const Node& n, const std::vector<std::string>& coords, std::string& out);

void print_wrapped(const Node& n, bool wrap, const std::vector<std::string>& coords, std::string& out) {
  if (wrap) out += '(';
  print(n, coords, out);
  if (wrap) out += ')';
}

void print(const Node& n, const std::vector<std::string>& coords, std::string& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Expression::Number>) {
          out += format_number(v.value);
        } else if constexpr (std::is_same_v<T, Expression::Constant>) {
          out += v.name;
        } else if constexpr (std::is_same_v<T, Expression::Variable>) {
          out += coords[static_cast<std::size_t>(v.index)];
        } else if constexpr (std::is_same_v<T, Expression::Negate>) {
          out += '-';
          print_wrapped(*v.operand, precedence(*v.operand) < 3, coords, out);
        } else if constexpr (std::is_same_v<T, Expression::Binary>) {
          const int p = precedence(n);
          if (v.op == BinaryOp::Pow) {
            print_wrapped(*v.lhs, precedence(*v.lhs) <= p, coords, out);
            out += '^';
            print_wrapped(*v.rhs, precedence(*v.rhs) < 3, coords, out);
          } else {
            print_wrapped(*v.lhs, precedence(*v.lhs) < p, coords, out);
            switch (v.op) {
              case BinaryOp::Add:
                out += " + ";
                break;
              case BinaryOp::Sub:
                out += " - ";
                break;
              case BinaryOp::Mul:
                out += " * ";
                break;
              default:
                out += " / ";
                break;
            }
            // Left associativity: an equal-precedence right operand needs parentheses.
            print_wrapped(*v.rhs, precedence(*v.rhs) <= p, coords, out);
          }
        } else {
          out += function_name(v.function);
          out += '(';
          print(*v.argument, coords, out);
          out += ')';
        }
      },
      n.data);
}

bool equal(const Node& a, const Node& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      [&](const auto& va) -> bool {
        using T = std::decay_t<decltype(va)>;
        const auto& vb = std::get<T>(b.data);
        if constexpr (std::is_same_v<T, Expression::Number>) {
          return va.value == vb.value;
        } else if constexpr (std::is_same_v<T, Expression::Constant>) {
          return va.name == vb.name;
        } else if constexpr (std::is_same_v<T, Expression::Variable>) {
          return va.index == vb.index;
        } else if constexpr (std::is_same_v<T, Expression::Negate>) {
          return equal(*va.operand, *vb.operand);
        } else if constexpr (std::is_same_v<T, Expression::Binary>) {
          return va.op == vb.op && equal(*va.lhs, *vb.lhs) && equal(*va.rhs, *vb.rhs);
        } else {
          return va.function == vb.function && equal(*va.argument, *vb.argument);
        }
      },
      a.data);
}

bool mentions_variable(const Node& n) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Expression::Variable>) {
          return true;
        } else if constexpr (std::is_same_v<T, Expression::Negate>) {
          return mentions_variable(*v.operand);
        } else if constexpr (std::is_same_v<T, Expression::Binary>) {
          return mentions_variable(*v.lhs) || mentions_variable(*v.rhs);
        } else if constexpr (std::is_same_v<T, Expression::Call>) {
          return mentions_variable(*v.argument);
        } else {
          return false;
        }
      },
      n.data);
}

// Literal exponent (possibly negated), if any.
std::optional<double> literal_exponent(const Node& n) {
  if (const auto* num = std::get_if<Expression::Number>(&n.data)) return num->value;
  if (const auto* neg = std::get_if<Expression::Negate>(&n.data))
    if (const auto* num = std::get_if<Expression::Number>(&neg->operand->data)) return -num->value;
  return std::nullopt;
}

double value_of(double v) { return v; }
double value_of(const Jet3& j) { return j.value(); }
bool carries_derivatives(double) { return false; }
bool carries_derivatives(const Jet3& j) { return j.order() >= 1; }

template <typename T>
T constant_like(const T& like, double v) {
  if constexpr (std::is_same_v<T, double>) {
    return v;
  } else {
    return T(like.dim(), v, like.order());
  }
}

[[noreturn]] void domain_violation(const std::string& what, const Node& n, const std::vector<std::string>& coords) {
  throw EvaluationError(what + " in subexpression '" + to_string(n, coords) + "'");
}

template <typename T>
class Evaluator {
 public:
  Evaluator(std::span<const T> vars, const std::vector<std::string>& coords) : vars_(vars), coords_(coords) {}

  T eval(const Node& n) const {
    return std::visit([&](const auto& v) -> T { return this->eval_node(v, n); }, n.data);
  }

 private:
  T constant(double v) const { return constant_like(vars_.empty() ? zero_ : vars_[0], v); }

  T eval_node(const Expression::Number& v, const Node&) const { return constant(v.value); }
  T eval_node(const Expression::Constant& v, const Node&) const { return constant(v.value); }
  T eval_node(const Expression::Variable& v, const Node&) const { return vars_[static_cast<std::size_t>(v.index)]; }
  T eval_node(const Expression::Negate& v, const Node&) const { return -eval(*v.operand); }

  T eval_node(const Expression::Binary& v, const Node& self) const {
    using std::exp, std::log, std::pow;
    T lhs = eval(*v.lhs);
    switch (v.op) {
      case BinaryOp::Add:
        return lhs + eval(*v.rhs);
      case BinaryOp::Sub:
        return lhs - eval(*v.rhs);
      case BinaryOp::Mul:
        return lhs * eval(*v.rhs);
      case BinaryOp::Div: {
        T rhs = eval(*v.rhs);
        if (value_of(rhs) == 0.0) domain_violation("division by zero", self, coords_);
        return lhs / rhs;
      }
      case BinaryOp::Pow: {
        if (auto p = literal_exponent(*v.rhs)) {
          const double base = value_of(lhs);
          const bool integral = std::floor(*p) == *p;
          if (!integral && base < 0.0) domain_violation("non-integer power of a negative base", self, coords_);
          if (base == 0.0 && (*p < 0.0 || (!integral && carries_derivatives(lhs) && *p < 3.0)))
            domain_violation("singular power at zero", self, coords_);
          return pow(lhs, *p);
        }
        if (value_of(lhs) <= 0.0) domain_violation("general power needs a positive base", self, coords_);
        return exp(eval(*v.rhs) * log(lhs));
      }
    }
    return lhs;
  }

  T eval_node(const Expression::Call& v, const Node& self) const {
    using std::cos, std::cosh, std::exp, std::log, std::sin, std::sinh, std::sqrt, std::tan, std::tanh;
    T a = eval(*v.argument);
    switch (v.function) {
      case Function::Sin:
        return sin(a);
      case Function::Cos:
        return cos(a);
      case Function::Tan:
        if (cos(value_of(a)) == 0.0) domain_violation("tan at a pole", self, coords_);
        return tan(a);
      case Function::Sinh:
        return sinh(a);
      case Function::Cosh:
        return cosh(a);
      case Function::Tanh:
        return tanh(a);
      case Function::Exp:
        return exp(a);
      case Function::Log:
        if (value_of(a) <= 0.0) domain_violation("log of a non-positive value", self, coords_);
        return log(a);
      case Function::Sqrt:
        if (value_of(a) < 0.0 || (value_of(a) == 0.0 && carries_derivatives(a)))
          domain_violation("sqrt outside its differentiable domain", self, coords_);
        return sqrt(a);
    }
    return a;
  }

  std::span<const T> vars_;
  const std::vector<std::string>& coords_;
  T zero_{};
};

}  // namespace

std::string_view function_name(Function f) {
  for (const auto& [name, fn] : kFunctions)
    if (fn == f) return name;
  return "?";
}

Expression::Expression(NodePtr root, std::vector<std::string> coordinates)
    : root_(std::move(root)), coordinates_(std::make_shared<const std::vector<std::string>>(std::move(coordinates))) {}

Expression Expression::constant(double value, std::vector<std::string> coordinates) {
  NodePtr n = value < 0 ? make(Negate{make(Number{-value})}) : make(Number{value});
  return Expression(std::move(n), std::move(coordinates));
}

double Expression::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != arity()) throw EvaluationError("point dimension does not match expression");
  return Evaluator<double>(point, *coordinates_).eval(*root_);
}

double Expression::evaluate(const Eigen::VectorXd& point) const {
  return evaluate(std::span<const double>(point.data(), static_cast<std::size_t>(point.size())));
}

Jet3 Expression::evaluate_jet(const Eigen::VectorXd& point, int order) const {
  const int n = arity();
  if (point.size() != n) throw EvaluationError("point dimension does not match expression");
  std::vector<Jet3> vars;
  vars.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vars.push_back(Jet3::variable(n, i, point(i), order));
  if (n == 0) {
    // Zero-dimensional chart: only the value is meaningful.
    return Jet3(0, evaluate(point), order);
  }
  return Evaluator<Jet3>(vars, *coordinates_).eval(*root_);
}

std::string Expression::to_string() const { return berger::to_string(*root_, *coordinates_); }

bool Expression::is_constant() const { return !mentions_variable(*root_); }

bool operator==(const Expression& a, const Expression& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  return a.coordinates() == b.coordinates() && equal(*a.root_, *b.root_);
}

std::string to_string(const Expression::Node& node, const std::vector<std::string>& coordinates) {
  std::string out;
  print(node, coordinates, out);
  return out;
}

Expression parse_expression(std::string_view source, std::span<const std::string> coordinates) {
  NodePtr root = Parser(source, coordinates).parse();
  return Expression(std::move(root), std::vector<std::string>(coordinates.begin(), coordinates.end()));
}

Expression parse_expression(std::string_view source, const std::vector<std::string>& coordinates) {
  return parse_expression(source, std::span<const std::string>(coordinates));
}

}  // namespace berger
