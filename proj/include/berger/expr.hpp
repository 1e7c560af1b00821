#pragma once

#include "berger/errors.hpp"
#include "berger/jet.hpp"

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace berger {

using Jet3 = Jet<double>;

enum class Function { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

std::string_view function_name(Function f);

/// Immutable arithmetic expression over a fixed list of coordinate names.
///
/// Grammar (highest precedence first): primary, `^` (right associative),
/// unary minus, `* /`, `+ -`. A `^` whose exponent is a numeric literal
/// (optionally negated) is a true power; any other exponent is evaluated
/// as exp(y * log(x)) and needs a positive base.
class Expression {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Number {
    double value;
  };
  struct Constant {
    std::string name;  // "pi" or "e"
    double value;
  };
  struct Variable {
    int index;
  };
  struct Negate {
    NodePtr operand;
  };
  struct Binary {
    BinaryOp op;
    NodePtr lhs, rhs;
  };
  struct Call {
    Function function;
    NodePtr argument;
  };

  struct Node {
    std::variant<Number, Constant, Variable, Negate, Binary, Call> data;
  };

  Expression() = default;
  Expression(NodePtr root, std::vector<std::string> coordinates);

  /// Constant expression; printed with round-trip precision.
  static Expression constant(double value, std::vector<std::string> coordinates);

  const Node& root() const { return *root_; }
  const std::vector<std::string>& coordinates() const { return *coordinates_; }
  int arity() const { return static_cast<int>(coordinates_->size()); }
  bool empty() const { return root_ == nullptr; }

  double evaluate(std::span<const double> point) const;
  double evaluate(const Eigen::VectorXd& point) const;

  /// Value and exact partials through `order` (<= 3) at `point`.
  Jet3 evaluate_jet(const Eigen::VectorXd& point, int order = Jet3::kMaxOrder) const;

  /// Canonical text form; parse(to_string()) reproduces the same tree.
  std::string to_string() const;

  /// True when no coordinate occurs in the tree.
  bool is_constant() const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  NodePtr root_;
  std::shared_ptr<const std::vector<std::string>> coordinates_;
};

/// Parses `source` against the given coordinate names.
/// Throws ParseError (syntax, unknown identifier, unknown function).
Expression parse_expression(std::string_view source, std::span<const std::string> coordinates);
Expression parse_expression(std::string_view source, const std::vector<std::string>& coordinates);

/// Jet through order 3 of `expr` at `point`.
inline Jet3 eval_jet3(const Expression& expr, const Eigen::VectorXd& point) {
  return expr.evaluate_jet(point, 3);
}

std::string to_string(const Expression::Node& node, const std::vector<std::string>& coordinates);

}  // namespace berger
