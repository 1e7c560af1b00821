#pragma once

#include "berger/expr.hpp"
#include "berger/manifold.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

namespace testing {

// Random expression text over `coords`, total on [-1, 1]^n: divisions,
// logs and square roots are guarded by positive shifts; literals stay small.
class ExpressionGenerator {
 public:
  ExpressionGenerator(std::vector<std::string> coords, std::uint64_t seed) : coords_(std::move(coords)), rng_(seed) {}

  std::string operator()(int depth) { return node(depth); }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string leaf() {
    switch (pick(4)) {
      case 0: return std::to_string(pick(3) + 1);
      case 1: return "0." + std::to_string(pick(100));
      case 2: return pick(2) ? "pi" : "e";
      default: return coords_[static_cast<std::size_t>(pick(static_cast<int>(coords_.size())))];
    }
  }

  std::string node(int depth) {
    if (depth <= 0 || pick(5) == 0) return leaf();
    const std::string a = node(depth - 1);
    switch (pick(11)) {
      case 0: return a + " + " + node(depth - 1);
      case 1: return a + " - " + node(depth - 1);
      case 2: return "(" + a + ")*(" + node(depth - 1) + ")";
      case 3: return "(" + a + ")/(2 + (" + node(depth - 1) + ")^2)";
      case 4: return "-(" + a + ")";
      case 5: return "(" + a + ")^" + std::to_string(pick(2) + 2);
      case 6: return std::string(pick(2) ? "sin" : "cos") + "(" + a + ")";
      case 7: return "tanh(" + a + ")";
      case 8: return "exp(tanh(" + a + "))";
      case 9: return "log(1.5 + sin(" + a + "))";
      default: return "sqrt(1 + (" + a + ")^2)";
    }
  }

  std::vector<std::string> coords_;
  std::mt19937_64 rng_;
};

inline bool close(double a, double b, double rel, double abs) {
  return std::abs(a - b) <= abs || std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// Fourth-order central difference of f along coordinate k.
template <class F>
auto central(F&& f, const Eigen::VectorXd& p, int k, double h) {
  using R = std::decay_t<decltype(f(p))>;
  auto at = [&](double s) {
    Eigen::VectorXd q = p;
    q(k) += s;
    return R(f(q));
  };
  return R((8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12 * h));
}

// Flat model on two coordinates with alpha(x): analytic formulas for the
// deformed metric diag(alpha, 2 alpha).
struct Flat2Alpha {
  double a, a1, a2, a3;  // alpha and its x-derivatives

  double gaussian() const { return (a1 * a1 - a * a2) / (2 * a * a * a); }
  double scalar() const { return 2 * gaussian(); }
  double bitension_to_deformed() const {
    return (4 * a * a * a3 - 10 * a * a1 * a2 + 5 * a1 * a1 * a1) / (8 * a * a * a);
  }
};

inline Flat2Alpha quadratic_alpha(double x) { return {1 + x * x, 2 * x, 2, 0}; }

inline berger::ManifoldSpec with_source(berger::ManifoldSource src) { return berger::make_manifold(src); }

inline berger::ManifoldSource flat2_with(const std::string& alpha) {
  auto s = berger::builtin_source("flat2");
  s.alpha = alpha;
  return s;
}

}  // namespace testing
