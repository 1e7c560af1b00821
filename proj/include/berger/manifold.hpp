#pragma once

#include "berger/expr.hpp"

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace berger {

/// Closed per-coordinate interval box.
struct DomainBox {
  std::vector<std::pair<double, double>> intervals;

  int dimension() const { return static_cast<int>(intervals.size()); }
  bool contains(const Eigen::VectorXd& point) const;
};

/// A coordinate chart of dimension 2m carrying the metric g, the
/// para-complex structure F (mixed components F^i_j, row i = output index),
/// the unit parallel field V and the conformal factor alpha. Immutable once
/// built through make_manifold.
struct ManifoldSpec {
  std::string name;
  int dimension = 0;
  std::vector<std::string> coordinates;
  std::vector<Expression> metric;     // row-major n x n, g_{ij}
  std::vector<Expression> structure;  // row-major n x n, F^i_j
  std::vector<Expression> field;      // V^i
  Expression alpha;
  DomainBox domain;

  int half_dimension() const { return dimension / 2; }
  const Expression& g(int i, int j) const { return metric[static_cast<std::size_t>(i * dimension + j)]; }
  const Expression& F(int i, int j) const { return structure[static_cast<std::size_t>(i * dimension + j)]; }
  const Expression& V(int i) const { return field[static_cast<std::size_t>(i)]; }
};

/// Textual description of a manifold; every entry uses the expression grammar.
struct ManifoldSource {
  std::string name;
  std::vector<std::string> coordinates;
  std::vector<std::vector<std::string>> metric;
  std::vector<std::vector<std::string>> structure;
  std::vector<std::string> field;
  std::string alpha;
  std::vector<std::pair<double, double>> domain;
  int dimension = 0;  // 0: take it from the coordinate count
};

/// Compiles and shape-checks a manifold description. Throws SpecError on
/// shape problems (odd or mismatched dimensions, bad domain, duplicate or
/// reserved coordinate names) and ParseError, prefixed with the offending
/// entry, on expression errors.
ManifoldSpec make_manifold(const ManifoldSource& source);

/// Same chart with the conformal factor replaced.
ManifoldSpec with_alpha(const ManifoldSpec& spec, const std::string& alpha_source);

/// Built-in charts: "flat2" (m = 1) and "flat4" (m = 2).
ManifoldSource builtin_source(const std::string& name);
ManifoldSpec builtin_manifold(const std::string& name);
bool is_builtin(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace berger
