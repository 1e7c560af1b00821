#include "berger/manifold.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace berger {

namespace {

Expression compile(const std::string& text, const std::vector<std::string>& coords, const std::string& where) {
  try {
    return parse_expression(text, coords);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" at offset")),
                     e.offset());
  }
}

std::vector<Expression> compile_matrix(const std::vector<std::vector<std::string>>& rows,
                                       const std::vector<std::string>& coords, int n, const std::string& what) {
  if (static_cast<int>(rows.size()) != n)
    throw SpecError(what + " has " + std::to_string(rows.size()) + " rows, dimension is " + std::to_string(n));
  std::vector<Expression> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != n)
      throw SpecError(what + " row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                      " entries, dimension is " + std::to_string(n));
    for (int j = 0; j < n; ++j)
      out.push_back(compile(row[static_cast<std::size_t>(j)], coords,
                            what + "[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
  }
  return out;
}

}  // namespace

bool DomainBox::contains(const Eigen::VectorXd& point) const {
  if (point.size() != dimension()) return false;
  for (int i = 0; i < dimension(); ++i) {
    const auto [lo, hi] = intervals[static_cast<std::size_t>(i)];
    if (!(point(i) >= lo && point(i) <= hi)) return false;
  }
  return true;
}

ManifoldSpec make_manifold(const ManifoldSource& src) {
  const int n = src.dimension != 0 ? src.dimension : static_cast<int>(src.coordinates.size());
  if (n < 2 || n % 2 != 0) throw SpecError("dimension must be an even integer >= 2, got " + std::to_string(n));
  if (static_cast<int>(src.coordinates.size()) != n)
    throw SpecError("dimension " + std::to_string(n) + " but " + std::to_string(src.coordinates.size()) +
                    " coordinates");

  std::set<std::string> seen;
  static const std::set<std::string> reserved = {"pi",  "e",    "sin", "cos", "tan", "sinh",
                                                 "cosh", "tanh", "exp", "log", "sqrt"};
  for (const auto& c : src.coordinates) {
    if (c.empty() || !(std::isalpha(static_cast<unsigned char>(c[0])) || c[0] == '_') ||
        !std::all_of(c.begin(), c.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; }))
      throw SpecError("invalid coordinate name '" + c + "'");
    if (reserved.contains(c)) throw SpecError("coordinate name '" + c + "' is reserved");
    if (!seen.insert(c).second) throw SpecError("duplicate coordinate name '" + c + "'");
  }

  ManifoldSpec spec;
  spec.name = src.name;
  spec.dimension = n;
  spec.coordinates = src.coordinates;
  spec.metric = compile_matrix(src.metric, src.coordinates, n, "metric");
  spec.structure = compile_matrix(src.structure, src.coordinates, n, "F");
  if (static_cast<int>(src.field.size()) != n)
    throw SpecError("V has " + std::to_string(src.field.size()) + " components, dimension is " + std::to_string(n));
  for (int i = 0; i < n; ++i)
    spec.field.push_back(compile(src.field[static_cast<std::size_t>(i)], src.coordinates, "V[" + std::to_string(i) + "]"));
  spec.alpha = compile(src.alpha, src.coordinates, "alpha");

  if (static_cast<int>(src.domain.size()) != n)
    throw SpecError("domain has " + std::to_string(src.domain.size()) + " intervals, dimension is " +
                    std::to_string(n));
  for (const auto& [lo, hi] : src.domain)
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) throw SpecError("domain interval must satisfy lo <= hi");
  spec.domain.intervals = src.domain;
  return spec;
}

ManifoldSpec with_alpha(const ManifoldSpec& spec, const std::string& alpha_source) {
  ManifoldSpec out = spec;
  out.alpha = compile(alpha_source, spec.coordinates, "alpha");
  return out;
}

ManifoldSource builtin_source(const std::string& name) {
  if (name == "flat2") {
    ManifoldSource s;
    s.name = "flat2";
    s.coordinates = {"x", "y"};
    s.metric = {{"1", "0"}, {"0", "1"}};
    s.structure = {{"0", "1"}, {"1", "0"}};
    s.field = {"1", "0"};
    s.alpha = "1 + x^2";
    s.domain = {{-2.0, 2.0}, {-2.0, 2.0}};
    return s;
  }
  if (name == "flat4") {
    // F swaps x1 <-> x3 and x2 <-> x4; V = d/dx1, so FV = d/dx3.
    ManifoldSource s;
    s.name = "flat4";
    s.coordinates = {"x1", "x2", "x3", "x4"};
    s.metric = {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}};
    s.structure = {{"0", "0", "1", "0"}, {"0", "0", "0", "1"}, {"1", "0", "0", "0"}, {"0", "1", "0", "0"}};
    s.field = {"1", "0", "0", "0"};
    s.alpha = "1 + x2^2";
    s.domain = {{-2.0, 2.0}, {-2.0, 2.0}, {-2.0, 2.0}, {-2.0, 2.0}};
    return s;
  }
  throw SpecError("unknown built-in manifold '" + name + "'");
}

ManifoldSpec builtin_manifold(const std::string& name) { return make_manifold(builtin_source(name)); }

bool is_builtin(const std::string& name) {
  const auto names = builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<std::string> builtin_names() { return {"flat2", "flat4"}; }

}  // namespace berger
