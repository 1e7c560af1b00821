#include "berger/comparison.hpp"

#include "berger/deformation.hpp"
#include "berger/errors.hpp"
#include "berger/harmonic.hpp"
#include "berger/oracle.hpp"
#include "berger/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

namespace berger {

namespace {

using Pair = std::pair<Eigen::VectorXd, Eigen::VectorXd>;  // closed, oracle
using Evaluator = std::function<Pair(const Eigen::VectorXd&)>;

Eigen::VectorXd flatten(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::VectorXd scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

FormulaComparison run(const std::string& formula, const std::vector<Eigen::VectorXd>& points,
                      const ComparisonOptions& options, const Evaluator& evaluate) {
  FormulaComparison r;
  r.formula = formula;
  double sum_abs = 0.0, sum_rel = 0.0;
  for (const auto& p : points) {
    const auto [closed, oracle] = evaluate(p);
    double abs = (closed - oracle).cwiseAbs().maxCoeff();
    const double scale = std::max(closed.cwiseAbs().maxCoeff(), oracle.cwiseAbs().maxCoeff());
    double rel = scale > 0.0 ? abs / scale : 0.0;
    if (!std::isfinite(abs)) abs = rel = std::numeric_limits<double>::infinity();
    const bool ok = abs <= options.abs_tol || rel <= options.rel_tol;
    if (!ok) ++r.failures;
    if (r.evaluations == 0 || abs > r.max_abs) {
      r.max_abs = abs;
      r.worst_point = p;
      r.closed = closed;
      r.oracle = oracle;
    }
    r.max_rel = std::max(r.max_rel, rel);
    sum_abs += abs;
    sum_rel += rel;
    ++r.evaluations;
  }
  if (r.evaluations > 0) {
    r.mean_abs = sum_abs / r.evaluations;
    r.mean_rel = sum_rel / r.evaluations;
  }
  r.pass = r.failures == 0;
  return r;
}

// Random g-orthonormal pairs, three per point.
std::vector<Eigen::MatrixXd> orthonormal_pairs(const ManifoldSpec& spec, const std::vector<Eigen::VectorXd>& points,
                                               std::uint64_t seed) {
  auto rng = make_rng(seed, "sectional");
  const int n = spec.dimension;
  std::vector<Eigen::MatrixXd> out;
  for (const auto& p : points) {
    const Eigen::MatrixXd g = metric_at(spec, p, MetricKind::Base).metric;
    Eigen::MatrixXd block(n, 6);
    for (int c = 0; c < 3; ++c) {
      Eigen::MatrixXd pair(n, 2);
      pair << random_vector(rng, n), random_vector(rng, n);
      block.middleCols(2 * c, 2) = gram_schmidt(g, pair);
    }
    out.push_back(block);
  }
  return out;
}

Eigen::VectorXd connection_closed(const DeformationContext& ctx) {
  const auto n = ctx.point.size();
  Eigen::VectorXd out(n * n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out.segment((i * n + j) * n, n) =
          closed_form_connection(ctx, Eigen::VectorXd::Unit(n, i), Eigen::VectorXd::Unit(n, j));
  return out;
}

Eigen::VectorXd connection_oracle(const ConnectionCoefficients& gamma) {
  const int n = gamma.dimension();
  Eigen::VectorXd out(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out((i * n + j) * n + k) = gamma(k, i, j);
  return out;
}

template <class F>
Eigen::VectorXd riemann_components(int n, F&& apply) {
  Eigen::VectorXd out(n * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out.segment(((i * n + j) * n + k) * n, n) =
            apply(Eigen::VectorXd::Unit(n, i), Eigen::VectorXd::Unit(n, j), Eigen::VectorXd::Unit(n, k));
  return out;
}

Eigen::VectorXd ricci_operator_closed(const DeformationContext& ctx, bool killing, double tol) {
  const auto n = ctx.point.size();
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    m.col(i) = killing ? killing_ricci_operator(ctx, Eigen::VectorXd::Unit(n, i), tol)
                       : closed_form_ricci_operator(ctx, Eigen::VectorXd::Unit(n, i));
  return flatten(m);
}

Eigen::VectorXd ricci_tensor_closed(const DeformationContext& ctx, bool killing, double tol) {
  const auto n = ctx.point.size();
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::VectorXd x = Eigen::VectorXd::Unit(n, i), y = Eigen::VectorXd::Unit(n, j);
      m(i, j) = killing ? killing_ricci_tensor(ctx, x, y, tol) : closed_form_ricci_tensor(ctx, x, y);
    }
  return flatten(m);
}

Eigen::VectorXd sectional_oracle(const ManifoldSpec& spec, const Eigen::VectorXd& p, const Eigen::MatrixXd& pairs) {
  Eigen::VectorXd out(3);
  for (int c = 0; c < 3; ++c) out(c) = oracle_sectional(spec, p, pairs.col(2 * c), pairs.col(2 * c + 1));
  return out;
}

}  // namespace

const std::vector<std::string>& formula_ids() {
  static const std::vector<std::string> ids = {
      "connection",          "nabla-grad",           "riemann",
      "sectional",           "ricci-operator",       "ricci-tensor",
      "scalar",              "tension-to-deformed",  "tension-from-deformed",
      "map-tension-to-deformed", "map-tension-from-deformed", "bitension-to-deformed",
      "bitension-from-deformed"};
  return ids;
}

bool is_formula_id(const std::string& id) {
  const auto& ids = formula_ids();
  return id == "killing" || std::find(ids.begin(), ids.end(), id) != ids.end();
}

FormulaComparison compare(const std::string& formula, const ManifoldSpec& spec,
                          const std::vector<Eigen::VectorXd>& points, const ComparisonOptions& options) {
  const int n = spec.dimension;
  Evaluator eval;
  if (formula == "connection") {
    eval = [&](const Eigen::VectorXd& p) {
      return Pair{connection_closed(make_context(spec, p)),
                  connection_oracle(oracle_connection(spec, p, MetricKind::Deformed))};
    };
  } else if (formula == "nabla-grad") {
    eval = [&](const Eigen::VectorXd& p) {
      const DeformationContext ctx = make_context(spec, p);
      Eigen::MatrixXd closed(n, n), oracle(n, n);
      for (int i = 0; i < n; ++i) {
        closed.col(i) = closed_form_nabla_grad(ctx, Eigen::VectorXd::Unit(n, i));
        oracle.col(i) = oracle_nabla_grad(spec, p, Eigen::VectorXd::Unit(n, i));
      }
      return Pair{flatten(closed), flatten(oracle)};
    };
  } else if (formula == "riemann") {
    eval = [&](const Eigen::VectorXd& p) {
      const DeformationContext ctx = make_context(spec, p);
      const CurvatureBundle curv = oracle_curvature(spec, p);
      return Pair{riemann_components(n, [&](auto& x, auto& y, auto& z) { return closed_form_riemann(ctx, x, y, z); }),
                  riemann_components(n, [&](auto& x, auto& y, auto& z) { return curv.apply(x, y, z); })};
    };
  } else if (formula == "sectional") {
    const auto pairs = orthonormal_pairs(spec, points, options.seed);
    std::size_t index = 0;
    eval = [&, pairs, index](const Eigen::VectorXd& p) mutable {
      const Eigen::MatrixXd& e = pairs[index++];
      const DeformationContext ctx = make_context(spec, p);
      Eigen::VectorXd closed(3);
      for (int c = 0; c < 3; ++c) closed(c) = closed_form_sectional(ctx, e.col(2 * c), e.col(2 * c + 1));
      return Pair{closed, sectional_oracle(spec, p, e)};
    };
    return run(formula, points, options, eval);
  } else if (formula == "ricci-operator") {
    eval = [&](const Eigen::VectorXd& p) {
      return Pair{ricci_operator_closed(make_context(spec, p), false, 0.0),
                  flatten(oracle_curvature(spec, p).ricci_operator)};
    };
  } else if (formula == "ricci-tensor") {
    eval = [&](const Eigen::VectorXd& p) {
      return Pair{ricci_tensor_closed(make_context(spec, p), false, 0.0),
                  flatten(oracle_curvature(spec, p).ricci_tensor)};
    };
  } else if (formula == "scalar") {
    eval = [&](const Eigen::VectorXd& p) {
      return Pair{scalar(closed_form_scalar(make_context(spec, p))), scalar(oracle_curvature(spec, p).scalar)};
    };
  } else if (formula == "tension-to-deformed" || formula == "tension-from-deformed") {
    const Direction d = formula == "tension-to-deformed" ? Direction::ToDeformed : Direction::FromDeformed;
    eval = [&, d](const Eigen::VectorXd& p) {
      return Pair{tension_identity(make_context(spec, p), d), oracle_tension(spec, p, d)};
    };
  } else if (formula == "map-tension-to-deformed" || formula == "map-tension-from-deformed") {
    const bool to = formula == "map-tension-to-deformed";
    const auto shared = std::make_shared<const ManifoldSpec>(spec);
    const MapSpec id = identity_map(shared, to ? DeformedSide::Target : DeformedSide::Source);
    eval = [id, to](const Eigen::VectorXd& p) {
      return Pair{to ? tension_map_to_deformed(id, p) : tension_map_from_deformed(id, p), oracle_tension(id, p)};
    };
  } else if (formula == "bitension-to-deformed" || formula == "bitension-from-deformed") {
    const Direction d = formula == "bitension-to-deformed" ? Direction::ToDeformed : Direction::FromDeformed;
    eval = [&, d](const Eigen::VectorXd& p) {
      return Pair{bitension_identity(make_context(spec, p), d), oracle_bitension(spec, p, d)};
    };
  } else if (formula == "killing") {
    const double tol = options.killing_tol;
    for (const auto& p : points) {
      const double h = hessian_at(spec, p, spec.alpha, MetricKind::Base).cwiseAbs().maxCoeff();
      if (h > tol)
        throw HypothesisError("alpha is not a Killing potential: |Hess_alpha| = " + std::to_string(h) +
                              " at a sample point");
    }
    const auto pairs = orthonormal_pairs(spec, points, options.seed);
    std::size_t index = 0;
    eval = [&, pairs, index, tol](const Eigen::VectorXd& p) mutable {
      const Eigen::MatrixXd& e = pairs[index++];
      const DeformationContext ctx = make_context(spec, p);
      const CurvatureBundle curv = oracle_curvature(spec, p);
      Eigen::VectorXd sect(3);
      for (int c = 0; c < 3; ++c) sect(c) = killing_sectional(ctx, e.col(2 * c), e.col(2 * c + 1), tol);
      const Eigen::VectorXd riem =
          riemann_components(n, [&](auto& x, auto& y, auto& z) { return killing_riemann(ctx, x, y, z, tol); });
      const Eigen::VectorXd riem_o = riemann_components(n, [&](auto& x, auto& y, auto& z) { return curv.apply(x, y, z); });
      const Eigen::VectorXd rop = ricci_operator_closed(ctx, true, tol), rop_o = flatten(curv.ricci_operator);
      const Eigen::VectorXd rt = ricci_tensor_closed(ctx, true, tol), rt_o = flatten(curv.ricci_tensor);
      const Eigen::VectorXd sect_o = sectional_oracle(spec, p, e);
      Eigen::VectorXd closed(riem.size() + 3 + rop.size() + rt.size() + 1);
      Eigen::VectorXd oracle(closed.size());
      closed << riem, sect, rop, rt, killing_scalar(ctx, tol);
      oracle << riem_o, sect_o, rop_o, rt_o, curv.scalar;
      return Pair{closed, oracle};
    };
    return run(formula, points, options, eval);
  } else {
    throw UsageError("unknown formula '" + formula + "'");
  }
  return run(formula, points, options, eval);
}

FormulaComparison compare_map(const MapSpec& map, const std::vector<Eigen::VectorXd>& points,
                              const ComparisonOptions& options) {
  if (map.deformed == DeformedSide::None)
    throw SpecError("map manifest must deform the source or the target for a tension comparison");
  const bool to = map.deformed == DeformedSide::Target;
  return run(to ? "map-tension-to-deformed" : "map-tension-from-deformed", points, options,
             [&](const Eigen::VectorXd& p) {
               return Pair{to ? tension_map_to_deformed(map, p) : tension_map_from_deformed(map, p),
                           oracle_tension(map, p)};
             });
}

void require_valid(const ValidationReport& report, bool force) {
  if (force || report.passed()) return;
  std::string failing;
  for (const auto& r : report.residuals)
    if (!r.pass) failing += (failing.empty() ? "" : ", ") + r.name;
  throw HypothesisError("spec fails validation (" + failing + "); rerun with --force to override");
}

}  // namespace berger
