#pragma once

#include "berger/manifold.hpp"
#include "berger/map_spec.hpp"
#include "berger/para_norden.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace berger {

struct ComparisonOptions {
  double abs_tol = 1e-7;
  double rel_tol = 1e-6;
  std::uint64_t seed = 42;
  double killing_tol = 1e-9;
};

/// Closed form vs oracle over a sample set. Each sample point contributes
/// one evaluation: the closed-form and oracle values flattened into vectors.
/// abs = max |closed - oracle|, rel = abs / max(|closed|_inf, |oracle|_inf)
/// (0 when both vanish). An evaluation passes when abs <= abs_tol or
/// rel <= rel_tol; the comparison passes when every evaluation does.
struct FormulaComparison {
  std::string formula;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double max_rel = 0.0;
  double mean_rel = 0.0;
  int evaluations = 0;
  int failures = 0;
  Eigen::VectorXd worst_point;
  Eigen::VectorXd closed;  // values at the worst point
  Eigen::VectorXd oracle;
  bool pass = true;
};

/// Every formula run by `--formula all`.
const std::vector<std::string>& formula_ids();
/// formula_ids() plus "killing".
bool is_formula_id(const std::string& id);

/// Throws UsageError for unknown ids and HypothesisError for "killing" when
/// alpha is not a Killing potential on the points.
FormulaComparison compare(const std::string& formula, const ManifoldSpec& spec,
                          const std::vector<Eigen::VectorXd>& points, const ComparisonOptions& options = {});

/// Map-tension closed form for the deformed side of `map` against the
/// oracle tension. Maps with deformed = none compare the plain tension with
/// itself and are rejected with SpecError.
FormulaComparison compare_map(const MapSpec& map, const std::vector<Eigen::VectorXd>& points,
                              const ComparisonOptions& options = {});

/// Throws HypothesisError naming the failing residuals unless the report
/// passed or `force` is set.
void require_valid(const ValidationReport& report, bool force);

}  // namespace berger
