#pragma once

#include "berger/chart_geometry.hpp"
#include "berger/manifold.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace berger {

/// One structural residual, maximised over the sample set.
struct Residual {
  std::string name;
  double value = 0.0;
  bool pass = true;
  bool applicable = true;  // false: precondition not met, check skipped
  Eigen::VectorXd worst_point;
};

struct ValidationReport {
  std::vector<Residual> residuals;

  bool passed() const;
  const Residual* find(const std::string& name) const;
  void append(const ValidationReport& other);
};

struct ValidationOptions {
  double tolerance = 1e-9;
  double alpha_floor = 1e-8;
  std::uint64_t seed = 42;
  int random_vectors = 3;  // random X (and X, Y, Z) per sample point
};

/// Symmetric positive definite g, alpha bounded below by alpha_floor.
ValidationReport check_metric(const ManifoldSpec& spec, const std::vector<Eigen::VectorXd>& points,
                              const ValidationOptions& options = {});
/// F^2 = I and trace F = 0.
ValidationReport check_para_complex(const ManifoldSpec& spec, const std::vector<Eigen::VectorXd>& points,
                                    const ValidationOptions& options = {});
/// g F = F^T g.
ValidationReport check_norden_purity(const ManifoldSpec& spec, const std::vector<Eigen::VectorXd>& points,
                                     const ValidationOptions& options = {});
/// (nabla F)^i_{kj} = 0.
ValidationReport check_parallel_F(const ManifoldSpec& spec, const std::vector<Eigen::VectorXd>& points,
                                  const ValidationOptions& options = {});
/// g(V,V) = 1, nabla V = 0, (FV)(alpha) = 0, g(FV,FV) = 1,
/// Hess_alpha(X,FV) = 0 and R(X,Y)V = 0 at random X, Y.
ValidationReport check_V_and_alpha(const ManifoldSpec& spec, const std::vector<Eigen::VectorXd>& points,
                                   const ValidationOptions& options = {});
/// R(FX,Y)Z = R(X,FY)Z = R(X,Y)FZ = F R(X,Y)Z; reported as not applicable
/// when `parallel_F_holds` is false.
ValidationReport check_curvature_purity(const ManifoldSpec& spec, const std::vector<Eigen::VectorXd>& points,
                                        bool parallel_F_holds, const ValidationOptions& options = {});

/// Every check above, in order. Geometry-dependent checks are reported as
/// failed and not applicable when the metric check fails.
ValidationReport validate(const ManifoldSpec& spec, const std::vector<Eigen::VectorXd>& points,
                          const ValidationOptions& options = {});

}  // namespace berger
