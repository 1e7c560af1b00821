#pragma once

#include "berger/chart_geometry.hpp"
#include "berger/manifold.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace berger {

/// Base-metric data at one point shared by every closed form.
struct DeformationContext {
  int m = 0;  // half dimension
  Eigen::VectorXd point;
  double alpha = 0.0;
  Eigen::VectorXd dalpha;      // d_i alpha
  Eigen::VectorXd grad;        // grad alpha, base metric
  double grad_norm2 = 0.0;     // g(grad alpha, grad alpha)
  Eigen::MatrixXd hess;        // Hess_alpha, lower indices
  Eigen::MatrixXd nabla_grad;  // X -> nabla_X grad alpha
  double laplacian = 0.0;      // Delta(alpha) = tr_g Hess_alpha
  Eigen::VectorXd fv;
  Eigen::VectorXd fv_lowered;  // g(., FV)
  Eigen::MatrixXd metric;
  Eigen::MatrixXd inverse;
  ConnectionCoefficients connection;
  CurvatureBundle curvature;
  // Third-order data of grad alpha.
  Eigen::VectorXd rough_laplacian_grad;  // -tr_g (nabla nabla - nabla_nabla) grad alpha
  Eigen::VectorXd nabla_grad_grad;       // nabla_{grad alpha} grad alpha
  Eigen::VectorXd fv_fv_grad;            // nabla_FV nabla_FV grad alpha

  double X_alpha(const Eigen::VectorXd& x) const { return dalpha.dot(x); }
  double g(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return x.dot(metric * y); }
  double g_alpha(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  Eigen::VectorXd base_ricci(const Eigen::VectorXd& x) const { return curvature.ricci_operator * x; }
};

DeformationContext make_context(const ManifoldSpec& spec, const Eigen::VectorXd& point);

/// alpha (g_{ij} + w_i w_j) from the context's values.
Eigen::MatrixXd deformed_metric_components(const DeformationContext& ctx);

/// A vector field near the point: components and Jacobian d_i Y^k at (k, i).
struct VectorField {
  Eigen::VectorXd value;
  Eigen::MatrixXd jacobian;
};

/// Levi-Civita connection of the deformed metric from base data.
Eigen::VectorXd closed_form_connection(const DeformationContext& ctx, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& y);
Eigen::VectorXd closed_form_connection(const DeformationContext& ctx, const Eigen::VectorXd& x, const VectorField& y);

Eigen::VectorXd closed_form_nabla_grad(const DeformationContext& ctx, const Eigen::VectorXd& x);

Eigen::VectorXd closed_form_riemann(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                    const Eigen::VectorXd& z);

/// Throws GeometryError unless x, y are g-orthonormal within 1e-10.
double closed_form_sectional(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

Eigen::VectorXd closed_form_ricci_operator(const DeformationContext& ctx, const Eigen::VectorXd& x);
double closed_form_ricci_tensor(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
double closed_form_scalar(const DeformationContext& ctx);

/// Reduced forms valid when alpha is a Killing potential. Each throws
/// HypothesisError when max |Hess_alpha| at the point exceeds `tol`.
Eigen::VectorXd killing_riemann(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& z, double tol = 1e-9);
double killing_sectional(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         double tol = 1e-9);
Eigen::VectorXd killing_ricci_operator(const DeformationContext& ctx, const Eigen::VectorXd& x, double tol = 1e-9);
double killing_ricci_tensor(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                            double tol = 1e-9);
double killing_scalar(const DeformationContext& ctx, double tol = 1e-9);

struct ReductionCheck {
  std::string name;
  double max_abs = 0.0;  // reduced vs full
};

/// Evaluates every reduced form against its full counterpart over
/// `points`. Throws HypothesisError when alpha is not Killing on them.
std::vector<ReductionCheck> killing_reduction_suite(const ManifoldSpec& spec, const std::vector<Eigen::VectorXd>& points,
                                                    std::uint64_t seed = 42, double tol = 1e-9);

/// Columns e_i / sqrt(alpha) (i < 2m) and FV / sqrt(2 alpha) built from a
/// g-orthonormal frame whose last vector is FV.
Eigen::MatrixXd deformed_frame(const DeformationContext& ctx);

}  // namespace berger
