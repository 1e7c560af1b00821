#include "berger/deformation.hpp"

#include "berger/errors.hpp"
#include "berger/sampling.hpp"

#include <cmath>
#include <sstream>

namespace berger {

namespace {

void require_killing(const DeformationContext& ctx, double tol) {
  const double h = ctx.hess.cwiseAbs().maxCoeff();
  if (h > tol) {
    std::ostringstream os;
    os << "alpha is not a Killing potential: max |Hess_alpha| = " << h << " exceeds " << tol;
    throw HypothesisError(os.str());
  }
}

void require_orthonormal(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  constexpr double tol = 1e-10;
  if (std::abs(ctx.g(x, x) - 1.0) > tol || std::abs(ctx.g(y, y) - 1.0) > tol || std::abs(ctx.g(x, y)) > tol)
    throw GeometryError("sectional curvature arguments must be g-orthonormal");
}

}  // namespace

double DeformationContext::g_alpha(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  return alpha * (x.dot(metric * y) + fv_lowered.dot(x) * fv_lowered.dot(y));
}

DeformationContext make_context(const ManifoldSpec& spec, const Eigen::VectorXd& point) {
  const PointGeometry geom(spec, point, MetricKind::Base);
  const int n = geom.dimension();
  const auto& fj = geom.fields();
  const auto& gamma = geom.christoffel();

  DeformationContext ctx;
  ctx.m = spec.half_dimension();
  ctx.point = point;
  ctx.alpha = fj.alpha.value();
  ctx.dalpha = fj.alpha.gradient();
  ctx.metric = geom.metric();
  ctx.inverse = geom.inverse();
  ctx.grad = ctx.inverse * ctx.dalpha;
  ctx.grad_norm2 = ctx.dalpha.dot(ctx.grad);
  ctx.hess = hessian(geom, fj.alpha);
  ctx.nabla_grad = ctx.inverse * ctx.hess;
  ctx.laplacian = ctx.nabla_grad.trace();
  ctx.fv = values(fj.fv);
  ctx.fv_lowered = values(fj.fv_lowered);
  ctx.connection = geom.connection();
  ctx.curvature = geom.curvature();

  JetVector dalpha;
  for (int k = 0; k < n; ++k) dalpha.push_back(fj.alpha.partial(k));
  const JetVector grad = raise(geom.inverse_jets(), dalpha);
  const auto D = covariant_derivative(gamma, grad);  // D[i][k] = nabla_i grad^k

  ctx.rough_laplacian_grad = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double second = D[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].d(i);
        for (int l = 0; l < n; ++l)
          second += gamma(k, i, l).value() * D[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)].value();
        for (int p = 0; p < n; ++p)
          second -= gamma(p, i, j).value() * D[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)].value();
        acc += ctx.inverse(i, j) * second;
      }
    ctx.rough_laplacian_grad(k) = -acc;
  }
  ctx.nabla_grad_grad = ctx.nabla_grad * ctx.grad;

  // W = nabla_FV grad alpha as a jet field, then nabla_FV W.
  JetVector w;
  for (int k = 0; k < n; ++k) {
    Jet3 acc = fj.fv[0] * D[0][static_cast<std::size_t>(k)];
    for (int j = 1; j < n; ++j) acc += fj.fv[static_cast<std::size_t>(j)] * D[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    w.push_back(std::move(acc));
  }
  ctx.fv_fv_grad = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      double v = w[static_cast<std::size_t>(k)].d(i);
      for (int l = 0; l < n; ++l) v += gamma(k, i, l).value() * w[static_cast<std::size_t>(l)].value();
      ctx.fv_fv_grad(k) += ctx.fv(i) * v;
    }
  return ctx;
}

Eigen::MatrixXd deformed_metric_components(const DeformationContext& ctx) {
  return ctx.alpha * (ctx.metric + ctx.fv_lowered * ctx.fv_lowered.transpose());
}

Eigen::VectorXd closed_form_connection(const DeformationContext& ctx, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& y) {
  return closed_form_connection(ctx, x, VectorField{y, Eigen::MatrixXd::Zero(y.size(), y.size())});
}

Eigen::VectorXd closed_form_connection(const DeformationContext& ctx, const Eigen::VectorXd& x, const VectorField& y) {
  const double a = ctx.alpha;
  const Eigen::VectorXd base = y.jacobian * x + ctx.connection.contract(x, y.value);
  return base + ctx.X_alpha(x) / (2 * a) * y.value + ctx.X_alpha(y.value) / (2 * a) * x -
         ctx.g_alpha(x, y.value) / (2 * a * a) * ctx.grad;
}

Eigen::VectorXd closed_form_nabla_grad(const DeformationContext& ctx, const Eigen::VectorXd& x) {
  return ctx.nabla_grad * x + ctx.grad_norm2 / (2 * ctx.alpha) * x;
}

namespace {

Eigen::VectorXd riemann_terms(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                              const Eigen::VectorXd& z) {
  const double a = ctx.alpha, a2 = a * a, a3 = a2 * a;
  const double xa = ctx.X_alpha(x), ya = ctx.X_alpha(y), za = ctx.X_alpha(z);
  const double gyz = ctx.g_alpha(y, z), gxz = ctx.g_alpha(x, z);
  const double q = ctx.grad_norm2;
  const double cx = 3 * ya * za / (4 * a2) - y.dot(ctx.hess * z) / (2 * a) - q / (4 * a3) * gyz;
  const double cy = 3 * xa * za / (4 * a2) - x.dot(ctx.hess * z) / (2 * a) - q / (4 * a3) * gxz;
  return ctx.curvature.apply(x, y, z) - gyz / (2 * a2) * (ctx.nabla_grad * x) + gxz / (2 * a2) * (ctx.nabla_grad * y) +
         cx * x - cy * y + (3 * xa / (4 * a3) * gyz - 3 * ya / (4 * a3) * gxz) * ctx.grad;
}

}  // namespace

// Exactly antisymmetric in x, y.
Eigen::VectorXd closed_form_riemann(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                    const Eigen::VectorXd& z) {
  return 0.5 * (riemann_terms(ctx, x, y, z) - riemann_terms(ctx, y, x, z));
}

double closed_form_sectional(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  require_orthonormal(ctx, x, y);
  const double a = ctx.alpha, a2 = a * a;
  const double p = ctx.fv_lowered.dot(x), q = ctx.fv_lowered.dot(y);
  const double xa = ctx.X_alpha(x), ya = ctx.X_alpha(y);
  const double k = ctx.g(ctx.curvature.apply(x, y, y), x);
  const double bracket = k + (3 * ya * ya / (4 * a2) - y.dot(ctx.hess * y) / (2 * a)) * (1 + p * p) +
                         (3 * xa * xa / (4 * a2) - x.dot(ctx.hess * x) / (2 * a)) * (1 + q * q) -
                         (3 * xa * ya / (2 * a2) - x.dot(ctx.hess * y) / a) * p * q;
  return -ctx.grad_norm2 / (4 * a2 * a) + bracket / (a * (1 + p * p + q * q));
}

Eigen::VectorXd closed_form_ricci_operator(const DeformationContext& ctx, const Eigen::VectorXd& x) {
  const double a = ctx.alpha, a2 = a * a, a3 = a2 * a;
  const double m = ctx.m;
  return ctx.base_ricci(x) / a - (m - 1) / a2 * (ctx.nabla_grad * x) +
         3 * (m - 1) * ctx.X_alpha(x) / (2 * a3) * ctx.grad -
         ((m - 2) * ctx.grad_norm2 / (2 * a3) + ctx.laplacian / (2 * a2)) * x;
}

double closed_form_ricci_tensor(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double a = ctx.alpha, a2 = a * a, a3 = a2 * a;
  const double m = ctx.m;
  return x.dot(ctx.curvature.ricci_tensor * y) - (m - 1) / a * x.dot(ctx.hess * y) +
         3 * (m - 1) / (2 * a2) * ctx.X_alpha(x) * ctx.X_alpha(y) -
         ((m - 2) * ctx.grad_norm2 / (2 * a3) + ctx.laplacian / (2 * a2)) * ctx.g_alpha(x, y);
}

double closed_form_scalar(const DeformationContext& ctx) {
  const double a = ctx.alpha;
  const double m = ctx.m;
  return ctx.curvature.scalar / a - (2 * m - 1) / (a * a) * ctx.laplacian -
         (2 * m - 1) * (m - 3) / (2 * a * a * a) * ctx.grad_norm2;
}

Eigen::VectorXd killing_riemann(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& z, double tol) {
  require_killing(ctx, tol);
  const double a = ctx.alpha, a2 = a * a, a3 = a2 * a;
  const double xa = ctx.X_alpha(x), ya = ctx.X_alpha(y), za = ctx.X_alpha(z);
  const double gyz = ctx.g_alpha(y, z), gxz = ctx.g_alpha(x, z);
  const double q = ctx.grad_norm2;
  return ctx.curvature.apply(x, y, z) + (3 * ya * za / (4 * a2) - q / (4 * a3) * gyz) * x -
         (3 * xa * za / (4 * a2) - q / (4 * a3) * gxz) * y +
         (3 * xa / (4 * a3) * gyz - 3 * ya / (4 * a3) * gxz) * ctx.grad;
}

double killing_sectional(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         double tol) {
  require_killing(ctx, tol);
  require_orthonormal(ctx, x, y);
  const double a = ctx.alpha, a2 = a * a;
  const double p = ctx.fv_lowered.dot(x), q = ctx.fv_lowered.dot(y);
  const double xa = ctx.X_alpha(x), ya = ctx.X_alpha(y);
  const double k = ctx.g(ctx.curvature.apply(x, y, y), x);
  const double bracket = k + 3 * xa * xa / (4 * a2) * (1 + q * q) + 3 * ya * ya / (4 * a2) * (1 + p * p) -
                         3 * xa * ya / (2 * a2) * p * q;
  return -ctx.grad_norm2 / (4 * a2 * a) + bracket / (a * (1 + p * p + q * q));
}

Eigen::VectorXd killing_ricci_operator(const DeformationContext& ctx, const Eigen::VectorXd& x, double tol) {
  require_killing(ctx, tol);
  const double a = ctx.alpha, a3 = a * a * a;
  const double m = ctx.m;
  return ctx.base_ricci(x) / a + 3 * (m - 1) * ctx.X_alpha(x) / (2 * a3) * ctx.grad -
         (m - 2) * ctx.grad_norm2 / (2 * a3) * x;
}

double killing_ricci_tensor(const DeformationContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                            double tol) {
  require_killing(ctx, tol);
  const double a = ctx.alpha, a2 = a * a;
  const double m = ctx.m;
  return x.dot(ctx.curvature.ricci_tensor * y) + 3 * (m - 1) / (2 * a2) * ctx.X_alpha(x) * ctx.X_alpha(y) -
         (m - 2) * ctx.grad_norm2 / (2 * a2 * a) * ctx.g_alpha(x, y);
}

double killing_scalar(const DeformationContext& ctx, double tol) {
  require_killing(ctx, tol);
  const double a = ctx.alpha;
  const double m = ctx.m;
  return ctx.curvature.scalar / a - (2 * m - 1) * (m - 3) / (2 * a * a * a) * ctx.grad_norm2;
}

std::vector<ReductionCheck> killing_reduction_suite(const ManifoldSpec& spec, const std::vector<Eigen::VectorXd>& points,
                                                    std::uint64_t seed, double tol) {
  std::vector<DeformationContext> contexts;
  contexts.reserve(points.size());
  for (const auto& p : points) {
    contexts.push_back(make_context(spec, p));
    require_killing(contexts.back(), tol);
  }
  std::vector<ReductionCheck> out{{"riemann"}, {"sectional"}, {"ricci-operator"}, {"ricci-tensor"}, {"scalar"}};
  auto rng = make_rng(seed, "killing_reduction_suite");
  const int n = spec.dimension;
  for (const auto& ctx : contexts) {
    const Eigen::VectorXd x = random_vector(rng, n), y = random_vector(rng, n), z = random_vector(rng, n);
    Eigen::MatrixXd pair(n, 2);
    pair << x, y;
    const Eigen::MatrixXd e = gram_schmidt(ctx.metric, pair);
    const double diffs[5] = {
        (killing_riemann(ctx, x, y, z, tol) - closed_form_riemann(ctx, x, y, z)).cwiseAbs().maxCoeff(),
        std::abs(killing_sectional(ctx, e.col(0), e.col(1), tol) - closed_form_sectional(ctx, e.col(0), e.col(1))),
        (killing_ricci_operator(ctx, x, tol) - closed_form_ricci_operator(ctx, x)).cwiseAbs().maxCoeff(),
        std::abs(killing_ricci_tensor(ctx, x, y, tol) - closed_form_ricci_tensor(ctx, x, y)),
        std::abs(killing_scalar(ctx, tol) - closed_form_scalar(ctx))};
    for (int i = 0; i < 5; ++i) out[static_cast<std::size_t>(i)].max_abs = std::max(out[static_cast<std::size_t>(i)].max_abs, diffs[i]);
  }
  return out;
}

Eigen::MatrixXd deformed_frame(const DeformationContext& ctx) {
  Eigen::MatrixXd e = orthonormal_frame_ending_with(ctx.metric, ctx.fv);
  const auto n = e.cols();
  e.leftCols(n - 1) /= std::sqrt(ctx.alpha);
  e.col(n - 1) /= std::sqrt(2 * ctx.alpha);
  return e;
}

}  // namespace berger
