#include "berger/oracle.hpp"

#include <cmath>

namespace berger {

ConnectionCoefficients oracle_connection(const ManifoldSpec& spec, const Eigen::VectorXd& point, MetricKind which) {
  return christoffel_at(spec, point, which);
}

CurvatureBundle oracle_curvature(const ManifoldSpec& spec, const Eigen::VectorXd& point) {
  return riemann_at(spec, point, MetricKind::Deformed);
}

Eigen::VectorXd oracle_nabla_grad(const ManifoldSpec& spec, const Eigen::VectorXd& point, const Eigen::VectorXd& x) {
  const PointGeometry base(spec, point, MetricKind::Base);
  const PointGeometry deformed(spec, point, MetricKind::Deformed);
  const int n = base.dimension();
  JetVector dalpha;
  for (int k = 0; k < n; ++k) dalpha.push_back(base.fields().alpha.partial(k));
  const auto D = covariant_derivative(deformed.christoffel(), raise(base.inverse_jets(), dalpha));
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) out(k) += x(i) * D[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].value();
  return out;
}

double oracle_sectional(const ManifoldSpec& spec, const Eigen::VectorXd& point, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y) {
  const PointGeometry deformed(spec, point, MetricKind::Deformed);
  const Eigen::MatrixXd& h = deformed.metric();
  const Eigen::VectorXd r = deformed.curvature().apply(x, y, y);
  const double area = x.dot(h * x) * y.dot(h * y) - std::pow(x.dot(h * y), 2);
  return r.dot(h * x) / area;
}

Eigen::VectorXd oracle_tension(const MapSpec& map, const Eigen::VectorXd& point) {
  return map_tension(map, point, map.source_kind(), map.target_kind());
}

Eigen::VectorXd oracle_tension(const ManifoldSpec& spec, const Eigen::VectorXd& point, Direction direction) {
  const PointGeometry src(spec, point, source_kind(direction));
  const PointGeometry tgt(spec, point, target_kind(direction));
  const auto gs = src.connection();
  const auto gt = tgt.connection();
  const int n = src.dimension();
  Eigen::VectorXd tau = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) tau(k) += src.inverse()(i, j) * (gt(k, i, j) - gs(k, i, j));
  return tau;
}

Eigen::VectorXd oracle_bitension(const ManifoldSpec& spec, const Eigen::VectorXd& point, Direction direction) {
  const PointGeometry src(spec, point, source_kind(direction));
  const PointGeometry tgt(spec, point, target_kind(direction));
  const int n = src.dimension();
  const auto& gs = src.christoffel();
  const auto& gt = tgt.christoffel();
  const auto& ginv = src.inverse_jets();
  const auto at = [](int i) { return static_cast<std::size_t>(i); };

  JetVector tau(at(n), Jet3(n, 0.0));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) tau[at(k)] += ginv(i, j) * (gt(k, i, j) - gs(k, i, j));

  const auto D = covariant_derivative(gt, tau);  // D[j][k] = nabla^I_j tau^k
  const Eigen::MatrixXd& g = src.inverse();
  const CurvatureBundle curv = tgt.curvature();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    double trace = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double e = D[at(j)][at(k)].d(i);
        for (int l = 0; l < n; ++l) e += gt(k, i, l).value() * D[at(j)][at(l)].value();
        for (int p = 0; p < n; ++p) e -= gs(p, i, j).value() * D[at(p)][at(k)].value();
        double r = 0.0;
        for (int a = 0; a < n; ++a) r += curv.riemann(k, a, i, j) * tau[at(a)].value();
        trace += g(i, j) * (e + r);
      }
    out(k) = -trace;
  }
  return out;
}

}  // namespace berger
