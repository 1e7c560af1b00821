#include "berger/harmonic.hpp"

#include "berger/errors.hpp"

#include <cmath>

namespace berger {

namespace {

double norm_in(const Eigen::MatrixXd& metric, const Eigen::VectorXd& v) { return std::sqrt(std::max(0.0, v.dot(metric * v))); }

struct Worst {
  double value = 0.0;
  Eigen::VectorXd point;

  void update(double v, const Eigen::VectorXd& p) {
    if (point.size() == 0 || v > value || !std::isfinite(v)) {
      value = std::isfinite(v) ? std::max(value, v) : v;
      point = p;
    }
  }
};

}  // namespace

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Harmonic: return "harmonic";
    case Classification::ProperBiharmonic: return "proper-biharmonic";
    case Classification::NotBiharmonic: break;
  }
  return "not-biharmonic";
}

Eigen::VectorXd tension_identity_to_deformed(const DeformationContext& ctx) {
  return (1.0 - 2.0 * ctx.m) / (2.0 * ctx.alpha) * ctx.grad;
}

Eigen::VectorXd tension_identity_from_deformed(const DeformationContext& ctx) {
  return (ctx.m - 1.0) / (ctx.alpha * ctx.alpha) * ctx.grad;
}

Eigen::VectorXd tension_identity(const DeformationContext& ctx, Direction direction) {
  return direction == Direction::ToDeformed ? tension_identity_to_deformed(ctx) : tension_identity_from_deformed(ctx);
}

Eigen::VectorXd tension_map_to_deformed(const MapSpec& map, const Eigen::VectorXd& point) {
  const MapJets phi = map_jets(map, point);
  const Eigen::VectorXd tau = map_tension(map, point, MetricKind::Base, MetricKind::Base);
  const MetricAt g = metric_at(*map.source, point, MetricKind::Base);
  const PointGeometry target(*map.target, phi.image, MetricKind::Base);
  const auto& f = target.fields();
  const double a = f.alpha.value();
  const Eigen::VectorXd dalpha = f.alpha.gradient();
  const Eigen::VectorXd w = values(f.fv_lowered);
  const Eigen::MatrixXd h_alpha = a * (target.metric() + w * w.transpose());
  const Eigen::VectorXd grad_m = g.inverse * phi.jacobian.transpose() * dalpha;  // grad^M (alpha o phi)
  const double trace = (g.inverse * phi.jacobian.transpose() * h_alpha * phi.jacobian).trace();
  return tau + phi.jacobian * grad_m / a - trace / (2 * a * a) * (target.inverse() * dalpha);
}

Eigen::VectorXd tension_map_from_deformed(const MapSpec& map, const Eigen::VectorXd& point) {
  const MapJets phi = map_jets(map, point);
  const Eigen::VectorXd tau = map_tension(map, point, MetricKind::Base, MetricKind::Base);
  const DeformationContext ctx = make_context(*map.source, point);
  const FieldJets f = field_jets(*map.source, point);
  const auto gamma_n = christoffel_at(*map.target, phi.image, MetricKind::Base);
  const int n = map.source->dimension;
  const int t = map.target->dimension;

  // nabla^phi_FV (dphi(FV)) with W = dphi(FV).
  const Eigen::VectorXd w = phi.jacobian * ctx.fv;
  Eigen::VectorXd along = Eigen::VectorXd::Zero(t);
  for (int c = 0; c < t; ++c)
    for (int i = 0; i < n; ++i) {
      double dw = 0.0;
      for (int j = 0; j < n; ++j)
        dw += phi.second[static_cast<std::size_t>(c)](i, j) * ctx.fv(j) + phi.jacobian(c, j) * f.fv[static_cast<std::size_t>(j)].d(i);
      along(c) += ctx.fv(i) * dw;
    }
  along += gamma_n.contract(w, w);

  const double a = ctx.alpha;
  return tau / a - along / (2 * a) + (ctx.m - 1.0) / (a * a) * (phi.jacobian * ctx.grad);
}

Eigen::VectorXd bitension_identity_to_deformed(const DeformationContext& ctx) {
  const double a = ctx.alpha;
  const double m = ctx.m;
  const Eigen::VectorXd bracket =
      ctx.rough_laplacian_grad - ctx.base_ricci(ctx.grad) + (2 * m - 1) / (2 * a) * ctx.nabla_grad_grad -
      ((2 * m + 3) * ctx.grad_norm2 / (4 * a * a) - 2 * ctx.laplacian / a) * ctx.grad - ctx.fv_fv_grad;
  return (1 - 2 * m) / (2 * a) * bracket;
}

Eigen::VectorXd bitension_identity_from_deformed(const DeformationContext& ctx) {
  const double a = ctx.alpha;
  const double m = ctx.m;
  const Eigen::VectorXd bracket = ctx.rough_laplacian_grad - ctx.base_ricci(ctx.grad) -
                                  (m - 5) / a * ctx.nabla_grad_grad +
                                  2 * ((m - 4) * ctx.grad_norm2 / (a * a) + ctx.laplacian / a) * ctx.grad -
                                  0.5 * ctx.fv_fv_grad;
  return (m - 1) / (a * a * a) * bracket;
}

Eigen::VectorXd bitension_identity(const DeformationContext& ctx, Direction direction) {
  return direction == Direction::ToDeformed ? bitension_identity_to_deformed(ctx)
                                            : bitension_identity_from_deformed(ctx);
}

HarmonicResult is_harmonic(const ManifoldSpec& spec, Direction direction, const std::vector<Eigen::VectorXd>& points,
                           double tol) {
  Worst worst;
  for (const auto& p : points) {
    const DeformationContext ctx = make_context(spec, p);
    worst.update(norm_in(ctx.metric, tension_identity(ctx, direction)), p);
  }
  HarmonicResult r{worst.value <= tol, worst.value, worst.point, {}};
  if (!r.harmonic)
    r.note = "not harmonic (alpha non-constant)";
  else if (direction == Direction::FromDeformed && spec.half_dimension() == 1)
    r.note = "harmonic (dim M = 2)";
  else
    r.note = "harmonic (alpha constant)";
  return r;
}

HarmonicResult is_harmonic(const MapSpec& map, const std::vector<Eigen::VectorXd>& points, double tol) {
  Worst worst;
  for (const auto& p : points) {
    Eigen::VectorXd tau;
    switch (map.deformed) {
      case DeformedSide::Target: tau = tension_map_to_deformed(map, p); break;
      case DeformedSide::Source: tau = tension_map_from_deformed(map, p); break;
      case DeformedSide::None: tau = map_tension(map, p, MetricKind::Base, MetricKind::Base); break;
    }
    const MetricAt h = metric_at(*map.target, map_jets(map, p).image, map.target_kind());
    worst.update(norm_in(h.metric, tau), p);
  }
  HarmonicResult r{worst.value <= tol, worst.value, worst.point, {}};
  r.note = r.harmonic ? "harmonic" : "not harmonic";
  return r;
}

BiharmonicResult classify(const ManifoldSpec& spec, Direction direction, const std::vector<Eigen::VectorXd>& points,
                          double tol) {
  Worst tension, bitension;
  for (const auto& p : points) {
    const DeformationContext ctx = make_context(spec, p);
    tension.update(norm_in(ctx.metric, tension_identity(ctx, direction)), p);
    bitension.update(norm_in(ctx.metric, bitension_identity(ctx, direction)), p);
  }
  BiharmonicResult r;
  r.tension_residual = tension.value;
  r.bitension_residual = bitension.value;
  r.tension_worst_point = tension.point;
  r.bitension_worst_point = bitension.point;
  const bool m_is_one = spec.half_dimension() == 1;
  if (tension.value <= tol) {
    r.classification = Classification::Harmonic;
    r.note = direction == Direction::FromDeformed && m_is_one ? "harmonic (dim M = 2)" : "harmonic (alpha constant)";
  } else if (bitension.value <= tol && !(direction == Direction::FromDeformed && m_is_one)) {
    r.classification = Classification::ProperBiharmonic;
    r.note = "proper biharmonic";
  } else {
    r.classification = Classification::NotBiharmonic;
    r.note = "not biharmonic";
  }
  return r;
}

}  // namespace berger
