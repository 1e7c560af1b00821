#include "doctest.h"
#include "support.hpp"

#include "berger/chart_geometry.hpp"
#include "berger/errors.hpp"
#include "berger/manifest.hpp"
#include "berger/sampling.hpp"

using namespace berger;

namespace {

const ManifoldSpec& curved() {
  static const ManifoldSpec spec = load_manifold(BERGER_DATA_DIR "/curved4.json");
  return spec;
}

const ManifoldSpec& skewed() {
  static const ManifoldSpec spec = load_manifold(BERGER_DATA_DIR "/skewed4.json");
  return spec;
}

double lowered(const CurvatureBundle& c, const Eigen::MatrixXd& g, int i, int j, int k, int l) {
  double v = 0.0;
  for (int p = 0; p < g.rows(); ++p) v += g(l, p) * c.riemann(p, i, j, k);
  return v;
}

}  // namespace

TEST_CASE("flat model metrics") {
  const ManifoldSpec flat = builtin_manifold("flat2");
  const MetricAt base = metric_at(flat, Eigen::Vector2d(0.4, -1.0), MetricKind::Base);
  CHECK(base.metric.isApprox(Eigen::Matrix2d::Identity()));
  for (double x : {-1.5, 0.0, 1.0, 1.7}) {
    const double a = 1 + x * x;
    const MetricAt d = metric_at(flat, Eigen::Vector2d(x, 0.3), MetricKind::Deformed);
    CHECK(d.metric(0, 0) == doctest::Approx(a));
    CHECK(d.metric(1, 1) == doctest::Approx(2 * a));
    CHECK(d.metric(0, 1) == 0.0);
    CHECK((d.metric * d.inverse - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  const MetricAt one = metric_at(flat, Eigen::Vector2d(1.0, 0.0), MetricKind::Deformed);
  CHECK(one.metric.isApprox((Eigen::Matrix2d() << 2, 0, 0, 4).finished()));
}

TEST_CASE("metric errors") {
  const ManifoldSpec flat = builtin_manifold("flat2");
  CHECK_THROWS_AS(metric_at(flat, Eigen::Vector2d(3.0, 0.0), MetricKind::Base), GeometryError);
  auto src = builtin_source("flat2");
  src.metric = {{"1", "0"}, {"0", "1e-14"}};
  CHECK_THROWS_AS(metric_at(make_manifold(src), Eigen::Vector2d(0, 0), MetricKind::Base), GeometryError);
}

TEST_CASE("flat model Christoffel symbols") {
  const ManifoldSpec flat = builtin_manifold("flat2");
  const auto base = christoffel_at(flat, Eigen::Vector2d(1.0, 0.0), MetricKind::Base);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(base(k, i, j) == 0.0);

  // diag(alpha, 2 alpha): Gamma^x_xx = a'/2a, Gamma^x_yy = -a'/a, Gamma^y_xy = a'/2a.
  for (double x : {1.0, -0.6, 1.9}) {
    const double a = 1 + x * x, a1 = 2 * x;
    const auto g = christoffel_at(flat, Eigen::Vector2d(x, 0.2), MetricKind::Deformed);
    CHECK(g(0, 0, 0) == doctest::Approx(a1 / (2 * a)).epsilon(1e-14));
    CHECK(g(0, 1, 1) == doctest::Approx(-a1 / a).epsilon(1e-14));
    CHECK(g(1, 0, 1) == doctest::Approx(a1 / (2 * a)).epsilon(1e-14));
    CHECK(g(1, 1, 0) == doctest::Approx(a1 / (2 * a)).epsilon(1e-14));
    CHECK(g(0, 0, 1) == 0.0);
    CHECK(g(1, 0, 0) == 0.0);
    CHECK(g(1, 1, 1) == 0.0);
  }
  const auto g = christoffel_at(flat, Eigen::Vector2d(1.0, 0.0), MetricKind::Deformed);
  CHECK(std::abs(g(0, 0, 0) - 0.5) <= 1e-10);
  CHECK(std::abs(g(0, 1, 1) + 1.0) <= 1e-10);
  CHECK(std::abs(g(1, 0, 1) - 0.5) <= 1e-10);
}

TEST_CASE("Christoffel symbols are symmetric and metric compatible") {
  for (const ManifoldSpec* spec : {&curved(), &skewed()}) {
    for (const auto& p : sample_points(spec->domain, 100, 5)) {
      for (MetricKind kind : {MetricKind::Base, MetricKind::Deformed}) {
        const PointGeometry geom(*spec, p, kind);
        const auto gamma = geom.connection();
        const auto& m = geom.metric_jets();
        const int n = spec->dimension;
        double worst = 0.0, asym = 0.0;
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              asym = std::max(asym, std::abs(gamma(k, i, j) - gamma(k, j, i)));
              double v = m(i, j).d(k);
              for (int l = 0; l < n; ++l) v -= gamma(l, k, i) * m(l, j).value() + gamma(l, k, j) * m(i, l).value();
              worst = std::max(worst, std::abs(v));
            }
        CHECK(asym == 0.0);
        CHECK(worst <= 1e-9);
      }
    }
  }
}

TEST_CASE("Riemann tensor symmetries") {
  for (const ManifoldSpec* spec : {&curved(), &skewed()}) {
    const int n = spec->dimension;
    for (const auto& p : sample_points(spec->domain, 100, 8)) {
      for (MetricKind kind : {MetricKind::Base, MetricKind::Deformed}) {
        const PointGeometry geom(*spec, p, kind);
        const CurvatureBundle c = geom.curvature();
        const Eigen::MatrixXd& g = geom.metric();
        double bianchi = 0.0, anti = 0.0, pair = 0.0, last = 0.0;
        for (int l = 0; l < n; ++l)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k) {
                bianchi = std::max(bianchi, std::abs(c.riemann(l, i, j, k) + c.riemann(l, j, k, i) + c.riemann(l, k, i, j)));
                anti = std::max(anti, std::abs(c.riemann(l, i, j, k) + c.riemann(l, j, i, k)));
                pair = std::max(pair, std::abs(lowered(c, g, i, j, k, l) - lowered(c, g, k, l, i, j)));
                last = std::max(last, std::abs(lowered(c, g, i, j, k, l) + lowered(c, g, i, j, l, k)));
              }
        CHECK(bianchi <= 1e-8);
        CHECK(anti <= 1e-12);
        CHECK(pair <= 1e-8);
        CHECK(last <= 1e-8);
        CHECK((c.ricci_tensor - c.ricci_tensor.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(c.scalar == doctest::Approx((geom.inverse() * c.ricci_tensor).trace()).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("scalar curvature is a frame trace") {
  auto rng = make_rng(3, "frame-trace");
  const ManifoldSpec& spec = skewed();
  const int n = spec.dimension;
  for (const auto& p : sample_points(spec.domain, 40, 9)) {
    const PointGeometry geom(spec, p, MetricKind::Base);
    Eigen::MatrixXd raw(n, n);
    for (int c = 0; c < n; ++c) raw.col(c) = random_vector(rng, n);
    const Eigen::MatrixXd e = gram_schmidt(geom.metric(), raw);
    CHECK((e.transpose() * geom.metric() * e - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
    const CurvatureBundle c = geom.curvature();
    double trace = 0.0;
    for (int i = 0; i < n; ++i) trace += e.col(i).dot(c.ricci_tensor * e.col(i));
    CHECK(std::abs(trace - c.scalar) <= 1e-8);
    // Ricci operator as a frame sum of R(X, e_i) e_i.
    const Eigen::VectorXd x = random_vector(rng, n);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) sum += c.apply(x, e.col(i), e.col(i));
    CHECK((sum - c.ricci_operator * x).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("flat model deformed scalar curvature") {
  const ManifoldSpec flat = builtin_manifold("flat2");
  CHECK(riemann_at(flat, Eigen::Vector2d(0.5, 0.5), MetricKind::Base).scalar == 0.0);
  for (double x : {-1.8, -0.4, 0.0, 1.0, 2.0}) {
    const auto a = testing::quadratic_alpha(x);
    CHECK(riemann_at(flat, Eigen::Vector2d(x, -0.1), MetricKind::Deformed).scalar ==
          doctest::Approx(a.scalar()).epsilon(1e-12));
  }
  CHECK(std::abs(riemann_at(flat, Eigen::Vector2d(2.0, 0.0), MetricKind::Deformed).scalar - 0.048) <= 1e-12);
}

TEST_CASE("gradient, Hessian, Laplacian") {
  const ManifoldSpec flat = builtin_manifold("flat2");
  const std::vector<std::string> c{"x", "y"};
  const Expression quad = parse_expression("1 + x^2", c);
  const Eigen::Vector2d p(1.0, 0.0);
  CHECK(gradient_at(flat, p, quad, MetricKind::Base).isApprox(Eigen::Vector2d(2, 0)));
  CHECK(gradient_at(flat, p, quad, MetricKind::Deformed).isApprox(Eigen::Vector2d(1, 0)));
  CHECK(gradient_at(flat, p, parse_expression("3", c), MetricKind::Base).isZero());
  CHECK(hessian_at(flat, Eigen::Vector2d(0.3, 1.2), quad, MetricKind::Base).isApprox(Eigen::Matrix2d(Eigen::Vector2d(2, 0).asDiagonal())));
  CHECK(hessian_at(flat, p, parse_expression("1 + x", c), MetricKind::Base).isZero());
  CHECK(laplacian_at(flat, p, quad, MetricKind::Base) == doctest::Approx(2));
  CHECK(laplacian_at(flat, p, parse_expression("x*y", c), MetricKind::Base) == 0.0);

  // Deformed Laplacian of 1 + x^2 on diag(a, 2a): g^xx (a'' - G^x_xx a') + g^yy (-G^x_yy a').
  const double a = 2, a1 = 2, a2 = 2;
  const double expected = (a2 - a1 / (2 * a) * a1) / a + (a1 / a * a1) / (2 * a);
  CHECK(laplacian_at(flat, p, quad, MetricKind::Deformed) == doctest::Approx(expected));

  const Expression curvy = parse_expression("sin(x)*exp(y/3)", c);
  for (const auto& q : sample_points(flat.domain, 20, 4)) {
    const Eigen::MatrixXd h = hessian_at(flat, q, curvy, MetricKind::Deformed);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("Killing potential residual") {
  const ManifoldSpec flat = builtin_manifold("flat2");
  const std::vector<std::string> c{"x", "y"};
  const auto pts = sample_points(flat.domain, 30, 1);
  CHECK(killing_potential_residual(flat, parse_expression("1 + x", c), pts) == 0.0);
  CHECK(killing_potential_residual(flat, parse_expression("1 + x^2", c), pts) == doctest::Approx(2.0));
  CHECK(killing_potential_residual(flat, parse_expression("7", c), pts) == 0.0);
}

TEST_CASE("Gram-Schmidt rejects dependent input") {
  Eigen::MatrixXd v(3, 2);
  v << 1, 2, 0, 0, 0, 1e-12;
  CHECK_THROWS_AS(gram_schmidt(Eigen::Matrix3d::Identity(), v), GeometryError);
  const Eigen::MatrixXd frame = orthonormal_frame_ending_with(Eigen::Matrix3d::Identity(), Eigen::Vector3d(0, 1, 0));
  CHECK(frame.col(2).isApprox(Eigen::Vector3d(0, 1, 0)));
  CHECK((frame.transpose() * frame).isApprox(Eigen::Matrix3d::Identity()));
}
