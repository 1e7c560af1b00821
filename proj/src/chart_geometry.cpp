#include "berger/chart_geometry.hpp"

#include <cmath>
#include <sstream>

namespace berger {

std::string_view to_string(MetricKind kind) { return kind == MetricKind::Base ? "base" : "deformed"; }

Eigen::MatrixXd JetMatrix::values() const {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = (*this)(i, j).value();
  return m;
}

Eigen::VectorXd values(const JetVector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].value();
  return out;
}

FieldJets field_jets(const ManifoldSpec& spec, const Eigen::VectorXd& point) {
  if (!spec.domain.contains(point)) {
    std::ostringstream os;
    os << "point (" << point.transpose() << ") lies outside the chart domain";
    throw GeometryError(os.str());
  }
  const int n = spec.dimension;
  const Jet3 zero(n, 0.0);
  FieldJets f;
  f.alpha = eval_jet3(spec.alpha, point);
  f.metric = JetMatrix(n, n, zero);
  f.structure = JetMatrix(n, n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      f.metric(i, j) = eval_jet3(spec.g(i, j), point);
      f.structure(i, j) = eval_jet3(spec.F(i, j), point);
    }
  f.field.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) f.field.push_back(eval_jet3(spec.V(i), point));
  f.fv.assign(static_cast<std::size_t>(n), zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f.fv[static_cast<std::size_t>(i)] += f.structure(i, j) * f.field[static_cast<std::size_t>(j)];
  f.fv_lowered.assign(static_cast<std::size_t>(n), zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f.fv_lowered[static_cast<std::size_t>(i)] += f.metric(i, j) * f.fv[static_cast<std::size_t>(j)];
  return f;
}

JetMatrix deformed_metric_jets(const FieldJets& f) {
  const int n = f.metric.rows;
  JetMatrix out = f.metric;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = f.alpha * (f.metric(i, j) + f.fv_lowered[static_cast<std::size_t>(i)] * f.fv_lowered[static_cast<std::size_t>(j)]);
  return out;
}

JetMatrix inverse(const JetMatrix& m) {
  const int n = m.rows;
  JetMatrix a = m;
  const Jet3 zero = n > 0 ? Jet3(m(0, 0).dim(), 0.0, m(0, 0).order()) : Jet3();
  JetMatrix inv(n, n, zero);
  for (int i = 0; i < n; ++i) inv(i, i) += 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col).value()) > std::abs(a(pivot, col).value())) pivot = r;
    if (a(pivot, col).value() == 0.0) throw GeometryError("singular matrix in jet inversion");
    if (pivot != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    const Jet3 r = reciprocal(a(col, col));
    for (int c = 0; c < n; ++c) {
      a(col, c) = a(col, c) * r;
      inv(col, c) = inv(col, c) * r;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const Jet3 factor = a(row, col);
      for (int c = 0; c < n; ++c) {
        a(row, c) -= factor * a(col, c);
        inv(row, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

Eigen::VectorXd ConnectionCoefficients::contract(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  const int n = dimension();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(k) += gamma(k, i, j) * x(i) * y(j);
  return out;
}

ChristoffelJets::ChristoffelJets(const JetMatrix& metric, const JetMatrix& inverse_metric) : n_(metric.rows) {
  const int n = n_;
  // dg[(l * n + i) * n + j] = d_l g_ij
  std::vector<Jet3> dg;
  dg.reserve(static_cast<std::size_t>(n * n * n));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg.push_back(metric(i, j).partial(l));
  auto d = [&](int l, int i, int j) -> const Jet3& { return dg[static_cast<std::size_t>((l * n + i) * n + j)]; };

  // First-kind symbols [ij, l] = (d_i g_jl + d_j g_il - d_l g_ij) / 2.
  std::vector<Jet3> first;
  first.reserve(static_cast<std::size_t>(n * n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) first.push_back((d(i, j, l) + d(j, i, l) - d(l, i, j)) * 0.5);

  const Jet3 zero = n > 0 ? Jet3(metric(0, 0).dim(), 0.0, metric(0, 0).order() - 1) : Jet3();
  data_.assign(static_cast<std::size_t>(n * n * n), zero);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Jet3 acc = zero;
        for (int l = 0; l < n; ++l) acc += inverse_metric(k, l) * first[static_cast<std::size_t>((i * n + j) * n + l)];
        data_[index(k, i, j)] = acc;
        data_[index(k, j, i)] = acc;
      }
}

ConnectionCoefficients ChristoffelJets::values(MetricKind kind) const {
  ConnectionCoefficients c;
  c.which_metric = kind;
  c.gamma.resize(n_, n_, n_);
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) c.gamma(k, i, j) = (*this)(k, i, j).value();
  return c;
}

Eigen::VectorXd CurvatureBundle::apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                       const Eigen::VectorXd& z) const {
  const int n = static_cast<int>(riemann.dimension(0));
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i) {
      if (x(i) == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        if (y(j) == 0.0) continue;
        for (int k = 0; k < n; ++k) out(l) += riemann(l, i, j, k) * x(i) * y(j) * z(k);
      }
    }
  return out;
}

CurvatureBundle curvature_from(const ChristoffelJets& gamma, const Eigen::MatrixXd& inverse_metric) {
  const int n = gamma.dimension();
  CurvatureBundle b;
  b.riemann.resize(n, n, n, n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double r = gamma(l, j, k).d(i) - gamma(l, i, k).d(j);
          for (int p = 0; p < n; ++p)
            r += gamma(l, i, p).value() * gamma(p, j, k).value() - gamma(l, j, p).value() * gamma(p, i, k).value();
          b.riemann(l, i, j, k) = r;
        }
  b.ricci_tensor = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) b.ricci_tensor(j, k) += b.riemann(i, i, j, k);
  b.ricci_operator = inverse_metric * b.ricci_tensor;
  b.scalar = (inverse_metric.cwiseProduct(b.ricci_tensor)).sum();
  return b;
}

PointGeometry::PointGeometry(const ManifoldSpec& spec, const Eigen::VectorXd& point, MetricKind kind)
    : kind_(kind), point_(point), fields_(field_jets(spec, point)) {
  metric_jets_ = kind == MetricKind::Base ? fields_.metric : deformed_metric_jets(fields_);
  metric_ = metric_jets_.values();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (metric_ + metric_.transpose()), Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().cwiseAbs().minCoeff();
  const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (!(hi > 0.0) || !(lo > 0.0) || hi / lo > 1e12) {
    std::ostringstream os;
    os << to_string(kind) << " metric is singular at (" << point.transpose() << ")";
    throw GeometryError(os.str());
  }
  inverse_jets_ = berger::inverse(metric_jets_);
  inverse_ = inverse_jets_.values();
  christoffel_ = ChristoffelJets(metric_jets_, inverse_jets_);
}

MetricAt metric_at(const ManifoldSpec& spec, const Eigen::VectorXd& point, MetricKind which) {
  PointGeometry g(spec, point, which);
  return {g.metric(), g.inverse(), g.metric_jets()};
}

ConnectionCoefficients christoffel_at(const ManifoldSpec& spec, const Eigen::VectorXd& point, MetricKind which) {
  return PointGeometry(spec, point, which).connection();
}

CurvatureBundle riemann_at(const ManifoldSpec& spec, const Eigen::VectorXd& point, MetricKind which) {
  return PointGeometry(spec, point, which).curvature();
}

Eigen::VectorXd gradient(const PointGeometry& geom, const Jet3& f) { return geom.inverse() * f.gradient(); }

Eigen::MatrixXd hessian(const PointGeometry& geom, const Jet3& f) {
  const int n = geom.dimension();
  Eigen::MatrixXd h = f.hessian();
  const auto& gamma = geom.christoffel();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) h(i, j) -= gamma(k, i, j).value() * f.d(k);
  return h;
}

double laplacian(const PointGeometry& geom, const Jet3& f) {
  return geom.inverse().cwiseProduct(hessian(geom, f)).sum();
}

Eigen::VectorXd gradient_at(const ManifoldSpec& spec, const Eigen::VectorXd& point, const Expression& field,
                            MetricKind which) {
  return gradient(PointGeometry(spec, point, which), eval_jet3(field, point));
}

Eigen::MatrixXd hessian_at(const ManifoldSpec& spec, const Eigen::VectorXd& point, const Expression& field,
                           MetricKind which) {
  return hessian(PointGeometry(spec, point, which), eval_jet3(field, point));
}

double laplacian_at(const ManifoldSpec& spec, const Eigen::VectorXd& point, const Expression& field,
                    MetricKind which) {
  return laplacian(PointGeometry(spec, point, which), eval_jet3(field, point));
}

double killing_potential_residual(const ManifoldSpec& spec, const Expression& field,
                                  const std::vector<Eigen::VectorXd>& points) {
  double worst = 0.0;
  for (const auto& p : points)
    worst = std::max(worst, hessian_at(spec, p, field, MetricKind::Base).cwiseAbs().maxCoeff());
  return worst;
}

JetVector raise(const JetMatrix& inverse_metric, const JetVector& covector) {
  const int n = inverse_metric.rows;
  JetVector out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Jet3 acc = inverse_metric(i, 0) * covector[0];
    for (int j = 1; j < n; ++j) acc += inverse_metric(i, j) * covector[static_cast<std::size_t>(j)];
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<JetVector> covariant_derivative(const ChristoffelJets& gamma, const JetVector& w) {
  const int n = gamma.dimension();
  std::vector<JetVector> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& row = out[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      Jet3 acc = w[static_cast<std::size_t>(k)].partial(i);
      for (int l = 0; l < n; ++l) acc += gamma(k, i, l) * w[static_cast<std::size_t>(l)];
      row.push_back(std::move(acc));
    }
  }
  return out;
}

Eigen::MatrixXd gram_schmidt(const Eigen::MatrixXd& metric, const Eigen::MatrixXd& vectors, double pivot_tol) {
  Eigen::MatrixXd out(vectors.rows(), vectors.cols());
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::VectorXd v = vectors.col(c);
    for (Eigen::Index p = 0; p < c; ++p) v -= (out.col(p).dot(metric * v)) * out.col(p);
    const double norm2 = v.dot(metric * v);
    if (!(norm2 > pivot_tol * pivot_tol))
      throw GeometryError("near-dependent vector " + std::to_string(c) + " in Gram-Schmidt input");
    out.col(c) = v / std::sqrt(norm2);
  }
  return out;
}

Eigen::MatrixXd orthonormal_frame_ending_with(const Eigen::MatrixXd& metric, const Eigen::VectorXd& last,
                                              double pivot_tol) {
  const auto n = metric.rows();
  std::vector<Eigen::VectorXd> frame{last / std::sqrt(last.dot(metric * last))};
  for (Eigen::Index c = 0; c < n && static_cast<Eigen::Index>(frame.size()) < n; ++c) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, c);
    for (const auto& e : frame) v -= e.dot(metric * v) * e;
    const double norm2 = v.dot(metric * v);
    if (norm2 > pivot_tol * pivot_tol) frame.push_back(v / std::sqrt(norm2));
  }
  if (static_cast<Eigen::Index>(frame.size()) != n) throw GeometryError("could not complete an orthonormal frame");
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index c = 0; c + 1 < n; ++c) out.col(c) = frame[static_cast<std::size_t>(c + 1)];
  out.col(n - 1) = frame.front();
  return out;
}

}  // namespace berger
