#pragma once

#include "berger/expr.hpp"
#include "berger/manifold.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/CXX11/Tensor>

#include <string_view>
#include <vector>

namespace berger {

/// Which metric a geometric quantity refers to: g itself or the
/// Berger-type conformal deformation alpha (g + g(., FV) g(., FV)).
enum class MetricKind { Base, Deformed };

std::string_view to_string(MetricKind kind);

using Tensor3 = Eigen::Tensor<double, 3>;
using Tensor4 = Eigen::Tensor<double, 4>;
using JetVector = std::vector<Jet3>;

/// Dense matrix of jets, row-major.
struct JetMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Jet3> entries;

  JetMatrix() = default;
  JetMatrix(int r, int c, const Jet3& fill) : rows(r), cols(c), entries(static_cast<std::size_t>(r * c), fill) {}

  Jet3& operator()(int i, int j) { return entries[static_cast<std::size_t>(i * cols + j)]; }
  const Jet3& operator()(int i, int j) const { return entries[static_cast<std::size_t>(i * cols + j)]; }
  Eigen::MatrixXd values() const;
};

Eigen::VectorXd values(const JetVector& v);

/// Jets through order 3 of every field of the chart at one point.
struct FieldJets {
  Jet3 alpha;
  JetMatrix metric;     // g_{ij}
  JetMatrix structure;  // F^i_j
  JetVector field;      // V^i
  JetVector fv;         // (FV)^i
  JetVector fv_lowered; // g_{ij} (FV)^j
};

/// Throws GeometryError if `point` lies outside the domain box.
FieldJets field_jets(const ManifoldSpec& spec, const Eigen::VectorXd& point);

/// alpha (g_{ij} + w_i w_j), w = g(., FV), assembled in jet arithmetic.
JetMatrix deformed_metric_jets(const FieldJets& fields);

/// Inverse of a jet matrix by Gauss-Jordan elimination with partial pivoting
/// on values.
JetMatrix inverse(const JetMatrix& m);

/// Christoffel symbols Gamma^k_{ij} at a point.
struct ConnectionCoefficients {
  Tensor3 gamma;  // (k, i, j)
  MetricKind which_metric = MetricKind::Base;

  int dimension() const { return static_cast<int>(gamma.dimension(0)); }
  double operator()(int k, int i, int j) const { return gamma(k, i, j); }
  /// Components of nabla_X Y for constant-coefficient X, Y.
  Eigen::VectorXd contract(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
};

/// Christoffel jets, one order below the metric jets they came from.
class ChristoffelJets {
 public:
  ChristoffelJets() = default;
  ChristoffelJets(const JetMatrix& metric, const JetMatrix& inverse_metric);

  int dimension() const { return n_; }
  const Jet3& operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }
  ConnectionCoefficients values(MetricKind kind) const;

 private:
  std::size_t index(int k, int i, int j) const { return static_cast<std::size_t>((k * n_ + i) * n_ + j); }
  int n_ = 0;
  std::vector<Jet3> data_;
};

/// R^l_{ijk} is the l-component of R(d_i, d_j) d_k with
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
/// Ricci tensor Ric_{jk} = R^i_{ijk}; Ricci operator = g^{-1} Ric.
struct CurvatureBundle {
  Tensor4 riemann;  // (l, i, j, k)
  Eigen::MatrixXd ricci_operator;
  Eigen::MatrixXd ricci_tensor;
  double scalar = 0.0;

  Eigen::VectorXd apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z) const;
};

CurvatureBundle curvature_from(const ChristoffelJets& christoffel, const Eigen::MatrixXd& inverse_metric);

/// All metric-level quantities of one chart point for one metric kind.
class PointGeometry {
 public:
  PointGeometry(const ManifoldSpec& spec, const Eigen::VectorXd& point, MetricKind kind);

  MetricKind kind() const { return kind_; }
  int dimension() const { return static_cast<int>(point_.size()); }
  const Eigen::VectorXd& point() const { return point_; }
  const FieldJets& fields() const { return fields_; }
  const JetMatrix& metric_jets() const { return metric_jets_; }
  const JetMatrix& inverse_jets() const { return inverse_jets_; }
  const Eigen::MatrixXd& metric() const { return metric_; }
  const Eigen::MatrixXd& inverse() const { return inverse_; }
  const ChristoffelJets& christoffel() const { return christoffel_; }
  ConnectionCoefficients connection() const { return christoffel_.values(kind_); }
  CurvatureBundle curvature() const { return curvature_from(christoffel_, inverse_); }

 private:
  MetricKind kind_;
  Eigen::VectorXd point_;
  FieldJets fields_;
  JetMatrix metric_jets_;
  JetMatrix inverse_jets_;
  Eigen::MatrixXd metric_;
  Eigen::MatrixXd inverse_;
  ChristoffelJets christoffel_;
};

struct MetricAt {
  Eigen::MatrixXd metric;
  Eigen::MatrixXd inverse;
  JetMatrix jets;
};

MetricAt metric_at(const ManifoldSpec& spec, const Eigen::VectorXd& point, MetricKind which);
ConnectionCoefficients christoffel_at(const ManifoldSpec& spec, const Eigen::VectorXd& point, MetricKind which);
CurvatureBundle riemann_at(const ManifoldSpec& spec, const Eigen::VectorXd& point, MetricKind which);

/// grad^i = g^{ij} d_j f.
Eigen::VectorXd gradient(const PointGeometry& geom, const Jet3& f);
/// Hess_{ij} = d_i d_j f - Gamma^k_{ij} d_k f.
Eigen::MatrixXd hessian(const PointGeometry& geom, const Jet3& f);
double laplacian(const PointGeometry& geom, const Jet3& f);

Eigen::VectorXd gradient_at(const ManifoldSpec& spec, const Eigen::VectorXd& point, const Expression& field,
                            MetricKind which);
Eigen::MatrixXd hessian_at(const ManifoldSpec& spec, const Eigen::VectorXd& point, const Expression& field,
                           MetricKind which);
double laplacian_at(const ManifoldSpec& spec, const Eigen::VectorXd& point, const Expression& field, MetricKind which);

/// max over points of the max-norm of the base Hessian of `field`.
double killing_potential_residual(const ManifoldSpec& spec, const Expression& field,
                                  const std::vector<Eigen::VectorXd>& points);

/// v^i = m^{ij} w_j in jet arithmetic.
JetVector raise(const JetMatrix& inverse_metric, const JetVector& covector);

/// D[i][k] = d_i W^k + Gamma^k_{il} W^l, the covariant derivative of a
/// vector field given by jets; the result is one order lower.
std::vector<JetVector> covariant_derivative(const ChristoffelJets& christoffel, const JetVector& field);

/// Gram-Schmidt of the columns of `vectors` against `metric`. Throws
/// GeometryError when a column is dependent on its predecessors up to
/// `pivot_tol`.
Eigen::MatrixXd gram_schmidt(const Eigen::MatrixXd& metric, const Eigen::MatrixXd& vectors, double pivot_tol = 1e-10);

/// Orthonormal frame whose last column is `last` (which must be unit),
/// completed from coordinate basis vectors.
Eigen::MatrixXd orthonormal_frame_ending_with(const Eigen::MatrixXd& metric, const Eigen::VectorXd& last,
                                              double pivot_tol = 1e-10);

}  // namespace berger
