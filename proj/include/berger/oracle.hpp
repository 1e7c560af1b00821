#pragma once

#include "berger/chart_geometry.hpp"
#include "berger/map_spec.hpp"

#include <Eigen/Dense>

namespace berger {

// Definition-based quantities built only from metric components and their
// jets. Nothing here reads a closed form.

ConnectionCoefficients oracle_connection(const ManifoldSpec& spec, const Eigen::VectorXd& point, MetricKind which);

/// Curvature of the deformed metric.
CurvatureBundle oracle_curvature(const ManifoldSpec& spec, const Eigen::VectorXd& point);

/// nabla~_X grad alpha, with grad alpha taken in the base metric and
/// differentiated as a field.
Eigen::VectorXd oracle_nabla_grad(const ManifoldSpec& spec, const Eigen::VectorXd& point, const Eigen::VectorXd& x);

/// g~(R~(X,Y)Y, X) / (g~(X,X) g~(Y,Y) - g~(X,Y)^2).
double oracle_sectional(const ManifoldSpec& spec, const Eigen::VectorXd& point, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y);

/// Tension with the metrics tagged on the map.
Eigen::VectorXd oracle_tension(const MapSpec& map, const Eigen::VectorXd& point);

/// Tension of the identity in the given direction.
Eigen::VectorXd oracle_tension(const ManifoldSpec& spec, const Eigen::VectorXd& point, Direction direction);

/// tau_2 = -tr (nabla nabla - nabla_nabla) tau - tr R^N(tau, dI) dI for the
/// identity, pull-back derivatives in the target connection, correction
/// and trace in the source metric.
Eigen::VectorXd oracle_bitension(const ManifoldSpec& spec, const Eigen::VectorXd& point, Direction direction);

}  // namespace berger
