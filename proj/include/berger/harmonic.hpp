#pragma once

#include "berger/deformation.hpp"
#include "berger/map_spec.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace berger {

Eigen::VectorXd tension_identity_to_deformed(const DeformationContext& ctx);
Eigen::VectorXd tension_identity_from_deformed(const DeformationContext& ctx);
Eigen::VectorXd tension_identity(const DeformationContext& ctx, Direction direction);

/// Map into a deformed target; `map.target` carries F, V, alpha.
Eigen::VectorXd tension_map_to_deformed(const MapSpec& map, const Eigen::VectorXd& point);
/// Map out of a deformed source; `map.source` carries F, V, alpha.
Eigen::VectorXd tension_map_from_deformed(const MapSpec& map, const Eigen::VectorXd& point);

Eigen::VectorXd bitension_identity_to_deformed(const DeformationContext& ctx);
Eigen::VectorXd bitension_identity_from_deformed(const DeformationContext& ctx);
Eigen::VectorXd bitension_identity(const DeformationContext& ctx, Direction direction);

struct HarmonicResult {
  bool harmonic = false;
  double residual = 0.0;  // max norm of the tension over the samples
  Eigen::VectorXd worst_point;
  std::string note;
};

/// Identity maps: residuals are measured in the base metric g.
HarmonicResult is_harmonic(const ManifoldSpec& spec, Direction direction, const std::vector<Eigen::VectorXd>& points,
                           double tol = 1e-9);
/// General maps: residuals are measured in the target metric of the
/// relevant formula (h^alpha for a deformed target, h otherwise).
HarmonicResult is_harmonic(const MapSpec& map, const std::vector<Eigen::VectorXd>& points, double tol = 1e-9);

enum class Classification { Harmonic, ProperBiharmonic, NotBiharmonic };

std::string_view to_string(Classification c);

struct BiharmonicResult {
  Classification classification = Classification::NotBiharmonic;
  double tension_residual = 0.0;
  double bitension_residual = 0.0;
  Eigen::VectorXd tension_worst_point;
  Eigen::VectorXd bitension_worst_point;
  std::string note;
};

BiharmonicResult classify(const ManifoldSpec& spec, Direction direction, const std::vector<Eigen::VectorXd>& points,
                          double tol = 1e-9);

}  // namespace berger
