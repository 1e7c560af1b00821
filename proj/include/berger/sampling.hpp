#pragma once

#include "berger/manifold.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace berger {

/// Deterministic sample set over a domain box: the first `halton_count`
/// points of the Halton sequence (skipping the origin) followed by
/// `random_count` uniform points from a seeded generator.
std::vector<Eigen::VectorXd> sample_points(const DomainBox& domain, int halton_count, int random_count,
                                           std::uint64_t seed);

/// `count` points split evenly between the two sources.
std::vector<Eigen::VectorXd> sample_points(const DomainBox& domain, int count, std::uint64_t seed);

/// Seeded generator for auxiliary random vectors; `salt` decorrelates
/// independent consumers of the same user seed.
std::mt19937_64 make_rng(std::uint64_t seed, std::string_view salt);

Eigen::VectorXd random_vector(std::mt19937_64& rng, int dimension);

}  // namespace berger
