#include "berger/sampling.hpp"

#include <array>

namespace berger {

namespace {

constexpr std::array<int, 16> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(int index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  for (int i = index; i > 0; i /= base) {
    result += f * (i % base);
    f /= base;
  }
  return result;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::vector<Eigen::VectorXd> sample_points(const DomainBox& domain, int halton_count, int random_count,
                                           std::uint64_t seed) {
  const int n = domain.dimension();
  std::vector<Eigen::VectorXd> points;
  points.reserve(static_cast<std::size_t>(halton_count + random_count));
  for (int s = 1; s <= halton_count; ++s) {
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) {
      const auto [lo, hi] = domain.intervals[static_cast<std::size_t>(i)];
      p(i) = lo + (hi - lo) * radical_inverse(s, kPrimes[static_cast<std::size_t>(i) % kPrimes.size()]);
    }
    points.push_back(std::move(p));
  }
  std::mt19937_64 rng = make_rng(seed, "sample_points");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < random_count; ++s) {
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) {
      const auto [lo, hi] = domain.intervals[static_cast<std::size_t>(i)];
      p(i) = lo + (hi - lo) * unit(rng);
    }
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<Eigen::VectorXd> sample_points(const DomainBox& domain, int count, std::uint64_t seed) {
  const int halton = (count + 1) / 2;
  return sample_points(domain, halton, count - halton, seed);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::string_view salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(fnv1a(salt)), static_cast<std::uint32_t>(fnv1a(salt) >> 32)};
  return std::mt19937_64(seq);
}

Eigen::VectorXd random_vector(std::mt19937_64& rng, int dimension) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Eigen::VectorXd v(dimension);
  for (int i = 0; i < dimension; ++i) v(i) = d(rng);
  return v;
}

}  // namespace berger
