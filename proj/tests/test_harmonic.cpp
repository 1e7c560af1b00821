#include "doctest.h"
#include "support.hpp"

#include "berger/harmonic.hpp"
#include "berger/manifest.hpp"
#include "berger/oracle.hpp"
#include "berger/sampling.hpp"

using namespace berger;

namespace {

std::shared_ptr<const ManifoldSpec> shared(ManifoldSpec spec) { return std::make_shared<const ManifoldSpec>(std::move(spec)); }

const ManifoldSpec& curved() {
  static const ManifoldSpec spec = load_manifold(BERGER_DATA_DIR "/curved4.json");
  return spec;
}

void check_vector(const Eigen::VectorXd& got, const std::vector<double>& expected, double rel) {
  REQUIRE(got.size() == static_cast<int>(expected.size()));
  for (int i = 0; i < got.size(); ++i)
    CHECK(testing::close(got(i), expected[static_cast<std::size_t>(i)], rel, 1e-15));
}

}  // namespace

TEST_CASE("identity tension on the flat model") {
  const ManifoldSpec flat = builtin_manifold("flat2");
  const DeformationContext ctx = make_context(flat, Eigen::Vector2d(1.0, 0.0));
  CHECK((tension_identity_to_deformed(ctx) - Eigen::Vector2d(-0.5, 0)).norm() <= 1e-12);
  CHECK(tension_identity_from_deformed(ctx).norm() == 0.0);
  CHECK(tension_identity(ctx, Direction::ToDeformed).isApprox(tension_identity_to_deformed(ctx)));

  const DeformationContext flat4 = make_context(builtin_manifold("flat4"), Eigen::Vector4d(0, 1, 0, 0));
  CHECK((tension_identity_from_deformed(flat4) - Eigen::Vector4d(0, 0.5, 0, 0)).norm() <= 1e-12);
  CHECK((tension_identity_to_deformed(flat4) - Eigen::Vector4d(0, -1.5, 0, 0)).norm() <= 1e-12);
}

TEST_CASE("identity tension matches the direct definition") {
  for (const ManifoldSpec* spec : {&curved()}) {
    const auto ptr = shared(*spec);
    const MapSpec to = identity_map(ptr, DeformedSide::Target);
    const MapSpec from = identity_map(ptr, DeformedSide::Source);
    for (const auto& p : sample_points(spec->domain, 30, 2)) {
      const DeformationContext ctx = make_context(*spec, p);
      CHECK((tension_identity_to_deformed(ctx) - map_tension(to, p, MetricKind::Base, MetricKind::Deformed)).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK((tension_identity_from_deformed(ctx) - map_tension(from, p, MetricKind::Deformed, MetricKind::Base)).cwiseAbs().maxCoeff() <= 1e-9);
      // General-map forms reduce to the identity forms.
      CHECK((tension_map_to_deformed(to, p) - tension_identity_to_deformed(ctx)).cwiseAbs().maxCoeff() <= 1e-8);
      CHECK((tension_map_from_deformed(from, p) - tension_identity_from_deformed(ctx)).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("general map tensions match the definition") {
  for (const std::string file : {"flat2_fold_to_flat4.json", "curved4_to_flat2.json", "identity_to_curved4.json"}) {
    CAPTURE(file);
    const MapSpec map = load_map(std::string(BERGER_DATA_DIR "/") + file);
    for (const auto& p : sample_points(map.source->domain, 30, 9)) {
      const Eigen::VectorXd direct = map_tension(map, p, map.source_kind(), map.target_kind());
      const Eigen::VectorXd closed = map.deformed == DeformedSide::Target ? tension_map_to_deformed(map, p)
                                                                         : tension_map_from_deformed(map, p);
      CHECK((direct - closed).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, direct.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("energy density of identities") {
  const auto flat = shared(builtin_manifold("flat2"));
  const Eigen::Vector2d p(1.2, -0.4);
  CHECK(energy_density(identity_map(flat), p) == doctest::Approx(1.0));
  CHECK(energy_density(identity_map(flat, DeformedSide::Target), p) == doctest::Approx(1.5 * (1 + 1.2 * 1.2)));
  const auto four = shared(builtin_manifold("flat4"));
  CHECK(energy_density(identity_map(four), Eigen::Vector4d(0.1, 0.2, 0.3, 0.4)) == doctest::Approx(2.0));
}

TEST_CASE("harmonicity of identities") {
  const ManifoldSpec flat = builtin_manifold("flat2");
  const auto pts = sample_points(flat.domain, 60, 42);

  const HarmonicResult from = is_harmonic(flat, Direction::FromDeformed, pts);
  CHECK(from.harmonic);
  CHECK(from.note == "harmonic (dim M = 2)");

  const HarmonicResult to = is_harmonic(flat, Direction::ToDeformed, pts);
  CHECK_FALSE(to.harmonic);
  CHECK(to.note == "not harmonic (alpha non-constant)");
  CHECK(to.residual > 0.1);

  const ManifoldSpec constant = testing::with_source(testing::flat2_with("3"));
  const HarmonicResult c = is_harmonic(constant, Direction::ToDeformed, pts);
  CHECK(c.harmonic);
  CHECK(c.note == "harmonic (alpha constant)");
  CHECK(c.residual == 0.0);

  const ManifoldSpec flat4 = builtin_manifold("flat4");
  const auto pts4 = sample_points(flat4.domain, 60, 42);
  CHECK_FALSE(is_harmonic(flat4, Direction::FromDeformed, pts4).harmonic);
  CHECK_FALSE(is_harmonic(flat4, Direction::ToDeformed, pts4).harmonic);
}

TEST_CASE("harmonic iff alpha constant or dimension two") {
  // Only the trivial cases are harmonic; any non-constant alpha breaks it for m > 1.
  for (const std::string alpha : {"2", "1 + x^2", "2 + sin(x)", "3 - x/2"}) {
    CAPTURE(alpha);
    const ManifoldSpec spec = testing::with_source(testing::flat2_with(alpha));
    const auto pts = sample_points(spec.domain, 40, 1);
    const bool constant = alpha == "2";
    CHECK(is_harmonic(spec, Direction::ToDeformed, pts).harmonic == constant);
    CHECK(is_harmonic(spec, Direction::FromDeformed, pts).harmonic);
  }
  for (const std::string alpha : {"2", "1 + x2^2", "2 + sin(x1)"}) {
    CAPTURE(alpha);
    const ManifoldSpec spec = with_alpha(builtin_manifold("flat4"), alpha);
    const auto pts = sample_points(spec.domain, 40, 1);
    const bool constant = alpha == "2";
    CHECK(is_harmonic(spec, Direction::ToDeformed, pts).harmonic == constant);
    CHECK(is_harmonic(spec, Direction::FromDeformed, pts).harmonic == constant);
  }
}

TEST_CASE("flat model bitension by hand") {
  const ManifoldSpec flat = builtin_manifold("flat2");
  for (double x : {-1.7, -0.3, 0.0, 1.0, 1.4}) {
    const DeformationContext ctx = make_context(flat, Eigen::Vector2d(x, 0.2));
    const Eigen::VectorXd b = bitension_identity_to_deformed(ctx);
    CHECK(b(0) == doctest::Approx(testing::quadratic_alpha(x).bitension_to_deformed()).epsilon(1e-12));
    CHECK(std::abs(b(1)) <= 1e-14);
    CHECK(bitension_identity_from_deformed(ctx).cwiseAbs().maxCoeff() <= 1e-14);
  }
  const DeformationContext at1 = make_context(flat, Eigen::Vector2d(1.0, 0.0));
  CHECK(bitension_identity_to_deformed(at1)(0) == doctest::Approx(-0.625).epsilon(1e-12));

  // Cubic alpha exercises the third derivative term.
  const ManifoldSpec cubic = testing::with_source(testing::flat2_with("3 + x^3/4"));
  for (double x : {-1.0, 0.5, 1.5}) {
    const testing::Flat2Alpha a{3 + x * x * x / 4, 0.75 * x * x, 1.5 * x, 1.5};
    const DeformationContext ctx = make_context(cubic, Eigen::Vector2d(x, 0.0));
    CHECK(bitension_identity_to_deformed(ctx)(0) == doctest::Approx(a.bitension_to_deformed()).epsilon(1e-12));
  }
}

TEST_CASE("biharmonic classification") {
  const ManifoldSpec flat = builtin_manifold("flat2");
  const auto pts = sample_points(flat.domain, 60, 42);
  CHECK(classify(flat, Direction::FromDeformed, pts).classification == Classification::Harmonic);
  const BiharmonicResult to = classify(flat, Direction::ToDeformed, pts);
  CHECK(to.classification == Classification::NotBiharmonic);
  CHECK(to.bitension_residual > 0.1);
  CHECK(to_string(Classification::ProperBiharmonic) == "proper-biharmonic");
  const ManifoldSpec constant = testing::with_source(testing::flat2_with("3"));
  CHECK(classify(constant, Direction::ToDeformed, pts).classification == Classification::Harmonic);
}

TEST_CASE("frozen tension and bitension values") {
  // Reference values computed symbolically.
  const DeformationContext c = make_context(curved(), Eigen::Vector4d(0.3, -0.2, 0.1, 0.7));
  check_vector(tension_identity_to_deformed(c),
               {0.034760084611917050868, -0.052140126917875576302, 0, 0.20452038238591711482}, 1e-10);
  check_vector(tension_identity_from_deformed(c),
               {-0.0098091698400604110025, 0.014713754760090616504, 0, -0.057714910333957275883}, 1e-10);
  check_vector(bitension_identity_to_deformed(c),
               {-0.025948938138050267564, 0.033247495006858989407, 0, 0.081231129985461201907}, 1e-9);
  check_vector(bitension_identity_from_deformed(c),
               {0.0042262915328379531847, -0.0049834370105820926720, 0, -0.0026324483070136825321}, 1e-9);

  const DeformationContext f = make_context(builtin_manifold("flat4"), Eigen::Vector4d(0.2, 0.6, -0.3, 0.4));
  check_vector(tension_identity_to_deformed(f), {0, -1.3235294117647058824, 0, 0}, 1e-12);
  check_vector(tension_identity_from_deformed(f), {0, 0.64878892733564013841, 0, 0}, 1e-12);
  check_vector(bitension_identity_to_deformed(f), {0, -5.0090321595766334215, 0, 0}, 1e-11);
  check_vector(bitension_identity_from_deformed(f), {0, 2.0221006411209016119, 0, 0}, 1e-11);
}
