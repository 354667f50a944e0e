#include <doctest.h>

#include "oracles.hpp"

#include <lelong/closed_forms.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace lelong;

namespace {

Vector v2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

} // namespace

TEST_CASE("factor spec validation") {
  CHECK_THROWS_AS(CompactFactorSpec::disc({}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(CompactFactorSpec::interval(1, 1), InvalidArgument);
  CHECK_THROWS_AS(CompactFactorSpec::polydisc({1.0, -1.0}), InvalidArgument);
  CHECK_THROWS_AS(CompactFactorSpec::polydisc({}), InvalidArgument);
  CHECK_THROWS_AS(ProductCompact(std::vector<CompactFactorSpec>{}), InvalidArgument);
  CHECK(CompactFactorSpec::unit_polydisc(3).dim() == 3);
  CHECK(CompactFactorSpec::interval(-1, 1).dim() == 1);
  CHECK(CompactFactorSpec::disc({0, 0}, 2).toric_radii() == std::vector<double>{2.0});
  CHECK_FALSE(CompactFactorSpec::disc({1, 0}, 2).toric_radii().has_value());
  CHECK_FALSE(CompactFactorSpec::interval(-1, 1).toric_radii().has_value());
  const ProductCompact k({CompactFactorSpec::disc(), CompactFactorSpec::polydisc({1, 2})});
  CHECK(k.total_dim() == 3);
  CHECK(k.toric_radii() == std::vector<double>{1, 1, 2});
}

TEST_CASE("disc examples") {
  CHECK(v_disc({0, 0}, 1, {2, 0}) == doctest::Approx(std::log(2.0)));
  CHECK(v_disc({0, 0}, 1, {0.6, 0.8}) == 0.0);
  CHECK(v_disc({0, 0}, 1, {0.1, -0.3}) == 0.0);
  CHECK(v_disc({0, 0}, 3, {6, 0}) == doctest::Approx(std::log(2.0)));
  CHECK(v_disc({1, 1}, 2, {1, 5}) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("interval examples") {
  CHECK(v_interval(-1, 1, {2, 0}) == doctest::Approx(std::log(2 + std::sqrt(3.0))).epsilon(1e-12));
  CHECK(v_interval(-1, 1, {2, 0}) == doctest::Approx(1.31696).epsilon(1e-5));
  CHECK(v_interval(-1, 1, {0.3, 0}) == 0.0);
  CHECK(v_interval(-1, 1, {0, 1e3}) == doctest::Approx(std::log(2e3)).epsilon(1e-3));
  // Affine change of variable: [0, 4] -> [-1, 1].
  CHECK(v_interval(0, 4, {6, 0}) == doctest::Approx(v_interval(-1, 1, {2, 0})));
  // Both sides of the branch cut.
  CHECK(v_interval(-1, 1, {0.5, 1e-14}) == doctest::Approx(v_interval(-1, 1, {0.5, -1e-14})));
  CHECK(v_interval(-1, 1, {-2, 0}) == doctest::Approx(v_interval(-1, 1, {2, 0})));
}

TEST_CASE("interval matches the Chebyshev growth oracle") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  int checked = 0;
  while (checked < 50) {
    const Complex z(u(rng), u(rng));
    if (std::abs(z) > 5.0) continue;
    // Distance from [-1, 1]; the oracle converges slowly near the segment.
    const double dist = std::hypot(std::max(0.0, std::abs(z.real()) - 1.0), z.imag());
    if (dist < 0.25) continue;
    CHECK(std::abs(v_interval(-1, 1, z) - oracle::chebyshev_growth(z, 64)) <= 2e-3);
    ++checked;
  }
}

TEST_CASE("nonnegative and zero exactly on K") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const Complex z(u(rng), u(rng));
    CHECK(v_disc({0.5, -0.5}, 1.5, z) >= 0.0);
    CHECK(v_interval(-1, 2, z) >= 0.0);
    const Complex on = Complex(0.5, -0.5) + std::polar(1.5 * unit(rng), angle(rng));
    CHECK(v_disc({0.5, -0.5}, 1.5, on) <= 1e-15);
    CHECK(v_interval(-1, 2, {-1 + 3 * unit(rng), 0.0}) <= 1e-12);
    if (std::abs(z - Complex(0.5, -0.5)) > 1.5 + 1e-9) CHECK(v_disc({0.5, -0.5}, 1.5, z) > 0.0);
    if (std::abs(z.imag()) > 1e-6) CHECK(v_interval(-1, 2, z) > 0.0);
  }
  CHECK(v_interval(-1, 2, {-1, 0}) == 0.0);
  CHECK(v_interval(-1, 2, {2, 0}) == 0.0);
}

TEST_CASE("disc monotone in the radius") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::uniform_real_distribution<double> r(0.1, 3.0);
  for (int i = 0; i < 300; ++i) {
    double r1 = r(rng);
    double r2 = r(rng);
    if (r1 > r2) std::swap(r1, r2);
    const Complex z(u(rng), u(rng));
    CHECK(v_disc({}, r1, z) >= v_disc({}, r2, z));
  }
}

TEST_CASE("polydisc closed form") {
  std::mt19937_64 rng(4);
  const ConvexBody intro = ConvexBody::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 0.5}});
  const double unit[] = {1.0, 1.0};
  CHECK(same_function(v_polydisc_body(intro, unit), h_of_body(intro)));
  const double one[] = {1.0};
  const MaxAffine d = v_polydisc_body(segment(0, 1), one);
  Vector x(1);
  x << std::log(3.0);
  CHECK(d(x) == doctest::Approx(std::log(3.0)));
  x << -2.0;
  CHECK(d(x) == 0.0);
  const double three[] = {1.0, 1.0, 1.0};
  const MaxAffine s3 = v_polydisc_body(standard_simplex(3), three);
  for (int i = 0; i < 100; ++i) {
    const auto xi = oracle::random_direction(rng, 3);
    CHECK(s3(oracle::vec(xi)) == doctest::Approx(std::max({0.0, xi[0], xi[1], xi[2]})));
  }
  // Smaller radii shift by -<g, Log r>.
  const double half[] = {0.5, 0.5};
  const MaxAffine sh = v_polydisc_body(standard_simplex(2), half);
  CHECK(sh(v2(0, 0)) == doctest::Approx(std::log(2.0)));
  CHECK(sh(v2(-5, -5)) == 0.0);
  const double big[] = {2.0, 1.0};
  CHECK_THROWS_AS(v_polydisc_body(standard_simplex(2), big), UnsupportedConfiguration);
  CHECK_THROWS_AS(v_polydisc_body(standard_simplex(2), one), InvalidArgument);
  CHECK_THROWS_AS(v_polydisc_body(ConvexBody::from_rows({{1, 0}, {0, 1}}), unit), UnsupportedConfiguration);
}

TEST_CASE("scaled one-dimensional factor") {
  const auto disc = CompactFactorSpec::disc();
  const auto seg = CompactFactorSpec::interval(-1, 1);
  const Complex z(2.0, 1.0);
  CHECK(v_factor_scaled(disc, 1.0, z) == doctest::Approx(v_disc({}, 1, z)));
  CHECK(v_factor_scaled(seg, 1.0, z) == doctest::Approx(v_interval(-1, 1, z)));
  CHECK(v_factor_scaled(disc, 0.0, z) == 0.0);
  CHECK(v_factor_scaled(disc, 2.0, {std::exp(1.0), 0}) == doctest::Approx(2.0));
  CHECK(v_compact_1d(seg, z) == doctest::Approx(v_interval(-1, 1, z)));
  CHECK_THROWS_AS(v_factor_scaled(CompactFactorSpec::unit_polydisc(2), 1.0, z), InvalidArgument);
  CHECK_THROWS_AS(v_factor_scaled(disc, -1.0, z), InvalidArgument);
}
