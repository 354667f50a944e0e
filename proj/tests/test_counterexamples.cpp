#include <doctest.h>

#include "oracles.hpp"

#include <lelong/counterexamples.hpp>

#include <cmath>
#include <limits>
#include <random>

using namespace lelong;

namespace {

// H_S at a complex point by brute force over generators; zero coordinates
// only admit generators that vanish there.
double oracle_h(const ConvexBody& s, const ComplexVector& z) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& g : oracle::rows_of(s)) {
    double v = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double r = std::abs(z(static_cast<Eigen::Index>(i)));
      if (r == 0.0) {
        if (g[i] != 0.0) ok = false;
      } else {
        v += g[i] * std::log(r);
      }
    }
    if (ok) best = std::max(best, v);
  }
  return best;
}

ProductStructure unit_factors(ConvexBody t) {
  std::vector<ConvexBody> f(static_cast<std::size_t>(t.dim()), segment(0, 1));
  return ProductStructure(std::move(t), std::move(f));
}

} // namespace

TEST_CASE("intro counterexample") {
  const auto r = intro_counterexample(0.5, std::exp(1.0));
  CHECK(r.lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.gap == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.pass);

  const auto edge = intro_counterexample(0.5, 1.0);
  CHECK(edge.gap == 0.0);
  CHECK(edge.pass);

  const auto near = intro_counterexample(1.0 - 1e-9, 10.0);
  CHECK(near.gap <= 1e-8);

  CHECK_THROWS_AS(intro_counterexample(1.0, 2.0), InvalidArgument);
  CHECK_THROWS_AS(intro_counterexample(0.0, 2.0), InvalidArgument);
  CHECK_THROWS_AS(intro_counterexample(0.5, 0.5), InvalidArgument);
}

TEST_CASE("intro gap over random parameters") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ua(1e-3, 1.0 - 1e-3);
  std::uniform_real_distribution<double> ulog(0.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    const double a = ua(rng);
    const double r = std::exp(ulog(rng));
    const auto rep = intro_counterexample(a, r);
    CHECK(std::abs(rep.gap - (1 - a) * std::log(r)) <= 1e-12);
    CHECK(rep.pass);
  }
}

TEST_CASE("weighted counterexample on the unit square") {
  const auto w = weighted_counterexample(unit_factors(unit_cube(2)));
  const double h = 1 / std::sqrt(2.0);
  CHECK(w.eta(0) == doctest::Approx(h));
  CHECK(w.eta(1) == doctest::Approx(h));
  CHECK(w.weights == std::vector<double>{-w.eta(0), -w.eta(1)});
  CHECK(w.gap == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(w.lhs - w.rhs == doctest::Approx(w.gap).epsilon(1e-12));
  CHECK(w.level_error <= 1e-9);
  CHECK(w.identity_error <= 1e-9);
  CHECK(w.pass);
  for (std::size_t j = 0; j < w.eval_points.size(); ++j)
    CHECK(oracle_h(segment(0, 1), w.eval_points[j]) == doctest::Approx(w.eta(static_cast<Eigen::Index>(j))));
}

TEST_CASE("weighted counterexample on the simplex") {
  const auto w = weighted_counterexample(unit_factors(ConvexBody::from_rows({{1, 0}, {0, 1}})));
  for (double e : {w.eta(0), w.eta(1)}) CHECK(e >= 0.0);
  const double h = 1 / std::sqrt(2.0);
  CHECK(w.eta(0) == doctest::Approx(h));
  CHECK(w.eta(1) == 0.0);
  CHECK(w.gap == doctest::Approx(h).epsilon(1e-12));
  CHECK(w.pass);
}

TEST_CASE("weighted counterexample preconditions") {
  CHECK_THROWS_AS(weighted_counterexample(unit_factors(ConvexBody::from_rows({{1, 1}}))), NoWitness);
  CHECK_THROWS_AS(weighted_counterexample(
                      ProductStructure(unit_cube(2), {segment(0, 1), ConvexBody::from_rows({{0}})})),
                  NotApplicable);
}

TEST_CASE("weighted gap on random bodies") {
  std::mt19937_64 rng(2);
  int tried = 0;
  for (int i = 0; i < 30; ++i) {
    const auto gens = oracle::random_rational_gens(rng, 2, 3, true);
    const ConvexBody t = oracle::body_of(gens);
    if (diameter_and_witness(t).degenerate) continue;
    ++tried;
    std::vector<ConvexBody> f = {oracle::body_of(oracle::random_rational_gens(rng, 2, 2, true)), segment(0, 2)};
    if (f[0].generators().maxCoeff() == 0.0) continue;
    const auto w = weighted_counterexample(ProductStructure(t, f));
    const oracle::Point eta(w.eta.data(), w.eta.data() + w.eta.size());
    oracle::Point neg = eta;
    for (double& v : neg) v = -v;
    CHECK(w.gap == doctest::Approx(oracle::support(gens, eta) + oracle::support(gens, neg)));
    CHECK(w.gap > 0.0);
    CHECK(w.pass);
  }
  CHECK(tried > 10);
}

TEST_CASE("nonmaximality note") {
  const auto sq = nonmaximality_note(unit_factors(unit_cube(2)));
  CHECK(sq.gap == doctest::Approx(std::sqrt(2.0)));
  CHECK_FALSE(sq.implication.empty());
  CHECK(sq.pass);

  const auto eq = nonmaximality_note(unit_factors(ConvexBody::from_rows({{1, 0}, {0, 1}})), {-0.5, -0.5});
  CHECK(eq.inconclusive);
  CHECK(eq.retried);
  CHECK(eq.gap > 0.0);
  CHECK(eq.pass);

  CHECK_THROWS_AS(nonmaximality_note(unit_factors(ConvexBody::from_rows({{1, 1}}))), NoWitness);
}

TEST_CASE("sublevel sets of the square") {
  const auto w = sublevel_nonconvexity(unit_cube(2), 1.5);
  CHECK(w.branch == 1);
  REQUIRE(w.t0.has_value());
  CHECK(*w.t0 == doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));
  CHECK(w.t == 1.5);
  REQUIRE(w.points.size() == 2);
  CHECK(std::abs(w.points[0](0) - std::exp(1.5)) <= 1e-9);
  CHECK(w.points[0](1) == 0.0);
  CHECK(std::abs(w.points[1](1) - std::exp(1.5)) <= 1e-9);
  for (const auto& p : w.points) CHECK(oracle_h(unit_cube(2), p) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(w.midpoint_value == doctest::Approx(3.0 - 2 * std::log(2.0)).epsilon(1e-12));
  CHECK(oracle_h(unit_cube(2), w.midpoint) == doctest::Approx(w.midpoint_value));
  REQUIRE(w.excess_bound.has_value());
  CHECK(w.midpoint_value - w.t == doctest::Approx(*w.excess_bound).epsilon(1e-9));
  CHECK(*w.excess_bound == doctest::Approx(1.5 - 2 * std::log(2.0)));
  CHECK(w.nonconvex);
  CHECK(w.pass);

  const auto d = sublevel_nonconvexity(unit_cube(2));
  CHECK(d.t == doctest::Approx(1.1 * 2 * std::log(2.0)));
  CHECK(d.pass);

  // Below the threshold the same construction gives no witness.
  for (double f : {0.1, 0.5, 0.9}) {
    const auto low = sublevel_nonconvexity(unit_cube(2), f * 2 * std::log(2.0));
    CHECK_FALSE(low.nonconvex);
    CHECK_FALSE(low.pass);
  }
}

TEST_CASE("sublevel excess formula") {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const int dim = 2 + static_cast<int>(rng() % 2);
    const ConvexBody s = oracle::body_of(oracle::random_rational_gens(rng, dim, 3, true));
    SublevelWitness w;
    try {
      w = sublevel_nonconvexity(s);
    } catch (const NotApplicable&) {
      CHECK(simplex_report(canonicalize(s)).is_simplex);
      continue;
    } catch (const DegenerateBody&) {
      continue;
    }
    ++checked;
    for (const auto& p : w.points) CHECK(oracle_h(s, p) <= w.t + 1e-9);
    CHECK(oracle_h(s, w.midpoint) > w.t);
    if (w.branch == 1) {
      for (const auto& p : w.points) CHECK(oracle_h(s, p) == doctest::Approx(w.t).epsilon(1e-9));
      REQUIRE(w.excess_bound.has_value());
      CHECK(w.midpoint_value - w.t >= *w.excess_bound - 1e-9);
    }
    CHECK(w.pass);
  }
  CHECK(checked > 10);
}

TEST_CASE("sublevel refusal and second branch") {
  CHECK_THROWS_AS(sublevel_nonconvexity(standard_simplex(2)), NotApplicable);
  try {
    sublevel_nonconvexity(standard_simplex(3));
  } catch (const NotApplicable& e) {
    CHECK(std::string(e.what()).rfind("is_simplex:", 0) == 0);
  }

  const ConvexBody tri = ConvexBody::from_rows({{0, 0}, {1, 0}, {1, 1}});
  const auto w = sublevel_nonconvexity(tri);
  CHECK(w.branch == 2);
  CHECK_FALSE(w.t0.has_value());
  CHECK(w.t == 1.0);
  REQUIRE(w.points.size() == 2);
  for (const auto& p : w.points) CHECK(oracle_h(tri, p) <= 1.0 + 1e-12);
  CHECK(oracle_h(tri, w.midpoint) > 1.0);
  CHECK(w.pass);
  CHECK_THROWS_AS(sublevel_nonconvexity(ConvexBody::from_rows({{0, 0}})), InvalidArgument);
}
