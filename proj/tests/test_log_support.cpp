#include <doctest.h>

#include "oracles.hpp"

#include <lelong/log_support.hpp>

#include <cmath>
#include <limits>
#include <random>

using namespace lelong;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

ConvexBody intro_body(double a) { return ConvexBody::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, a}}); }

Vector v2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

LogPoint lp2(double x, double y) { return LogPoint{v2(x, y)}; }

// Brute-force limsup rule on a generator list.
double oracle_extended(const std::vector<oracle::Point>& gens, const oracle::Point& xi) {
  double best = kNegInf;
  for (const auto& g : gens) {
    double s = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < xi.size(); ++i) {
      if (std::isinf(xi[i])) {
        if (g[i] != 0.0) ok = false;
      } else {
        s += g[i] * xi[i];
      }
    }
    if (ok) best = std::max(best, s);
  }
  return best;
}

} // namespace

TEST_CASE("LogPoint of complex points") {
  const Complex z[] = {{0, 0}, {0, 2}, {std::exp(1.0), 0}};
  const LogPoint p = LogPoint::of(z);
  CHECK(p.dim() == 3);
  CHECK(std::isinf(p.xi(0)));
  CHECK(p.xi(0) < 0);
  CHECK(p.xi(1) == doctest::Approx(std::log(2.0)));
  CHECK(p.xi(2) == doctest::Approx(1.0));
  CHECK_FALSE(p.finite());
  CHECK(lp2(1, 2).finite());
}

TEST_CASE("MaxAffine validation and evaluation") {
  CHECK_THROWS_AS(MaxAffine(Matrix(0, 2), Vector(0)), InvalidArgument);
  CHECK_THROWS_AS(MaxAffine(Matrix::Constant(1, 2, -1.0), Vector::Zero(1)), InvalidArgument);
  const MaxAffine f(2, {{v2(1, 0), 0.5}, {v2(0, 2), -1.0}});
  CHECK(f(v2(1, 1)) == doctest::Approx(1.5));
  CHECK(f(v2(0, 3)) == doctest::Approx(5.0));
  CHECK(f.shifted(2)(v2(0, 0)) == doctest::Approx(2.5));
  CHECK(MaxAffine::constant(3, 4.0)(Vector::Zero(3)) == 4.0);
}

TEST_CASE("h_of_body examples") {
  std::mt19937_64 rng(1);
  const MaxAffine hs = h_of_body(standard_simplex(2));
  for (int i = 0; i < 100; ++i) {
    const auto xi = oracle::random_direction(rng, 2);
    CHECK(hs(oracle::vec(xi)) == doctest::Approx(std::max({0.0, xi[0], xi[1]})));
  }
  for (double a : {0.2, 0.5, 0.8}) {
    const MaxAffine h = h_of_body(intro_body(a));
    for (int i = 0; i < 100; ++i) {
      const auto xi = oracle::random_direction(rng, 2);
      const double expect = std::max({std::max(0.0, xi[0]), std::max(0.0, xi[0] + xi[1]), a * std::max(0.0, xi[1])});
      CHECK(std::abs(h(oracle::vec(xi)) - expect) <= 1e-12);
    }
  }
  const MaxAffine zero = h_of_body(ConvexBody::from_rows({{0, 0}}));
  CHECK(zero.size() == 1);
  CHECK(zero(v2(5, -3)) == 0.0);
}

TEST_CASE("limsup extension examples") {
  const MaxAffine hs = h_of_body(standard_simplex(2));
  CHECK(eval_extended(hs, lp2(kNegInf, std::log(3.0))) == doctest::Approx(std::log(3.0)));
  CHECK(eval_extended(hs, lp2(kNegInf, -1.0)) == 0.0);
  const MaxAffine diag = h_of_body(ConvexBody::from_rows({{0, 0}, {1, 1}}));
  CHECK(eval_extended(diag, lp2(kNegInf, 7.0)) == 0.0);
  CHECK(eval_extended(hs, lp2(1.0, 2.0)) == doctest::Approx(2.0));
  // All pieces drop out.
  const MaxAffine no_origin = h_of_body(ConvexBody::from_rows({{1, 0}, {0, 1}}));
  const double v = eval_extended(no_origin, lp2(kNegInf, kNegInf));
  CHECK(std::isinf(v));
  CHECK(v < 0);
  CHECK_THROWS_AS(eval_extended(hs, LogPoint{Vector::Zero(3)}), InvalidArgument);
}

TEST_CASE("canonical form and equality") {
  const MaxAffine redundant(2, {{v2(0, 0), 0}, {v2(1, 0), 0}, {v2(0, 1), 0}, {v2(0.5, 0.5), 0}, {v2(1, 0), -1}});
  const MaxAffine c = redundant.canonical();
  CHECK(c.size() == 3);
  CHECK(same_function(redundant, h_of_body(standard_simplex(2))));
  CHECK_FALSE(same_function(redundant, h_of_body(unit_cube(2))));
  CHECK_FALSE(same_function(redundant, redundant.shifted(1e-6)));
  CHECK(same_function(redundant, redundant.shifted(1e-12)));
  CHECK(max_deviation(redundant, h_of_body(unit_cube(2)), {v2(1, 1), v2(-1, 2)}) == doctest::Approx(1.0));
}

TEST_CASE("domination") {
  const MaxAffine h = h_of_body(unit_cube(2));
  CHECK(dominates(h, {v2(1, 1), 0.0}));
  CHECK(dominates(h, {v2(0.5, 0.3), -0.2}));
  CHECK_FALSE(dominates(h, {v2(1.5, 0), 0.0}));
  CHECK_FALSE(dominates(h, {v2(0, 0), 0.1}));
}

TEST_CASE("Lelong certificates") {
  const ConvexBody s = intro_body(0.5);
  CHECK(check_lelong({0.0, s, h_of_body(s)}));
  CHECK(check_lelong_plus({0.0, s, h_of_body(s)}));
  CHECK_FALSE(check_lelong({4.0, standard_simplex(2), h_of_body(standard_simplex(2)).shifted(5.0)}));
  CHECK(check_lelong({5.0, standard_simplex(2), h_of_body(standard_simplex(2)).shifted(5.0)}));
  CHECK(check_lelong({0.0, unit_cube(2), h_of_body(ConvexBody::from_rows({{0, 0}, {1, 1}}))}));
  CHECK_FALSE(check_lelong_plus({0.0, unit_cube(2), h_of_body(ConvexBody::from_rows({{0, 0}, {1, 1}}))}));
  const ConvexBody away = ConvexBody::from_rows({{1, 0}, {0, 1}});
  CHECK_FALSE(check_lelong({0.0, away, h_of_body(away)}));
  // A slope pushed just outside the body along an outward normal.
  const double eps = kTauMem * 1e3;
  const MaxAffine pushed(2, {{v2(0.5 + eps, 0.5 + eps), 0.0}});
  CHECK_FALSE(check_lelong({0.0, standard_simplex(2), pushed}));
}

TEST_CASE("compose_support examples") {
  std::mt19937_64 rng(2);
  const MaxAffine part = h_of_body(segment(0, 1));
  const MaxAffine inf = compose_support(ConvexBody::from_rows({{1, 0}, {0, 1}}), {part, part});
  const MaxAffine sum = compose_support(ConvexBody::from_rows({{1, 1}}), {part, part});
  for (int i = 0; i < 200; ++i) {
    const auto xi = oracle::random_direction(rng, 2);
    const double a = std::max(0.0, xi[0]);
    const double b = std::max(0.0, xi[1]);
    CHECK(std::abs(inf(oracle::vec(xi)) - std::max(a, b)) <= 1e-12);
    CHECK(std::abs(sum(oracle::vec(xi)) - (a + b)) <= 1e-12);
  }
  const MaxAffine zero = compose_support(unit_cube(2), {MaxAffine::constant(1, 0.0), MaxAffine::constant(1, 0.0)});
  CHECK(zero(v2(3, -4)) == 0.0);
  CHECK_THROWS_AS(compose_support(unit_cube(2), {part}), InvalidArgument);
  CHECK_THROWS_AS(compose_support(unit_cube(2), {h_of_body(unit_cube(3)), h_of_body(unit_cube(3))}, 10), ResourceError);
}

TEST_CASE("wrong identification of the intro body") {
  // Evaluating the intro body's H at (-log R, log R) gives a log R, while
  // composing unit-interval parts over the same body gives log R.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(0.05, 0.95);
  std::uniform_real_distribution<double> ur(1.1, 50.0);
  for (int i = 0; i < 20; ++i) {
    const double a = ua(rng);
    const double r = ur(rng);
    const ConvexBody s = intro_body(a);
    const double lhs = eval_extended(h_of_body(s), lp2(-std::log(r), std::log(r)));
    const MaxAffine part = h_of_body(segment(0, 1));
    const MaxAffine wrong = compose_support(s, {part, part});
    const double rhs = wrong(v2(-std::log(r), std::log(r)));
    CHECK(lhs == doctest::Approx(a * std::log(r)).epsilon(1e-12));
    CHECK(rhs == doctest::Approx(std::log(r)).epsilon(1e-12));
    CHECK(rhs - lhs == doctest::Approx((1 - a) * std::log(r)).epsilon(1e-12));
  }
}

TEST_CASE("property: product H equals composed H") {
  std::mt19937_64 rng(4);
  int failures = 0;
  int finite_points = 0;
  int infinite_points = 0;
  for (int i = 0; i < 50; ++i) {
    const int l = 1 + static_cast<int>(rng() % 3);
    std::vector<ConvexBody> factors;
    std::vector<MaxAffine> parts;
    int n = 0;
    for (int j = 0; j < l; ++j) {
      const int d = 1 + static_cast<int>(rng() % 2);
      factors.push_back(oracle::body_of(oracle::random_rational_gens(rng, d, 2, true)));
      parts.push_back(h_of_body(factors.back()));
      n += d;
    }
    const ConvexBody t = oracle::body_of(oracle::random_rational_gens(rng, l, 3, true));
    const ConvexBody body = build_product_body(ProductStructure(t, factors));
    const MaxAffine lhs = h_of_body(body);
    const MaxAffine rhs = compose_support(t, parts);
    const auto gens = oracle::rows_of(body);
    for (int k = 0; k < 25; ++k) {
      auto xi = oracle::random_direction(rng, n);
      ++finite_points;
      if (std::abs(lhs(oracle::vec(xi)) - rhs(oracle::vec(xi))) > kTauNum) ++failures;
      if (k % 8 == 0) {
        const int holes = 1 + static_cast<int>(rng() % std::min(2, n));
        for (int h = 0; h < holes; ++h) xi[rng() % static_cast<std::size_t>(n)] = kNegInf;
        ++infinite_points;
        const LogPoint p{oracle::vec(xi)};
        const double a = eval_extended(lhs, p);
        const double b = eval_extended(rhs, p);
        const double o = oracle_extended(gens, xi);
        if (std::abs(a - b) > kTauNum && !(std::isinf(a) && std::isinf(b))) ++failures;
        if (std::abs(a - o) > kTauNum && !(std::isinf(a) && std::isinf(o))) ++failures;
      }
    }
  }
  CHECK(finite_points >= 1000);
  CHECK(infinite_points >= 100);
  CHECK(failures == 0);
}

TEST_CASE("property: monotone in each coordinate") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> step(0.0, 2.0);
  int failures = 0;
  for (int i = 0; i < 500; ++i) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const MaxAffine h = h_of_body(oracle::body_of(oracle::random_rational_gens(rng, dim, 3, true)));
    auto xi = oracle::random_direction(rng, dim);
    if (i % 4 == 0) xi[0] = kNegInf;
    auto up = xi;
    const std::size_t k = rng() % static_cast<std::size_t>(dim);
    up[k] = std::isinf(up[k]) ? step(rng) - 3.0 : up[k] + step(rng);
    if (eval_extended(h, LogPoint{oracle::vec(up)}) < eval_extended(h, LogPoint{oracle::vec(xi)}) - kTauNum) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("property: H_S certifies itself") {
  std::mt19937_64 rng(6);
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const ConvexBody s = oracle::body_of(oracle::random_rational_gens(rng, dim, 4, true));
    if (!check_lelong({0.0, s, h_of_body(s)})) ++failures;
  }
  CHECK(failures == 0);
}
