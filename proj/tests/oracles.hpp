#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's own evaluation routines.

#include <lelong/convex_body.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Point = std::vector<double>;

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double support(const std::vector<Point>& gens, const Point& xi) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& g : gens) best = std::max(best, dot(g, xi));
  return best;
}

inline Point positive_part(Point xi) {
  for (double& x : xi) x = std::max(0.0, x);
  return xi;
}

inline std::vector<Point> rows_of(const lelong::ConvexBody& b) {
  std::vector<Point> out;
  for (int i = 0; i < b.size(); ++i) {
    Point p;
    for (int k = 0; k < b.dim(); ++k) p.push_back(b.generators()(i, k));
    out.push_back(std::move(p));
  }
  return out;
}

inline lelong::ConvexBody body_of(const std::vector<Point>& rows) {
  std::vector<lelong::Vector> v;
  for (const auto& r : rows) v.push_back(Eigen::Map<const lelong::Vector>(r.data(), static_cast<Eigen::Index>(r.size())));
  return lelong::ConvexBody(std::move(v));
}

inline lelong::Vector vec(const Point& p) {
  return Eigen::Map<const lelong::Vector>(p.data(), static_cast<Eigen::Index>(p.size()));
}

/// Random generators with coordinates k/4, k in [0, 8]; the origin is added on request.
inline std::vector<Point> random_rational_gens(std::mt19937_64& rng, int dim, int count, bool origin) {
  std::uniform_int_distribution<int> k(0, 8);
  std::vector<Point> gens;
  if (origin) gens.push_back(Point(static_cast<std::size_t>(dim), 0.0));
  for (int i = 0; i < count; ++i) {
    Point p;
    for (int d = 0; d < dim; ++d) p.push_back(k(rng) / 4.0);
    gens.push_back(std::move(p));
  }
  return gens;
}

inline Point random_direction(std::mt19937_64& rng, int dim, double scale = 3.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Point p;
  for (int d = 0; d < dim; ++d) p.push_back(u(rng));
  return p;
}

/// phi_T(phi_{S_1}(xi_1), ..., phi_{S_l}(xi_l)) by brute force.
inline double product_support(const std::vector<Point>& t, const std::vector<std::vector<Point>>& factors,
                              const Point& xi) {
  Point inner;
  std::size_t off = 0;
  for (const auto& f : factors) {
    const std::size_t d = f.front().size();
    inner.push_back(support(f, Point(xi.begin() + static_cast<long>(off), xi.begin() + static_cast<long>(off + d))));
    off += d;
  }
  return support(t, inner);
}

/// (1/m) log|2 T_m(w)| via the three-term recurrence with rescaling.
inline double chebyshev_growth(std::complex<double> w, int m) {
  std::complex<double> prev = 1.0;
  std::complex<double> cur = w;
  double log_scale = 0.0;
  for (int k = 1; k < m; ++k) {
    const std::complex<double> next = 2.0 * w * cur - prev;
    prev = cur;
    cur = next;
    const double s = std::max(std::abs(cur), std::abs(prev));
    if (s > 1e100) {
      cur /= s;
      prev /= s;
      log_scale += std::log(s);
    }
  }
  return (std::log(2.0 * std::abs(cur)) + log_scale) / m;
}

/// Error of the Bergman proxy for the unit disc at |z| = r: (1/2m) log sum_{k<=m} r^{2k} - log r.
inline double disc_bergman_error(double r, int m) {
  double s = 0.0;
  for (int k = 0; k <= m; ++k) s += std::pow(r, 2.0 * k);
  return std::log(s) / (2.0 * m) - std::log(r);
}

} // namespace oracle
