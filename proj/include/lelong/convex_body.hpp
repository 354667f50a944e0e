#pragma once

#include <lelong/common.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lelong {

/// A compact convex subset of R^n_+ given as the convex hull of a finite
/// generator set. Generators are stored row-wise.
class ConvexBody {
public:
  /// Throws InvalidArgument if the list is empty, dimensions disagree, or a
  /// coordinate is negative beyond kTauNum (tiny negatives are snapped to 0).
  ConvexBody(std::vector<Vector> generators, std::string label = {});
  ConvexBody(Matrix generators, std::string label = {});

  static ConvexBody from_rows(std::initializer_list<std::initializer_list<double>> rows,
                              std::string label = {});

  int dim() const { return static_cast<int>(gens_.cols()); }
  int size() const { return static_cast<int>(gens_.rows()); }
  const Matrix& generators() const { return gens_; }
  Vector generator(int i) const { return gens_.row(i).transpose(); }
  const std::string& label() const { return label_; }

  ConvexBody scaled(double t) const;
  ConvexBody with_label(std::string label) const;

private:
  Matrix gens_;
  std::string label_;
};

// Named bodies.
ConvexBody standard_simplex(int n);           // ch{0, e_1, ..., e_n}
ConvexBody axis_simplex(const Vector& x);     // ch{0, x_1 e_1, ..., x_n e_n}
ConvexBody unit_cube(int n);                  // [0,1]^n
ConvexBody segment(double a, double b);       // [a,b] in R^1, 0 <= a <= b
ConvexBody point(const Vector& p);

/// phi_S(xi) = max over generators of <g, xi>.
double support(const ConvexBody& body, const Eigen::Ref<const Vector>& xi);

/// Convex-hull membership by an LP feasibility test with L1 tolerance `tol`.
bool contains(const ConvexBody& body, const Eigen::Ref<const Vector>& p, double tol = kTauMem);

/// Drops duplicate generators and generators lying in the hull of the others.
ConvexBody canonicalize(const ConvexBody& body);

/// Smallest lower set containing the body, via coordinate maskings (n <= 8).
ConvexBody lower_hull(const ConvexBody& body);

/// x_j = max{t : t e_j in body}; zero when the body meets the axis only at 0.
Vector axis_extents(const ConvexBody& body);

/// Gauge rho(alpha) = min{t >= 0 : alpha in t*body} for a body containing 0.
/// Returns +infinity when alpha is outside the cone R_+ body.
double gauge(const ConvexBody& body, const Eigen::Ref<const Vector>& alpha);

struct SimplexReport {
  bool is_simplex = false;
  Vector axis_extents;
  std::optional<Vector> witness;
  double ratio_sum = 0.0;  // max over generators of sum_i s_i / x_i
};

/// Decides whether the body equals Sigma_x for its axis extents x. Throws
/// DegenerateBody when some extent is <= kTauMem.
SimplexReport simplex_report(const ConvexBody& body);

struct DiameterWitness {
  double diameter = 0.0;
  Vector eta;  // (g_j - g_i)/|g_j - g_i| for the first maximizing pair i < j; empty if degenerate
  bool degenerate = true;
};

DiameterWitness diameter_and_witness(const ConvexBody& body);

/// (T, [S_1..S_l]) with T in R^l_+ and each S_j containing the origin.
class ProductStructure {
public:
  ProductStructure(ConvexBody t_body, std::vector<ConvexBody> factors);

  const ConvexBody& t_body() const { return t_body_; }
  const std::vector<ConvexBody>& factors() const { return factors_; }
  int blocks() const { return static_cast<int>(factors_.size()); }
  std::vector<int> factor_dims() const;
  int total_dim() const;
  /// Offset of block j inside a point of R^n.
  int offset(int j) const;

private:
  ConvexBody t_body_;
  std::vector<ConvexBody> factors_;
};

/// S = union over x in T of (x_1 S_1) x ... x (x_l S_l), canonicalized.
ConvexBody build_product_body(const ProductStructure& ps);

/// Samples midpoints of random pairs from the raw union and checks they lie in
/// the hull of build_product_body.
bool probe_union_convexity(const ProductStructure& ps, int trials, std::uint64_t seed);

} // namespace lelong
