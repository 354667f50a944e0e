#pragma once

#include <lelong/common.hpp>
#include <lelong/convex_body.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace lelong {

/// Log z = (log|z_1|, ..., log|z_n|); a coordinate of -infinity encodes z_i = 0.
struct LogPoint {
  Vector xi;

  static LogPoint of(std::span<const Complex> z);
  static LogPoint of(const ComplexVector& z);
  int dim() const { return static_cast<int>(xi.size()); }
  bool finite() const;
};

struct AffinePiece {
  Vector slope;
  double offset = 0.0;
};

/// xi -> max_k <slope_k, xi> + offset_k with slopes in R^n_+.
class MaxAffine {
public:
  MaxAffine(Matrix slopes, Vector offsets);
  MaxAffine(int dim, const std::vector<AffinePiece>& pieces);

  static MaxAffine constant(int dim, double c);

  int dim() const { return static_cast<int>(slopes_.cols()); }
  int size() const { return static_cast<int>(slopes_.rows()); }
  const Matrix& slopes() const { return slopes_; }
  const Vector& offsets() const { return offsets_; }
  AffinePiece piece(int k) const { return {slopes_.row(k).transpose(), offsets_(k)}; }

  /// Plain maximum at a finite point.
  double operator()(const Eigen::Ref<const Vector>& xi) const;

  MaxAffine shifted(double c) const;

  /// Removes duplicate slopes and pieces dominated by convex combinations of
  /// the others (LP on the epigraph). Represents the same function.
  MaxAffine canonical() const;

private:
  Matrix slopes_;
  Vector offsets_;
};

/// Evaluation with the limsup extension across coordinate hyperplanes: at a
/// point with -infinity coordinates only pieces whose slope vanishes there
/// contribute. Returns -infinity when no piece qualifies.
double eval_extended(const MaxAffine& f, const LogPoint& p);

/// True when the affine function (slope, offset) is <= f everywhere, up to kTauNum.
bool dominates(const MaxAffine& f, const AffinePiece& piece);

/// Canonical piece-set equality within `tol`.
bool same_function(const MaxAffine& f, const MaxAffine& g, double tol = kTauNum);

/// Max of |f - g| over a list of finite points.
double max_deviation(const MaxAffine& f, const MaxAffine& g, const std::vector<Vector>& points);

/// H_S as a max-affine function of Log z: one piece (g, 0) per canonical generator.
/// The formula is only meaningful for bodies containing the origin; callers
/// that need a Lelong-class function should check contains(body, 0).
MaxAffine h_of_body(const ConvexBody& body);

struct LelongCertificate {
  double c_u = 0.0;
  ConvexBody body;
  MaxAffine subject;
};

/// subject <= H_body + c_u everywhere. False for bodies without the origin.
bool check_lelong(const LelongCertificate& cert);

/// H_body - c_u <= subject <= H_body + c_u everywhere.
bool check_lelong_plus(const LelongCertificate& cert);

/// xi -> max over generators t of T of sum_j t_j * parts_j(xi_j).
/// Throws ResourceError when the expansion exceeds `piece_cap` pieces.
MaxAffine compose_support(const ConvexBody& t_body, const std::vector<MaxAffine>& parts,
                          std::size_t piece_cap = 1'000'000);

} // namespace lelong
