#pragma once

#include <lelong/common.hpp>
#include <lelong/convex_body.hpp>
#include <lelong/log_support.hpp>

#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace lelong {

struct Disc {
  Complex center{0.0, 0.0};
  double radius = 1.0;
};

struct Interval {
  double a = -1.0;
  double b = 1.0;
};

struct Polydisc {
  std::vector<double> radii;
};

/// One compact factor: a closed disc, a real segment in C, or a polydisc
/// centered at the origin. All kinds are non-pluripolar.
class CompactFactorSpec {
public:
  using Kind = std::variant<Disc, Interval, Polydisc>;

  explicit CompactFactorSpec(Kind kind);

  static CompactFactorSpec disc(Complex center = {}, double radius = 1.0);
  static CompactFactorSpec interval(double a, double b);
  static CompactFactorSpec polydisc(std::vector<double> radii);
  static CompactFactorSpec unit_polydisc(int n);

  const Kind& kind() const { return kind_; }
  int dim() const;

  /// Radii when the factor is a polydisc (or a disc centered at 0).
  std::optional<std::vector<double>> toric_radii() const;

private:
  Kind kind_;
};

/// K = product of factor specs.
struct ProductCompact {
  std::vector<CompactFactorSpec> factors;

  ProductCompact() = default;
  ProductCompact(std::vector<CompactFactorSpec> f);
  int total_dim() const;
  std::optional<std::vector<double>> toric_radii() const;
};

/// log+(|z - center| / radius).
double v_disc(Complex center, double radius, Complex z);

/// Green function of [a,b] with pole at infinity: log|w + sqrt(w^2 - 1)| with
/// the root giving modulus >= 1, where w maps [a,b] onto [-1,1].
double v_interval(double a, double b, Complex z);

/// Extremal function of a one-dimensional factor (disc or interval).
double v_compact_1d(const CompactFactorSpec& k, Complex z);

/// V^S_K for the polydisc of the given radii: pieces (g, -<g, Log r>).
/// Throws UnsupportedConfiguration unless the polydisc lies in {H_S = 0}.
MaxAffine v_polydisc_body(const ConvexBody& body, std::span<const double> radii);

/// s * V_K(z) for a one-dimensional K, i.e. V^{[0,s]}_K.
double v_factor_scaled(const CompactFactorSpec& k, double s, Complex z);

} // namespace lelong
