#pragma once

#include <lelong/closed_forms.hpp>
#include <lelong/common.hpp>
#include <lelong/convex_body.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace lelong {

using MultiIndex = std::vector<int>;

/// The exponent set mS ∩ N^n of the polynomial class P^S_m.
struct LatticeClass {
  ConvexBody body;
  int m = 1;
  std::vector<MultiIndex> points;  // lexicographic order
  double sigma = 0.0;              // phi_S(1, ..., 1)

  /// (m sigma + 1)^n, the a priori bound on the number of points.
  double count_bound() const;
};

/// Scans [0, ceil(m sigma)]^n and keeps the points of m*body. Throws
/// ResourceError when the box exceeds `box_budget` points.
LatticeClass enumerate_lattice(const ConvexBody& body, int m, std::size_t box_budget = 4'000'000);

/// True when alpha in mS admits x in T with alpha_j in m x_j S_j (LP).
bool decompose_multi_index(const ProductStructure& ps, const MultiIndex& alpha, int m);

struct ApproxConfig {
  int m = 8;
  double weight = 0.0;         // constant weight q; the constraint is |p| <= e^{mq} on K
  double pivot_floor = 1e-12;  // relative norm below which Gram-Schmidt declares node deficiency
};

/// Orthonormal polynomials of one block, ordered by grading.
struct FactorBasis {
  std::vector<MultiIndex> exponents;  // kappa(0), kappa(1), ...
  std::vector<double> grading;        // rho(kappa(k)), nondecreasing
  Eigen::MatrixXcd coeffs;            // p_k = sum_{i <= k} coeffs(k, i) z^{kappa(i)}
  Eigen::MatrixXcd nodes;             // dim x N quadrature nodes
  Vector weights;                     // N weights summing to 1
  double gram_error = 0.0;            // max |G - I| of the basis under the quadrature
  std::vector<int> nodes_per_axis;
};

/// Product family p_alpha = p_{1,alpha_1} ... p_{l,alpha_l} over mS ∩ N^n.
class GradedBasis {
public:
  GradedBasis(LatticeClass lattice, std::vector<FactorBasis> factors, std::vector<std::vector<int>> product_index,
              std::vector<int> offsets);

  const LatticeClass& lattice() const { return lattice_; }
  const std::vector<FactorBasis>& factors() const { return factors_; }
  const std::vector<std::vector<int>>& product_index() const { return product_index_; }
  int m() const { return lattice_.m; }
  double max_gram_error() const;

  /// log|p_alpha(z)| for every alpha of the lattice.
  std::vector<double> log_abs_values(std::span<const Complex> z) const;
  /// log|p_{j,k}(z_j)| for every basis element of block j.
  std::vector<double> factor_log_abs(int j, std::span<const Complex> zj) const;

private:
  LatticeClass lattice_;
  std::vector<FactorBasis> factors_;
  std::vector<std::vector<int>> product_index_;
  std::vector<int> offsets_;
};

/// Gram-Schmidt per block against a product quadrature (circle nodes for
/// discs and polydiscs, Chebyshev nodes for intervals).
GradedBasis build_basis(const ApproxConfig& cfg, const ProductStructure& ps,
                        const std::vector<ProductCompact>& compacts);

/// (1/2m) log sum_alpha |p_alpha(z)|^2 + q, the Bergman-sum proxy for log Phi.
class SiciakApproximator {
public:
  SiciakApproximator(const ApproxConfig& cfg, const ProductStructure& ps, const std::vector<ProductCompact>& compacts);

  double operator()(std::span<const Complex> z) const;
  const GradedBasis& basis() const { return basis_; }

private:
  GradedBasis basis_;
  double weight_;
};

double approx_v(const ApproxConfig& cfg, const ProductStructure& ps, const std::vector<ProductCompact>& compacts,
                std::span<const Complex> z);

struct BernsteinWalshReport {
  int m = 0;
  int trials = 0;
  int points = 0;
  std::size_t lattice_size = 0;
  std::vector<int> samples_per_axis;
  double sampling_margin = 1.0;  // ||f||_K <= margin * (sampled max)
  double slack = 1e-6;
  int violations = 0;            // against e^{m V^S_K}
  int product_violations = 0;    // against e^{m phi_T(V^{S_j}_{K_j})}
  double worst_log_ratio = 0.0;  // max of log|f(z)| - log bound (<= 0 when no violation)
  bool pass = false;
};

/// Random f in P^S_m against the Bernstein-Walsh bound at random points
/// outside K. Toric instances only.
BernsteinWalshReport bernstein_walsh_check(const ProductStructure& ps, const std::vector<ProductCompact>& compacts, int m,
                                           int trials, int points, std::uint64_t seed, double slack = 1e-6);

struct SweepRow {
  int m = 0;
  double max_error = 0.0;
  ComplexVector argmax;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  double fitted_c = 0.0;  // least squares of error against log(m)/m
  bool halving_monotone = true;
  bool rate_ok = true;
};

/// Max |approx_v - V^S_K| over `points` for each m. Toric instances only.
SweepTable convergence_sweep(std::span<const int> ms, const ProductStructure& ps,
                             const std::vector<ProductCompact>& compacts, const std::vector<ComplexVector>& points);

} // namespace lelong
