#pragma once

#include <lelong/closed_forms.hpp>
#include <lelong/common.hpp>
#include <lelong/convex_body.hpp>
#include <lelong/log_support.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lelong {

/// One instance of the product formula: (T, S_j), compacts K_j and optional
/// constant weights q_j.
class TheoremInstance {
public:
  TheoremInstance(ProductStructure ps, std::vector<ProductCompact> compacts, std::vector<double> weights = {});

  /// Unit polydisc factors K_j = closed unit polydisc of dimension n_j.
  static TheoremInstance toric(ProductStructure ps, std::vector<double> weights = {});

  const ProductStructure& ps() const { return ps_; }
  const std::vector<ProductCompact>& compacts() const { return compacts_; }
  const std::vector<double>& weights() const { return weights_; }
  bool weighted() const { return !weights_.empty(); }
  double weight(int j) const { return weights_.empty() ? 0.0 : weights_[static_cast<std::size_t>(j)]; }
  /// phi_T(q_1, ..., q_l); zero when unweighted.
  double weight_shift() const;
  bool is_toric() const;
  /// Radii of the whole polydisc K for toric instances.
  std::optional<std::vector<double>> toric_radii() const;

private:
  ProductStructure ps_;
  std::vector<ProductCompact> compacts_;
  std::vector<double> weights_;
};

struct GridAxis {
  double min = -3.0;
  double max = 3.0;
  int count = 41;
};

/// Tensor grid in log-modulus coordinates. A single axis is broadcast to every
/// coordinate. Coordinates of non-toric blocks are also sampled over `phases`
/// equally spaced arguments.
struct GridSpec {
  std::vector<GridAxis> axes;
  int phases = 8;

  static GridSpec uniform(double lo, double hi, int count, int phases = 8);
  GridAxis axis(int i) const;
};

/// Blocks whose T-component vanishes identically; the product formula does
/// not depend on their variables.
std::vector<int> inert_blocks(const ProductStructure& ps);

/// Right-hand side phi_T(V_1(z_1) + q_1, ..., V_l(z_l) + q_l) with closed-form
/// per-block extremal functions. Build once and evaluate many times.
class RhsEvaluator {
public:
  explicit RhsEvaluator(const TheoremInstance& inst);

  double operator()(std::span<const Complex> z) const;
  /// Toric instances only: evaluation at a finite log-modulus point.
  double at_log(std::span<const double> xi) const;
  bool toric() const { return toric_; }

private:
  struct Block {
    int offset = 0;
    int dim = 0;
    bool inert = false;
    std::optional<MaxAffine> toric;          // V^{S_j}_{K_j} in Log z_j
    std::optional<CompactFactorSpec> one_d;  // V^{[0,s]}_K = s V_K
    double scale = 1.0;
    double weight = 0.0;
  };

  Matrix t_gens_;
  std::vector<Block> blocks_;
  bool toric_ = true;
};

double rhs_eval(const TheoremInstance& inst, std::span<const Complex> z);

/// V^S_{K,q} = H_S shifted to the radii plus phi_T(q); toric instances only.
MaxAffine lhs_exact(const TheoremInstance& inst);

struct GridPointRecord {
  Vector xi;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct TheoremReport {
  std::string path;  // "exact" or "approx"
  double max_error = 0.0;
  Vector argmax;     // log-modulus coordinates
  double tolerance = 0.0;
  bool pass = false;
  std::size_t points = 0;
  std::vector<int> inert_blocks;
  GridSpec grid;
  std::vector<GridPointRecord> records;  // filled when requested
};

struct VerifyOptions {
  std::optional<double> tolerance;  // overrides the path default
  int approx_m = 8;                 // degree for the approximation path
  bool keep_records = false;
  int workers = 1;
  /// Compare against V^{claimed} of the claimed body instead of the product
  /// body (used to exhibit wrong identifications). Toric instances only.
  std::optional<ConvexBody> claimed_body;
};

/// max |LHS - RHS| over the grid. Toric instances use the exact max-affine
/// LHS; others use the polynomial approximation with an error budget of
/// log(N)/(2m) + 1/m.
TheoremReport verify_theorem(const TheoremInstance& inst, const GridSpec& grid, const VerifyOptions& opts = {});

enum class Corollary { siciak, sum, pnorm, lowerhull };

Corollary corollary_from_name(const std::string& name);
std::string to_string(Corollary c);

struct CorollaryParams {
  int ell = 2;                      // siciak: number of blocks
  std::vector<int> dims;            // siciak: n_j (default all 1)
  std::optional<ConvexBody> s1;     // sum: first factor (default [0,1])
  std::optional<ConvexBody> s2;     // sum: second factor (default ch{0,(1,0),(1,1),(0,1/2)})
  std::optional<ConvexBody> body;   // lowerhull: S (default ch{0,(1,0),(1,1),(0,1/2)})
  double p = 2.0;                   // pnorm exponent
  int arc_vertices = 64;            // pnorm refinement
  int identity_points_per_axis = 10;
  double identity_tolerance = 5e-3;
  GridSpec grid = GridSpec::uniform(-3.0, 3.0, 41);
  int workers = 1;
};

struct CorollaryReport {
  Corollary which = Corollary::siciak;
  TheoremReport theorem;
  bool structure_ok = true;  // closed-form structure check (e.g. S = Sigma_n)
  std::optional<double> identity_error;
  double identity_tolerance = 0.0;
  bool pass = false;
};

CorollaryReport corollary_suite(Corollary which, const CorollaryParams& params = {});

/// Inscribed polytope of {x in R^2_+ : |x|_p <= 1}: the origin plus
/// `arc_vertices` points on the arc.
ConvexBody quarter_ball_polytope(double p, int arc_vertices);

} // namespace lelong
