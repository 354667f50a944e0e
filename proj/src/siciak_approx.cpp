#include <lelong/siciak_approx.hpp>
#include <lelong/log_support.hpp>
#include <lelong/lp.hpp>
#include <lelong/product_engine.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

namespace lelong {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kNodeBudget = 2'000'000;
constexpr std::size_t kBasisBudget = 50'000'000;

double log_sum_exp(const std::vector<double>& v) {
  double top = kNegInf;
  for (double x : v) top = std::max(top, x);
  if (top == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - top);
  return top + std::log(s);
}

// Nodes of one coordinate of a block; weights are uniform.
struct AxisRule {
  std::vector<Complex> nodes;
};

AxisRule circle_rule(Complex center, double radius, int count) {
  AxisRule r;
  for (int k = 0; k < count; ++k)
    r.nodes.push_back(center + std::polar(radius, 2.0 * std::numbers::pi * k / count));
  return r;
}

AxisRule chebyshev_rule(double a, double b, int count) {
  AxisRule r;
  for (int k = 0; k < count; ++k) {
    const double x = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * count));
    r.nodes.emplace_back(0.5 * (a + b) + 0.5 * (b - a) * x, 0.0);
  }
  return r;
}

std::vector<AxisRule> block_rules(const ProductCompact& k, const std::vector<int>& degrees) {
  std::vector<AxisRule> rules;
  std::size_t axis = 0;
  for (const auto& f : k.factors) {
    if (const auto* p = std::get_if<Polydisc>(&f.kind())) {
      for (double r : p->radii) {
        rules.push_back(circle_rule({}, r, 2 * degrees[axis] + 1));
        ++axis;
      }
    } else if (const auto* d = std::get_if<Disc>(&f.kind())) {
      rules.push_back(circle_rule(d->center, d->radius, 2 * degrees[axis] + 1));
      ++axis;
    } else {
      const auto& i = std::get<Interval>(f.kind());
      rules.push_back(chebyshev_rule(i.a, i.b, 2 * degrees[axis] + 1));
      ++axis;
    }
  }
  return rules;
}

// Complex log of each coordinate; modulus -inf for zeros.
struct LogCoord {
  double mod;
  double arg;
};

// Values of the monomials z^kappa in shifted form: returns log scale L and
// values v with z^kappa = v * e^L.
double shifted_monomials(const std::vector<MultiIndex>& exps, std::span<const Complex> z, std::vector<Complex>& out) {
  std::vector<LogCoord> lz(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    lz[i] = {z[i] == Complex{} ? kNegInf : std::log(std::abs(z[i])), std::arg(z[i])};
  std::vector<double> mod(exps.size());
  std::vector<double> arg(exps.size());
  double top = kNegInf;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    double m = 0.0;
    double a = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (exps[k][i] == 0) continue;
      m += exps[k][i] * lz[i].mod;
      a += exps[k][i] * lz[i].arg;
    }
    mod[k] = m;
    arg[k] = a;
    top = std::max(top, m);
  }
  out.resize(exps.size());
  for (std::size_t k = 0; k < exps.size(); ++k)
    out[k] = mod[k] == kNegInf ? Complex{} : std::polar(std::exp(mod[k] - top), arg[k]);
  return top;
}

FactorBasis orthonormalize(const ConvexBody& s_j, const ProductCompact& k_j, std::vector<MultiIndex> exps,
                           const ApproxConfig& cfg) {
  const int dim = s_j.dim();
  // Grading order with lexicographic tie-break.
  std::vector<std::pair<double, MultiIndex>> graded;
  for (auto& e : exps) {
    Vector a(dim);
    for (int i = 0; i < dim; ++i) a(i) = e[static_cast<std::size_t>(i)];
    graded.emplace_back(gauge(s_j, a), std::move(e));
  }
  std::sort(graded.begin(), graded.end(), [](const auto& x, const auto& y) {
    if (std::abs(x.first - y.first) > 1e-9) return x.first < y.first;
    return x.second < y.second;
  });

  FactorBasis fb;
  for (auto& [g, e] : graded) {
    fb.grading.push_back(g);
    fb.exponents.push_back(std::move(e));
  }
  const std::size_t count = fb.exponents.size();

  std::vector<int> degree(static_cast<std::size_t>(dim), 0);
  for (const auto& e : fb.exponents)
    for (int i = 0; i < dim; ++i) degree[static_cast<std::size_t>(i)] = std::max(degree[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(i)]);
  const auto rules = block_rules(k_j, degree);

  std::size_t total = 1;
  for (const auto& r : rules) {
    fb.nodes_per_axis.push_back(static_cast<int>(r.nodes.size()));
    total *= r.nodes.size();
  }
  if (total > kNodeBudget || total * count > kBasisBudget)
    throw ResourceError("quadrature needs " + std::to_string(total) + " nodes for " + std::to_string(count) +
                        " basis elements; reduce m");

  fb.nodes.resize(dim, static_cast<Eigen::Index>(total));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (int i = dim - 1; i >= 0; --i) {
      const auto& nodes = rules[static_cast<std::size_t>(i)].nodes;
      fb.nodes(i, static_cast<Eigen::Index>(idx)) = nodes[rest % nodes.size()];
      rest /= nodes.size();
    }
  }
  fb.weights = Vector::Constant(static_cast<Eigen::Index>(total), 1.0 / static_cast<double>(total));
  const double sqrt_w = std::sqrt(1.0 / static_cast<double>(total));

  // Columns are sqrt(w) * values at the nodes.
  Eigen::MatrixXcd q(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(count));
  for (std::size_t k = 0; k < count; ++k)
    for (std::size_t idx = 0; idx < total; ++idx) {
      Complex v = sqrt_w;
      for (int i = 0; i < dim; ++i) {
        const int p = fb.exponents[k][static_cast<std::size_t>(i)];
        if (p != 0) v *= std::pow(fb.nodes(i, static_cast<Eigen::Index>(idx)), p);
      }
      q(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(k)) = v;
    }

  const Eigen::MatrixXcd mono = q;
  fb.coeffs = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(count); ++k) {
    Eigen::VectorXcd v = q.col(k);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(count));
    c(k) = 1.0;
    const double original = v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < k; ++i) {
        const Complex h = q.col(i).dot(v);
        v -= h * q.col(i);
        c -= h * fb.coeffs.row(i).transpose();
      }
    const double norm = v.norm();
    if (!(norm > cfg.pivot_floor * original)) {
      std::size_t needed = 1;
      for (int d : degree) needed *= static_cast<std::size_t>(2 * d + 2);
      throw QuadratureError("Gram matrix is numerically singular at basis element " + std::to_string(k) +
                            "; at least " + std::to_string(needed) + " nodes are required");
    }
    q.col(k) = v / norm;
    fb.coeffs.row(k) = (c / norm).transpose();
  }
  // Gram matrix of the polynomials reconstructed from the coefficients.
  const Eigen::MatrixXcd vals = mono * fb.coeffs.transpose();
  const Eigen::MatrixXcd gram = vals.adjoint() * vals;
  fb.gram_error = (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  return fb;
}

ConvexBody body_of_block(const ProductStructure& ps, int j) { return ps.factors()[static_cast<std::size_t>(j)]; }

} // namespace

double LatticeClass::count_bound() const { return std::pow(m * sigma + 1.0, body.dim()); }

LatticeClass enumerate_lattice(const ConvexBody& body, int m, std::size_t box_budget) {
  if (m < 1) throw InvalidArgument("degree m must be positive");
  const int n = body.dim();
  LatticeClass lc{body, m, {}, support(body, Vector::Ones(n))};
  const int top = std::max(0, static_cast<int>(std::ceil(m * lc.sigma - 1e-9)));
  double box = std::pow(top + 1.0, n);
  if (box > static_cast<double>(box_budget))
    throw ResourceError("lattice box has " + std::to_string(static_cast<long long>(box)) + " points, over the budget of " +
                        std::to_string(box_budget));
  const ConvexBody scaled = body.scaled(m);
  MultiIndex alpha(static_cast<std::size_t>(n), 0);
  Vector a(n);
  while (true) {
    for (int i = 0; i < n; ++i) a(i) = alpha[static_cast<std::size_t>(i)];
    if (contains(scaled, a)) lc.points.push_back(alpha);
    int i = n - 1;
    while (i >= 0 && alpha[static_cast<std::size_t>(i)] == top) alpha[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++alpha[static_cast<std::size_t>(i)];
  }
  return lc;
}

bool decompose_multi_index(const ProductStructure& ps, const MultiIndex& alpha, int m) {
  if (static_cast<int>(alpha.size()) != ps.total_dim()) throw InvalidArgument("multi-index has the wrong dimension");
  const Matrix& t = ps.t_body().generators();
  const int l = ps.blocks();
  Eigen::Index cols = t.rows() + l;
  Eigen::Index rows = 1 + ps.total_dim() + l;
  for (const auto& f : ps.factors()) cols += f.size();
  Matrix a = Matrix::Zero(rows, cols);
  Vector b = Vector::Zero(rows);
  // Row 0: sum lambda = 1.
  a.block(0, 0, 1, t.rows()).setOnes();
  b(0) = 1.0;
  Eigen::Index col = t.rows();
  for (int j = 0; j < l; ++j) {
    const Matrix& g = ps.factors()[static_cast<std::size_t>(j)].generators();
    const int off = ps.offset(j);
    for (Eigen::Index k = 0; k < g.rows(); ++k) {
      for (Eigen::Index i = 0; i < g.cols(); ++i) a(1 + off + i, col + k) = g(k, i);
      a(1 + ps.total_dim() + j, col + k) = 1.0;
    }
    for (Eigen::Index i = 0; i < g.cols(); ++i) b(1 + off + i) = alpha[static_cast<std::size_t>(off + i)];
    col += g.rows();
  }
  for (int j = 0; j < l; ++j) {
    a(1 + ps.total_dim() + j, col + j) = 1.0;  // slack
    for (Eigen::Index k = 0; k < t.rows(); ++k) a(1 + ps.total_dim() + j, k) = -m * t(k, j);
  }
  return lp::min_infeasibility(a, b) <= kTauMem * std::max(1, m);
}

GradedBasis::GradedBasis(LatticeClass lattice, std::vector<FactorBasis> factors,
                         std::vector<std::vector<int>> product_index, std::vector<int> offsets)
  : lattice_(std::move(lattice)), factors_(std::move(factors)), product_index_(std::move(product_index)),
    offsets_(std::move(offsets)) {}

double GradedBasis::max_gram_error() const {
  double e = 0.0;
  for (const auto& f : factors_) e = std::max(e, f.gram_error);
  return e;
}

std::vector<double> GradedBasis::factor_log_abs(int j, std::span<const Complex> zj) const {
  const FactorBasis& fb = factors_.at(static_cast<std::size_t>(j));
  std::vector<Complex> mono;
  const double scale = shifted_monomials(fb.exponents, zj, mono);
  const auto count = static_cast<Eigen::Index>(fb.exponents.size());
  std::vector<double> out(static_cast<std::size_t>(count));
  for (Eigen::Index k = 0; k < count; ++k) {
    Complex v{};
    for (Eigen::Index i = 0; i <= k; ++i) v += fb.coeffs(k, i) * mono[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(k)] = v == Complex{} ? kNegInf : std::log(std::abs(v)) + scale;
  }
  return out;
}

std::vector<double> GradedBasis::log_abs_values(std::span<const Complex> z) const {
  if (static_cast<int>(z.size()) != lattice_.body.dim()) throw InvalidArgument("point has the wrong dimension");
  std::vector<std::vector<double>> per_block;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    const auto dim = factors_[j].exponents.empty() ? 0 : factors_[j].exponents.front().size();
    per_block.push_back(factor_log_abs(static_cast<int>(j), z.subspan(static_cast<std::size_t>(offsets_[j]), dim)));
  }
  std::vector<double> out(product_index_.size());
  for (std::size_t a = 0; a < product_index_.size(); ++a) {
    double v = 0.0;
    for (std::size_t j = 0; j < factors_.size(); ++j) v += per_block[j][static_cast<std::size_t>(product_index_[a][j])];
    out[a] = v;
  }
  return out;
}

GradedBasis build_basis(const ApproxConfig& cfg, const ProductStructure& ps, const std::vector<ProductCompact>& compacts) {
  if (static_cast<int>(compacts.size()) != ps.blocks()) throw InvalidArgument("need one compact per factor");
  for (int j = 0; j < ps.blocks(); ++j)
    if (compacts[static_cast<std::size_t>(j)].total_dim() != ps.factors()[static_cast<std::size_t>(j)].dim())
      throw InvalidArgument("compact K_" + std::to_string(j + 1) + " has the wrong dimension");
  LatticeClass lattice = enumerate_lattice(build_product_body(ps), cfg.m);

  std::vector<std::map<MultiIndex, int>> seen(static_cast<std::size_t>(ps.blocks()));
  std::vector<std::vector<MultiIndex>> block_exps(static_cast<std::size_t>(ps.blocks()));
  for (const auto& alpha : lattice.points) {
    if (!decompose_multi_index(ps, alpha, cfg.m))
      throw SolverError("multi-index admits no decomposition over T; the product body is inconsistent");
    for (int j = 0; j < ps.blocks(); ++j) {
      const int off = ps.offset(j);
      MultiIndex part(alpha.begin() + off, alpha.begin() + off + ps.factors()[static_cast<std::size_t>(j)].dim());
      if (seen[static_cast<std::size_t>(j)].emplace(part, 0).second) block_exps[static_cast<std::size_t>(j)].push_back(part);
    }
  }

  std::vector<FactorBasis> factors;
  std::vector<int> offsets;
  for (int j = 0; j < ps.blocks(); ++j) {
    factors.push_back(orthonormalize(body_of_block(ps, j), compacts[static_cast<std::size_t>(j)],
                                     std::move(block_exps[static_cast<std::size_t>(j)]), cfg));
    offsets.push_back(ps.offset(j));
    auto& index = seen[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < factors.back().exponents.size(); ++k) index[factors.back().exponents[k]] = static_cast<int>(k);
  }
  std::vector<std::vector<int>> product_index;
  for (const auto& alpha : lattice.points) {
    std::vector<int> idx;
    for (int j = 0; j < ps.blocks(); ++j) {
      const int off = ps.offset(j);
      MultiIndex part(alpha.begin() + off, alpha.begin() + off + ps.factors()[static_cast<std::size_t>(j)].dim());
      idx.push_back(seen[static_cast<std::size_t>(j)].at(part));
    }
    product_index.push_back(std::move(idx));
  }
  return GradedBasis(std::move(lattice), std::move(factors), std::move(product_index), std::move(offsets));
}

SiciakApproximator::SiciakApproximator(const ApproxConfig& cfg, const ProductStructure& ps,
                                       const std::vector<ProductCompact>& compacts)
  : basis_(build_basis(cfg, ps, compacts)), weight_(cfg.weight) {}

double SiciakApproximator::operator()(std::span<const Complex> z) const {
  std::vector<double> logs = basis_.log_abs_values(z);
  for (double& v : logs) v *= 2.0;
  return log_sum_exp(logs) / (2.0 * basis_.m()) + weight_;
}

double approx_v(const ApproxConfig& cfg, const ProductStructure& ps, const std::vector<ProductCompact>& compacts,
                std::span<const Complex> z) {
  return SiciakApproximator(cfg, ps, compacts)(z);
}

namespace {

std::vector<double> require_toric(const ProductStructure& ps, const std::vector<ProductCompact>& compacts) {
  if (static_cast<int>(compacts.size()) != ps.blocks()) throw InvalidArgument("need one compact per factor");
  std::vector<double> radii;
  for (const auto& k : compacts) {
    const auto r = k.toric_radii();
    if (!r) throw UnsupportedConfiguration("this check needs polydisc factors");
    radii.insert(radii.end(), r->begin(), r->end());
  }
  if (static_cast<int>(radii.size()) != ps.total_dim()) throw InvalidArgument("compacts have the wrong dimension");
  return radii;
}

// f on the torus grid: coefficients on the box [0, D_i], contracted one axis
// at a time against the node powers.
std::vector<Complex> torus_values(std::vector<Complex> coeffs, const std::vector<int>& degree,
                                  const std::vector<std::vector<std::vector<Complex>>>& powers) {
  std::vector<std::size_t> shape;
  for (int d : degree) shape.push_back(static_cast<std::size_t>(d + 1));
  for (std::size_t axis = 0; axis < degree.size(); ++axis) {
    std::size_t outer = 1;
    std::size_t inner = 1;
    for (std::size_t i = 0; i < axis; ++i) outer *= shape[i];
    for (std::size_t i = axis + 1; i < shape.size(); ++i) inner *= shape[i];
    const auto& pw = powers[axis];
    const std::size_t samples = pw.size();
    const std::size_t deg = shape[axis];
    std::vector<Complex> next(outer * samples * inner);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t k = 0; k < samples; ++k)
        for (std::size_t p = 0; p < deg; ++p) {
          const Complex w = pw[k][p];
          const Complex* src = &coeffs[(o * deg + p) * inner];
          Complex* dst = &next[(o * samples + k) * inner];
          for (std::size_t r = 0; r < inner; ++r) dst[r] += w * src[r];
        }
    coeffs = std::move(next);
    shape[axis] = samples;
  }
  return coeffs;
}

} // namespace

BernsteinWalshReport bernstein_walsh_check(const ProductStructure& ps, const std::vector<ProductCompact>& compacts, int m,
                                           int trials, int points, std::uint64_t seed, double slack) {
  const std::vector<double> radii = require_toric(ps, compacts);
  const int n = ps.total_dim();
  const LatticeClass lattice = enumerate_lattice(build_product_body(ps), m);
  const TheoremInstance inst(ps, compacts);
  const MaxAffine v = lhs_exact(inst);
  const RhsEvaluator rhs(inst);

  BernsteinWalshReport rep;
  rep.m = m;
  rep.trials = trials;
  rep.points = points;
  rep.slack = slack;
  rep.lattice_size = lattice.points.size();

  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (const auto& a : lattice.points)
    for (int i = 0; i < n; ++i) degree[static_cast<std::size_t>(i)] = std::max(degree[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(i)]);

  // Bernstein's inequality on each circle: sampling N_i points per axis loses
  // at most sum_i pi D_i / N_i of the sup norm.
  constexpr double kSampleBudget = 400'000.0;
  std::vector<double> want(static_cast<std::size_t>(n));
  double product = 1.0;
  for (int i = 0; i < n; ++i) {
    want[static_cast<std::size_t>(i)] = degree[static_cast<std::size_t>(i)] == 0 ? 1.0 : std::ceil(4.0 * std::numbers::pi * n * degree[static_cast<std::size_t>(i)]);
    product *= want[static_cast<std::size_t>(i)];
  }
  double shrink = product > kSampleBudget ? std::pow(kSampleBudget / product, 1.0 / n) : 1.0;
  double eps = 0.0;
  for (int i = 0; i < n; ++i) {
    const int d = degree[static_cast<std::size_t>(i)];
    const int count = d == 0 ? 1 : std::max(d + 1, static_cast<int>(std::floor(want[static_cast<std::size_t>(i)] * shrink)));
    rep.samples_per_axis.push_back(count);
    if (d > 0) eps += std::numbers::pi * d / count;
  }
  if (eps >= 0.9) throw ResourceError("sampling budget too small for a sup-norm bound at this degree");
  rep.sampling_margin = 1.0 / (1.0 - eps);
  const double log_margin = std::log(rep.sampling_margin);

  std::vector<std::vector<std::vector<Complex>>> powers(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int count = rep.samples_per_axis[static_cast<std::size_t>(i)];
    for (int k = 0; k < count; ++k) {
      std::vector<Complex> row;
      const Complex w = std::polar(radii[static_cast<std::size_t>(i)], 2.0 * std::numbers::pi * k / count);
      Complex p = 1.0;
      for (int e = 0; e <= degree[static_cast<std::size_t>(i)]; ++e) {
        row.push_back(p);
        p *= w;
      }
      powers[static_cast<std::size_t>(i)].push_back(std::move(row));
    }
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> lift(0.05, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  std::vector<ComplexVector> ext;
  std::vector<double> bound_v;
  std::vector<double> bound_p;
  for (int p = 0; p < points; ++p) {
    ComplexVector z(n);
    for (int i = 0; i < n; ++i) z(i) = std::polar(radii[static_cast<std::size_t>(i)] * std::exp(lift(rng)), phase(rng));
    bound_v.push_back(m * eval_extended(v, LogPoint::of(z)));
    bound_p.push_back(m * rhs(std::span<const Complex>(z.data(), static_cast<std::size_t>(n))));
    ext.push_back(std::move(z));
  }

  std::vector<std::size_t> flat;
  for (const auto& a : lattice.points) {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * static_cast<std::size_t>(degree[static_cast<std::size_t>(i)] + 1) + static_cast<std::size_t>(a[static_cast<std::size_t>(i)]);
    flat.push_back(idx);
  }
  std::size_t box = 1;
  for (int d : degree) box *= static_cast<std::size_t>(d + 1);

  rep.worst_log_ratio = kNegInf;
  for (int t = 0; t < trials; ++t) {
    std::vector<Complex> c(lattice.points.size());
    for (auto& x : c) x = Complex(gauss(rng), gauss(rng));
    std::vector<Complex> dense(box);
    for (std::size_t k = 0; k < c.size(); ++k) dense[flat[k]] = c[k];
    const auto vals = torus_values(std::move(dense), degree, powers);
    double sup = 0.0;
    for (const auto& x : vals) sup = std::max(sup, std::abs(x));
    const double log_norm = std::log(sup) + log_margin;
    for (int p = 0; p < points; ++p) {
      const ComplexVector& z = ext[static_cast<std::size_t>(p)];
      Complex f{};
      for (std::size_t k = 0; k < c.size(); ++k) {
        Complex mono = c[k];
        for (int i = 0; i < n; ++i) mono *= std::pow(z(i), lattice.points[k][static_cast<std::size_t>(i)]);
        f += mono;
      }
      const double lf = std::log(std::abs(f));
      rep.worst_log_ratio = std::max(rep.worst_log_ratio, lf - (log_norm + bound_v[static_cast<std::size_t>(p)]));
      if (lf > log_norm + bound_v[static_cast<std::size_t>(p)] + slack) ++rep.violations;
      if (lf > log_norm + bound_p[static_cast<std::size_t>(p)] + slack) ++rep.product_violations;
    }
  }
  rep.pass = rep.violations == 0 && rep.product_violations == 0;
  return rep;
}

SweepTable convergence_sweep(std::span<const int> ms, const ProductStructure& ps, const std::vector<ProductCompact>& compacts,
                             const std::vector<ComplexVector>& points) {
  const std::vector<double> radii = require_toric(ps, compacts);
  const MaxAffine v = v_polydisc_body(build_product_body(ps), radii);
  SweepTable table;
  for (int m : ms) {
    ApproxConfig cfg;
    cfg.m = m;
    const SiciakApproximator approx(cfg, ps, compacts);
    SweepRow row;
    row.m = m;
    row.max_error = -1.0;
    for (const auto& z : points) {
      const double err = std::abs(approx(std::span<const Complex>(z.data(), static_cast<std::size_t>(z.size()))) -
                                  eval_extended(v, LogPoint::of(z)));
      if (err > row.max_error) {
        row.max_error = err;
        row.argmax = z;
      }
    }
    row.max_error = std::max(0.0, row.max_error);
    table.rows.push_back(std::move(row));
  }
  double num = 0.0;
  double den = 0.0;
  for (const auto& r : table.rows) {
    const double x = std::log(static_cast<double>(r.m)) / r.m;
    num += x * r.max_error;
    den += x * x;
  }
  table.fitted_c = den > 0.0 ? num / den : 0.0;
  for (const auto& r : table.rows)
    for (const auto& h : table.rows)
      if (2 * h.m == r.m && r.max_error > h.max_error + kTauNum) table.halving_monotone = false;
  if (!table.rows.empty()) {
    const auto& last = table.rows.back();
    table.rate_ok = last.max_error <= table.fitted_c * std::log(static_cast<double>(last.m)) / last.m + kTauNum;
  }
  return table;
}

} // namespace lelong
