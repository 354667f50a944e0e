#include <lelong/convex_body.hpp>
#include <lelong/lp.hpp>

#include <cmath>
#include <limits>
#include <random>

namespace lelong {

namespace {

Matrix stack_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) throw InvalidArgument("convex body needs at least one generator");
  const auto n = rows.front().size();
  Matrix m(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) throw InvalidArgument("generators have inconsistent dimensions");
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return m;
}

// Columns are generators, with a final row of ones for the convexity constraint.
Matrix hull_system(const Matrix& gens) {
  Matrix A(gens.cols() + 1, gens.rows());
  A.topRows(gens.cols()) = gens.transpose();
  A.bottomRows(1).setOnes();
  return A;
}

bool in_hull(const Matrix& gens, const Eigen::Ref<const Vector>& p, double tol) {
  Vector b(p.size() + 1);
  b.head(p.size()) = p;
  b(p.size()) = 1.0;
  return lp::min_infeasibility(hull_system(gens), b) <= tol;
}

Matrix dedupe(const Matrix& gens, double tol) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < gens.rows(); ++i) {
    bool dup = false;
    for (auto k : keep) {
      if ((gens.row(i) - gens.row(k)).cwiseAbs().maxCoeff() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(i);
  }
  Matrix out(static_cast<Eigen::Index>(keep.size()), gens.cols());
  for (std::size_t r = 0; r < keep.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = gens.row(keep[r]);
  return out;
}

Vector random_convex_point(const Matrix& gens, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  Vector w(gens.rows());
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = expo(rng);
  w /= w.sum();
  return gens.transpose() * w;
}

} // namespace

ConvexBody::ConvexBody(std::vector<Vector> generators, std::string label)
  : ConvexBody(stack_rows(generators), std::move(label)) {}

ConvexBody::ConvexBody(Matrix generators, std::string label)
  : gens_(std::move(generators)), label_(std::move(label)) {
  if (gens_.rows() == 0) throw InvalidArgument("convex body needs at least one generator");
  if (gens_.cols() == 0) throw InvalidArgument("convex body must have positive dimension");
  for (Eigen::Index i = 0; i < gens_.rows(); ++i) {
    for (Eigen::Index j = 0; j < gens_.cols(); ++j) {
      double& c = gens_(i, j);
      if (!std::isfinite(c)) throw InvalidArgument("generator coordinate is not finite");
      if (c < -kTauNum) throw InvalidArgument("generator coordinate is negative; bodies must lie in R^n_+");
      if (c < 0.0) c = 0.0;
    }
  }
}

ConvexBody ConvexBody::from_rows(std::initializer_list<std::initializer_list<double>> rows,
                                 std::string label) {
  std::vector<Vector> gens;
  for (const auto& r : rows) {
    Vector v(static_cast<Eigen::Index>(r.size()));
    Eigen::Index k = 0;
    for (double c : r) v(k++) = c;
    gens.push_back(std::move(v));
  }
  return ConvexBody(std::move(gens), std::move(label));
}

ConvexBody ConvexBody::scaled(double t) const {
  if (t < 0.0) throw InvalidArgument("bodies can only be scaled by t >= 0");
  return ConvexBody(Matrix(t * gens_), label_);
}

ConvexBody ConvexBody::with_label(std::string label) const { return ConvexBody(gens_, std::move(label)); }

ConvexBody standard_simplex(int n) {
  if (n < 1) throw InvalidArgument("simplex dimension must be positive");
  Matrix g = Matrix::Zero(n + 1, n);
  g.bottomRows(n) = Matrix::Identity(n, n);
  return ConvexBody(g, "Sigma_" + std::to_string(n));
}

ConvexBody axis_simplex(const Vector& x) {
  const auto n = x.size();
  Matrix g = Matrix::Zero(n + 1, n);
  g.bottomRows(n) = x.asDiagonal();
  return ConvexBody(g, "Sigma_x");
}

ConvexBody unit_cube(int n) {
  if (n < 1 || n > 16) throw InvalidArgument("cube dimension out of range");
  Matrix g(1 << n, n);
  for (int mask = 0; mask < (1 << n); ++mask)
    for (int j = 0; j < n; ++j) g(mask, j) = (mask >> j) & 1 ? 1.0 : 0.0;
  return ConvexBody(g, "cube_" + std::to_string(n));
}

ConvexBody segment(double a, double b) {
  if (a > b) throw InvalidArgument("segment needs a <= b");
  Matrix g(2, 1);
  g << a, b;
  return ConvexBody(g, "segment");
}

ConvexBody point(const Vector& p) { return ConvexBody(Matrix(p.transpose()), "point"); }

double support(const ConvexBody& body, const Eigen::Ref<const Vector>& xi) {
  if (xi.size() != body.dim())
    throw InvalidArgument("support: direction has dimension " + std::to_string(xi.size()) +
                          ", body has dimension " + std::to_string(body.dim()));
  return (body.generators() * xi).maxCoeff();
}

bool contains(const ConvexBody& body, const Eigen::Ref<const Vector>& p, double tol) {
  if (p.size() != body.dim()) throw InvalidArgument("contains: dimension mismatch");
  return in_hull(body.generators(), p, tol);
}

ConvexBody canonicalize(const ConvexBody& body) {
  Matrix g = dedupe(body.generators(), kTauMem);
  std::vector<bool> alive(static_cast<std::size_t>(g.rows()), true);
  Eigen::Index alive_count = g.rows();
  for (Eigen::Index i = 0; i < g.rows() && alive_count > 1; ++i) {
    Matrix others(alive_count - 1, g.cols());
    Eigen::Index r = 0;
    for (Eigen::Index k = 0; k < g.rows(); ++k)
      if (k != i && alive[static_cast<std::size_t>(k)]) others.row(r++) = g.row(k);
    if (in_hull(others, g.row(i).transpose(), kTauMem)) {
      alive[static_cast<std::size_t>(i)] = false;
      --alive_count;
    }
  }
  Matrix out(alive_count, g.cols());
  Eigen::Index r = 0;
  for (Eigen::Index k = 0; k < g.rows(); ++k)
    if (alive[static_cast<std::size_t>(k)]) out.row(r++) = g.row(k);
  return ConvexBody(out, body.label());
}

ConvexBody lower_hull(const ConvexBody& body) {
  const int n = body.dim();
  if (n > 8) throw InvalidArgument("lower_hull supports n <= 8");
  const Matrix& g = body.generators();
  Matrix masked(g.rows() * (1 << n), n);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      for (int j = 0; j < n; ++j) masked(r, j) = (mask >> j) & 1 ? 0.0 : g(i, j);
      ++r;
    }
  }
  return canonicalize(ConvexBody(dedupe(masked, kTauMem), body.label().empty() ? "" : body.label() + "_lower"));
}

Vector axis_extents(const ConvexBody& body) {
  const int n = body.dim();
  const Matrix& g = body.generators();
  const auto k = g.rows();
  Vector extents = Vector::Zero(n);
  for (int j = 0; j < n; ++j) {
    // variables: lambda (k), t; rows: G^T lambda - t e_j = 0, sum lambda = 1.
    Matrix A = Matrix::Zero(n + 1, k + 1);
    A.topLeftCorner(n, k) = g.transpose();
    A(j, k) = -1.0;
    A.bottomLeftCorner(1, k).setOnes();
    Vector b = Vector::Zero(n + 1);
    b(n) = 1.0;
    Vector c = Vector::Zero(k + 1);
    c(k) = 1.0;
    const auto res = lp::maximize(A, b, c);
    if (res.status == lp::Status::optimal) extents(j) = std::max(0.0, res.objective);
  }
  return extents;
}

double gauge(const ConvexBody& body, const Eigen::Ref<const Vector>& alpha) {
  if (alpha.size() != body.dim()) throw InvalidArgument("gauge: dimension mismatch");
  if (alpha.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const Matrix& g = body.generators();
  const Vector c = -Vector::Ones(g.rows());
  const auto res = lp::maximize(g.transpose(), alpha, c);
  if (res.status != lp::Status::optimal) return std::numeric_limits<double>::infinity();
  return -res.objective;
}

SimplexReport simplex_report(const ConvexBody& body) {
  SimplexReport rep;
  rep.axis_extents = axis_extents(body);
  for (Eigen::Index j = 0; j < rep.axis_extents.size(); ++j)
    if (rep.axis_extents(j) <= kTauMem)
      throw DegenerateBody("axis extent " + std::to_string(j) + " vanishes; Sigma_x is undefined");

  const Vector inv = rep.axis_extents.cwiseInverse();
  Eigen::Index best = 0;
  rep.ratio_sum = (body.generators() * inv).maxCoeff(&best);
  rep.is_simplex = rep.ratio_sum <= 1.0 + kTauMem;
  if (!rep.is_simplex) rep.witness = body.generator(static_cast<int>(best));
  return rep;
}

DiameterWitness diameter_and_witness(const ConvexBody& body) {
  DiameterWitness w;
  const Matrix& g = body.generators();
  Eigen::Index bi = 0, bj = 0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < g.rows(); ++j) {
      const double d = (g.row(j) - g.row(i)).norm();
      if (d > w.diameter) {
        w.diameter = d;
        bi = i;
        bj = j;
      }
    }
  }
  if (w.diameter <= kTauNum) {
    w.diameter = 0.0;
    return w;
  }
  w.degenerate = false;
  w.eta = (g.row(bj) - g.row(bi)).transpose() / w.diameter;
  // Width along eta equals the diameter for a maximizing pair.
  if (support(body, w.eta) + support(body, -w.eta) < w.diameter - kTauNum)
    throw SolverError("diameter witness failed its width check");
  return w;
}

ProductStructure::ProductStructure(ConvexBody t_body, std::vector<ConvexBody> factors)
  : t_body_(std::move(t_body)), factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("product structure needs at least one factor");
  if (t_body_.dim() != static_cast<int>(factors_.size()))
    throw InvalidArgument("T has dimension " + std::to_string(t_body_.dim()) + " but there are " +
                          std::to_string(factors_.size()) + " factors");
  for (std::size_t j = 0; j < factors_.size(); ++j)
    if (!contains(factors_[j], Vector::Zero(factors_[j].dim())))
      throw InvalidArgument("factor S_" + std::to_string(j + 1) + " does not contain the origin");
}

std::vector<int> ProductStructure::factor_dims() const {
  std::vector<int> dims;
  for (const auto& f : factors_) dims.push_back(f.dim());
  return dims;
}

int ProductStructure::total_dim() const {
  int n = 0;
  for (const auto& f : factors_) n += f.dim();
  return n;
}

int ProductStructure::offset(int j) const {
  int off = 0;
  for (int k = 0; k < j; ++k) off += factors_[static_cast<std::size_t>(k)].dim();
  return off;
}

ConvexBody build_product_body(const ProductStructure& ps) {
  const ConvexBody t = canonicalize(ps.t_body());
  std::vector<ConvexBody> fs;
  for (const auto& f : ps.factors()) fs.push_back(canonicalize(f));

  double count = t.size();
  for (const auto& f : fs) count *= f.size();
  if (count > 1e6) throw ResourceError("product body would have more than 1e6 generators");

  const int n = ps.total_dim();
  const int l = ps.blocks();
  std::vector<Vector> gens;
  std::vector<int> idx(static_cast<std::size_t>(l), 0);
  for (int ti = 0; ti < t.size(); ++ti) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      Vector g(n);
      for (int j = 0; j < l; ++j) {
        const auto& f = fs[static_cast<std::size_t>(j)];
        g.segment(ps.offset(j), f.dim()) =
            t.generators()(ti, j) * f.generators().row(idx[static_cast<std::size_t>(j)]).transpose();
      }
      gens.push_back(std::move(g));
      int j = 0;
      while (j < l && ++idx[static_cast<std::size_t>(j)] == fs[static_cast<std::size_t>(j)].size())
        idx[static_cast<std::size_t>(j++)] = 0;
      if (j == l) break;
    }
  }
  Matrix m(static_cast<Eigen::Index>(gens.size()), n);
  for (std::size_t i = 0; i < gens.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = gens[i].transpose();
  return canonicalize(ConvexBody(dedupe(m, kTauMem), "product"));
}

bool probe_union_convexity(const ProductStructure& ps, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("probe_union_convexity needs trials >= 1");
  const ConvexBody body = build_product_body(ps);
  std::mt19937_64 rng(seed);
  const int n = ps.total_dim();
  auto sample = [&]() {
    const Vector x = random_convex_point(ps.t_body().generators(), rng);
    Vector c(n);
    for (int j = 0; j < ps.blocks(); ++j) {
      const auto& f = ps.factors()[static_cast<std::size_t>(j)];
      c.segment(ps.offset(j), f.dim()) = x(j) * random_convex_point(f.generators(), rng);
    }
    return c;
  };
  for (int k = 0; k < trials; ++k) {
    const Vector mid = 0.5 * (sample() + sample());
    if (!contains(body, mid)) return false;
  }
  return true;
}

} // namespace lelong
