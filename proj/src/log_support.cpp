#include <lelong/log_support.hpp>
#include <lelong/lp.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lelong {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// LP value max{ sum lambda_k o_k : sum lambda_k s_k = slope, lambda in simplex }
// over the selected rows; -infinity when the slope is outside their hull.
double best_convex_offset(const Matrix& slopes, const Vector& offsets, const std::vector<Eigen::Index>& rows,
                          const Eigen::Ref<const Vector>& slope) {
  if (rows.empty()) return kNegInf;
  const auto n = slopes.cols();
  const auto k = static_cast<Eigen::Index>(rows.size());
  Matrix A(n + 1, k);
  Vector c(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    A.col(r).head(n) = slopes.row(rows[static_cast<std::size_t>(r)]).transpose();
    c(r) = offsets(rows[static_cast<std::size_t>(r)]);
  }
  A.bottomRows(1).setOnes();
  Vector b(n + 1);
  b.head(n) = slope;
  b(n) = 1.0;
  const auto res = lp::maximize(A, b, c);
  if (res.status != lp::Status::optimal) return kNegInf;
  return res.objective;
}

Matrix stack_slopes(int dim, const std::vector<AffinePiece>& pieces) {
  Matrix s(static_cast<Eigen::Index>(pieces.size()), dim);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (pieces[k].slope.size() != dim) throw InvalidArgument("piece slope has wrong dimension");
    s.row(static_cast<Eigen::Index>(k)) = pieces[k].slope.transpose();
  }
  return s;
}

Vector stack_offsets(const std::vector<AffinePiece>& pieces) {
  Vector o(static_cast<Eigen::Index>(pieces.size()));
  for (std::size_t k = 0; k < pieces.size(); ++k) o(static_cast<Eigen::Index>(k)) = pieces[k].offset;
  return o;
}

} // namespace

LogPoint LogPoint::of(std::span<const Complex> z) {
  LogPoint p;
  p.xi.resize(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double r = std::abs(z[i]);
    p.xi(static_cast<Eigen::Index>(i)) = r == 0.0 ? kNegInf : std::log(r);
  }
  return p;
}

LogPoint LogPoint::of(const ComplexVector& z) {
  return of(std::span<const Complex>(z.data(), static_cast<std::size_t>(z.size())));
}

bool LogPoint::finite() const { return xi.allFinite(); }

MaxAffine::MaxAffine(Matrix slopes, Vector offsets) : slopes_(std::move(slopes)), offsets_(std::move(offsets)) {
  if (slopes_.rows() == 0) throw InvalidArgument("max-affine function needs at least one piece");
  if (slopes_.rows() != offsets_.size()) throw InvalidArgument("slope and offset counts differ");
  for (Eigen::Index i = 0; i < slopes_.rows(); ++i)
    for (Eigen::Index j = 0; j < slopes_.cols(); ++j) {
      double& s = slopes_(i, j);
      if (!std::isfinite(s) || s < -kTauNum) throw InvalidArgument("max-affine slopes must lie in R^n_+");
      if (s < 0.0) s = 0.0;
    }
}

MaxAffine::MaxAffine(int dim, const std::vector<AffinePiece>& pieces)
  : MaxAffine(stack_slopes(dim, pieces), stack_offsets(pieces)) {}

MaxAffine MaxAffine::constant(int dim, double c) {
  Vector o(1);
  o(0) = c;
  return MaxAffine(Matrix::Zero(1, dim), o);
}

double MaxAffine::operator()(const Eigen::Ref<const Vector>& xi) const {
  if (xi.size() != dim()) throw InvalidArgument("max-affine evaluation: dimension mismatch");
  return (slopes_ * xi + offsets_).maxCoeff();
}

MaxAffine MaxAffine::shifted(double c) const {
  return MaxAffine(slopes_, offsets_.array() + c);
}

MaxAffine MaxAffine::canonical() const {
  // Duplicate slopes: keep the largest offset.
  std::vector<Eigen::Index> keep;
  Vector best = offsets_;
  for (Eigen::Index i = 0; i < size(); ++i) {
    bool dup = false;
    for (auto k : keep) {
      if ((slopes_.row(i) - slopes_.row(k)).cwiseAbs().maxCoeff() <= kTauMem) {
        best(k) = std::max(best(k), offsets_(i));
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(i);
  }

  std::vector<Eigen::Index> alive = keep;
  for (auto i : keep) {
    if (alive.size() <= 1) break;
    std::vector<Eigen::Index> others;
    for (auto k : alive)
      if (k != i) others.push_back(k);
    const double reach = best_convex_offset(slopes_, best, others, slopes_.row(i).transpose());
    if (reach >= best(i) - kTauNum) alive = std::move(others);
  }

  Matrix s(static_cast<Eigen::Index>(alive.size()), dim());
  Vector o(static_cast<Eigen::Index>(alive.size()));
  for (std::size_t r = 0; r < alive.size(); ++r) {
    s.row(static_cast<Eigen::Index>(r)) = slopes_.row(alive[r]);
    o(static_cast<Eigen::Index>(r)) = best(alive[r]);
  }
  return MaxAffine(std::move(s), std::move(o));
}

double eval_extended(const MaxAffine& f, const LogPoint& p) {
  if (p.dim() != f.dim()) throw InvalidArgument("eval_extended: dimension mismatch");
  double value = kNegInf;
  for (int k = 0; k < f.size(); ++k) {
    double v = f.offsets()(k);
    bool qualifies = true;
    for (int i = 0; i < f.dim(); ++i) {
      const double s = f.slopes()(k, i);
      if (s == 0.0) continue;
      if (p.xi(i) == kNegInf) {
        qualifies = false;
        break;
      }
      v += s * p.xi(i);
    }
    if (qualifies) value = std::max(value, v);
  }
  return value;
}

bool dominates(const MaxAffine& f, const AffinePiece& piece) {
  if (piece.slope.size() != f.dim()) throw InvalidArgument("dominates: dimension mismatch");
  std::vector<Eigen::Index> all(static_cast<std::size_t>(f.size()));
  for (int k = 0; k < f.size(); ++k) all[static_cast<std::size_t>(k)] = k;
  return best_convex_offset(f.slopes(), f.offsets(), all, piece.slope) >= piece.offset - kTauNum;
}

bool same_function(const MaxAffine& f, const MaxAffine& g, double tol) {
  if (f.dim() != g.dim()) return false;
  const MaxAffine a = f.canonical();
  const MaxAffine b = g.canonical();
  if (a.size() != b.size()) return false;
  std::vector<bool> used(static_cast<std::size_t>(b.size()), false);
  for (int i = 0; i < a.size(); ++i) {
    bool matched = false;
    for (int k = 0; k < b.size(); ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      if ((a.slopes().row(i) - b.slopes().row(k)).cwiseAbs().maxCoeff() <= tol &&
          std::abs(a.offsets()(i) - b.offsets()(k)) <= tol) {
        used[static_cast<std::size_t>(k)] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

double max_deviation(const MaxAffine& f, const MaxAffine& g, const std::vector<Vector>& points) {
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, std::abs(f(p) - g(p)));
  return worst;
}

MaxAffine h_of_body(const ConvexBody& body) {
  const ConvexBody c = canonicalize(body);
  return MaxAffine(c.generators(), Vector::Zero(c.size()));
}

bool check_lelong(const LelongCertificate& cert) {
  if (cert.subject.dim() != cert.body.dim()) throw InvalidArgument("check_lelong: dimension mismatch");
  if (!contains(cert.body, Vector::Zero(cert.body.dim()))) return false;
  for (int k = 0; k < cert.subject.size(); ++k) {
    if (cert.subject.offsets()(k) > cert.c_u + kTauNum) return false;
    if (!contains(cert.body, cert.subject.slopes().row(k).transpose())) return false;
  }
  return true;
}

bool check_lelong_plus(const LelongCertificate& cert) {
  if (!check_lelong(cert)) return false;
  const ConvexBody c = canonicalize(cert.body);
  for (int i = 0; i < c.size(); ++i)
    if (!dominates(cert.subject, {c.generator(i), -cert.c_u})) return false;
  return true;
}

MaxAffine compose_support(const ConvexBody& t_body, const std::vector<MaxAffine>& parts, std::size_t piece_cap) {
  if (static_cast<std::size_t>(t_body.dim()) != parts.size())
    throw InvalidArgument("compose_support: T dimension does not match the number of parts");
  const ConvexBody t = canonicalize(t_body);
  double count = t.size();
  int n = 0;
  for (const auto& p : parts) {
    count *= p.size();
    n += p.dim();
  }
  if (count > static_cast<double>(piece_cap))
    throw ResourceError("compose_support: expansion exceeds " + std::to_string(piece_cap) + " pieces");

  const auto total = static_cast<Eigen::Index>(count);
  Matrix slopes = Matrix::Zero(total, n);
  Vector offsets = Vector::Zero(total);
  const auto l = parts.size();
  std::vector<int> idx(l, 0);
  Eigen::Index row = 0;
  for (int ti = 0; ti < t.size(); ++ti) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      int off = 0;
      for (std::size_t j = 0; j < l; ++j) {
        const double w = t.generators()(ti, static_cast<Eigen::Index>(j));
        const auto& part = parts[j];
        slopes.row(row).segment(off, part.dim()) = w * part.slopes().row(idx[j]);
        offsets(row) += w * part.offsets()(idx[j]);
        off += part.dim();
      }
      ++row;
      std::size_t j = 0;
      while (j < l && ++idx[j] == parts[j].size()) idx[j++] = 0;
      if (j == l) break;
    }
  }
  return MaxAffine(std::move(slopes), std::move(offsets));
}

} // namespace lelong
