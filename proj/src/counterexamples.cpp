#include <lelong/counterexamples.hpp>
#include <lelong/log_support.hpp>
#include <lelong/product_engine.hpp>

#include <algorithm>
#include <cmath>

namespace lelong {

IntroReport intro_counterexample(double a, double radius) {
  if (!(a > 0.0 && a < 1.0))
    throw InvalidArgument("need 0 < a < 1; for a >= 1 the body is a lower set and the product formula holds");
  if (!(radius >= 1.0)) throw InvalidArgument("need R >= 1");
  const ConvexBody s = ConvexBody::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, a}}, "intro");
  const double log_r = std::log(radius);
  IntroReport rep;
  rep.a = a;
  rep.radius = radius;
  // K is the unit bidisc, so V^S_K = H_S.
  Vector xi(2);
  xi << -log_r, log_r;
  rep.lhs = h_of_body(s)(xi);
  Vector v(2);
  v << std::max(0.0, -log_r), std::max(0.0, log_r);
  rep.rhs = support(s, v);
  rep.gap = rep.rhs - rep.lhs;
  rep.expected_gap = (1.0 - a) * log_r;
  rep.pass = std::abs(rep.lhs - a * log_r) <= 1e-12 && std::abs(rep.rhs - log_r) <= 1e-12 &&
             std::abs(rep.gap - rep.expected_gap) <= 1e-12;
  return rep;
}

namespace {

double width(const ConvexBody& t, const Vector& eta) { return support(t, eta) + support(t, -eta); }

struct EtaChoice {
  Vector eta;
  std::string source;
};

std::optional<EtaChoice> choose_eta(const ConvexBody& t) {
  const DiameterWitness d = diameter_and_witness(t);
  if (d.degenerate) return std::nullopt;
  const std::vector<EtaChoice> first{{d.eta.cwiseAbs(), "diameter, absolute value"},
                                     {(-d.eta).cwiseMax(0.0), "diameter, positive part of -eta"},
                                     {d.eta.cwiseMax(0.0), "diameter, positive part"}};
  for (const auto& c : first)
    if (width(t, c.eta) > kTauNum) return c;
  const Matrix& g = t.generators();
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.rows(); ++j) {
      if (i == j) continue;
      const Vector diff = (g.row(j) - g.row(i)).transpose();
      if (diff.norm() <= kTauNum) continue;
      for (const Vector& e : {Vector(diff.cwiseAbs()), Vector(diff.cwiseMax(0.0))}) {
        const Vector eta = e / diff.norm();
        if (width(t, eta) > kTauNum) return EtaChoice{eta, "vertex difference scan"};
      }
    }
  return std::nullopt;
}

} // namespace

WeightedWitness weighted_counterexample(const ProductStructure& ps) {
  const ConvexBody t = canonicalize(ps.t_body());
  if (t.size() < 2) throw NoWitness("T is a single point; no weights separate the two sides");
  std::vector<double> sigma;
  for (int j = 0; j < ps.blocks(); ++j) {
    const auto& s = ps.factors()[static_cast<std::size_t>(j)];
    sigma.push_back(support(s, Vector::Ones(s.dim())));
    if (!(sigma.back() > kTauNum)) throw NotApplicable("S_" + std::to_string(j + 1) + " is {0}; its level sets are empty");
  }
  const auto choice = choose_eta(t);
  if (!choice) throw NoWitness("no direction in R^l_+ with phi_T(eta) + phi_T(-eta) > 0");

  WeightedWitness w;
  w.eta = choice->eta;
  w.eta_source = choice->source;
  for (int j = 0; j < ps.blocks(); ++j) w.weights.push_back(w.eta(j) == 0.0 ? 0.0 : -w.eta(j));

  const TheoremInstance plain = TheoremInstance::toric(ps);
  const TheoremInstance inst = TheoremInstance::toric(ps, w.weights);
  ComplexVector z(ps.total_dim());
  for (int j = 0; j < ps.blocks(); ++j) {
    const auto& s = ps.factors()[static_cast<std::size_t>(j)];
    ComplexVector zj = ComplexVector::Constant(s.dim(), std::exp(w.eta(j) / sigma[static_cast<std::size_t>(j)]));
    w.level_error = std::max(w.level_error, std::abs(eval_extended(h_of_body(s), LogPoint::of(zj)) - w.eta(j)));
    z.segment(ps.offset(j), s.dim()) = zj;
    w.eval_points.push_back(std::move(zj));
  }

  // V_{K,q} = V_K + phi_T(q) for constant q, checked on a small grid.
  const MaxAffine weighted = lhs_exact(inst);
  const MaxAffine unweighted = lhs_exact(plain);
  const double shift = support(ps.t_body(), Eigen::Map<const Vector>(w.weights.data(), ps.blocks()));
  const int n = ps.total_dim();
  const int per_axis = n <= 3 ? 9 : 5;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  Vector xi(n);
  while (true) {
    for (int i = 0; i < n; ++i) xi(i) = -2.0 + 4.0 * idx[static_cast<std::size_t>(i)] / (per_axis - 1);
    w.identity_error = std::max(w.identity_error, std::abs(weighted(xi) - (unweighted(xi) + shift)));
    int i = n - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == per_axis - 1) idx[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
  }

  w.lhs = eval_extended(weighted, LogPoint::of(z));
  w.rhs = rhs_eval(inst, std::span<const Complex>(z.data(), static_cast<std::size_t>(n)));
  w.gap = width(ps.t_body(), w.eta);
  w.pass = w.gap > kTauNum && std::abs((w.lhs - w.rhs) - w.gap) <= kTauNum && w.level_error <= kTauNum &&
           w.identity_error <= kTauNum;
  return w;
}

NonmaximalityReport nonmaximality_note(const ProductStructure& ps, const std::vector<double>& weights) {
  NonmaximalityReport rep;
  rep.weights = weights;
  if (!weights.empty()) {
    if (static_cast<int>(weights.size()) != ps.blocks()) throw InvalidArgument("need one weight per factor");
    const Vector q = Eigen::Map<const Vector>(weights.data(), ps.blocks());
    rep.gap = width(ps.t_body(), q);
    rep.inconclusive = rep.gap <= kTauNum;
  }
  if (weights.empty() || rep.inconclusive) {
    const WeightedWitness w = weighted_counterexample(ps);
    rep.retried = !weights.empty();
    rep.weights = w.weights;
    rep.gap = w.gap;
  }
  rep.pass = rep.gap > kTauNum;
  rep.implication =
      "V^S_{K,q} - phi_T(V^{S_j}_{K_j,q_j}) reaches " + std::to_string(rep.gap) +
      " > 0, so the composed function is strictly below the extremal function; an extremal function "
      "of this type that is maximal off K would coincide with it, hence the composition is not maximal on C^n \\ K.";
  return rep;
}

SublevelWitness sublevel_nonconvexity(const ConvexBody& body, std::optional<double> t) {
  const int n = body.dim();
  const Matrix& g = body.generators();
  if (g.cwiseAbs().maxCoeff() <= kTauNum) throw InvalidArgument("S = {0} has no sublevel structure");
  if (!contains(body, Vector::Zero(n))) throw InvalidArgument("S must contain the origin");
  if (t && !(*t > 0.0)) throw InvalidArgument("level t must be positive");

  std::vector<int> active;
  for (int i = 0; i < n; ++i)
    if (g.col(i).maxCoeff() > kTauNum) active.push_back(i);
  const int k = static_cast<int>(active.size());
  Matrix rg(g.rows(), k);
  for (int i = 0; i < k; ++i) rg.col(i) = g.col(active[static_cast<std::size_t>(i)]);
  const ConvexBody reduced(rg);
  const Vector x = axis_extents(reduced);
  const MaxAffine h = h_of_body(body);
  auto value = [&](const ComplexVector& z) { return eval_extended(h, LogPoint::of(z)); };

  SublevelWitness w;
  w.axis_extents = Vector::Zero(n);
  for (int i = 0; i < k; ++i) w.axis_extents(active[static_cast<std::size_t>(i)]) = x(i);

  int flat = -1;
  for (int i = 0; i < k; ++i)
    if (x(i) <= kTauMem) {
      flat = i;
      break;
    }

  if (flat < 0) {
    const SimplexReport sr = simplex_report(reduced);
    if (sr.is_simplex)
      throw NotApplicable("is_simplex: S equals ch{0, x_j e_j}; the sublevel sets of H_S are convex");
    const Vector s = *sr.witness;
    const double sum_s = s.sum();
    const double ratio = sr.ratio_sum;
    w.branch = 1;
    w.t0 = sum_s * std::log(static_cast<double>(k)) / (ratio - 1.0);
    w.t = t.value_or(1.1 * *w.t0);
    w.witness = Vector::Zero(n);
    for (int i = 0; i < k; ++i) w.witness(active[static_cast<std::size_t>(i)]) = s(i);
    w.midpoint = ComplexVector::Zero(n);
    for (int j = 0; j < k; ++j) {
      ComplexVector p = ComplexVector::Zero(n);
      const double r = std::exp(w.t / x(j));
      p(active[static_cast<std::size_t>(j)]) = r;
      w.midpoint(active[static_cast<std::size_t>(j)]) = r / k;
      w.values.push_back(value(p));
      w.points.push_back(std::move(p));
    }
    w.midpoint_value = value(w.midpoint);
    w.excess_bound = (ratio - 1.0) * w.t - sum_s * std::log(static_cast<double>(k));
    w.nonconvex = w.midpoint_value > w.t;
    bool on_level = true;
    for (double v : w.values) on_level = on_level && std::abs(v - w.t) <= kTauNum;
    w.pass = on_level && w.nonconvex;
    w.note = w.nonconvex ? "the average of the points leaves the sublevel set"
                         : "no witness at this level; this is not a proof of convexity";
    return w;
  }

  // Some axis meets S only at 0: (tau, 0, ..., 0) and (0, 1, ..., 1) have
  // H_S = 0 while their average is pushed above t.
  const int axis = active[static_cast<std::size_t>(flat)];
  Eigen::Index best = 0;
  g.col(axis).maxCoeff(&best);
  const Vector s = g.row(best).transpose();
  w.branch = 2;
  w.t = t.value_or(1.0);
  w.witness = s;
  const double margin = std::max(0.1 * w.t, 0.1);
  const double log_tau = (w.t + s.sum() * std::log(2.0) + margin) / s(axis);
  ComplexVector p1 = ComplexVector::Zero(n);
  p1(axis) = std::exp(log_tau);
  ComplexVector p2 = ComplexVector::Zero(n);
  for (int i : active)
    if (i != axis) p2(i) = 1.0;
  w.midpoint = 0.5 * (p1 + p2);
  w.values = {value(p1), value(p2)};
  w.points = {std::move(p1), std::move(p2)};
  w.midpoint_value = value(w.midpoint);
  w.nonconvex = w.midpoint_value > w.t;
  w.pass = w.values[0] <= w.t + kTauNum && w.values[1] <= w.t + kTauNum && w.nonconvex;
  w.note = "axis " + std::to_string(axis + 1) + " meets S only at the origin";
  return w;
}

} // namespace lelong
