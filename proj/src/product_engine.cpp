#include <lelong/product_engine.hpp>
#include <lelong/siciak_approx.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace lelong {

namespace {

struct Chunk {
  double max_error = -1.0;
  std::size_t argmax = 0;
};

// Runs body(begin, end, chunk) over [0, total) split into `workers` contiguous
// ranges and reduces in range order, so the result does not depend on the
// worker count.
template <class F>
Chunk parallel_max(std::size_t total, int workers, F&& body) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(total, 1))));
  std::vector<Chunk> chunks(static_cast<std::size_t>(workers));
  const std::size_t step = (total + static_cast<std::size_t>(workers) - 1) / static_cast<std::size_t>(workers);
  if (workers == 1) {
    body(std::size_t{0}, total, chunks[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(total, step * static_cast<std::size_t>(w));
      const std::size_t end = std::min(total, begin + step);
      pool.emplace_back([&, begin, end, w] { body(begin, end, chunks[static_cast<std::size_t>(w)]); });
    }
    for (auto& t : pool) t.join();
  }
  Chunk best;
  for (const auto& c : chunks)
    if (c.max_error > best.max_error) best = c;
  return best;
}

double axis_value(const GridAxis& a, int k) {
  if (a.count == 1) return a.min;
  return a.min + (a.max - a.min) * k / (a.count - 1);
}

double fast_eval(const MaxAffine& f, const double* xi) {
  double best = -std::numeric_limits<double>::infinity();
  const Matrix& s = f.slopes();
  for (Eigen::Index k = 0; k < s.rows(); ++k) {
    double v = f.offsets()(k);
    for (Eigen::Index i = 0; i < s.cols(); ++i) v += s(k, i) * xi[i];
    best = std::max(best, v);
  }
  return best;
}

} // namespace

TheoremInstance::TheoremInstance(ProductStructure ps, std::vector<ProductCompact> compacts, std::vector<double> weights)
  : ps_(std::move(ps)), compacts_(std::move(compacts)), weights_(std::move(weights)) {
  if (static_cast<int>(compacts_.size()) != ps_.blocks())
    throw InvalidArgument("need one compact per factor S_j");
  for (int j = 0; j < ps_.blocks(); ++j)
    if (compacts_[static_cast<std::size_t>(j)].total_dim() != ps_.factors()[static_cast<std::size_t>(j)].dim())
      throw InvalidArgument("compact K_" + std::to_string(j + 1) + " has the wrong dimension");
  if (!weights_.empty() && static_cast<int>(weights_.size()) != ps_.blocks())
    throw InvalidArgument("need one weight per factor");
}

TheoremInstance TheoremInstance::toric(ProductStructure ps, std::vector<double> weights) {
  std::vector<ProductCompact> compacts;
  for (const auto& f : ps.factors()) compacts.emplace_back(std::vector{CompactFactorSpec::unit_polydisc(f.dim())});
  return TheoremInstance(std::move(ps), std::move(compacts), std::move(weights));
}

double TheoremInstance::weight_shift() const {
  if (weights_.empty()) return 0.0;
  return support(ps_.t_body(), Eigen::Map<const Vector>(weights_.data(), static_cast<Eigen::Index>(weights_.size())));
}

bool TheoremInstance::is_toric() const { return toric_radii().has_value(); }

std::optional<std::vector<double>> TheoremInstance::toric_radii() const {
  std::vector<double> radii;
  for (const auto& k : compacts_) {
    const auto r = k.toric_radii();
    if (!r) return std::nullopt;
    radii.insert(radii.end(), r->begin(), r->end());
  }
  return radii;
}

GridSpec GridSpec::uniform(double lo, double hi, int count, int phases) {
  return GridSpec{{GridAxis{lo, hi, count}}, phases};
}

GridAxis GridSpec::axis(int i) const {
  if (axes.empty()) return GridAxis{};
  if (axes.size() == 1) return axes.front();
  return axes.at(static_cast<std::size_t>(i));
}

std::vector<int> inert_blocks(const ProductStructure& ps) {
  std::vector<int> inert;
  const Matrix& t = ps.t_body().generators();
  for (int j = 0; j < ps.blocks(); ++j)
    if (t.col(j).cwiseAbs().maxCoeff() == 0.0) inert.push_back(j);
  return inert;
}

RhsEvaluator::RhsEvaluator(const TheoremInstance& inst) : t_gens_(canonicalize(inst.ps().t_body()).generators()) {
  const auto inert = inert_blocks(inst.ps());
  for (int j = 0; j < inst.ps().blocks(); ++j) {
    Block b;
    b.offset = inst.ps().offset(j);
    b.dim = inst.ps().factors()[static_cast<std::size_t>(j)].dim();
    b.weight = inst.weight(j);
    b.inert = std::find(inert.begin(), inert.end(), j) != inert.end();
    const auto& s_j = inst.ps().factors()[static_cast<std::size_t>(j)];
    const auto& k_j = inst.compacts()[static_cast<std::size_t>(j)];
    if (!b.inert) {
      if (const auto radii = k_j.toric_radii()) {
        b.toric = v_polydisc_body(s_j, *radii);
      } else if (b.dim == 1 && k_j.factors.size() == 1) {
        b.one_d = k_j.factors.front();
        b.scale = support(s_j, Vector::Ones(1));
        toric_ = false;
      } else {
        throw UnsupportedConfiguration("block " + std::to_string(j + 1) +
                                       ": no closed form for a non-toric compact with a multi-dimensional S_j");
      }
    }
    blocks_.push_back(std::move(b));
  }
}

double RhsEvaluator::operator()(std::span<const Complex> z) const {
  std::vector<double> y(blocks_.size(), 0.0);
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    const Block& b = blocks_[j];
    const auto zj = z.subspan(static_cast<std::size_t>(b.offset), static_cast<std::size_t>(b.dim));
    if (b.inert) {
      y[j] = b.weight;
    } else if (b.toric) {
      y[j] = eval_extended(*b.toric, LogPoint::of(zj)) + b.weight;
    } else {
      y[j] = v_factor_scaled(*b.one_d, b.scale, zj.front()) + b.weight;
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index t = 0; t < t_gens_.rows(); ++t) {
    double v = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double w = t_gens_(t, static_cast<Eigen::Index>(j));
      if (w != 0.0) v += w * y[j];
    }
    best = std::max(best, v);
  }
  return best;
}

double RhsEvaluator::at_log(std::span<const double> xi) const {
  if (!toric_) throw UnsupportedConfiguration("at_log needs a toric instance");
  double y[64];
  if (blocks_.size() > 64) throw ResourceError("too many blocks");
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    const Block& b = blocks_[j];
    y[j] = (b.inert ? 0.0 : fast_eval(*b.toric, xi.data() + b.offset)) + b.weight;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index t = 0; t < t_gens_.rows(); ++t) {
    double v = 0.0;
    for (std::size_t j = 0; j < blocks_.size(); ++j) v += t_gens_(t, static_cast<Eigen::Index>(j)) * y[j];
    best = std::max(best, v);
  }
  return best;
}

double rhs_eval(const TheoremInstance& inst, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != inst.ps().total_dim()) throw InvalidArgument("rhs_eval: dimension mismatch");
  return RhsEvaluator(inst)(z);
}

MaxAffine lhs_exact(const TheoremInstance& inst) {
  const auto radii = inst.toric_radii();
  if (!radii) throw UnsupportedConfiguration("lhs_exact needs polydisc factors; use the polynomial approximation");
  const MaxAffine v = v_polydisc_body(build_product_body(inst.ps()), *radii);
  return inst.weighted() ? v.shifted(inst.weight_shift()) : v;
}

TheoremReport verify_theorem(const TheoremInstance& inst, const GridSpec& grid, const VerifyOptions& opts) {
  const int n = inst.ps().total_dim();
  if (grid.axes.size() > 1 && static_cast<int>(grid.axes.size()) != n)
    throw InvalidArgument("grid needs one axis or one axis per coordinate");
  for (int i = 0; i < n; ++i)
    if (grid.axis(i).count < 1 || !std::isfinite(grid.axis(i).min) || !std::isfinite(grid.axis(i).max))
      throw InvalidArgument("grid axes need count >= 1 and finite ranges");

  TheoremReport rep;
  rep.grid = grid;
  rep.inert_blocks = inert_blocks(inst.ps());
  const RhsEvaluator rhs(inst);

  std::vector<int> counts(static_cast<std::size_t>(n));
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    counts[static_cast<std::size_t>(i)] = grid.axis(i).count;
    total *= static_cast<std::size_t>(grid.axis(i).count);
  }

  if (inst.is_toric()) {
    rep.path = "exact";
    rep.tolerance = opts.tolerance.value_or(kTauNum);
    MaxAffine lhs = lhs_exact(inst);
    if (opts.claimed_body) {
      if (opts.claimed_body->dim() != n) throw InvalidArgument("claimed body has the wrong dimension");
      lhs = v_polydisc_body(*opts.claimed_body, *inst.toric_radii()).shifted(inst.weight_shift());
    }
    auto decode = [&](std::size_t idx, double* xi) {
      for (int i = n - 1; i >= 0; --i) {
        const auto c = static_cast<std::size_t>(counts[static_cast<std::size_t>(i)]);
        xi[i] = axis_value(grid.axis(i), static_cast<int>(idx % c));
        idx /= c;
      }
    };
    if (opts.keep_records) rep.records.resize(total);
    const Chunk best = parallel_max(total, opts.workers, [&](std::size_t begin, std::size_t end, Chunk& out) {
      std::vector<double> xi(static_cast<std::size_t>(n));
      for (std::size_t idx = begin; idx < end; ++idx) {
        decode(idx, xi.data());
        const double l = fast_eval(lhs, xi.data());
        const double r = rhs.at_log(xi);
        const double err = std::abs(l - r);
        if (err > out.max_error) {
          out.max_error = err;
          out.argmax = idx;
        }
        if (opts.keep_records)
          rep.records[idx] = {Eigen::Map<const Vector>(xi.data(), n), l, r};
      }
    });
    rep.points = total;
    rep.max_error = std::max(0.0, best.max_error);
    rep.argmax.resize(n);
    decode(best.argmax, rep.argmax.data());
  } else {
    if (opts.claimed_body) throw UnsupportedConfiguration("claimed bodies need a toric instance");
    rep.path = "approx";
    ApproxConfig cfg;
    cfg.m = opts.approx_m;
    cfg.weight = inst.weight_shift();
    const SiciakApproximator approx(cfg, inst.ps(), inst.compacts());
    const double count = static_cast<double>(approx.basis().lattice().points.size());
    rep.tolerance = opts.tolerance.value_or(std::log(count) / (2.0 * cfg.m) + 1.0 / cfg.m);

    // Coordinates of non-toric blocks also get sampled phases.
    std::vector<bool> phased(static_cast<std::size_t>(n), false);
    for (int j = 0; j < inst.ps().blocks(); ++j)
      if (!inst.compacts()[static_cast<std::size_t>(j)].toric_radii())
        for (int i = 0; i < inst.ps().factors()[static_cast<std::size_t>(j)].dim(); ++i)
          phased[static_cast<std::size_t>(inst.ps().offset(j) + i)] = true;
    const int phases = std::max(1, grid.phases);
    std::vector<int> radix = counts;
    std::size_t full = total;
    for (int i = 0; i < n; ++i)
      if (phased[static_cast<std::size_t>(i)]) {
        radix.push_back(phases);
        full *= static_cast<std::size_t>(phases);
      }
    auto decode = [&](std::size_t idx, double* xi, Complex* z) {
      std::vector<int> digit(radix.size());
      for (int d = static_cast<int>(radix.size()) - 1; d >= 0; --d) {
        digit[static_cast<std::size_t>(d)] = static_cast<int>(idx % static_cast<std::size_t>(radix[static_cast<std::size_t>(d)]));
        idx /= static_cast<std::size_t>(radix[static_cast<std::size_t>(d)]);
      }
      std::size_t extra = static_cast<std::size_t>(n);
      for (int i = 0; i < n; ++i) {
        xi[i] = axis_value(grid.axis(i), digit[static_cast<std::size_t>(i)]);
        double theta = 0.0;
        if (phased[static_cast<std::size_t>(i)])
          theta = 2.0 * std::numbers::pi * digit[extra++] / phases;
        z[i] = std::polar(std::exp(xi[i]), theta);
      }
    };
    if (opts.keep_records) rep.records.resize(full);
    const Chunk best = parallel_max(full, opts.workers, [&](std::size_t begin, std::size_t end, Chunk& out) {
      std::vector<double> xi(static_cast<std::size_t>(n));
      std::vector<Complex> z(static_cast<std::size_t>(n));
      for (std::size_t idx = begin; idx < end; ++idx) {
        decode(idx, xi.data(), z.data());
        const double l = approx(z);
        const double r = rhs(z);
        const double err = std::abs(l - r);
        if (err > out.max_error) {
          out.max_error = err;
          out.argmax = idx;
        }
        if (opts.keep_records) rep.records[idx] = {Eigen::Map<const Vector>(xi.data(), n), l, r};
      }
    });
    rep.points = full;
    rep.max_error = std::max(0.0, best.max_error);
    rep.argmax.resize(n);
    std::vector<Complex> z(static_cast<std::size_t>(n));
    decode(best.argmax, rep.argmax.data(), z.data());
  }
  rep.pass = rep.max_error <= rep.tolerance;
  return rep;
}

Corollary corollary_from_name(const std::string& name) {
  if (name == "siciak") return Corollary::siciak;
  if (name == "sum") return Corollary::sum;
  if (name == "pnorm") return Corollary::pnorm;
  if (name == "lowerhull") return Corollary::lowerhull;
  throw InvalidArgument("unknown corollary '" + name + "' (expected siciak, sum, pnorm or lowerhull)");
}

std::string to_string(Corollary c) {
  switch (c) {
  case Corollary::siciak: return "siciak";
  case Corollary::sum: return "sum";
  case Corollary::pnorm: return "pnorm";
  case Corollary::lowerhull: return "lowerhull";
  }
  return "unknown";
}

ConvexBody quarter_ball_polytope(double p, int arc_vertices) {
  if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
  if (arc_vertices < 2) throw InvalidArgument("need at least two arc vertices");
  std::vector<Vector> gens{Vector::Zero(2)};
  for (int k = 0; k < arc_vertices; ++k) {
    const double theta = 0.5 * std::numbers::pi * k / (arc_vertices - 1);
    Vector u(2);
    u << (k == arc_vertices - 1 ? 0.0 : std::cos(theta)), (k == 0 ? 0.0 : std::sin(theta));
    const double norm = std::pow(std::pow(u(0), p) + std::pow(u(1), p), 1.0 / p);
    gens.push_back(u / norm);
  }
  return ConvexBody(std::move(gens), "quarter_ball");
}

namespace {

ConvexBody default_intro_body() {
  return ConvexBody::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 0.5}}, "intro");
}

CorollaryReport run_siciak(const CorollaryParams& p) {
  std::vector<int> dims = p.dims.empty() ? std::vector<int>(static_cast<std::size_t>(p.ell), 1) : p.dims;
  const int l = static_cast<int>(dims.size());
  Matrix t = Matrix::Identity(l, l);
  std::vector<ConvexBody> factors;
  int n = 0;
  for (int d : dims) {
    factors.push_back(standard_simplex(d));
    n += d;
  }
  const auto inst = TheoremInstance::toric(ProductStructure(ConvexBody(t, "T"), std::move(factors)));
  CorollaryReport rep;
  rep.which = Corollary::siciak;
  VerifyOptions opts;
  opts.workers = p.workers;
  rep.theorem = verify_theorem(inst, p.grid, opts);
  // S must be the standard simplex, so V^S_K = log+ |z|_inf.
  rep.structure_ok = same_function(lhs_exact(inst), h_of_body(standard_simplex(n)));
  rep.pass = rep.theorem.pass && rep.structure_ok;
  return rep;
}

CorollaryReport run_sum(const CorollaryParams& p) {
  const ConvexBody s1 = p.s1.value_or(segment(0.0, 1.0));
  const ConvexBody s2 = p.s2.value_or(default_intro_body());
  const auto inst = TheoremInstance::toric(ProductStructure(ConvexBody::from_rows({{1, 1}}, "T"), {s1, s2}));
  CorollaryReport rep;
  rep.which = Corollary::sum;
  VerifyOptions opts;
  opts.workers = p.workers;
  rep.theorem = verify_theorem(inst, p.grid, opts);
  // S = S_1 x S_2: compare with the Cartesian product of generators.
  std::vector<Vector> prod;
  for (int a = 0; a < s1.size(); ++a)
    for (int b = 0; b < s2.size(); ++b) {
      Vector g(s1.dim() + s2.dim());
      g << s1.generator(a), s2.generator(b);
      prod.push_back(std::move(g));
    }
  rep.structure_ok = same_function(lhs_exact(inst), h_of_body(ConvexBody(std::move(prod))));
  rep.pass = rep.theorem.pass && rep.structure_ok;
  return rep;
}

CorollaryReport run_lowerhull(const CorollaryParams& p) {
  const ConvexBody s = p.body.value_or(default_intro_body());
  std::vector<ConvexBody> factors(static_cast<std::size_t>(s.dim()), segment(0.0, 1.0));
  const auto inst = TheoremInstance::toric(ProductStructure(s, std::move(factors)));
  CorollaryReport rep;
  rep.which = Corollary::lowerhull;
  VerifyOptions opts;
  opts.workers = p.workers;
  opts.claimed_body = lower_hull(s);
  rep.theorem = verify_theorem(inst, p.grid, opts);
  rep.structure_ok = same_function(h_of_body(lower_hull(s)), h_of_body(build_product_body(inst.ps())));
  rep.pass = rep.theorem.pass && rep.structure_ok;
  return rep;
}

CorollaryReport run_pnorm(const CorollaryParams& p) {
  const double q = p.p / (p.p - 1.0);
  if (!std::isfinite(q)) throw InvalidArgument("pnorm needs p > 1");
  const ConvexBody t = quarter_ball_polytope(p.p, p.arc_vertices);
  const auto inst = TheoremInstance::toric(ProductStructure(t, {segment(0.0, 1.0), segment(0.0, 1.0)}));
  CorollaryReport rep;
  rep.which = Corollary::pnorm;
  VerifyOptions opts;
  opts.workers = p.workers;
  rep.theorem = verify_theorem(inst, p.grid, opts);

  const MaxAffine lhs = lhs_exact(inst);
  const GridAxis axis = p.grid.axis(0);
  const int k = p.identity_points_per_axis;
  double worst = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      Vector xi(2);
      xi << axis.min + (axis.max - axis.min) * a / std::max(1, k - 1),
          axis.min + (axis.max - axis.min) * b / std::max(1, k - 1);
      const double v1 = std::max(0.0, xi(0));
      const double v2 = std::max(0.0, xi(1));
      const double err = std::abs(std::pow(lhs(xi), q) - (std::pow(v1, q) + std::pow(v2, q)));
      worst = std::max(worst, err);
    }
  rep.identity_error = worst;
  rep.identity_tolerance = p.identity_tolerance;
  rep.pass = rep.theorem.pass && worst <= p.identity_tolerance;
  return rep;
}

} // namespace

CorollaryReport corollary_suite(Corollary which, const CorollaryParams& params) {
  switch (which) {
  case Corollary::siciak: return run_siciak(params);
  case Corollary::sum: return run_sum(params);
  case Corollary::lowerhull: return run_lowerhull(params);
  case Corollary::pnorm: return run_pnorm(params);
  }
  throw InvalidArgument("unknown corollary");
}

} // namespace lelong
