#include <lelong/closed_forms.hpp>

#include <cmath>

namespace lelong {

CompactFactorSpec::CompactFactorSpec(Kind kind) : kind_(std::move(kind)) {
  if (const auto* d = std::get_if<Disc>(&kind_)) {
    if (!(d->radius > 0.0)) throw InvalidArgument("disc radius must be positive");
  } else if (const auto* i = std::get_if<Interval>(&kind_)) {
    if (!(i->a < i->b)) throw InvalidArgument("interval needs a < b");
  } else {
    const auto& p = std::get<Polydisc>(kind_);
    if (p.radii.empty()) throw InvalidArgument("polydisc needs at least one radius");
    for (double r : p.radii)
      if (!(r > 0.0)) throw InvalidArgument("polydisc radii must be positive");
  }
}

CompactFactorSpec CompactFactorSpec::disc(Complex center, double radius) {
  return CompactFactorSpec(Disc{center, radius});
}

CompactFactorSpec CompactFactorSpec::interval(double a, double b) { return CompactFactorSpec(Interval{a, b}); }

CompactFactorSpec CompactFactorSpec::polydisc(std::vector<double> radii) {
  return CompactFactorSpec(Polydisc{std::move(radii)});
}

CompactFactorSpec CompactFactorSpec::unit_polydisc(int n) {
  return polydisc(std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

int CompactFactorSpec::dim() const {
  if (const auto* p = std::get_if<Polydisc>(&kind_)) return static_cast<int>(p->radii.size());
  return 1;
}

std::optional<std::vector<double>> CompactFactorSpec::toric_radii() const {
  if (const auto* p = std::get_if<Polydisc>(&kind_)) return p->radii;
  if (const auto* d = std::get_if<Disc>(&kind_); d && d->center == Complex{})
    return std::vector<double>{d->radius};
  return std::nullopt;
}

ProductCompact::ProductCompact(std::vector<CompactFactorSpec> f) : factors(std::move(f)) {
  if (factors.empty()) throw InvalidArgument("product compact needs at least one factor");
}

int ProductCompact::total_dim() const {
  int n = 0;
  for (const auto& f : factors) n += f.dim();
  return n;
}

std::optional<std::vector<double>> ProductCompact::toric_radii() const {
  std::vector<double> radii;
  for (const auto& f : factors) {
    const auto r = f.toric_radii();
    if (!r) return std::nullopt;
    radii.insert(radii.end(), r->begin(), r->end());
  }
  return radii;
}

double v_disc(Complex center, double radius, Complex z) {
  if (!(radius > 0.0)) throw InvalidArgument("disc radius must be positive");
  return std::max(0.0, std::log(std::abs(z - center) / radius));
}

double v_interval(double a, double b, Complex z) {
  if (!(a < b)) throw InvalidArgument("interval needs a < b");
  const Complex w = (2.0 * z - (a + b)) / (b - a);
  const Complex root = std::sqrt(w * w - 1.0);
  const double m = std::max(std::abs(w + root), std::abs(w - root));
  return m <= 1.0 ? 0.0 : std::log(m);
}

double v_compact_1d(const CompactFactorSpec& k, Complex z) {
  if (const auto* d = std::get_if<Disc>(&k.kind())) return v_disc(d->center, d->radius, z);
  if (const auto* i = std::get_if<Interval>(&k.kind())) return v_interval(i->a, i->b, z);
  const auto& p = std::get<Polydisc>(k.kind());
  if (p.radii.size() != 1) throw InvalidArgument("expected a one-dimensional compact");
  return v_disc({}, p.radii.front(), z);
}

MaxAffine v_polydisc_body(const ConvexBody& body, std::span<const double> radii) {
  if (static_cast<int>(radii.size()) != body.dim()) throw InvalidArgument("v_polydisc_body: radii/body dimension mismatch");
  if (!contains(body, Vector::Zero(body.dim())))
    throw UnsupportedConfiguration("v_polydisc_body: body must contain the origin");
  Vector log_r(body.dim());
  for (int i = 0; i < body.dim(); ++i) {
    if (!(radii[static_cast<std::size_t>(i)] > 0.0)) throw InvalidArgument("polydisc radii must be positive");
    log_r(i) = std::log(radii[static_cast<std::size_t>(i)]);
  }
  const MaxAffine h = h_of_body(body);
  const Vector shift = h.slopes() * log_r;
  if (shift.maxCoeff() > kTauNum)
    throw UnsupportedConfiguration("polydisc is not contained in {H_S = 0}; no closed form is available");
  if (log_r.isZero(0.0)) return h;
  return MaxAffine(h.slopes(), -shift);
}

double v_factor_scaled(const CompactFactorSpec& k, double s, Complex z) {
  if (s < 0.0) throw InvalidArgument("scale must be nonnegative");
  if (s == 0.0) return 0.0;
  return s * v_compact_1d(k, z);
}

} // namespace lelong
