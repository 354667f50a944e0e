#include <lelong/json_io.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace lelong::json_io {

namespace {

void write(std::ostringstream& out, const Json& j, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent > 0) out << '\n' << std::string(static_cast<std::size_t>(d * indent), ' ');
  };
  switch (j.type()) {
  case Json::value_t::object: {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << '{';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out << ',';
      first = false;
      pad(depth + 1);
      out << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
      write(out, it.value(), indent, depth + 1);
    }
    pad(depth);
    out << '}';
    return;
  }
  case Json::value_t::array: {
    if (j.empty()) {
      out << "[]";
      return;
    }
    // Arrays of scalars stay on one line.
    bool flat = true;
    for (const auto& v : j) flat = flat && !v.is_structured();
    out << '[';
    bool first = true;
    for (const auto& v : j) {
      if (!first) out << (flat && indent > 0 ? ", " : ",");
      first = false;
      if (!flat) pad(depth + 1);
      write(out, v, indent, depth + 1);
    }
    if (!flat) pad(depth);
    out << ']';
    return;
  }
  case Json::value_t::number_float:
    out << format_number(j.get<double>());
    return;
  default:
    out << j.dump();
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InvalidArgument(std::string("'") + what + "' must be a number");
  return j.get<double>();
}

} // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min(text.size(), e.byte == 0 ? 0 : e.byte - 1);
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (const auto p = msg.find("column"); p != std::string::npos) {
      if (const auto q = msg.find(": ", p); q != std::string::npos) msg = msg.substr(q + 2);
    }
    throw InvalidArgument("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump(const Json& j, int indent) {
  std::ostringstream out;
  write(out, j, indent, 0);
  return out.str();
}

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], "vector entry");
  return v;
}

Json to_json(const ComplexVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(Json::array({v(i).real(), v(i).imag()}));
  return a;
}

ComplexVector complex_vector_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array of complex numbers");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& e = j[i];
    if (e.is_number()) {
      v(static_cast<Eigen::Index>(i)) = e.get<double>();
    } else if (e.is_array() && e.size() == 2) {
      v(static_cast<Eigen::Index>(i)) = Complex(number(e[0], "real part"), number(e[1], "imaginary part"));
    } else {
      throw InvalidArgument("complex entries are numbers or [re, im] pairs");
    }
  }
  return v;
}

Json to_json(const ConvexBody& body) {
  Json gens = Json::array();
  for (int i = 0; i < body.size(); ++i) gens.push_back(to_json(body.generator(i)));
  return {{"dim", body.dim()}, {"generators", gens}, {"label", body.label()}};
}

ConvexBody body_from_json(const Json& j) {
  if (j.is_object() && j.contains("name")) return named_or_body(j);
  const Json& gens = field(j, "generators");
  if (!gens.is_array() || gens.empty()) throw InvalidArgument("'generators' must be a nonempty array");
  std::vector<Vector> rows;
  for (const auto& g : gens) rows.push_back(vector_from_json(g));
  if (j.contains("dim")) {
    const int dim = j.at("dim").get<int>();
    for (const auto& r : rows)
      if (r.size() != dim) throw InvalidArgument("generator dimension disagrees with 'dim'");
  }
  return ConvexBody(std::move(rows), j.value("label", std::string{}));
}

ConvexBody named_or_body(const Json& j) {
  if (!j.contains("name")) return body_from_json(j);
  const std::string name = j.at("name").get<std::string>();
  if (name == "simplex") return standard_simplex(j.value("dim", 2));
  if (name == "cube") return unit_cube(j.value("dim", 2));
  if (name == "segment") return segment(j.value("a", 0.0), j.value("b", 1.0));
  if (name == "intro") {
    const double a = j.value("a", 0.5);
    return ConvexBody::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, a}}, "intro");
  }
  throw InvalidArgument("unknown body name '" + name + "' (expected simplex, cube, segment or intro)");
}

Json to_json(const MaxAffine& f) {
  Json pieces = Json::array();
  for (int k = 0; k < f.size(); ++k) pieces.push_back({{"slope", to_json(Vector(f.slopes().row(k).transpose()))}, {"offset", f.offsets()(k)}});
  return {{"dim", f.dim()}, {"pieces", pieces}};
}

MaxAffine max_affine_from_json(const Json& j) {
  const int dim = field(j, "dim").get<int>();
  std::vector<AffinePiece> pieces;
  for (const auto& p : field(j, "pieces")) pieces.push_back({vector_from_json(field(p, "slope")), number(field(p, "offset"), "offset")});
  return MaxAffine(dim, pieces);
}

Json to_json(const CompactFactorSpec& k) {
  if (const auto* d = std::get_if<Disc>(&k.kind()))
    return {{"kind", "disc"}, {"center", {d->center.real(), d->center.imag()}}, {"radius", d->radius}};
  if (const auto* i = std::get_if<Interval>(&k.kind())) return {{"kind", "interval"}, {"a", i->a}, {"b", i->b}};
  const auto& p = std::get<Polydisc>(k.kind());
  return {{"kind", "polydisc"}, {"radii", p.radii}};
}

CompactFactorSpec factor_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "disc") {
    Complex c{};
    if (j.contains("center")) {
      const Json& cj = j.at("center");
      c = cj.is_array() ? Complex(number(cj.at(0), "center"), number(cj.at(1), "center")) : Complex(number(cj, "center"), 0.0);
    }
    return CompactFactorSpec::disc(c, j.value("radius", 1.0));
  }
  if (kind == "interval") return CompactFactorSpec::interval(number(field(j, "a"), "a"), number(field(j, "b"), "b"));
  if (kind == "polydisc") {
    std::vector<double> radii;
    for (const auto& r : field(j, "radii")) radii.push_back(number(r, "radius"));
    return CompactFactorSpec::polydisc(std::move(radii));
  }
  throw InvalidArgument("unknown compact kind '" + kind + "' (expected disc, interval or polydisc)");
}

ProductStructure structure_from_json(const Json& j) {
  std::vector<ConvexBody> factors;
  for (const auto& f : field(j, "factors")) factors.push_back(body_from_json(f));
  return ProductStructure(body_from_json(field(j, "T")), std::move(factors));
}

Json to_json(const ProductStructure& ps) {
  Json factors = Json::array();
  for (const auto& f : ps.factors()) factors.push_back(to_json(f));
  return {{"T", to_json(ps.t_body())}, {"factors", factors}};
}

std::vector<ProductCompact> compacts_from_json(const Json& j, const ProductStructure& ps) {
  std::vector<ProductCompact> out;
  if (!j.contains("compacts")) {
    for (const auto& f : ps.factors()) out.emplace_back(std::vector{CompactFactorSpec::unit_polydisc(f.dim())});
    return out;
  }
  for (const auto& block : j.at("compacts")) {
    std::vector<CompactFactorSpec> specs;
    if (block.is_array()) {
      for (const auto& f : block) specs.push_back(factor_from_json(f));
    } else {
      specs.push_back(factor_from_json(block));
    }
    out.emplace_back(std::move(specs));
  }
  return out;
}

TheoremInstance instance_from_json(const Json& j) {
  ProductStructure ps = structure_from_json(j);
  std::vector<ProductCompact> compacts = compacts_from_json(j, ps);
  std::vector<double> weights;
  if (j.contains("weights"))
    for (const auto& w : j.at("weights")) weights.push_back(number(w, "weight"));
  return TheoremInstance(std::move(ps), std::move(compacts), std::move(weights));
}

GridSpec grid_from_json(const Json& j) {
  GridSpec g;
  g.phases = j.value("phases", 8);
  if (j.contains("axes")) {
    for (const auto& a : j.at("axes")) g.axes.push_back({a.value("min", -3.0), a.value("max", 3.0), a.value("count", 41)});
  } else {
    g.axes.push_back({j.value("min", -3.0), j.value("max", 3.0), j.value("count", 41)});
  }
  return g;
}

Json to_json(const GridSpec& g) {
  Json axes = Json::array();
  for (const auto& a : g.axes) axes.push_back({{"min", a.min}, {"max", a.max}, {"count", a.count}});
  return {{"axes", axes}, {"phases", g.phases}};
}

Json to_json(const TheoremReport& r) {
  Json j = {{"path", r.path},       {"max_error", r.max_error}, {"argmax", to_json(r.argmax)},
            {"tolerance", r.tolerance}, {"pass", r.pass},       {"points", r.points},
            {"inert_blocks", r.inert_blocks}, {"grid", to_json(r.grid)}};
  return j;
}

Json to_json(const CorollaryReport& r) {
  Json j = {{"corollary", to_string(r.which)}, {"theorem", to_json(r.theorem)}, {"structure_ok", r.structure_ok},
            {"pass", r.pass}};
  if (r.identity_error) {
    j["identity_error"] = *r.identity_error;
    j["identity_tolerance"] = r.identity_tolerance;
  }
  return j;
}

Json to_json(const IntroReport& r) {
  return {{"construction", "intro"},
          {"inputs", {{"a", r.a}, {"R", r.radius}}},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"gap", r.gap},
          {"expected_gap", r.expected_gap},
          {"pass", r.pass}};
}

Json to_json(const WeightedWitness& w) {
  Json pts = Json::array();
  for (const auto& z : w.eval_points) pts.push_back(to_json(z));
  return {{"construction", "weighted"},
          {"inputs", {{"eta", to_json(w.eta)}, {"weights", w.weights}, {"eta_source", w.eta_source}}},
          {"eval_points", pts},
          {"lhs", w.lhs},
          {"rhs", w.rhs},
          {"gap", w.gap},
          {"level_error", w.level_error},
          {"identity_error", w.identity_error},
          {"pass", w.pass}};
}

Json to_json(const NonmaximalityReport& r) {
  return {{"construction", "nonmaximality"},
          {"inputs", {{"weights", r.weights}}},
          {"gap", r.gap},
          {"inconclusive", r.inconclusive},
          {"retried", r.retried},
          {"implication", r.implication},
          {"pass", r.pass}};
}

Json to_json(const SublevelWitness& w) {
  Json pts = Json::array();
  for (const auto& z : w.points) pts.push_back(to_json(z));
  Json j = {{"construction", "sublevel"},
            {"inputs", {{"t", w.t}}},
            {"branch", w.branch},
            {"axis_extents", to_json(w.axis_extents)},
            {"witness", to_json(w.witness)},
            {"points", pts},
            {"midpoint", to_json(w.midpoint)},
            {"values", w.values},
            {"lhs", w.midpoint_value},
            {"rhs", w.t},
            {"gap", w.midpoint_value - w.t},
            {"nonconvex", w.nonconvex},
            {"note", w.note},
            {"pass", w.pass}};
  j["t0"] = w.t0 ? Json(*w.t0) : Json(nullptr);
  j["excess_bound"] = w.excess_bound ? Json(*w.excess_bound) : Json(nullptr);
  return j;
}

Json to_json(const BernsteinWalshReport& r) {
  return {{"m", r.m},
          {"trials", r.trials},
          {"points", r.points},
          {"lattice_size", r.lattice_size},
          {"samples_per_axis", r.samples_per_axis},
          {"sampling_margin", r.sampling_margin},
          {"slack", r.slack},
          {"violations", r.violations},
          {"product_violations", r.product_violations},
          {"worst_log_ratio", r.worst_log_ratio},
          {"pass", r.pass}};
}

Json to_json(const SweepTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back({{"m", r.m}, {"max_error", r.max_error}, {"argmax", to_json(r.argmax)}});
  return {{"rows", rows}, {"fitted_c", t.fitted_c}, {"halving_monotone", t.halving_monotone}, {"rate_ok", t.rate_ok}};
}

Json to_json(const LatticeClass& l) {
  return {{"body", to_json(l.body)}, {"m", l.m}, {"sigma", l.sigma}, {"points", l.points}, {"count", l.points.size()}};
}

Json to_json(const GradedBasis& b) {
  Json factors = Json::array();
  for (const auto& f : b.factors()) {
    Json coeffs = Json::array();
    for (Eigen::Index k = 0; k < f.coeffs.rows(); ++k) {
      Json row = Json::array();
      for (Eigen::Index i = 0; i <= k; ++i) row.push_back(Json::array({f.coeffs(k, i).real(), f.coeffs(k, i).imag()}));
      coeffs.push_back(row);
    }
    factors.push_back({{"exponents", f.exponents},
                       {"grading", f.grading},
                       {"coefficients", coeffs},
                       {"nodes_per_axis", f.nodes_per_axis},
                       {"gram_error", f.gram_error}});
  }
  return {{"m", b.m()}, {"lattice", to_json(b.lattice())}, {"factors", factors}, {"product_index", b.product_index()},
          {"max_gram_error", b.max_gram_error()}};
}

} // namespace lelong::json_io
