#include "cli.hpp"

#include <lelong/json_io.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace lelong::cli {

namespace {

using json_io::Json;

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::optional<int> m;
  double a = 0.5;
  double radius = std::exp(1.0);
  std::optional<double> t;
  int trials = 500;
  int points = 100;
  std::string name;
  bool dump_basis = false;
};

struct Outcome {
  std::string text;
  int code = kPass;
};

int workers_from_env() {
  if (const char* w = std::getenv("LELONG_WORKERS")) {
    try {
      return std::max(1, std::stoi(w));
    } catch (const std::exception&) {
      throw InvalidArgument("LELONG_WORKERS must be a positive integer");
    }
  }
  return 1;
}

Json load_input(const Options& o, bool required) {
  if (o.input.empty()) {
    if (required) throw InvalidArgument("this command needs --input");
    return Json::object();
  }
  std::stringstream buf;
  if (o.input == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(o.input);
    if (!in) throw InvalidArgument("cannot read '" + o.input + "'");
    buf << in.rdbuf();
  }
  return json_io::parse(buf.str());
}

std::string num(double x) { return json_io::format_number(x); }

std::string json_text(const Json& j) { return json_io::dump(j) + "\n"; }

Outcome report(const Json& j, bool pass) { return {json_text(j), pass ? kPass : kFail}; }

std::vector<Vector> vectors_of(const Json& j, const char* one, const char* many) {
  std::vector<Vector> out;
  if (j.contains(one)) out.push_back(json_io::vector_from_json(j.at(one)));
  if (j.contains(many))
    for (const auto& v : j.at(many)) out.push_back(json_io::vector_from_json(v));
  if (out.empty()) throw InvalidArgument(std::string("need '") + one + "' or '" + many + "'");
  return out;
}

std::vector<ComplexVector> points_of(const Json& j) {
  std::vector<ComplexVector> out;
  if (j.contains("z")) out.push_back(json_io::complex_vector_from_json(j.at("z")));
  if (j.contains("points"))
    for (const auto& p : j.at("points")) out.push_back(json_io::complex_vector_from_json(p));
  if (j.contains("log_points"))
    for (const auto& p : j.at("log_points")) {
      const Vector xi = json_io::vector_from_json(p);
      ComplexVector z(xi.size());
      for (Eigen::Index i = 0; i < xi.size(); ++i) z(i) = std::exp(xi(i));
      out.push_back(std::move(z));
    }
  if (out.empty()) throw InvalidArgument("need 'z', 'points' or 'log_points'");
  return out;
}

std::span<const Complex> span_of(const ComplexVector& z) { return {z.data(), static_cast<std::size_t>(z.size())}; }

// phi_S(xi) for each direction.
Outcome cmd_support(const Options& o) {
  const Json in = load_input(o, true);
  const ConvexBody body = json_io::body_from_json(in.at("body"));
  const auto dirs = vectors_of(in, "xi", "directions");
  std::vector<double> values;
  for (const auto& xi : dirs) values.push_back(support(body, xi));
  if (o.format == "csv") {
    std::ostringstream s;
    for (int i = 0; i < body.dim(); ++i) s << "xi" << i + 1 << ',';
    s << "value\n";
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      for (Eigen::Index i = 0; i < dirs[k].size(); ++i) s << num(dirs[k](i)) << ',';
      s << num(values[k]) << '\n';
    }
    return {s.str(), kPass};
  }
  return report({{"label", body.label()}, {"values", values}}, true);
}

// H_S(z) = phi_S(Log z) with the limsup extension across coordinate hyperplanes.
Outcome cmd_hs(const Options& o) {
  const Json in = load_input(o, true);
  const ConvexBody body = json_io::body_from_json(in.at("body"));
  const MaxAffine h = h_of_body(body);
  const auto pts = points_of(in);
  std::vector<double> values;
  for (const auto& z : pts) {
    if (z.size() != body.dim()) throw InvalidArgument("point dimension differs from the body dimension");
    values.push_back(eval_extended(h, LogPoint::of(z)));
  }
  if (o.format == "csv") {
    std::ostringstream s;
    for (int i = 0; i < body.dim(); ++i) s << "xi" << i + 1 << ',';
    s << "value\n";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const LogPoint p = LogPoint::of(pts[k]);
      for (int i = 0; i < p.dim(); ++i) s << num(p.xi(i)) << ',';
      s << num(values[k]) << '\n';
    }
    return {s.str(), kPass};
  }
  return report({{"function", json_io::to_json(h)}, {"values", values}}, true);
}

// S = union over x in T of x_1 S_1 x ... x x_l S_l, plus a convexity probe of the union.
Outcome cmd_build_product(const Options& o) {
  const Json in = load_input(o, true);
  const ProductStructure ps = json_io::structure_from_json(in);
  const ConvexBody body = build_product_body(ps);
  const bool convex = probe_union_convexity(ps, in.value("trials", 200), o.seed);
  return report({{"body", json_io::to_json(body)}, {"union_convex", convex}, {"seed", o.seed}}, convex);
}

// Smallest lower set containing S; its support is phi_S(xi^+).
Outcome cmd_lower_hull(const Options& o) {
  const Json in = load_input(o, true);
  const ConvexBody body = json_io::body_from_json(in.contains("body") ? in.at("body") : in);
  return report({{"body", json_io::to_json(lower_hull(body))}}, true);
}

std::string records_csv(const TheoremReport& r, int n) {
  std::ostringstream s;
  for (int i = 0; i < n; ++i) s << "xi" << i + 1 << ',';
  s << "lhs,rhs,diff\n";
  for (const auto& rec : r.records) {
    for (Eigen::Index i = 0; i < rec.xi.size(); ++i) s << num(rec.xi(i)) << ',';
    s << num(rec.lhs) << ',' << num(rec.rhs) << ',' << num(rec.lhs - rec.rhs) << '\n';
  }
  return s.str();
}

// V^S_{K,q}(z) = phi_T(V^{S_1}_{K_1,q_1}(z_1), ..., V^{S_l}_{K_l,q_l}(z_l)) on a log grid.
Outcome cmd_verify_theorem(const Options& o) {
  const Json in = load_input(o, true);
  const TheoremInstance inst = json_io::instance_from_json(in);
  const GridSpec grid = in.contains("grid") ? json_io::grid_from_json(in.at("grid")) : GridSpec::uniform(-3.0, 3.0, 41);
  VerifyOptions opts;
  opts.tolerance = o.tol;
  opts.approx_m = o.m.value_or(in.value("m", 8));
  opts.workers = workers_from_env();
  opts.keep_records = o.format == "csv";
  if (in.contains("claimed_body")) opts.claimed_body = json_io::body_from_json(in.at("claimed_body"));
  const TheoremReport r = verify_theorem(inst, grid, opts);
  if (o.format == "csv") return {records_csv(r, inst.ps().total_dim()), r.pass ? kPass : kFail};
  return report(json_io::to_json(r), r.pass);
}

// Corollaries of the product formula: siciak, sum, pnorm, lowerhull.
Outcome cmd_corollary(const Options& o) {
  const Json in = load_input(o, false);
  const std::string name = !o.name.empty() ? o.name : in.value("name", std::string{});
  if (name.empty()) throw InvalidArgument("corollary needs --name");
  CorollaryParams p;
  p.ell = in.value("ell", p.ell);
  if (in.contains("dims")) p.dims = in.at("dims").get<std::vector<int>>();
  if (in.contains("s1")) p.s1 = json_io::body_from_json(in.at("s1"));
  if (in.contains("s2")) p.s2 = json_io::body_from_json(in.at("s2"));
  if (in.contains("body")) p.body = json_io::body_from_json(in.at("body"));
  p.p = in.value("p", p.p);
  p.arc_vertices = in.value("arc_vertices", p.arc_vertices);
  p.identity_points_per_axis = in.value("identity_points_per_axis", p.identity_points_per_axis);
  p.identity_tolerance = o.tol.value_or(in.value("identity_tolerance", p.identity_tolerance));
  if (in.contains("grid")) p.grid = json_io::grid_from_json(in.at("grid"));
  p.workers = workers_from_env();
  const CorollaryReport r = corollary_suite(corollary_from_name(name), p);
  return report(json_io::to_json(r), r.pass);
}

// (1/2m) log sum |p_alpha(z)|^2 over an orthonormal basis of P^S_m, approximating V^S_{K,q}.
Outcome cmd_approx_v(const Options& o) {
  const Json in = load_input(o, true);
  const TheoremInstance inst = json_io::instance_from_json(in);
  ApproxConfig cfg;
  cfg.m = o.m.value_or(in.value("m", 8));
  cfg.weight = inst.weight_shift();
  const SiciakApproximator approx(cfg, inst.ps(), inst.compacts());
  const auto pts = points_of(in);
  std::vector<double> values;
  for (const auto& z : pts) {
    if (z.size() != inst.ps().total_dim()) throw InvalidArgument("point dimension differs from the instance dimension");
    values.push_back(approx(span_of(z)));
  }
  if (o.format == "csv") {
    std::ostringstream s;
    for (int i = 0; i < inst.ps().total_dim(); ++i) s << "xi" << i + 1 << ',';
    s << "approx\n";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const LogPoint p = LogPoint::of(pts[k]);
      for (int i = 0; i < p.dim(); ++i) s << num(p.xi(i)) << ',';
      s << num(values[k]) << '\n';
    }
    return {s.str(), kPass};
  }
  Json j = {{"m", cfg.m},
            {"lattice_size", approx.basis().lattice().points.size()},
            {"max_gram_error", approx.basis().max_gram_error()},
            {"values", values}};
  if (o.dump_basis) j["basis"] = json_io::to_json(approx.basis());
  return report(j, true);
}

// Max error of the polynomial approximation against the exact extremal function for each m.
Outcome cmd_sweep(const Options& o) {
  const Json in = load_input(o, true);
  const TheoremInstance inst = json_io::instance_from_json(in);
  std::vector<int> ms = in.contains("ms") ? in.at("ms").get<std::vector<int>>() : std::vector<int>{4, 8, 16, 32};
  if (o.m) ms = {*o.m};
  const SweepTable t = convergence_sweep(ms, inst.ps(), inst.compacts(), points_of(in));
  const bool ok = t.halving_monotone && t.rate_ok;
  if (o.format == "csv") {
    std::ostringstream s;
    s << "m,max_error,argmax\n";
    for (const auto& r : t.rows) {
      s << r.m << ',' << num(r.max_error) << ',';
      for (Eigen::Index i = 0; i < r.argmax.size(); ++i)
        s << (i ? ";" : "") << num(r.argmax(i).real()) << ':' << num(r.argmax(i).imag());
      s << '\n';
    }
    return {s.str(), ok ? kPass : kFail};
  }
  return report(json_io::to_json(t), ok);
}

// S = ch{0, e_1, e_1 + e_2, a e_2} on the unit bidisc: a log R on the left, log R on the right.
Outcome cmd_intro(const Options& o) {
  const IntroReport r = intro_counterexample(o.a, o.radius);
  return report(json_io::to_json(r), r.pass);
}

// Constant weights q_j = -eta_j separate V^S_{K,q} from phi_T(V^{S_j}_{K_j,q_j}) by phi_T(eta) + phi_T(-eta).
Outcome cmd_weighted(const Options& o) {
  const Json in = load_input(o, true);
  const ProductStructure ps = json_io::structure_from_json(in);
  try {
    const WeightedWitness w = weighted_counterexample(ps);
    Json j = json_io::to_json(w);
    std::vector<double> given;
    if (in.contains("weights")) given = in.at("weights").get<std::vector<double>>();
    j["nonmaximality"] = json_io::to_json(nonmaximality_note(ps, given));
    return report(j, w.pass);
  } catch (const NoWitness& e) {
    return report({{"construction", "weighted"}, {"no_witness", true}, {"reason", e.what()}, {"pass", false}}, false);
  }
}

// Sublevel sets {H_S < t} are not convex for large t unless S is a simplex.
Outcome cmd_sublevel(const Options& o) {
  const Json in = load_input(o, true);
  const ConvexBody body = json_io::body_from_json(in.contains("body") ? in.at("body") : in);
  std::optional<double> t = o.t;
  if (!t && in.contains("t")) t = in.at("t").get<double>();
  try {
    const SublevelWitness w = sublevel_nonconvexity(body, t);
    return report(json_io::to_json(w), w.pass);
  } catch (const NotApplicable& e) {
    return report({{"construction", "sublevel"}, {"is_simplex", true}, {"refused", true}, {"reason", e.what()}, {"pass", false}},
                  false);
  }
}

// |f(z)| <= ||f||_K e^{m V^S_K(z)} for random f in P^S_m at random points outside K.
Outcome cmd_bw_check(const Options& o) {
  const Json in = load_input(o, true);
  const TheoremInstance inst = json_io::instance_from_json(in);
  const BernsteinWalshReport r = bernstein_walsh_check(inst.ps(), inst.compacts(), o.m.value_or(in.value("m", 5)), o.trials,
                                                       o.points, o.seed, o.tol.value_or(1e-6));
  Json j = json_io::to_json(r);
  j["seed"] = o.seed;
  return report(j, r.pass);
}

void write_output(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty() || o.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw InvalidArgument("cannot write '" + o.output + "'");
  f << text;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Product formulas for Siciak-Zakharyuta extremal functions with convex-body growth", "lelong"};
  app.require_subcommand(1);

  using Handler = std::function<Outcome(const Options&)>;
  std::map<std::string, Handler> handlers;
  auto add = [&](const std::string& name, const std::string& doc, Handler h) {
    CLI::App* sub = app.add_subcommand(name, doc);
    sub->add_option("--input,-i", o.input, "JSON input file ('-' for stdin)");
    sub->add_option("--output,-o", o.output, "report file (default stdout)");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", o.seed, "seed for randomized probes");
    sub->add_option("--tol", o.tol, "tolerance override");
    handlers[name] = std::move(h);
    return sub;
  };

  add("support", "phi_S(xi) = max over generators of <g, xi>", cmd_support);
  add("hs", "H_S(z) = phi_S(Log z), extended across coordinate hyperplanes", cmd_hs);
  add("build-product", "product body of (T, S_1, ..., S_l) and a union-convexity probe", cmd_build_product);
  add("lower-hull", "lower hull of S", cmd_lower_hull);
  auto* verify = add("verify-theorem", "V^S_K = phi_T(V^{S_j}_{K_j}) on a log grid", cmd_verify_theorem);
  verify->add_option("--m", o.m, "degree for non-toric instances");
  auto* cor = add("corollary", "siciak, sum, pnorm or lowerhull special cases", cmd_corollary);
  cor->add_option("--name", o.name, "corollary name");
  auto* approx = add("approx-v", "Bergman-sum approximation of V^S_K of degree m", cmd_approx_v);
  approx->add_option("--m", o.m, "degree");
  approx->add_flag("--dump-basis", o.dump_basis, "include the orthonormal basis");
  auto* sweep = add("sweep", "approximation error against the exact V^S_K for several m", cmd_sweep);
  sweep->add_option("--m", o.m, "single degree");
  auto* intro = add("counterexample-intro", "non-lower body where the convex-body product formula fails", cmd_intro);
  intro->add_option("--a", o.a, "height of the body, 0 < a < 1");
  intro->add_option("--R", o.radius, "modulus R >= 1");
  add("counterexample-weighted", "constant weights break the product formula when T is not a point", cmd_weighted);
  auto* sub = add("counterexample-sublevel", "non-convex sublevel sets of H_S", cmd_sublevel);
  sub->add_option("--t", o.t, "level t > 0");
  auto* bw = add("bw-check", "Bernstein-Walsh inequality for random polynomials in P^S_m", cmd_bw_check);
  bw->add_option("--m", o.m, "degree");
  bw->add_option("--trials", o.trials, "random polynomials");
  bw->add_option("--points", o.points, "external points");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "lelong: " << e.what() << "\n";
    return kUsage;
  }

  std::string chosen;
  for (const auto* s : app.get_subcommands()) chosen = s->get_name();
  try {
    const Outcome r = handlers.at(chosen)(o);
    write_output(o, r.text, out);
    return r.code;
  } catch (const Error& e) {
    err << "lelong " << chosen << ": " << e.what() << "\n";
  } catch (const Json::exception& e) {
    err << "lelong " << chosen << ": invalid input: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "lelong " << chosen << ": invalid input: " << e.what() << "\n";
  }
  return kUsage;
}

} // namespace lelong::cli
