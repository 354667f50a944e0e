#pragma once

#include <lelong/closed_forms.hpp>
#include <lelong/counterexamples.hpp>
#include <lelong/convex_body.hpp>
#include <lelong/log_support.hpp>
#include <lelong/product_engine.hpp>
#include <lelong/siciak_approx.hpp>

#include <json.hpp>

#include <string>

namespace lelong::json_io {

using Json = nlohmann::json;

/// Parses text, reporting malformed input as InvalidArgument with line and column.
Json parse(const std::string& text);

/// Sorted keys, numbers with 17 significant digits, non-finite values as null.
std::string dump(const Json& j, int indent = 2);

std::string format_number(double x);

// Bodies: {"dim": n, "generators": [[...], ...], "label": "..."}
Json to_json(const ConvexBody& body);
ConvexBody body_from_json(const Json& j);

// {"dim": n, "pieces": [{"slope": [...], "offset": c}, ...]}
Json to_json(const MaxAffine& f);
MaxAffine max_affine_from_json(const Json& j);

// {"kind": "disc", "center": [re, im], "radius": r} | {"kind": "interval", "a", "b"}
// | {"kind": "polydisc", "radii": [...]}
Json to_json(const CompactFactorSpec& k);
CompactFactorSpec factor_from_json(const Json& j);

// A body, a canonical name ("simplex", "cube", "segment") or the intro body.
ConvexBody named_or_body(const Json& j);

// {"T": body, "factors": [body, ...]}
ProductStructure structure_from_json(const Json& j);
Json to_json(const ProductStructure& ps);

// Optional "compacts": [[factor, ...], ...] (default unit polydiscs) and "weights".
TheoremInstance instance_from_json(const Json& j);
std::vector<ProductCompact> compacts_from_json(const Json& j, const ProductStructure& ps);

Vector vector_from_json(const Json& j);
Json to_json(const Vector& v);
ComplexVector complex_vector_from_json(const Json& j);  // [[re, im], ...] or reals
Json to_json(const ComplexVector& v);

GridSpec grid_from_json(const Json& j);
Json to_json(const GridSpec& g);

Json to_json(const TheoremReport& r);
Json to_json(const CorollaryReport& r);
Json to_json(const IntroReport& r);
Json to_json(const WeightedWitness& w);
Json to_json(const NonmaximalityReport& r);
Json to_json(const SublevelWitness& w);
Json to_json(const BernsteinWalshReport& r);
Json to_json(const SweepTable& t);
Json to_json(const LatticeClass& l);
Json to_json(const GradedBasis& b);

} // namespace lelong::json_io
