#pragma once

#include "tatep/bar_dga.hpp"
#include "tatep/chain_core.hpp"
#include "tatep/face_maps.hpp"
#include "tatep/geometry.hpp"
#include "tatep/hodge.hpp"
#include "tatep/integrator.hpp"

#include "json.hpp"

#include <map>
#include <string>

namespace tatep {

using Json = nlohmann::ordered_json;

/// A complex with named simplicial chains and named parametrized chains.
///
/// {"n": 2,
///  "vertices": [{"id": 0, "coords": [["1/2", "0"], "inf"]}, ...],
///  "simplexes": [[0, 1, 2], ...],
///  "marked": {"D": [[...]], "H_1_0": [[...]]},
///  "chains": {"gamma": [{"simplex": [0, 1, 2], "coeff": "3/2"}]},
///  "cell_chains": {"sigma": {"n": 2, "degree": 3, "terms": [{"cell": {...}, "coeff": "1"}]}}}
///
/// Rationals are strings "p/q" (JSON integers are accepted on input). Simplexes list the
/// maximal simplexes; faces are implied. A chain term's simplex is an ordered vertex list and
/// its coefficient refers to that orientation.
struct ChainBundle {
    SimplicialComplex complex;
    std::map<std::string, Chain> chains;
    std::map<std::string, CellChain> cell_chains;
};

Json rational_to_json(const Rational& q);
/// Throws ParseError naming `where` on decimals, floats or malformed text.
Rational rational_from_json(const Json& j, const std::string& where);

Json complex_to_json(const SimplicialComplex& K);
Json chain_to_json(const Chain& c);
Json bundle_to_json(const ChainBundle& b);

/// Parses a bundle; errors are ParseError with a JSON-pointer location.
ChainBundle bundle_from_json(const Json& j);
ChainBundle parse_bundle(const std::string& text);
ChainBundle read_bundle(const std::string& path);

/// ParamCell:
/// {"label": "eta2(0)", "n": 2, "orientation": 1,
///  "params": [{"name": "t1", "type": "real", "lo": "0", "hi": "1/2"},
///             {"name": "t0", "type": "real", "lo": "0", "hi": {"const": "0", "coef": {"t1": "1"}}},
///             {"name": "x", "type": "disk", "center": ["0", "0"], "r_lo": "0", "r_hi": "1"},
///             {"name": "y", "type": "sphere"}],
///  "map": ["t1", "(- 1 t0)"],
///  "declared_faces": [{"slot": 3, "alpha": "0", "terms": [{"cell": {...}, "mult": 1}]}]}
///
/// Map entries use the prefix grammar of Expr; slots are 1-based.
Json cell_to_json(const ParamCell& c);
ParamCell cell_from_json(const Json& j, const std::string& where = "");
Json cell_chain_to_json(const CellChain& c);
CellChain cell_chain_from_json(const Json& j, const std::string& where = "");

/// {"generators": [{"name", "r", "deg", "kind": "cycle" | "chain"}],
///  "differential": {"name": [{"coeff": "p/q", "monomial": ["x", "y"]}]},
///  "product": {"x*y": [...]}, "augmentation": {"1": "1", "x": "0"}}
///
/// Presentations are free graded-commutative: on input the product and augmentation
/// tables are optional and, when present, must agree with the free structure.
Json presentation_to_json(const DGAPresentation& N);
DGAPresentation presentation_from_json(const Json& j);

Json poly_to_json(const DGAPresentation& N, const Poly& p);
Poly poly_from_json(const DGAPresentation& N, const Json& j, const std::string& where);

/// Bar element as nested lists: [[coeff, [letter, ...], right, twist], ...] where each letter
/// and the right factor are lists of generator names.
Json bar_to_json(const DGAPresentation& N, const BarChain& x);
BarChain bar_from_json(const DGAPresentation& N, const Json& j);

/// {"value": [re, im], "err": e, "converged": true, "evaluations": k, "exact_zero": false}
Json integral_to_json(const IntegralResult& r);

/// {"face": "H_1_0", "backend": "exact", "epsilon": 0, "values": {"[0,1,2]": "1"}}
Json thom_to_json(const ThomCocycle& T);

/// {"symbolic": "(2πi)^-1", "value": [re, im], "error": e, "exact": true}
Json period_value_to_json(const PeriodValue& v);
Json period_matrix_to_json(const PeriodMatrix& P);

/// {"rel_tol", "abs_tol", "max_evaluations", "truncation_radii", "seed", "threads"}; missing keys keep defaults.
QuadratureConfig config_from_json(const Json& j, QuadratureConfig base = {});
Json config_to_json(const QuadratureConfig& cfg);

}  // namespace tatep
