#include "doctest.h"

#include "tatep/instances.hpp"
#include "tatep/serialization.hpp"

#include <random>

using namespace tatep;

namespace {

const char* bundle_text = R"({
  "n": 1,
  "vertices": [
    {"id": 0, "coords": [["0", "0"]]},
    {"id": 1, "coords": [["1", "0"]]},
    {"id": 2, "coords": [["0", "1"]]}
  ],
  "simplexes": [[0, 1, 2]],
  "marked": {"D": [[1]]},
  "chains": {"gamma": [{"simplex": [1, 0, 2], "coeff": "3/2"}], "edge": [{"simplex": [0, 1], "coeff": 1}]}
})";

std::string parse_error(const std::string& text)
{
    try {
        parse_bundle(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("rationals are strings and reject decimals")
{
    CHECK(rational_to_json(Rational(-3, 4)) == "-3/4");
    CHECK(rational_from_json(Json("6/8"), "/x") == Rational(3, 4));
    CHECK(rational_from_json(Json(5), "/x") == 5);
    CHECK_THROWS_AS(rational_from_json(Json("0.5"), "/x"), ParseError);
    CHECK_THROWS_AS(rational_from_json(Json(0.5), "/x"), ParseError);
}

TEST_CASE("chain bundle round trip")
{
    auto b = parse_bundle(bundle_text);
    CHECK(b.complex.ambient_n() == 1);
    CHECK(b.complex.simplexes(2).size() == 1);
    CHECK(b.chains.at("gamma").coeff_oriented({0, 1, 2}) == Rational(-3, 2));
    CHECK(b.chains.at("edge").degree() == 1);
    CHECK(b.complex.is_marked("D", {1}));

    auto again = bundle_from_json(bundle_to_json(b));
    CHECK(again.chains.at("gamma") == b.chains.at("gamma"));
    CHECK(again.chains.at("edge") == b.chains.at("edge"));
    CHECK(again.complex.all_simplexes() == b.complex.all_simplexes());
    CHECK(bundle_to_json(again).dump() == bundle_to_json(b).dump());
}

TEST_CASE("bundle errors carry a location")
{
    std::string bad_coeff = bundle_text;
    bad_coeff.replace(bad_coeff.find("\"3/2\""), 5, "\"1.5\"");
    CHECK(parse_error(bad_coeff).find("/chains/gamma/0/coeff") != std::string::npos);

    std::string missing = bundle_text;
    missing.replace(missing.find("[1, 0, 2]"), 9, "[1, 0, 7]");
    CHECK(parse_error(missing).find("/chains/gamma/0/simplex") != std::string::npos);

    std::string wrong_mark = bundle_text;
    wrong_mark.replace(wrong_mark.find("\"D\": [[1]]"), 10, "\"D\": [[0]]");
    CHECK(parse_error(wrong_mark).find("/marked/D") != std::string::npos);

    CHECK(parse_error("{\"n\": 1,").find("malformed JSON") != std::string::npos);
    CHECK(parse_error("{}").find("missing field 'n'") != std::string::npos);
}

TEST_CASE("expressions round trip through their text form")
{
    for (const char* text : {"(+ t1 (* 2 t0))", "(- 1 t0)", "(expi (* 2 pi u))", "(inv (+ x i))", "(/ 1 (+ 3/2 (* -1/2 i)))"}) {
        Expr e = Expr::parse(text);
        CHECK(Expr::parse(e.to_string()) == e);
    }
    CHECK_THROWS_AS(Expr::parse("(+ 1"), ParseError);
    CHECK_THROWS_AS(Expr::parse("0.5"), ParseError);
}

TEST_CASE("parametrized cells round trip")
{
    auto box = disk_box_chain(Rational(1, 2), 3);
    Json j = cell_chain_to_json(box);
    auto back = cell_chain_from_json(j);
    CHECK(back.degree == box.degree);
    CHECK(back.terms.size() == box.terms.size());
    CHECK(cell_chain_to_json(back).dump() == j.dump());
    for (std::size_t i = 0; i < box.terms.size(); ++i)
        CHECK(back.terms[i].first->faces.size() == box.terms[i].first->faces.size());

    Json bad = j;
    bad["terms"][0]["cell"]["params"][0]["type"] = "ball";
    CHECK_THROWS_WITH_AS(cell_chain_from_json(bad), doctest::Contains("/terms/0/cell/params/0/type"), ParseError);
}

TEST_CASE("affine bounds reference earlier real parameters by name")
{
    Json cell = {{"n", 1},
                 {"params", Json::array({Json{{"name", "s"}, {"type", "real"}, {"lo", "0"}, {"hi", "1"}},
                                         Json{{"name", "t"}, {"type", "real"}, {"lo", "0"},
                                              {"hi", Json{{"const", "0"}, {"coef", Json{{"s", "1"}}}}}}})},
                 {"map", Json::array({"(+ s (* t i))"})}};
    auto c = cell_from_json(cell);
    CHECK(c.params[1].hi.coef.at(0) == 1);
    CHECK(cell_to_json(c)["params"][1]["hi"]["coef"]["s"] == "1");

    Json forward = cell;
    forward["params"][1]["hi"]["coef"] = Json{{"u", "1"}};
    CHECK_THROWS_AS(cell_from_json(forward), ParseError);

    Json unknown = cell;
    unknown["map"][0] = "(+ s w)";
    CHECK_THROWS_WITH_AS(cell_from_json(unknown), doctest::Contains("unknown parameter 'w'"), ParseError);
}

TEST_CASE("presentations and bar elements round trip")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        auto N = random_presentation(rng, 4);
        Json j = presentation_to_json(N);
        auto M = presentation_from_json(j);
        CHECK(presentation_to_json(M).dump() == j.dump());

        BarComplex B(N, BarCoefficients::Augmentation);
        auto x = random_bar_word(B, rng, 3);
        auto y = bar_from_json(M, bar_to_json(N, x));
        CHECK(bar_to_json(M, y).dump() == bar_to_json(N, x).dump());
    }
}

TEST_CASE("inconsistent product tables are rejected")
{
    std::mt19937_64 rng(4);
    auto N = random_presentation(rng, 3);
    Json j = presentation_to_json(N);
    auto first = j["product"].begin();
    first.value() = Json::array({Json{{"coeff", "7"}, {"monomial", Json::array()}}});
    CHECK_THROWS_AS(presentation_from_json(j), ParseError);
}

TEST_CASE("quadrature configuration keeps defaults for missing keys")
{
    QuadratureConfig base;
    auto cfg = config_from_json(Json{{"rel_tol", 1e-8}, {"seed", 5}}, base);
    CHECK(cfg.rel_tol == doctest::Approx(1e-8));
    CHECK(cfg.seed == 5);
    CHECK(cfg.max_evaluations == base.max_evaluations);
    CHECK(config_from_json(config_to_json(cfg)).rel_tol == cfg.rel_tol);
    CHECK_THROWS_AS(config_from_json(Json{{"rel_tol", "small"}}), ParseError);
}
