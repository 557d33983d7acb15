#include "doctest.h"

#include "tatep/hodge.hpp"

#include <cmath>
#include <numbers>

using namespace tatep;
using cd = std::complex<double>;

namespace {

const cd two_pi_i{0, 2 * std::numbers::pi};

}  // namespace

TEST_CASE("series oracles")
{
    const double ln2 = std::log(2.0);
    CHECK(std::abs(dilog_series(0.5) - (std::numbers::pi * std::numbers::pi / 12 - ln2 * ln2 / 2)) < 1e-14);
    CHECK(std::abs(li1_series(0.5) - ln2) < 1e-14);
    CHECK_THROWS_AS(dilog_series(1.0), DomainError);
}

TEST_CASE("period values track exactness")
{
    auto a = PeriodValue::exact_value(1, -1);
    auto b = PeriodValue::exact_value(Rational(1, 2), -1);
    a += b;
    CHECK(a.exact);
    CHECK(a.q == Rational(3, 2));
    CHECK(std::abs(a.value - 1.5 / two_pi_i) < 1e-15);
    a += PeriodValue::exact_value(1, 0);
    CHECK_FALSE(a.exact);
    CHECK(PeriodValue::exact_value(0, 3).is_exact_zero());
    CHECK(PeriodValue::exact_value(1, -2).symbolic() == "(2πi)^-2");
}

TEST_CASE("dilogarithm scenario relations hold")
{
    auto S = build_dilog_scenario(Rational(1, 2), {}, false);
    for (const auto& r : S->relations) {
        INFO(r.name << " " << r.detail);
        CHECK(r.pass);
    }
}

TEST_CASE("comparison of the weight-one cocycle gives log(1 − a)")
{
    auto S = build_dilog_scenario(Rational(1, 3));
    auto c = comparison_map(S->betti_cocycles.at("Z1(a)"), S->evaluator());
    REQUIRE(c.size() == 2);
    for (const auto& [k, v] : c) {
        if (k.letters.empty()) {
            CHECK(std::abs(v.value - std::log(2.0 / 3) / (two_pi_i * two_pi_i)) < 1e-10);
        } else {
            CHECK(v.exact);
            CHECK(v.power == -2);
        }
    }
    auto c0 = comparison_map(S->betti_cocycles.at("Z0"), S->evaluator());
    REQUIRE(c0.size() == 1);
    CHECK(c0.begin()->second.exact);
    CHECK(c0.begin()->second.q == 1);
}

TEST_CASE("realization kernels are three-dimensional with the expected bases")
{
    auto S = build_dilog_scenario(Rational(1, 2), {}, false);
    auto BB = S->bar_betti();
    auto Kb = realization_kernel(S->V, BB, S->betti_cocycles, Side::Betti);
    auto BN = S->bar_N();
    auto Kd = realization_kernel(S->V, BN, S->derham_cocycles, Side::DeRham);
    REQUIRE(Kb.dim() == 3);
    REQUIRE(Kd.dim() == 3);
    CHECK(Kb.to_string(0) == "v2 = e2⊗Z0·(2πi)^-2 - e1⊗Z1(a) + e0⊗Z2");
    CHECK(Kb.to_string(1) == "v1 = e1⊗Z0·(2πi)^-1 + e0⊗Z1(1-a)·(2πi)^1");
    CHECK(Kb.to_string(2) == "v0 = e0⊗Z0");
    CHECK(Kd.to_string(0) == "w2 = e2⊗1·(2πi)^-2 - e1⊗Li1(a)·(2πi)^-2 + e0⊗Li2(a)·(2πi)^-2");
    CHECK(weight_graded_dims(Kb, BB, S->betti_cocycles, S->V) == std::vector<int>{1, 1, 1});
    CHECK(weight_graded_dims(Kd, BN, S->derham_cocycles, S->V) == std::vector<int>{1, 1, 1});
}

TEST_CASE("trivial comodule has the unit kernel")
{
    auto S = build_dilog_scenario(Rational(1, 2), {}, false);
    GradedComodule V;
    V.basis = {"e0"};
    V.grade = {0};
    V.coaction = {{{0, "1", 1}}};
    auto K = realization_kernel(V, S->bar_betti(), S->betti_cocycles, Side::Betti);
    REQUIRE(K.dim() == 1);
    CHECK(K.to_string(0) == "v0 = e0⊗Z0");
}

TEST_CASE("inconsistent coaction is rejected")
{
    auto S = build_dilog_scenario(Rational(1, 2), {}, false);
    GradedComodule V = S->V;
    V.coaction[0][1].coeff = 2;
    CHECK_THROWS_AS(V.validate(S->bar_N()), ValidationError);
}

TEST_CASE("dilogarithm period matrix at a = 1/2")
{
    auto S = build_dilog_scenario(Rational(1, 2));
    auto P = period_matrix(S->V, S->bar_betti(), S->betti_cocycles, S->derham_cocycles, S->evaluator());
    REQUIRE(P.entries.size() == 3);
    CHECK(P.lower_triangular());
    CHECK(P.entries[0][0].symbolic() == "(2πi)^-2");
    CHECK(P.entries[1][1].symbolic() == "(2πi)^-1");
    CHECK(P.entries[2][2].symbolic() == "1");
    const double ln2 = std::log(2.0);
    CHECK(std::abs(P.entries[1][0].value * two_pi_i * two_pi_i - ln2) < 1e-6);
    CHECK(std::abs(P.entries[2][1].value * two_pi_i + ln2) < 1e-6);
    CHECK(std::abs(P.entries[2][0].value * two_pi_i * two_pi_i - dilog_series(0.5)) < 1e-4);
    CHECK(P.residual < 1e-12);
    for (const auto& c : mixed_tate_data(P).validate()) {
        INFO(c.name << " " << c.detail);
        CHECK(c.pass);
    }
}

TEST_CASE("dilogarithm Cauchy chains")
{
    for (auto a : {Rational(1, 10), Rational(1, 2), Rational(9, 10)})
        for (const auto& [name, gamma] : dilog_cauchy_chains(a)) {
            auto rep = verify_cauchy(gamma);
            INFO(name << " " << to_string(a) << " residual " << std::abs(rep.residual));
            CHECK(rep.pass);
            CHECK(std::abs(rep.residual) < 1e-4);
        }
}

TEST_CASE("weight and Hodge filtrations on bar elements")
{
    auto S = build_dilog_scenario(Rational(1, 2), {}, false);
    auto BB = S->bar_betti();
    FilteredBarComplex F{Side::Betti, &BB};
    const auto& Z2 = S->betti_cocycles.at("Z2");
    CHECK(F.weight_truncate(Z2, 4) == Z2);
    CHECK(F.weight_truncate(Z2, 1).size() == 1);
    CHECK(F.weight_graded(Z2, 2).size() == 2);
    CHECK(F.weight_graded(Z2, 1).size() == 1);
    CHECK(F.weight_graded(Z2, 0).size() == 1);
    CHECK_THROWS_AS(F.hodge_truncate(Z2, 1), ContractError);
}
