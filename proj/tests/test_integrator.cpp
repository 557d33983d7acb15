#include "doctest.h"

#include "tatep/instances.hpp"
#include "tatep/integrator.hpp"

#include <cmath>
#include <numbers>

using namespace tatep;
using cd = std::complex<double>;

namespace {

const cd two_pi_i{0, 2 * std::numbers::pi};

CellPtr segment(const Rational& a, const Rational& b)
{
    ParamCell c;
    c.n = 1;
    c.params.push_back(Param::real("t", Affine::constant(a), Affine::constant(b)));
    c.map.push_back(Expr::param("t"));
    return std::make_shared<const ParamCell>(c);
}

ParamCell disk_cell(const Rational& r)
{
    ParamCell c;
    c.n = 1;
    c.params.push_back(Param::disk("x", ComplexQ{0, 0}, r));
    c.map.push_back(Expr::param("x"));
    return c;
}

}  // namespace

TEST_CASE("segment integral matches ln(b/a)/(2πi)")
{
    auto r = integrate_omega(*segment(1, 2));
    CHECK(r.converged);
    CHECK(std::abs(r.value - std::log(2.0) / two_pi_i) < 1e-12);
}

TEST_CASE("cells with a complex parameter or a constant slot vanish for the reason of type")
{
    ParamCell c;
    c.n = 2;
    c.params.push_back(Param::disk("x", ComplexQ{0, 0}, 1));
    c.map = {Expr::param("x"), Expr::parse("(* 2 x)")};
    auto r = integrate_omega(c);
    CHECK(r.exact_zero);
    CHECK(r.value == cd(0));
}

TEST_CASE("generalized Cauchy formula on the disk box")
{
    for (auto [a, b] : std::vector<std::pair<Rational, Rational>>{{1, 2}, {Rational(1, 2), 3}, {Rational(1, 4), Rational(3, 4)}}) {
        auto gamma = disk_box_chain(a, b);
        auto rep = verify_cauchy(gamma);
        CHECK(rep.pass);
        CHECK(std::abs(rep.residual) < 1e-6);
        cd expected = std::log(Rational(b / a).get_d()) / two_pi_i;
        CHECK(std::abs(rep.boundary_term.value - expected) < 1e-6);
    }
}

TEST_CASE("I_n is rational-linear")
{
    CellChain c1{1, 1, {}}, c2{1, 1, {}}, both{1, 1, {}};
    auto s1 = segment(1, 3), s2 = segment(Rational(1, 5), 2);
    c1.add(s1, 1);
    c2.add(s2, 1);
    both.add(s1, 3);
    both.add(s2, Rational(-2, 7));
    auto lhs = I_n(both);
    cd rhs = 3.0 * I_n(c1).value - 2.0 / 7 * I_n(c2).value;
    CHECK(std::abs(lhs.value - rhs) <= lhs.error + 1e-12);
}

TEST_CASE("I_0 is the coefficient sum and cells in D vanish")
{
    ParamCell pt;
    pt.n = 0;
    CellChain c{0, 0, {}};
    c.add(std::make_shared<const ParamCell>(pt), Rational(5, 3));
    CHECK(std::abs(I_n(c).value - 5.0 / 3) < 1e-15);

    ParamCell inD;
    inD.n = 2;
    inD.params.push_back(Param::real("t", Affine::constant(1), Affine::constant(2)));
    inD.params.push_back(Param::real("s", Affine::constant(0), Affine::constant(1)));
    inD.map = {Expr::constant(Rational(1)), Expr::param("t")};
    CHECK(integrate_omega(inD).value == cd(0));
}

TEST_CASE("simplicial Cauchy formula in one variable recovers the coefficient at the origin")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 4; ++trial) {
        auto F = random_factor_triangulation(rng, 3 + trial);
        Chain g = random_admissible_chain(F, rng);
        auto rep = verify_cauchy(g, F.K);
        CHECK(rep.pass);
        CHECK(std::abs(rep.residual) < 1e-8);
    }
}

TEST_CASE("Thom form integrates to one over C")
{
    for (double eps : {0.1, 0.01}) {
        auto r = thom_form_value(disk_cell(1), 0, Alpha::Zero, eps);
        CHECK(std::abs(r.value - 1.0) < 1e-8);
        ParamCell s;
        s.n = 1;
        s.params.push_back(Param::sphere("x"));
        s.map.push_back(Expr::param("x"));
        CHECK(std::abs(thom_form_value(s, 0, Alpha::Zero, eps).value - 1.0) < 1e-8);
        CHECK(std::abs(thom_form_value(s, 0, Alpha::Inf, eps).value - 1.0) < 1e-8);
    }
    ParamCell far = disk_cell(1);
    far.params[0].center = ComplexQ{5, 0};
    auto r = thom_form_value(far, 0, Alpha::Zero, 0.1);
    CHECK(r.exact_zero);
    CHECK(r.value == cd(0));
    CHECK_THROWS_AS(thom_form_value(disk_cell(Rational(1, 20)), 0, Alpha::Zero, 0.1), PreconditionError);
}

TEST_CASE("numerical Thom values match exact intersection numbers on transverse triangles")
{
    std::mt19937_64 rng(29);
    int checked = 0;
    while (checked < 10) {
        auto K = random_simplex_complex(rng, 2, 2);
        auto face = CubicalFace::single(0, Alpha::Zero);
        ThomCocycle T;
        try {
            T = exact_thom_cocycle(K, face);
        } catch (const GenericityError&) {
            continue;
        }
        SimplexKey key{0, 1, 2};
        auto cell = to_param_cell(LinearCell::from_simplex(K, key));
        try {
            auto r = thom_form_value(cell, 0, Alpha::Zero, 0.05);
            CHECK(std::abs(r.value - T(key).get_d()) < 1e-6);
            ++checked;
        } catch (const PreconditionError&) {
        }
    }
}

TEST_CASE("declared face of the disk box has multiplicity one")
{
    auto gamma = disk_box_chain(Rational(1, 2), 2);
    auto checks = validate_declared_faces(*gamma.terms[0].first, 0.02);
    REQUIRE(checks.size() == 1);
    CHECK(checks[0].pass);
}

TEST_CASE("truncation boundary mass on the disk box decreases with the radius")
{
    auto gamma = disk_box_chain(Rational(1, 1000), 2);
    double prev = INFINITY;
    for (double eps : {0.1, 0.03, 0.01, 0.003}) {
        auto t = truncate_chain(gamma, eps, {0, 1}, TruncationMode::Pair);
        auto m = abs_omega_mass(t.eq);
        double expected = std::log(eps * 1000) / (2 * std::numbers::pi);
        CHECK(std::abs(m.value.real() - expected) < 1e-6);
        CHECK(m.value.real() < prev);
        prev = m.value.real();
    }
}

TEST_CASE("truncation of a chain far from the faces is the identity")
{
    CellChain c{1, 1, {}};
    c.add(segment(2, 3), 1);
    auto t = truncate_chain(c, 0.1, {0});
    CHECK(t.geq.terms.size() == 1);
    CHECK(t.eq.empty());
}
