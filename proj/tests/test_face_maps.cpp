#include "doctest.h"

#include "tatep/face_maps.hpp"
#include "tatep/instances.hpp"

using namespace tatep;

namespace {

Rational coefficient_sum(const Chain& c)
{
    Rational s = 0;
    for (auto& [k, v] : c.terms()) s += v;
    return s;
}

Rational star_coefficient(const FactorTriangulation& F, const Chain& c)
{
    for (std::size_t i = 0; i < F.triangles.size(); ++i)
        if (F.in_star[i]) {
            auto k = F.triangles[i];
            Chain one(1, 2);
            one.add_key(k, 1);
            // positive orientation coefficient
            Rational v = c.coeff(k);
            auto p0 = F.K.position(k[0]), p1 = F.K.position(k[1]), p2 = F.K.position(k[2]);
            Rational det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]);
            return sgn(det) > 0 ? v : Rational(-v);
        }
    return 0;
}

}  // namespace

TEST_CASE("random factor and product triangulations are good")
{
    std::mt19937_64 rng(7);
    auto F1 = random_factor_triangulation(rng, 4);
    auto rep1 = check_good_triangulation(F1.K);
    CHECK_MESSAGE(rep1.overall, rep1.summary());
    auto F2 = random_factor_triangulation(rng, 3);
    auto P = product_triangulation(F1, F2);
    auto rep = check_good_triangulation(P.K);
    CHECK_MESSAGE(rep.overall, rep.summary());
    CHECK(P.K.simplexes(4).size() == 6 * F1.triangles.size() * F2.triangles.size());
}

TEST_CASE("exact Thom cocycle is a cocycle vanishing on W")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 3; ++trial) {
        auto P = product_triangulation(random_factor_triangulation(rng, 3), random_factor_triangulation(rng, 4));
        for (int slot = 0; slot < 2; ++slot) {
            auto T = exact_thom_cocycle(P.K, CubicalFace::single(slot, Alpha::Zero));
            CHECK(is_cocycle(T, P.K));
            CHECK(vanishes_on_W(T, P.K));
        }
    }
}

TEST_CASE("face map of an admissible 2-chain picks out the coefficient at the origin")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto F = random_factor_triangulation(rng, 3 + trial % 4);
        Chain g = random_admissible_chain(F, rng);
        Chain f = face_map(g, F.K, 0, Alpha::Zero);
        CHECK(f.degree() == 0);
        CHECK(coefficient_sum(f) == star_coefficient(F, g));
    }
}

TEST_CASE("cubical differential squares to zero on admissible 4-chains")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 3; ++trial) {
        auto P = product_triangulation(random_factor_triangulation(rng, 3), random_factor_triangulation(rng, 3));
        Chain g = random_admissible_chain(P, rng);
        CubicalChain G{{CubicalFace{}, g}};
        auto d1 = cubical_differential(G, P.K);
        auto d2 = cubical_differential(d1, P.K);
        CHECK(d2.empty());
    }
}

TEST_CASE("prism of the two origin stars has iterated face map equal to one")
{
    std::mt19937_64 rng(9);
    auto P = product_triangulation(random_factor_triangulation(rng, 3), random_factor_triangulation(rng, 3));
    Chain g(2, 4);
    for (std::size_t i = 0; i < P.f1.triangles.size(); ++i)
        for (std::size_t j = 0; j < P.f2.triangles.size(); ++j)
            if (P.f1.in_star[i] && P.f2.in_star[j]) g += prism_chain(P, static_cast<int>(i), static_cast<int>(j));
    Chain a = face_map(g, P.K, 0, Alpha::Zero);
    Chain b = face_map(a, P.K, 1, Alpha::Zero, CubicalFace::single(0, Alpha::Zero));
    CHECK(coefficient_sum(b) == 1);
}

TEST_CASE("cap products for two good orderings are carrier homotopic")
{
    std::mt19937_64 rng(13);
    auto F = random_factor_triangulation(rng, 4);
    auto face = CubicalFace::single(0, Alpha::Zero);
    auto T = exact_thom_cocycle(F.K, face);
    auto O1 = build_good_ordering(F.K, face);
    auto O2 = random_good_ordering(F.K, face, rng);
    CHECK(is_good(O2, F.K, face));
    auto prob = ordering_problem(F.K, T, O1, O2);
    auto H = carrier_homotopy(F.K, prob.phi_a, prob.phi_b, prob.shift, prob.carrier);
    std::string why;
    CHECK_MESSAGE(check_homotopy(F.K, prob.phi_a, prob.phi_b, H, prob.carrier, &why), why);
}

TEST_CASE("barycentric operator agrees with the geometric subdivision operator and commutes with boundary")
{
    std::mt19937_64 rng(17);
    auto F = random_factor_triangulation(rng, 3);
    auto sd = barycentric_subdivision(F.K);
    Chain g = random_chain(F.K, 2, rng);
    CHECK(barycentric_operator(g, sd) == subdivision_operator(g, F.K, sd.fine));
    CHECK(boundary(barycentric_operator(g, sd)) == barycentric_operator(boundary(g), sd));
}

TEST_CASE("face map commutes with subdivision on an admissible chain")
{
    std::mt19937_64 rng(19);
    auto F = random_factor_triangulation(rng, 3);
    auto sd = barycentric_subdivision(F.K);
    Chain g = random_admissible_chain(F, rng);
    Chain a = face_map(g, F.K, 0, Alpha::Zero);
    Chain b = face_map(barycentric_operator(g, sd), sd.fine, 0, Alpha::Zero);
    CHECK(coefficient_sum(a) == coefficient_sum(b));
}
