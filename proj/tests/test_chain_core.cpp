#include "doctest.h"

#include "tatep/chain_core.hpp"
#include "tatep/instances.hpp"

#include <random>

using namespace tatep;

namespace {

Vertex at(int id, const Rational& re, const Rational& im = 0)
{
    return Vertex{id, {Slot::finite(ComplexQ{re, im})}};
}

/// The full triangle on vertices 0, 1, 2 in ℂ¹ with vertex 1 on the divisor z = 1.
SimplicialComplex triangle()
{
    SimplicialComplex K(1);
    K.add_vertex(at(0, 0, 0));
    K.add_vertex(at(1, 1, 0));
    K.add_vertex(at(2, 0, 1));
    K.add_simplex({0, 1, 2});
    return K;
}

Chain single(const std::vector<int>& ordered, int n = 1)
{
    Chain c(n, static_cast<int>(ordered.size()) - 1);
    c.add(ordered, 1);
    return c;
}

}  // namespace

TEST_CASE("boundary of a triangle alternates signs")
{
    auto d = boundary(single({0, 1, 2}));
    Chain expected(1, 1);
    expected.add({1, 2}, 1);
    expected.add({0, 2}, -1);
    expected.add({0, 1}, 1);
    CHECK(d == expected);
    CHECK(d.degree() == 1);
    CHECK(boundary(d).is_zero());
}

TEST_CASE("orientation of a chain term follows the vertex order")
{
    Chain c(1, 1);
    c.add({1, 0}, 1);
    CHECK(c.coeff_oriented({0, 1}) == -1);
    CHECK(c.coeff_oriented({1, 0}) == 1);
    c.add({0, 1}, 1);
    CHECK(c.is_zero());
}

TEST_CASE("boundary squares to zero on random 3-chains")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto K = random_simplex_complex(rng, 2, 4);
        auto c = random_chain(K, 3, rng);
        CHECK(boundary(boundary(c, &K), &K).is_zero());
    }
}

TEST_CASE("relative boundary drops simplexes in the divisor")
{
    auto K = triangle();
    CHECK(K.in_divisor({1}));
    CHECK_FALSE(K.in_divisor({0}));
    auto d = boundary(single({0, 1}), &K, true);
    Chain expected(1, 0);
    expected.add({0}, -1);
    CHECK(d == expected);
}

TEST_CASE("boundary rejects simplexes outside the complex")
{
    auto K = triangle();
    K.add_vertex(at(3, 2, 2));
    CHECK_THROWS_AS(boundary(single({0, 3}), &K), StructuralError);
}

TEST_CASE("incidence index matches the boundary coefficient")
{
    CHECK(incidence_index({0, 1, 2}, {1, 2}) == 1);
    CHECK(incidence_index({0, 1, 2}, {0, 2}) == -1);
    CHECK(incidence_index({0, 1, 2}, {0, 1}) == 1);
    CHECK_THROWS_AS(incidence_index({0, 1, 2}, {0, 3}), DomainError);

    std::vector<int> sigma{0, 1, 2, 3};
    for (const auto& rho : faces_of(sigma, 1)) {
        int total = 0;
        for (const auto& nu : faces_of(sigma, 2)) {
            bool contains = std::includes(nu.begin(), nu.end(), rho.begin(), rho.end());
            if (contains) total += incidence_index(sigma, nu) * incidence_index(nu, rho);
        }
        CHECK(total == 0);
    }
}

TEST_CASE("solve_boundary finds the cone solution")
{
    auto K = triangle();
    Chain target(1, 0);
    target.add({1}, 1);
    target.add({0}, -1);
    auto t = solve_boundary(target, K);
    CHECK(boundary(t) == target);
    CHECK(solve_boundary(Chain(1, 0), K).is_zero());

    Chain lone(1, 0);
    lone.add({0}, 1);
    CHECK_THROWS_AS(solve_boundary(lone, K), SolvabilityError);
}

TEST_CASE("solve_boundary on random cycles in a simplex")
{
    std::mt19937_64 rng(9);
    SimplicialComplex K(1);
    for (int i = 0; i < 5; ++i) K.add_vertex(at(i, i, i * i));
    K.add_simplex({0, 1, 2, 3, 4});
    for (int trial = 0; trial < 10; ++trial) {
        auto z = boundary(random_chain(K, 2, rng));
        CHECK(boundary(solve_boundary(z, K)) == z);
    }
}

TEST_CASE("barycentric operator splits an edge into its halves")
{
    SimplicialComplex K(1);
    K.add_vertex(at(0, 0));
    K.add_vertex(at(1, 1));
    K.add_simplex({0, 1});
    auto sd = barycentric_subdivision(K);
    int b = sd.barycenter.at({0, 1});
    auto lam = barycentric_operator(single({0, 1}), sd);
    Chain expected(1, 1);
    expected.add({b, 1}, 1);
    expected.add({0, b}, 1);
    CHECK(lam == expected);
    CHECK(sd.fine.position(b)[0] == Rational(1, 2));
    CHECK(barycentric_operator(Chain(1, 1), sd).is_zero());
}

TEST_CASE("subdivision commutes with boundary on random chains")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        auto K = random_simplex_complex(rng, 2, 3);
        auto sd = barycentric_subdivision(K);
        auto c = random_chain(K, 2, rng);
        CHECK(boundary(barycentric_operator(c, sd)) == barycentric_operator(boundary(c), sd));
        CHECK(subdivision_operator(c, K, sd.fine) == barycentric_operator(c, sd));
    }
}

TEST_CASE("carrier homotopy between equal maps is zero")
{
    auto K = triangle();
    ChainMapTable id;
    for (const auto& key : K.all_simplexes()) {
        Chain c(1, static_cast<int>(key.size()) - 1);
        c.add_key(key, 1);
        id[key] = c;
    }
    auto carrier = [&](const SimplexKey& key) { return K.restrict_to({key}); };
    auto theta = carrier_homotopy(K, id, id, 0, carrier);
    std::string why;
    CHECK_MESSAGE(check_homotopy(K, id, id, theta, carrier, &why), why);
    for (const auto& [k, c] : theta.theta) CHECK(c.is_zero());
}

TEST_CASE("coboundary is adjoint to boundary")
{
    std::mt19937_64 rng(17);
    auto K = random_simplex_complex(rng, 2, 3);
    for (int trial = 0; trial < 5; ++trial) {
        auto u = random_cochain(K, 1, rng);
        auto c = random_chain(K, 2, rng);
        std::vector<SimplexKey> domain(K.simplexes(2).begin(), K.simplexes(2).end());
        auto du = u.coboundary(domain);
        Rational lhs = 0, rhs = 0;
        for (const auto& [k, v] : c.terms()) lhs += v * du(k);
        auto dc = boundary(c);
        for (const auto& [k, v] : dc.terms()) rhs += v * u(k);
        CHECK(lhs == rhs);
    }
}
