#include "doctest.h"

#include "tatep/geometry.hpp"
#include "tatep/instances.hpp"
#include "tatep/integrator.hpp"

#include <random>

using namespace tatep;

namespace {

std::vector<Rational> point(std::initializer_list<Rational> xs)
{
    return std::vector<Rational>(xs);
}

Vertex at2(int id, ComplexQ z1, ComplexQ z2)
{
    return Vertex{id, {Slot::finite(z1), Slot::finite(z2)}};
}

/// The 2-cell {(t_1, 1 − t_0) : 0 ≤ t_0 ≤ t_1 ≤ 1/2}.
ParamCell sample_cell()
{
    ParamCell c;
    c.label = "sample";
    c.n = 2;
    c.params.push_back(Param::real("t1", Affine::constant(0), Affine::constant(Rational(1, 2))));
    c.params.push_back(Param::real("t0", Affine::constant(0), Affine{0, {{0, 1}}}));
    c.map = {Expr::parse("t1"), Expr::parse("(- 1 t0)")};
    return c;
}

double max_distance(const ParamCell& a, const ParamCell& b)
{
    double worst = 0;
    for (const auto& s : a.interior_samples(4)) {
        auto va = a.eval(s);
        auto vb = b.eval(s);
        for (std::size_t i = 0; i < va.size(); ++i) {
            REQUIRE_FALSE(va[i].inf);
            REQUIRE_FALSE(vb[i].inf);
            worst = std::max(worst, std::abs(va[i].v - vb[i].v));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("cell-face intersection dimensions")
{
    LinearCell around{1, {point({-1, -1}), point({2, -1}), point({-1, 2})}};
    CHECK(cell_face_intersection(around, CubicalFace::single(0, Alpha::Zero)).dim == 0);

    LinearCell away{1, {point({1, 1}), point({2, 1}), point({1, 2})}};
    CHECK(cell_face_intersection(away, CubicalFace::single(0, Alpha::Zero)).dim == -1);

    LinearCell segment{2, {point({0, 0, 0, 0}), point({0, 0, 1, 0})}};
    CHECK(cell_face_intersection(segment, CubicalFace::single(0, Alpha::Zero)).dim == 1);
    CHECK(cell_face_intersection(segment, CubicalFace::single(0, Alpha::Inf)).dim == -1);
    CHECK(cell_face_intersection(segment, CubicalFace({{0, Alpha::Zero}, {1, Alpha::Zero}})).dim == 0);
}

TEST_CASE("cell-face intersection dimension is invariant under reordering and rescaling")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto K = random_simplex_complex(rng, 2, 3);
        auto cell = LinearCell::from_simplex(K, {0, 1, 2, 3});
        auto shuffled = LinearCell::from_simplex(K, {2, 0, 3, 1});
        LinearCell scaled = cell;
        for (auto& p : scaled.points)
            for (auto& x : p) x *= 3;
        for (const auto& face : all_cubical_faces(2)) {
            int d = cell_face_intersection(cell, face).dim;
            CHECK(cell_face_intersection(shuffled, face).dim == d);
            CHECK(cell_face_intersection(scaled, face).dim == d);
        }
    }
}

TEST_CASE("admissibility of simplicial chains")
{
    SimplicialComplex K(2);
    K.add_vertex(at2(0, {0, 0}, {Rational(1, 3), 0}));
    K.add_vertex(at2(1, {0, 0}, {Rational(2, 3), 0}));
    K.add_vertex(at2(2, {0, 1}, {Rational(1, 2), 0}));
    K.add_simplex({0, 1, 2});
    Chain c(2, 2);
    c.add({0, 1, 2}, 1);
    auto rep = is_admissible(c, K);
    CHECK_FALSE(rep.overall);
    bool found = false;
    for (const auto& e : rep.entries)
        if (e.face == CubicalFace::single(0, Alpha::Zero)) {
            found = true;
            CHECK(e.intersection_dim == 1);
            CHECK_FALSE(e.pass);
        }
    CHECK(found);

    CHECK(is_admissible(Chain(2, 2), K).overall);
}

TEST_CASE("the disk box is admissible")
{
    auto box = disk_box_chain(1, 2);
    auto rep = is_admissible(box);
    CHECK_MESSAGE(rep.overall, rep.summary());
    CHECK(is_admissible(chain_boundary(box)).overall);
    CHECK(box.degree == 3);
}

TEST_CASE("fullness fails on an edge joining two different faces")
{
    SimplicialComplex K(2);
    K.add_vertex(at2(0, {0, 0}, {Rational(1, 2), 0}));
    K.add_vertex(at2(1, {Rational(1, 2), 0}, {0, 0}));
    K.add_simplex({0, 1});
    auto rep = check_good_triangulation(K);
    CHECK_FALSE(rep.overall);

    SimplicialComplex far(1);
    far.add_vertex(Vertex{0, {Slot::finite({2, 0})}});
    far.add_vertex(Vertex{1, {Slot::finite({3, 1})}});
    far.add_vertex(Vertex{2, {Slot::finite({2, 2})}});
    far.add_simplex({0, 1, 2});
    auto vacuous = check_good_triangulation(far);
    CHECK_MESSAGE(vacuous.overall, vacuous.summary());
}

TEST_CASE("barycentric subdivision of a face-compatible complex is good")
{
    SimplicialComplex K(1);
    K.add_vertex(Vertex{0, {Slot::finite({0, 0})}});
    K.add_vertex(Vertex{1, {Slot::finite({1, 0})}});
    K.add_vertex(Vertex{2, {Slot::finite({0, 1})}});
    K.add_simplex({0, 1, 2});
    auto sd = barycentric_subdivision(K);
    auto rep = check_good_triangulation(sd.fine);
    CHECK_MESSAGE(rep.overall, rep.summary());
}

TEST_CASE("G_n transforms")
{
    auto c = sample_cell();
    auto same = gn_transform(c, GnElement::identity(2));
    CHECK(same.map[0] == c.map[0]);
    CHECK(same.map[1] == c.map[1]);

    GnElement swap{{1, 0}, {false, false}};
    auto swapped = gn_transform(c, swap);
    CHECK(swapped.map[0].to_string() == c.map[1].to_string());
    CHECK(swapped.map[1].to_string() == c.map[0].to_string());
    CHECK(swap.sign() == -1);

    GnElement flip{{0, 1}, {false, true}};
    auto inverted = gn_transform(c, flip);
    for (const auto& s : c.interior_samples(3)) {
        auto a = c.eval(s);
        auto b = inverted.eval(s);
        CHECK(std::abs(b[1].v * a[1].v - 1.0) < 1e-12);
    }

    for (const auto& g : GnElement::all(2)) {
        auto back = gn_transform(gn_transform(c, g), g.inverse());
        CHECK(max_distance(c, back) < 1e-12);
    }
}

TEST_CASE("inversion with a pole inside the domain is rejected")
{
    ParamCell origin;
    origin.n = 1;
    origin.map = {Expr::parse("0")};
    GnElement flip{{0}, {true}};
    CHECK_THROWS_AS(gn_transform(origin, flip), DomainError);

    ParamCell line;
    line.n = 1;
    line.params.push_back(Param::real("t", Affine::constant(-1), Affine::constant(1)));
    line.map = {Expr::parse("t")};
    CHECK_THROWS_AS(gn_transform(line, flip), DomainError);
}
