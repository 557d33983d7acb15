#include "tatep/instances.hpp"

#include "tatep/face_maps.hpp"
#include "tatep/linalg.hpp"

#include <cmath>
#include <numbers>

namespace tatep {

namespace {

Rational random_rational(std::mt19937_64& rng, long lo_num, long hi_num, long den)
{
    std::uniform_int_distribution<long> d(lo_num, hi_num);
    Rational q(d(rng), den);
    q.canonicalize();
    return q;
}

long random_int(std::mt19937_64& rng, long lo, long hi)
{
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng);
}

Rational random_nonzero(std::mt19937_64& rng)
{
    long v = 0;
    while (v == 0) v = random_int(rng, -3, 3);
    return Rational(v);
}

// Rational point on the unit circle at parameter t = tan(theta/2).
ComplexQ unit_point(const Rational& t)
{
    Rational t2 = t * t;
    Rational den = 1 + t2;
    return {Rational((1 - t2) / den), Rational(2 * t / den)};
}

ComplexQ scale(const ComplexQ& z, const Rational& r) { return {Rational(z.re * r), Rational(z.im * r)}; }

// Sign of the R^{2n} orientation of an ordered simplex of full dimension.
int orientation_sign(const SimplicialComplex& K, const std::vector<int>& ordered)
{
    auto p0 = K.position(ordered[0]);
    linalg::Matrix m;
    for (std::size_t k = 1; k < ordered.size(); ++k) {
        auto pk = K.position(ordered[k]);
        linalg::Vector row(pk.size());
        for (std::size_t j = 0; j < pk.size(); ++j) row[j] = pk[j] - p0[j];
        m.push_back(row);
    }
    return sgn(linalg::determinant(m));
}

bool admissible_ok(const Chain& c, const SimplicialComplex& K)
{
    try {
        return in_admissible_complex(c, K);
    } catch (const GenericityError&) {
        return false;
    }
}

}  // namespace

FactorTriangulation random_factor_triangulation(std::mt19937_64& rng, int m)
{
    if (m < 3) throw DomainError("factor triangulation needs at least 3 boundary vertices");
    const double two_pi = 2 * std::numbers::pi;
    std::vector<Rational> t(m);
    for (;;) {
        bool ok = true;
        for (int k = 0; k < m && ok; ++k) {
            double theta = two_pi * k / m;
            if (k > 0) theta += std::uniform_real_distribution<double>(-0.25, 0.25)(rng) * two_pi / m;
            if (theta > std::numbers::pi) theta -= two_pi;
            if (std::abs(std::abs(theta) - std::numbers::pi) < 0.2) ok = false;
            t[k] = Rational(std::lround(std::tan(theta / 2) * 64), 64);
            t[k].canonicalize();
        }
        if (!ok) continue;
        // Distinct directions in increasing angle order.
        for (int k = 1; k < m && ok; ++k) {
            double a0 = 2 * std::atan(t[k - 1].get_d()), a1 = 2 * std::atan(t[k].get_d());
            if (a0 < 0) a0 += two_pi;
            if (a1 < 0) a1 += two_pi;
            if (k == 1) a0 = 0;
            if (!(a1 > a0 + 1e-6)) ok = false;
        }
        if (ok) break;
    }

    FactorTriangulation F;
    F.K = SimplicialComplex(1);
    F.origin = 2 * m;
    for (int k = 0; k < m; ++k) {
        Rational r = k == 0 ? Rational(1) : random_rational(rng, 8, 15, 16);
        Rational R = random_rational(rng, 16, 24, 8);
        ComplexQ u = unit_point(t[k]);
        F.K.add_vertex(Vertex{k, {Slot::finite(scale(u, r))}});
        F.K.add_vertex(Vertex{m + k, {Slot::finite(scale(u, R))}});
    }
    F.K.add_vertex(Vertex{F.origin, {Slot::finite({0, 0})}});
    auto add = [&](std::vector<int> v, bool star) {
        F.K.add_simplex(v);
        F.triangles.push_back(canonical(v).first);
        F.in_star.push_back(star);
    };
    for (int k = 0; k < m; ++k) {
        int k1 = (k + 1) % m;
        add({F.origin, k, k1}, true);
        add({k, m + k, m + k1}, false);
        add({k, m + k1, k1}, false);
    }
    mark_standard_subcomplexes(F.K);
    return F;
}

ProductTriangulation product_triangulation(const FactorTriangulation& f1, const FactorTriangulation& f2)
{
    ProductTriangulation P;
    P.f1 = f1;
    P.f2 = f2;
    P.K = SimplicialComplex(2);
    const int N = f2.K.max_vertex_id() + 1;
    for (const auto& [a, va] : f1.K.vertices())
        for (const auto& [b, vb] : f2.K.vertices())
            P.K.add_vertex(Vertex{a * N + b, {va.coords[0], vb.coords[0]}});
    for (std::size_t i = 0; i < f1.triangles.size(); ++i) {
        for (std::size_t j = 0; j < f2.triangles.size(); ++j) {
            const auto& A = f1.triangles[i];
            const auto& B = f2.triangles[j];
            std::vector<std::pair<SimplexKey, int>> cells;
            // Lattice paths from (0,0) to (2,2).
            for (int mask = 0; mask < 16; ++mask) {
                if (__builtin_popcount(mask) != 2) continue;
                int x = 0, y = 0;
                std::vector<int> verts{A[0] * N + B[0]};
                for (int s = 0; s < 4; ++s) {
                    if (mask & (1 << s)) ++x; else ++y;
                    verts.push_back(A[x] * N + B[y]);
                }
                P.K.add_simplex(verts);
                cells.emplace_back(verts, orientation_sign(P.K, verts));
            }
            P.prisms[{static_cast<int>(i), static_cast<int>(j)}] = std::move(cells);
        }
    }
    mark_standard_subcomplexes(P.K);
    return P;
}

Chain prism_chain(const ProductTriangulation& P, int t1, int t2)
{
    Chain c(2, 4);
    for (const auto& [key, s] : P.prisms.at({t1, t2})) c.add_key(key, Rational(s));
    return c;
}

Chain random_admissible_chain(const FactorTriangulation& F, std::mt19937_64& rng)
{
    for (;;) {
        Chain c(1, 2);
        Rational c0 = random_nonzero(rng);
        for (std::size_t i = 0; i < F.triangles.size(); ++i) {
            Rational a = F.in_star[i] ? c0 : Rational(random_int(rng, -3, 3));
            if (sgn(a) == 0) continue;
            const auto& k = F.triangles[i];
            c.add(k, a * orientation_sign(F.K, k));
        }
        if (admissible_ok(c, F.K)) return c;
    }
}

Chain random_admissible_chain(const ProductTriangulation& P, std::mt19937_64& rng)
{
    const auto n1 = P.f1.triangles.size(), n2 = P.f2.triangles.size();
    for (;;) {
        Rational c0 = random_nonzero(rng);
        std::vector<Rational> g(n2), h(n1);
        for (auto& v : g) v = Rational(random_int(rng, -3, 3));
        for (auto& v : h) v = Rational(random_int(rng, -3, 3));
        Chain c(2, 4);
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t j = 0; j < n2; ++j) {
                bool s1 = P.f1.in_star[i], s2 = P.f2.in_star[j];
                Rational a = s1 && s2 ? c0 : s1 ? g[j] : s2 ? h[i] : Rational(random_int(rng, -3, 3));
                if (sgn(a) == 0) continue;
                c += a * prism_chain(P, static_cast<int>(i), static_cast<int>(j));
            }
        }
        if (c.is_zero()) continue;
        try {
            for (int slot = 0; slot < 2; ++slot) exact_thom_cocycle(P.K, CubicalFace::single(slot, Alpha::Zero));
        } catch (const GenericityError&) {
            continue;
        }
        if (admissible_ok(c, P.K)) return c;
    }
}

Chain random_chain(const SimplicialComplex& K, int degree, std::mt19937_64& rng, double density)
{
    Chain c(K.ambient_n(), degree);
    std::bernoulli_distribution keep(density);
    for (const auto& key : K.simplexes(degree))
        if (keep(rng)) c.add_key(key, random_nonzero(rng));
    return c;
}

Cochain random_cochain(const SimplicialComplex& K, int degree, std::mt19937_64& rng)
{
    Cochain u(degree);
    for (const auto& key : K.simplexes(degree)) u.set(key, Rational(random_int(rng, -3, 3)));
    return u;
}

ComplexQ random_ray(std::mt19937_64& rng)
{
    for (;;) {
        ComplexQ d{Rational(random_int(rng, -97, 97)), Rational(random_int(rng, -97, 97))};
        if (sgn(d.re) != 0 && sgn(d.im) != 0) return d;
    }
}

SimplicialComplex random_simplex_complex(std::mt19937_64& rng, int n, int k)
{
    for (;;) {
        SimplicialComplex K(n);
        std::vector<int> ids;
        for (int v = 0; v <= k; ++v) {
            std::vector<Slot> coords;
            for (int s = 0; s < n; ++s)
                coords.push_back(Slot::finite({random_rational(rng, -8, 8, 4), random_rational(rng, -8, 8, 4)}));
            K.add_vertex(Vertex{v, coords});
            ids.push_back(v);
        }
        std::vector<std::vector<Rational>> pts;
        for (int v : ids) pts.push_back(K.position(v));
        if (linalg::affine_rank(pts) != k) continue;
        K.add_simplex(ids);
        return K;
    }
}

}  // namespace tatep
