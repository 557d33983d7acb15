#pragma once

#include "tatep/chain_core.hpp"
#include "tatep/geometry.hpp"

#include <random>

namespace tatep {

/// Triangulated neighbourhood of 0 in C: a fan around the origin over an inner polygon P
/// (with P_0 = 1 exactly) and a ring out to an outer polygon Q. Vertex ids are ordered
/// P_0..P_{m-1}, Q_0..Q_{m-1}, origin, so the origin comes last.
struct FactorTriangulation {
    SimplicialComplex K{1};
    std::vector<SimplexKey> triangles;
    std::vector<bool> in_star;  // per triangle: contains the origin
    int origin = 0;
};

FactorTriangulation random_factor_triangulation(std::mt19937_64& rng, int m);

/// Staircase triangulation of F1 × F2 in C^2; vertex (a, b) has id a * |V2| + b.
struct ProductTriangulation {
    SimplicialComplex K{2};
    FactorTriangulation f1, f2;
    /// 4-simplexes of each prism tau1 × tau2 with their geometric orientation signs.
    std::map<std::pair<int, int>, std::vector<std::pair<SimplexKey, int>>> prisms;
};

ProductTriangulation product_triangulation(const FactorTriangulation& f1, const FactorTriangulation& f2);

/// Oriented fundamental chain of a prism tau1 × tau2 (triangle indices).
Chain prism_chain(const ProductTriangulation& P, int t1, int t2);

/// Random admissible 2-chain on a factor triangulation (constant on the star of the origin).
Chain random_admissible_chain(const FactorTriangulation& F, std::mt19937_64& rng);

/// Random admissible 4-chain on a product triangulation.
Chain random_admissible_chain(const ProductTriangulation& P, std::mt19937_64& rng);

/// Random chain of the given degree on K with small integer coefficients.
Chain random_chain(const SimplicialComplex& K, int degree, std::mt19937_64& rng, double density = 0.5);

/// Random cochain of the given degree on K with small integer values.
Cochain random_cochain(const SimplicialComplex& K, int degree, std::mt19937_64& rng);

/// Random rational ray direction avoiding the coordinate axes.
ComplexQ random_ray(std::mt19937_64& rng);

/// Random full-dimensional k-simplex in C^1 or C^2 with small rational coordinates.
SimplicialComplex random_simplex_complex(std::mt19937_64& rng, int n, int k);

}  // namespace tatep
