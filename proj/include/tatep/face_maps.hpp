#pragma once

#include "tatep/chain_core.hpp"
#include "tatep/geometry.hpp"

#include <complex>
#include <map>
#include <random>

namespace tatep {

/// Total order on vertices given by a rank table; applied simplex by simplex.
struct GoodOrdering {
    std::map<int, long> rank;
    CubicalFace target;

    /// Vertices of the simplex in increasing rank.
    std::vector<int> order(const SimplexKey& key) const;
};

/// Vertices off the face first, then vertices on the face, each group by ascending id.
GoodOrdering build_good_ordering(const SimplicialComplex& K, const CubicalFace& face);

/// Ordering good for face1 and for face1 ∩ face2 inside face1: keys (on face1, on both, id).
GoodOrdering build_cup_ordering(const SimplicialComplex& K, const CubicalFace& face1, const CubicalFace& face2);

/// A good ordering with random order inside the off-face and on-face groups.
GoodOrdering random_good_ordering(const SimplicialComplex& K, const CubicalFace& face, std::mt19937_64& rng);

/// If v lies on the face and w comes after v in some simplex, w lies on the face.
bool is_good(const GoodOrdering& O, const SimplicialComplex& K, const CubicalFace& face);

struct ThomCocycle {
    enum class Backend { Exact, Numerical };
    Backend backend = Backend::Exact;
    CubicalFace face;
    Cochain values{2};                                   // exact backend
    std::map<SimplexKey, std::complex<double>> numeric;  // numerical backend, sorted-key orientation
    double epsilon = 0;

    Rational operator()(const std::vector<int>& ordered) const { return values(ordered); }
    std::map<std::string, std::string> table() const;
};

/// Default ray direction for the exact Thom cocycle.
inline const ComplexQ& default_ray()
{
    static const ComplexQ d{97, 13};
    return d;
}

/// Thom cocycle T = dL of the codimension-one face {z_i = 0}, where L counts signed
/// crossings of the z_i-image of each edge missing the face with the ray {t d : t > 0}.
/// On a good triangulation T vanishes on W and equals the intersection number on
/// transverse triangles. A face at infinity of a finite-chart complex gives T = 0.
ThomCocycle exact_thom_cocycle(const SimplicialComplex& K, const CubicalFace& face,
                               const ComplexQ& ray = default_ray());

/// Simplexes with no vertex on the face.
bool in_W(const SimplicialComplex& K, const SimplexKey& key, const CubicalFace& face);
bool vanishes_on_W(const ThomCocycle& T, const SimplicialComplex& K);
bool is_cocycle(const ThomCocycle& T, const SimplicialComplex& K);

/// u ∩ sigma = u(w_0..w_p) [w_p..w_k] with w the O-ordered vertices of sigma.
Chain cap_product(const Cochain& u, const GoodOrdering& O, const Chain& gamma, int ambient_out);

/// Cap product with a Thom cocycle; the ordering must be good for T's face.
Chain cap_product(const ThomCocycle& T, const GoodOrdering& O, const Chain& gamma, const SimplicialComplex& K);

/// (T1 ∪ T2)(w_0..w_4) = T1(w_0 w_1 w_2) T2(w_2 w_3 w_4) over the 4-simplexes of K.
Cochain cup_product(const ThomCocycle& T1, const ThomCocycle& T2, const GoodOrdering& O, const SimplicialComplex& K);

/// Components of a chain living on cubical faces L_C, keyed by C (the empty face is P^n itself).
using CubicalChain = std::map<CubicalFace, Chain>;

struct FaceMapOptions {
    ComplexQ ray = default_ray();
    bool check_admissible = true;
};

/// ∂_{slot,alpha} of a chain supported in L_within, by cap product with the exact Thom cocycle
/// and the default good ordering.
Chain face_map(const Chain& gamma, const SimplicialComplex& K, int slot, Alpha alpha, const CubicalFace& within = {},
               const FaceMapOptions& opt = {});

/// ∂ = Σ_i (−1)^{i−1}(∂_{i,0} − ∂_{i,∞}), the sign counted among the free coordinates of each component.
CubicalChain cubical_differential(const CubicalChain& gamma, const SimplicialComplex& K, const FaceMapOptions& opt = {});

/// Declared-faces backend for parametrized chains; the result lives in (P^1)^{n-1}.
CellChain face_map(const CellChain& gamma, int slot, Alpha alpha);
CellChain cubical_differential(const CellChain& gamma);

/// Inputs of the acyclic-carrier homotopy between two cap-product maps.
struct CarrierProblem {
    ChainMapTable phi_a, phi_b;
    int shift = 2;
    CarrierFn carrier;
};

/// phi_a = T ∩_{O1}, phi_b = T ∩_{O2}; carrier(sigma) = the face of sigma spanned by its vertices on the face.
CarrierProblem ordering_problem(const SimplicialComplex& K, const ThomCocycle& T, const GoodOrdering& O1,
                                const GoodOrdering& O2);

/// phi_a = λ(T ∩_O x), phi_b = T' ∩_{O'} λ(x) on a barycentric subdivision;
/// carrier(sigma) = subdivision of the face of sigma spanned by its vertices on the face.
CarrierProblem subdivision_problem(const SimplicialComplex& K, const Subdivision& sd, const ThomCocycle& T,
                                   const GoodOrdering& O, const ThomCocycle& Tfine, const GoodOrdering& Ofine);

}  // namespace tatep
