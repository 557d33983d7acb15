#include "tatep/face_maps.hpp"

#include <algorithm>
#include <numeric>

namespace tatep {

// ---------------------------------------------------------------- orderings

std::vector<int> GoodOrdering::order(const SimplexKey& key) const
{
    std::vector<int> w = key;
    std::sort(w.begin(), w.end(), [&](int a, int b) { return rank.at(a) < rank.at(b); });
    return w;
}

GoodOrdering build_good_ordering(const SimplicialComplex& K, const CubicalFace& face)
{
    GoodOrdering O;
    O.target = face;
    long off = 0;
    long on = static_cast<long>(K.vertices().size());
    for (auto& [id, v] : K.vertices()) O.rank[id] = face.contains(v) ? on++ : off++;
    return O;
}

GoodOrdering build_cup_ordering(const SimplicialComplex& K, const CubicalFace& face1, const CubicalFace& face2)
{
    GoodOrdering O;
    O.target = face1;
    std::vector<std::tuple<int, int, int>> keys;
    CubicalFace both = face1;
    for (auto& c : face2.constraints()) both = both.with(c);
    for (auto& [id, v] : K.vertices()) keys.emplace_back(face1.contains(v), both.contains(v), id);
    std::sort(keys.begin(), keys.end());
    long r = 0;
    for (auto& [a, b, id] : keys) O.rank[id] = r++;
    return O;
}

GoodOrdering random_good_ordering(const SimplicialComplex& K, const CubicalFace& face, std::mt19937_64& rng)
{
    std::vector<int> off, on;
    for (auto& [id, v] : K.vertices()) (face.contains(v) ? on : off).push_back(id);
    std::shuffle(off.begin(), off.end(), rng);
    std::shuffle(on.begin(), on.end(), rng);
    GoodOrdering O;
    O.target = face;
    long r = 0;
    for (int id : off) O.rank[id] = r++;
    for (int id : on) O.rank[id] = r++;
    return O;
}

bool is_good(const GoodOrdering& O, const SimplicialComplex& K, const CubicalFace& face)
{
    for (auto& key : K.all_simplexes()) {
        auto w = O.order(key);
        bool seen = false;
        for (int id : w) {
            bool on = face.contains(K.vertex(id));
            if (seen && !on) return false;
            seen = seen || on;
        }
    }
    return true;
}

// ---------------------------------------------------------------- Thom cocycles

std::map<std::string, std::string> ThomCocycle::table() const
{
    std::map<std::string, std::string> out;
    if (backend == Backend::Exact)
        for (auto& [k, v] : values.values()) out[format_simplex(k)] = to_string(v);
    else
        for (auto& [k, v] : numeric)
            out[format_simplex(k)] = std::to_string(v.real()) + (v.imag() < 0 ? "" : "+") + std::to_string(v.imag()) + "i";
    return out;
}

bool in_W(const SimplicialComplex& K, const SimplexKey& key, const CubicalFace& face)
{
    return std::none_of(key.begin(), key.end(), [&](int id) { return face.contains(K.vertex(id)); });
}

namespace {

Rational im_conj(const ComplexQ& z, const ComplexQ& d) { return z.im * d.re - z.re * d.im; }
Rational re_conj(const ComplexQ& z, const ComplexQ& d) { return z.re * d.re + z.im * d.im; }

// Signed crossings of the segment p -> q with the open ray {t d : t > 0}.
int ray_crossing(const ComplexQ& p, const ComplexQ& q, const ComplexQ& d, const std::string& where)
{
    Rational a = im_conj(p, d), b = im_conj(q, d);
    auto on_ray = [&](const ComplexQ& z, const Rational& im) { return sgn(im) == 0 && sgn(re_conj(z, d)) > 0; };
    if (on_ray(p, a) || on_ray(q, b)) throw GenericityError("edge " + where + " has an endpoint on the Thom ray");
    if (sgn(a) == 0 && sgn(b) == 0) {
        if (sgn(re_conj(p, d)) * sgn(re_conj(q, d)) < 0)
            throw GenericityError("edge " + where + " passes through the face along the Thom ray");
        return 0;
    }
    if (sgn(a) == 0 || sgn(b) == 0 || sgn(a) == sgn(b)) return 0;
    Rational s = a / (a - b);
    Rational re = re_conj(p, d) + s * re_conj(q - p, d);
    if (sgn(re) == 0) throw GenericityError("edge " + where + " meets the face in its interior");
    if (sgn(re) < 0) return 0;
    return sgn(b - a);
}

}  // namespace

ThomCocycle exact_thom_cocycle(const SimplicialComplex& K, const CubicalFace& face, const ComplexQ& ray)
{
    if (face.codim() != 1) throw DomainError("Thom cocycles are built for codimension-one faces");
    if (ray.is_zero()) throw DomainError("Thom ray direction must be nonzero");
    ThomCocycle T;
    T.face = face;
    int slot = face.constraints()[0].slot;
    if (face.constraints()[0].alpha == Alpha::Inf) {
        for (auto& [id, v] : K.vertices())
            if (v.coords[slot].inf)
                throw DomainError("faces at infinity are supported only for finite-chart complexes");
        return T;
    }
    std::map<SimplexKey, int> L;
    for (auto& e : K.simplexes(1)) {
        if (!in_W(K, e, face)) continue;
        const Slot& p = K.vertex(e[0]).coords[slot];
        const Slot& q = K.vertex(e[1]).coords[slot];
        if (p.inf || q.inf) throw DomainError("edge " + format_simplex(e) + " reaches infinity");
        int c = ray_crossing(p.z, q.z, ray, format_simplex(e));
        if (c) L[e] = c;
    }
    auto l = [&](int a, int b) {
        auto [key, s] = canonical({a, b});
        auto it = L.find(key);
        return it == L.end() ? 0 : s * it->second;
    };
    for (auto& t : K.simplexes(2)) {
        int v = l(t[1], t[2]) - l(t[0], t[2]) + l(t[0], t[1]);
        if (v) T.values.set(t, v);
    }
    return T;
}

bool vanishes_on_W(const ThomCocycle& T, const SimplicialComplex& K)
{
    for (auto& [k, v] : T.values.values())
        if (in_W(K, k, T.face)) return false;
    return true;
}

bool is_cocycle(const ThomCocycle& T, const SimplicialComplex& K)
{
    const auto& tets = K.simplexes(3);
    auto dT = T.values.coboundary(std::vector<SimplexKey>(tets.begin(), tets.end()));
    return dT.values().empty();
}

// ---------------------------------------------------------------- cap and cup

Chain cap_product(const Cochain& u, const GoodOrdering& O, const Chain& gamma, int ambient_out)
{
    int p = u.degree();
    Chain out(ambient_out, gamma.degree() - p);
    if (gamma.degree() < p) return out;
    for (auto& [key, c] : gamma.terms()) {
        auto w = O.order(key);
        int sign = canonical(w).second;
        Rational v = u(std::vector<int>(w.begin(), w.begin() + p + 1));
        if (sgn(v) == 0) continue;
        out.add(std::vector<int>(w.begin() + p, w.end()), sign * v * c);
    }
    return out;
}

Chain cap_product(const ThomCocycle& T, const GoodOrdering& O, const Chain& gamma, const SimplicialComplex& K)
{
    if (!(O.target == T.face)) {
        // orderings built for another target are accepted when they are still good for T's face
        std::set<SimplexKey> support;
        for (auto& [k, c] : gamma.terms()) support.insert(k);
        for (auto& key : support) {
            auto w = O.order(key);
            bool seen = false;
            for (int id : w) {
                bool on = T.face.contains(K.vertex(id));
                if (seen && !on) throw ContractError("ordering is not good for " + T.face.name());
                seen = seen || on;
            }
        }
    }
    if (T.backend != ThomCocycle::Backend::Exact) throw ContractError("cap product needs an exact Thom cocycle");
    return cap_product(T.values, O, gamma, gamma.ambient_n() - 1);
}

Cochain cup_product(const ThomCocycle& T1, const ThomCocycle& T2, const GoodOrdering& O, const SimplicialComplex& K)
{
    if (T1.face.codim() != 1 || T2.face.codim() != 1 ||
        T1.face.constraints()[0].slot == T2.face.constraints()[0].slot)
        throw DomainError("cup product needs faces on distinct coordinates");
    Cochain out(4);
    for (auto& key : K.simplexes(4)) {
        auto w = O.order(key);
        Rational v = T1({w[0], w[1], w[2]}) * T2({w[2], w[3], w[4]});
        if (sgn(v) != 0) out.set(w, v);
    }
    return out;
}

// ---------------------------------------------------------------- face maps

Chain face_map(const Chain& gamma, const SimplicialComplex& K, int slot, Alpha alpha, const CubicalFace& within,
               const FaceMapOptions& opt)
{
    if (within.constrains(slot)) throw DomainError("face map along an already fixed coordinate");
    CubicalFace face = CubicalFace::single(slot, alpha);
    int out_n = K.ambient_n() - within.codim() - 1;
    if (gamma.is_zero()) return Chain(out_n, gamma.degree() - 2);
    if (opt.check_admissible) {
        AdmissibilityReport rep;
        if (!in_admissible_complex(gamma, K, within, &rep))
            throw AdmissibilityError("face map of a non-admissible chain: " + rep.summary());
    }
    ThomCocycle T = exact_thom_cocycle(K, face, opt.ray);
    GoodOrdering O = build_good_ordering(K, face);
    Chain r = cap_product(T.values, O, gamma, out_n);
    return reduce_mod_divisor(r, K);
}

CubicalChain cubical_differential(const CubicalChain& gamma, const SimplicialComplex& K, const FaceMapOptions& opt)
{
    CubicalChain out;
    FaceMapOptions unchecked = opt;
    unchecked.check_admissible = false;
    for (auto& [C, chain] : gamma) {
        if (chain.is_zero()) continue;
        if (opt.check_admissible) {
            AdmissibilityReport rep;
            if (!in_admissible_complex(chain, K, C, &rep))
                throw AdmissibilityError("face map of a non-admissible chain: " + rep.summary());
        }
        int pos = 0;
        for (int s = 0; s < K.ambient_n(); ++s) {
            if (C.constrains(s)) continue;
            Rational sign = pos % 2 ? -1 : 1;
            ++pos;
            for (Alpha a : {Alpha::Zero, Alpha::Inf}) {
                Chain f = face_map(chain, K, s, a, C, unchecked);
                if (f.is_zero()) continue;
                CubicalFace nc = C.with({s, a});
                Rational c = a == Alpha::Zero ? sign : Rational(-sign);
                auto it = out.find(nc);
                if (it == out.end()) out.emplace(nc, c * f);
                else it->second += c * f;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

CellChain face_map(const CellChain& gamma, int slot, Alpha alpha)
{
    CellChain out{gamma.n - 1, gamma.degree - 2, {}};
    for (auto& [cell, c] : gamma.terms) {
        const DeclaredFace* df = cell->declared(slot, alpha);
        if (!df) {
            AdmissibilityReport probe = is_admissible(CellChain{gamma.n, gamma.degree, {{cell, c}}});
            (void)probe;  // throws ValidationError when the cell demonstrably meets an undeclared face
            continue;
        }
        for (auto& t : df->terms) out.add(t.cell, c * t.mult);
    }
    return out;
}

CellChain cubical_differential(const CellChain& gamma)
{
    CellChain out{gamma.n - 1, gamma.degree - 2, {}};
    for (int s = 0; s < gamma.n; ++s) {
        Rational sign = s % 2 ? -1 : 1;
        out += face_map(gamma, s, Alpha::Zero).scaled(sign);
        out += face_map(gamma, s, Alpha::Inf).scaled(-sign);
    }
    return out;
}

// ---------------------------------------------------------------- carrier problems

namespace {

SimplexKey on_face_part(const SimplicialComplex& K, const SimplexKey& key, const CubicalFace& face)
{
    SimplexKey r;
    for (int id : key)
        if (face.contains(K.vertex(id))) r.push_back(id);
    return r;
}

}  // namespace

CarrierProblem ordering_problem(const SimplicialComplex& K, const ThomCocycle& T, const GoodOrdering& O1,
                                const GoodOrdering& O2)
{
    CarrierProblem P;
    P.shift = 2;
    int n = K.ambient_n();
    for (auto& key : K.all_simplexes()) {
        if (key.size() < 3) continue;
        Chain s(n, static_cast<int>(key.size()) - 1);
        s.add_key(key, 1);
        Chain a = cap_product(T.values, O1, s, n - 1);
        Chain b = cap_product(T.values, O2, s, n - 1);
        if (!a.is_zero()) P.phi_a[key] = a;
        if (!b.is_zero()) P.phi_b[key] = b;
    }
    CubicalFace face = T.face;
    P.carrier = [&K, face](const SimplexKey& key) {
        SimplexKey part = on_face_part(K, key, face);
        if (part.empty()) return SimplicialComplex(K.ambient_n());
        return K.restrict_to({part});
    };
    return P;
}

CarrierProblem subdivision_problem(const SimplicialComplex& K, const Subdivision& sd, const ThomCocycle& T,
                                   const GoodOrdering& O, const ThomCocycle& Tfine, const GoodOrdering& Ofine)
{
    CarrierProblem P;
    P.shift = 2;
    int n = K.ambient_n();
    for (auto& key : K.all_simplexes()) {
        if (key.size() < 3) continue;
        Chain s(n, static_cast<int>(key.size()) - 1);
        s.add_key(key, 1);
        Chain a = barycentric_operator(cap_product(T.values, O, s, n - 1), sd);
        Chain b = cap_product(Tfine.values, Ofine, barycentric_operator(s, sd), n - 1);
        if (!a.is_zero()) P.phi_a[key] = a;
        if (!b.is_zero()) P.phi_b[key] = b;
    }
    CubicalFace face = T.face;
    const SimplicialComplex* fine = &sd.fine;
    const Subdivision* sdp = &sd;
    P.carrier = [&K, face, fine, sdp](const SimplexKey& key) {
        SimplexKey part = on_face_part(K, key, face);
        if (part.empty()) return SimplicialComplex(K.ambient_n());
        std::set<int> ids;
        for (int d = 0; d < static_cast<int>(part.size()); ++d)
            for (auto& f : faces_of(part, d)) ids.insert(sdp->barycenter.at(f));
        return fine->restrict_to(fine->full_span(ids));
    };
    return P;
}

}  // namespace tatep
