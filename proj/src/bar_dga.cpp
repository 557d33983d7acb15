#include "tatep/bar_dga.hpp"

#include "tatep/integrator.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace tatep {

namespace {

template <class Map>
void add_term(Map& m, const typename Map::key_type& k, const Rational& c)
{
    if (sgn(c) == 0) return;
    auto [it, inserted] = m.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) m.erase(it);
    }
}

Monomial slice(const Monomial& m, size_t from, size_t to)
{
    return Monomial(m.begin() + static_cast<long>(from), m.begin() + static_cast<long>(to));
}

}  // namespace

// ---------------------------------------------------------------- polynomials

Poly operator+(Poly a, const Poly& b)
{
    for (const auto& [m, c] : b) add_term(a, m, c);
    return a;
}

Poly operator-(Poly a, const Poly& b)
{
    for (const auto& [m, c] : b) add_term(a, m, Rational(-c));
    return a;
}

Poly operator*(const Rational& c, Poly a)
{
    if (sgn(c) == 0) return {};
    for (auto& [m, v] : a) v *= c;
    return a;
}

int DGAPresentation::add_generator(const std::string& name, int r, int deg, GeneratorKind kind)
{
    if (name.empty()) throw ContractError("generator name must be nonempty");
    if (by_name_.count(name)) throw ContractError("duplicate generator " + name);
    if (r < 0) throw ContractError("generator " + name + " has negative Tate grade");
    if (deg < 0) throw ContractError("generator " + name + " has negative degree");
    int i = size();
    gens_.push_back({name, r, deg, kind});
    diff_.emplace_back();
    by_name_[name] = i;
    return i;
}

void DGAPresentation::set_differential(const std::string& name, const Poly& value)
{
    int i = index(name);
    Poly clean;
    for (const auto& [m, c] : value) add_term(clean, m, c);
    for (const auto& [m, c] : clean)
        for (int g : m)
            if (g < 0 || g >= size()) throw ContractError("differential of " + name + " uses an unknown generator");
    diff_[i] = clean;
}

int DGAPresentation::index(const std::string& name) const
{
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw ContractError("unknown generator " + name);
    return it->second;
}

Poly DGAPresentation::gen(const std::string& name) const
{
    return Poly{{Monomial{index(name)}, Rational(1)}};
}

std::pair<Monomial, int> DGAPresentation::mul(const Monomial& a, const Monomial& b) const
{
    int sign = 1;
    for (int x : a)
        for (int y : b) {
            if (x == y && gens_[x].deg % 2) return {{}, 0};
            if (x > y && gens_[x].deg % 2 && gens_[y].deg % 2) sign = -sign;
        }
    Monomial out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return {out, sign};
}

Poly DGAPresentation::mul(const Poly& a, const Poly& b) const
{
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            auto [m, s] = mul(ma, mb);
            if (s) add_term(out, m, Rational(s * ca * cb));
        }
    return out;
}

Poly DGAPresentation::d(const Poly& a) const
{
    Poly out;
    for (const auto& [m, c] : a) {
        int prefix_deg = 0;
        for (size_t i = 0; i < m.size(); ++i) {
            const Poly& dg = diff_[m[i]];
            if (!dg.empty()) {
                Rational sign = prefix_deg % 2 ? -1 : 1;
                Poly pre{{slice(m, 0, i), Rational(1)}};
                Poly post{{slice(m, i + 1, m.size()), Rational(1)}};
                Poly term = mul(mul(pre, dg), post);
                for (const auto& [mt, ct] : term) add_term(out, mt, Rational(sign * c * ct));
            }
            prefix_deg += gens_[m[i]].deg;
        }
    }
    return out;
}

int DGAPresentation::r(const Monomial& m) const
{
    int s = 0;
    for (int g : m) s += gens_.at(g).r;
    return s;
}

int DGAPresentation::deg(const Monomial& m) const
{
    int s = 0;
    for (int g : m) s += gens_.at(g).deg;
    return s;
}

bool DGAPresentation::in_N(const Monomial& m) const
{
    return std::all_of(m.begin(), m.end(), [&](int g) { return gens_.at(g).kind == GeneratorKind::Cycle; });
}

Rational DGAPresentation::augmentation(const Poly& p) const
{
    auto it = p.find(Monomial{});
    return it == p.end() ? Rational(0) : it->second;
}

std::string DGAPresentation::to_string(const Monomial& m) const
{
    if (m.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) s += "*";
        s += gens_.at(m[i]).name;
    }
    return s;
}

std::string DGAPresentation::to_string(const Poly& p) const
{
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p) {
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (a != 1 || m.empty()) os << tatep::to_string(a) << (m.empty() ? "" : " ");
        if (!m.empty()) os << to_string(m);
    }
    return os.str();
}

void DGAPresentation::validate() const
{
    for (int i = 0; i < size(); ++i) {
        const auto& g = gens_[i];
        for (const auto& [m, c] : diff_[i]) {
            if (r(m) != g.r || deg(m) != g.deg + 1)
                throw ValidationError("d(" + g.name + ") contains " + to_string(m) + " of the wrong bigrade");
            if (g.kind == GeneratorKind::Cycle && !in_N(m))
                throw ValidationError("d(" + g.name + ") leaves the cycle algebra");
        }
        Poly dd = d(diff_[i]);
        if (!dd.empty()) throw ValidationError("d²(" + g.name + ") = " + to_string(dd));
    }
}

DGAPresentation random_presentation(std::mt19937_64& rng, int generators)
{
    if (generators < 1) throw ContractError("a presentation needs at least one generator");
    DGAPresentation N;
    std::uniform_int_distribution<int> rdist(1, 3), degdist(0, 2), coef(-2, 2), coin(0, 3);

    auto monomials = [&](int r, int deg, bool cycles_only, bool closed_only) {
        std::vector<Monomial> out;
        std::function<void(Monomial&, int)> rec = [&](Monomial& cur, int start) {
            if (N.r(cur) == r && N.deg(cur) == deg && !cur.empty()) out.push_back(cur);
            if (cur.size() == 3) return;
            for (int g = start; g < N.size(); ++g) {
                const auto& G = N.generator(g);
                if (cycles_only && G.kind != GeneratorKind::Cycle) continue;
                if (closed_only && !N.differential(g).empty()) continue;
                if (N.r(cur) + G.r > r || N.deg(cur) + G.deg > deg) continue;
                if (!cur.empty() && cur.back() == g && G.deg % 2) continue;
                cur.push_back(g);
                rec(cur, g);
                cur.pop_back();
            }
        };
        Monomial cur;
        rec(cur, 0);
        return out;
    };
    auto random_combo = [&](const std::vector<Monomial>& pool) {
        Poly p;
        if (pool.empty()) return p;
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        for (int k = 0; k < 2; ++k) add_term(p, pool[pick(rng)], Rational(coef(rng)));
        return p;
    };

    for (int i = 0; i < generators; ++i) {
        int r = rdist(rng), deg = degdist(rng);
        auto kind = coin(rng) == 0 ? GeneratorKind::Chain : GeneratorKind::Cycle;
        bool cyc = kind == GeneratorKind::Cycle;
        Poly P = random_combo(monomials(r, deg, cyc, false));
        Poly Q = random_combo(monomials(r, deg + 1, cyc, true));
        std::string name = (cyc ? "n" : "c") + std::to_string(i);
        N.add_generator(name, r, deg, kind);
        N.set_differential(name, N.d(P) + Q);
    }
    N.validate();
    return N;
}

// ---------------------------------------------------------------- bar complex

BarChain operator+(BarChain a, const BarChain& b)
{
    for (const auto& [k, c] : b) add_term(a, k, c);
    return a;
}

BarChain operator-(BarChain a, const BarChain& b)
{
    for (const auto& [k, c] : b) add_term(a, k, Rational(-c));
    return a;
}

BarChain operator*(const Rational& c, BarChain a)
{
    if (sgn(c) == 0) return {};
    for (auto& [k, v] : a) v *= c;
    return a;
}

BarComplex::BarComplex(const DGAPresentation& N, BarCoefficients coeffs) : N_(N), coeffs_(coeffs) {}

void BarComplex::check_letter(const Monomial& m) const
{
    if (m.empty() || N_.r(m) <= 0) throw ContractError("bar letter " + N_.to_string(m) + " is not in N_+");
    if (!N_.in_N(m)) throw ContractError("bar letter " + N_.to_string(m) + " uses a chain generator");
}

BarChain BarComplex::word(const std::vector<Poly>& letters, const Poly& right, int twist) const
{
    BarChain out;
    if (coeffs_ == BarCoefficients::Augmentation) {
        for (const auto& [m, c] : right)
            if (!m.empty()) throw ContractError("B(N) has scalar right factors only");
    }
    std::function<void(size_t, std::vector<Monomial>&, Rational)> rec = [&](size_t i, std::vector<Monomial>& cur,
                                                                             Rational c) {
        if (i == letters.size()) {
            for (const auto& [m, cm] : right) add_term(out, BarKey{cur, m, twist}, Rational(c * cm));
            return;
        }
        for (const auto& [m, cl] : letters[i]) {
            check_letter(m);
            cur.push_back(m);
            rec(i + 1, cur, c * cl);
            cur.pop_back();
        }
    };
    std::vector<Monomial> cur;
    rec(0, cur, Rational(1));
    return out;
}

int BarComplex::degree(const BarKey& k) const
{
    int s = N_.deg(k.right) - static_cast<int>(k.letters.size());
    for (const auto& a : k.letters) s += N_.deg(a);
    return s;
}

int BarComplex::grade(const BarKey& k) const
{
    int s = k.twist;
    for (const auto& a : k.letters) s += N_.r(a);
    return s;
}

BarChain BarComplex::d_I(const BarChain& x) const
{
    BarChain out;
    for (const auto& [k, c] : x) {
        const size_t s = k.letters.size();
        int jsign = 1;  // product of J signs of the letters before position i
        for (size_t i = 0; i < s; ++i) {
            int sign = ((i + 1) % 2 ? -1 : 1) * jsign;
            Poly da = N_.d(Poly{{k.letters[i], Rational(1)}});
            for (const auto& [m, cm] : da) {
                BarKey nk = k;
                nk.letters[i] = m;
                add_term(out, nk, Rational(sign * c * cm));
            }
            jsign *= letter_sign(k.letters[i]);
        }
        if (coeffs_ == BarCoefficients::Algebra) {
            int sign = (s % 2 ? -1 : 1) * jsign;
            Poly dm = N_.d(Poly{{k.right, Rational(1)}});
            for (const auto& [m, cm] : dm) {
                BarKey nk = k;
                nk.right = m;
                add_term(out, nk, Rational(sign * c * cm));
            }
        }
    }
    return out;
}

BarChain BarComplex::d_E(const BarChain& x) const
{
    BarChain out;
    for (const auto& [k, c] : x) {
        const size_t s = k.letters.size();
        int jsign = 1;
        for (size_t i = 0; i + 1 < s; ++i) {
            // (−1)^{i+1} with 1-based i, times J on a_1..a_i
            int sign = ((i + 2) % 2 ? -1 : 1) * jsign * letter_sign(k.letters[i]);
            auto [m, ms] = N_.mul(k.letters[i], k.letters[i + 1]);
            if (ms) {
                BarKey nk;
                nk.letters.assign(k.letters.begin(), k.letters.begin() + static_cast<long>(i));
                nk.letters.push_back(m);
                nk.letters.insert(nk.letters.end(), k.letters.begin() + static_cast<long>(i + 2), k.letters.end());
                nk.right = k.right;
                nk.twist = k.twist;
                add_term(out, nk, Rational(sign * ms * c));
            }
            jsign *= letter_sign(k.letters[i]);
        }
        if (coeffs_ == BarCoefficients::Algebra && s >= 1) {
            int sign = (s % 2 ? 1 : -1) * jsign;
            auto [m, ms] = N_.mul(k.letters[s - 1], k.right);
            if (ms) {
                BarKey nk;
                nk.letters.assign(k.letters.begin(), k.letters.end() - 1);
                nk.right = m;
                nk.twist = k.twist + N_.r(k.letters[s - 1]);
                add_term(out, nk, Rational(sign * ms * c));
            }
        }
    }
    return out;
}

BarChain BarComplex::shift_twist(const BarChain& x, int k) const
{
    BarChain out;
    for (const auto& [key, c] : x) {
        BarKey nk = key;
        nk.twist += k;
        out[nk] = c;
    }
    return out;
}

BarTensor BarComplex::coproduct(const BarChain& x) const
{
    BarTensor out;
    for (const auto& [k, c] : x) {
        for (size_t i = 0; i <= k.letters.size(); ++i) {
            BarKey left{{k.letters.begin(), k.letters.begin() + static_cast<long>(i)}, {}, 0};
            BarKey right{{k.letters.begin() + static_cast<long>(i), k.letters.end()}, k.right, k.twist};
            add_term(out, {left, right}, c);
        }
    }
    return out;
}

Rational BarComplex::counit(const BarChain& x) const
{
    Rational s = 0;
    for (const auto& [k, c] : x)
        if (k.letters.empty() && k.right.empty() && k.twist == 0) s += c;
    return s;
}

BarTensor BarComplex::d_tensor(const BarTensor& t, const BarComplex& left) const
{
    BarTensor out;
    for (const auto& [kk, c] : t) {
        const auto& [L, R] = kk;
        for (const auto& [dl, cl] : left.d(BarChain{{L, Rational(1)}})) add_term(out, {dl, R}, Rational(c * cl));
        int sign = left.degree(L) % 2 ? -1 : 1;
        for (const auto& [dr, cr] : d(BarChain{{R, Rational(1)}})) add_term(out, {L, dr}, Rational(sign * c * cr));
    }
    return out;
}

BarChain BarComplex::shuffle(const BarChain& x, const BarChain& y) const
{
    BarChain out;
    for (const auto& [kx, cx] : x)
        for (const auto& [ky, cy] : y) {
            if (!kx.right.empty() || !ky.right.empty())
                throw ContractError("the shuffle product is defined on B(N)");
            const auto& a = kx.letters;
            const auto& b = ky.letters;
            auto shifted = [&](const Monomial& m) { return (N_.deg(m) - 1) % 2 != 0; };
            std::vector<Monomial> cur;
            std::function<void(size_t, size_t, int)> rec = [&](size_t i, size_t j, int sign) {
                if (i == a.size() && j == b.size()) {
                    add_term(out, BarKey{cur, {}, kx.twist + ky.twist}, Rational(sign * cx * cy));
                    return;
                }
                if (i < a.size()) {
                    cur.push_back(a[i]);
                    rec(i + 1, j, sign);
                    cur.pop_back();
                }
                if (j < b.size()) {
                    int s = sign;
                    if (shifted(b[j]))
                        for (size_t k = i; k < a.size(); ++k)
                            if (shifted(a[k])) s = -s;
                    cur.push_back(b[j]);
                    rec(i, j + 1, s);
                    cur.pop_back();
                }
            };
            rec(0, 0, 1);
        }
    return out;
}

std::string BarComplex::to_string(const BarKey& k) const
{
    std::string s = "[";
    for (size_t i = 0; i < k.letters.size(); ++i) {
        if (i) s += "|";
        s += N_.to_string(k.letters[i]);
    }
    s += "]";
    if (coeffs_ == BarCoefficients::Algebra) s += N_.to_string(k.right) + "(" + std::to_string(k.twist) + ")";
    return s;
}

std::string BarComplex::to_string(const BarChain& x) const
{
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : x) {
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (a != 1) os << tatep::to_string(a) << " ";
        os << to_string(k);
    }
    return os.str();
}

BarChain random_bar_word(const BarComplex& B, std::mt19937_64& rng, int max_len)
{
    const auto& N = B.algebra();
    std::vector<int> cycles, all;
    for (int g = 0; g < N.size(); ++g) {
        all.push_back(g);
        if (N.generator(g).kind == GeneratorKind::Cycle && N.generator(g).r > 0) cycles.push_back(g);
    }
    if (cycles.empty()) throw ContractError("presentation has no letters in N_+");
    std::uniform_int_distribution<int> len(0, max_len), coef(-3, 3), small(1, 2);
    auto random_monomial = [&](const std::vector<int>& pool) {
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        Poly m = N.one();
        int k = small(rng);
        for (int i = 0; i < k; ++i) m = N.mul(m, Poly{{Monomial{pool[pick(rng)]}, Rational(1)}});
        return m;
    };
    BarChain out;
    for (int term = 0; term < 2; ++term) {
        std::vector<Poly> letters;
        int s = len(rng);
        for (int i = 0; i < s; ++i) {
            Poly l;
            while (l.empty()) l = random_monomial(cycles);
            letters.push_back(l);
        }
        Poly right = N.one();
        int twist = 0;
        if (B.coefficients() == BarCoefficients::Algebra) {
            if (small(rng) == 2) right = random_monomial(all);
            twist = coef(rng);
        }
        if (right.empty()) right = N.one();
        out = out + Rational(coef(rng) == 0 ? 1 : coef(rng)) * B.word(letters, right, twist);
    }
    return out;
}

// ---------------------------------------------------------------- alternating projector

CellChain alt_project(const CellChain& c)
{
    CellChain out{c.n, c.degree, {}};
    auto group = GnElement::all(c.n);
    Rational inv_order(1, static_cast<long>(group.size()));
    for (const auto& [cell, coeff] : c.terms) {
        if (cell->n != c.n) throw StructuralError("cell " + cell->describe() + " is not in the chain's cube");
        for (const auto& g : group)
            out.add(std::make_shared<const ParamCell>(gn_transform(*cell, g)), Rational(coeff * inv_order * g.sign()));
    }
    return canonicalize(out);
}

// ---------------------------------------------------------------- comodules

void GradedComodule::validate(const BarComplex& BN) const
{
    if (BN.coefficients() != BarCoefficients::Augmentation)
        throw ContractError("comodule cocycles live in B(N)");
    const size_t n = basis.size();
    if (grade.size() != n || coaction.size() != n) throw ValidationError("comodule tables have inconsistent sizes");
    auto cocycle = [&](const std::string& name) -> BarChain {
        if (name == "1") return BarChain{{BarKey{}, Rational(1)}};
        auto it = cocycles.find(name);
        if (it == cocycles.end()) throw ValidationError("unknown cocycle " + name);
        return it->second;
    };
    for (const auto& [name, h] : cocycles) {
        auto dh = BN.d(h);
        if (!dh.empty()) throw ValidationError("cocycle " + name + " is not closed: d = " + BN.to_string(dh));
    }
    using Key3 = std::tuple<int, BarKey, BarKey>;
    for (size_t i = 0; i < n; ++i) {
        BarChain unit_part;
        for (const auto& t : coaction[i]) {
            if (t.basis < 0 || static_cast<size_t>(t.basis) >= n) throw ValidationError("coaction index out of range");
            for (const auto& [k, c] : cocycle(t.cocycle))
                if (BN.grade(k) != grade[i] - grade[t.basis])
                    throw ValidationError("coaction term " + basis[t.basis] + " ⊗ " + t.cocycle + " of " + basis[i] +
                                          " has the wrong grade");
            if (t.basis == static_cast<int>(i)) unit_part = unit_part + t.coeff * cocycle(t.cocycle);
            else if (sgn(BN.counit(cocycle(t.cocycle))) != 0)
                throw ValidationError("coaction of " + basis[i] + " is not counital");
        }
        if (BN.counit(unit_part) != 1) throw ValidationError("coaction of " + basis[i] + " is not counital");

        std::map<Key3, Rational> lhs, rhs;
        for (const auto& t : coaction[i]) {
            for (const auto& u : coaction[t.basis])
                for (const auto& [k1, c1] : cocycle(u.cocycle))
                    for (const auto& [k2, c2] : cocycle(t.cocycle))
                        add_term(lhs, Key3{u.basis, k1, k2}, Rational(t.coeff * u.coeff * c1 * c2));
            for (const auto& [kk, c] : BN.coproduct(cocycle(t.cocycle)))
                add_term(rhs, Key3{t.basis, kk.first, kk.second}, Rational(t.coeff * c));
        }
        if (lhs != rhs) throw ValidationError("coaction of " + basis[i] + " is not coassociative");
    }
}

}  // namespace tatep
