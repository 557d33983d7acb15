#include "tatep/chain_core.hpp"

#include "tatep/linalg.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace tatep {

std::pair<SimplexKey, int> canonical(const std::vector<int>& ordered)
{
    SimplexKey key = ordered;
    int sign = 1;
    for (std::size_t i = 0; i < key.size(); ++i)
        for (std::size_t j = 0; j + 1 < key.size() - i; ++j)
            if (key[j] > key[j + 1]) {
                std::swap(key[j], key[j + 1]);
                sign = -sign;
            }
    for (std::size_t i = 1; i < key.size(); ++i)
        if (key[i] == key[i - 1]) return {key, 0};
    return {key, sign};
}

std::vector<SimplexKey> faces_of(const SimplexKey& key, int dim)
{
    std::vector<SimplexKey> out;
    int m = static_cast<int>(key.size());
    int k = dim + 1;
    if (k <= 0 || k > m) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        SimplexKey f;
        for (int i : idx) f.push_back(key[i]);
        out.push_back(std::move(f));
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::string format_simplex(const std::vector<int>& vertices)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < vertices.size(); ++i) os << (i ? "," : "") << vertices[i];
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------- complex

void SimplicialComplex::add_vertex(Vertex v)
{
    reset_memo();
    if (static_cast<int>(v.coords.size()) != n_)
        throw StructuralError("vertex " + std::to_string(v.id) + " has wrong number of coordinates");
    if (vertices_.count(v.id)) throw StructuralError("duplicate vertex id " + std::to_string(v.id));
    int id = v.id;
    vertices_.emplace(id, std::move(v));
    if (by_dim_.empty()) by_dim_.resize(1);
    by_dim_[0].insert({id});
}

void SimplicialComplex::add_simplex(const std::vector<int>& ids)
{
    reset_memo();
    auto [key, sign] = canonical(ids);
    if (sign == 0) throw StructuralError("simplex " + format_simplex(ids) + " repeats a vertex");
    for (int id : key)
        if (!has_vertex(id)) throw StructuralError("simplex " + format_simplex(ids) + " uses unknown vertex");
    int d = static_cast<int>(key.size()) - 1;
    if (static_cast<int>(by_dim_.size()) <= d) by_dim_.resize(d + 1);
    if (by_dim_[d].count(key)) return;
    for (int k = 0; k <= d; ++k)
        for (auto& f : faces_of(key, k)) by_dim_[k].insert(f);
}

const Vertex& SimplicialComplex::vertex(int id) const
{
    auto it = vertices_.find(id);
    if (it == vertices_.end()) throw StructuralError("unknown vertex " + std::to_string(id));
    return it->second;
}

bool SimplicialComplex::contains(const SimplexKey& key) const
{
    int d = static_cast<int>(key.size()) - 1;
    return d >= 0 && d < static_cast<int>(by_dim_.size()) && by_dim_[d].count(key) != 0;
}

const std::set<SimplexKey>& SimplicialComplex::simplexes(int d) const
{
    static const std::set<SimplexKey> empty;
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return empty;
    return by_dim_[d];
}

std::vector<SimplexKey> SimplicialComplex::all_simplexes() const
{
    std::vector<SimplexKey> out;
    for (auto& layer : by_dim_) out.insert(out.end(), layer.begin(), layer.end());
    return out;
}

std::size_t SimplicialComplex::size() const
{
    std::size_t s = 0;
    for (auto& layer : by_dim_) s += layer.size();
    return s;
}

int SimplicialComplex::max_vertex_id() const { return vertices_.empty() ? -1 : vertices_.rbegin()->first; }

int SimplicialComplex::memo(const std::string& tag, const SimplexKey& key, const std::function<int()>& compute) const
{
    auto table = memo_;
    {
        std::lock_guard<std::mutex> lock(table->mutex);
        auto it = table->values.find({tag, key});
        if (it != table->values.end()) return it->second;
    }
    int v = compute();
    std::lock_guard<std::mutex> lock(table->mutex);
    table->values.emplace(std::make_pair(tag, key), v);
    return v;
}

void SimplicialComplex::mark(const std::string& name, const std::vector<SimplexKey>& keys)
{
    auto& set = marked_[name];
    for (auto& k : keys) {
        if (!contains(k)) throw StructuralError("marked simplex " + format_simplex(k) + " not in complex");
        for (int d = 0; d < static_cast<int>(k.size()); ++d)
            for (auto& f : faces_of(k, d)) set.insert(f);
    }
}

bool SimplicialComplex::is_marked(const std::string& name, const SimplexKey& key) const
{
    auto it = marked_.find(name);
    return it != marked_.end() && it->second.count(key) != 0;
}

bool SimplicialComplex::in_divisor(const SimplexKey& key) const
{
    for (int i = 0; i < n_; ++i) {
        bool all = true;
        for (int id : key)
            if (!vertex(id).coords[i].is_one()) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

SimplicialComplex SimplicialComplex::restrict_to(const std::vector<SimplexKey>& keys) const
{
    SimplicialComplex out(n_);
    std::set<int> ids;
    for (auto& k : keys) ids.insert(k.begin(), k.end());
    for (int id : ids) out.add_vertex(vertex(id));
    for (auto& k : keys) out.add_simplex(k);
    return out;
}

std::vector<SimplexKey> SimplicialComplex::full_span(const std::set<int>& vertex_ids) const
{
    std::vector<SimplexKey> out;
    for (auto& layer : by_dim_)
        for (auto& k : layer)
            if (std::all_of(k.begin(), k.end(), [&](int v) { return vertex_ids.count(v) != 0; })) out.push_back(k);
    return out;
}

std::vector<Rational> SimplicialComplex::position(int id) const
{
    const Vertex& v = vertex(id);
    std::vector<Rational> p;
    p.reserve(2 * n_);
    for (auto& s : v.coords) {
        if (s.inf) throw DomainError("vertex " + std::to_string(id) + " lies at infinity");
        p.push_back(s.z.re);
        p.push_back(s.z.im);
    }
    return p;
}

// ---------------------------------------------------------------- chains

void Chain::add(const std::vector<int>& ordered, const Rational& c)
{
    if (static_cast<int>(ordered.size()) != degree_ + 1)
        throw StructuralError("simplex " + format_simplex(ordered) + " has wrong dimension for a " +
                              std::to_string(degree_) + "-chain");
    auto [key, sign] = canonical(ordered);
    if (sign == 0) return;
    add_key(key, sign > 0 ? c : Rational(-c));
}

void Chain::add_key(const SimplexKey& key, const Rational& c)
{
    if (sgn(c) == 0) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
}

Rational Chain::coeff(const SimplexKey& key) const
{
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Chain::coeff_oriented(const std::vector<int>& ordered) const
{
    auto [key, sign] = canonical(ordered);
    if (sign == 0) return 0;
    Rational c = coeff(key);
    return sign > 0 ? c : Rational(-c);
}

Chain& Chain::operator+=(const Chain& o)
{
    if (terms_.empty() && !o.terms_.empty()) {
        n_ = o.n_;
        degree_ = o.degree_;
    }
    for (auto& [k, c] : o.terms_) add_key(k, c);
    return *this;
}

Chain& Chain::operator-=(const Chain& o)
{
    if (terms_.empty() && !o.terms_.empty()) {
        n_ = o.n_;
        degree_ = o.degree_;
    }
    for (auto& [k, c] : o.terms_) add_key(k, -c);
    return *this;
}

Chain& Chain::operator*=(const Rational& c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

std::string Chain::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms_) {
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (a != 1) os << tatep::to_string(a) << "*";
        os << format_simplex(k);
    }
    return os.str();
}

void Cochain::set(const std::vector<int>& ordered, const Rational& v)
{
    auto [key, sign] = canonical(ordered);
    if (sign == 0) return;
    if (sgn(v) == 0) {
        values_.erase(key);
        return;
    }
    values_[key] = sign > 0 ? v : Rational(-v);
}

Rational Cochain::operator()(const std::vector<int>& ordered) const
{
    auto [key, sign] = canonical(ordered);
    if (sign == 0) return 0;
    auto it = values_.find(key);
    if (it == values_.end()) return 0;
    return sign > 0 ? it->second : Rational(-it->second);
}

Cochain Cochain::coboundary(const std::vector<SimplexKey>& domain) const
{
    Cochain du(degree_ + 1);
    for (auto& s : domain) {
        if (static_cast<int>(s.size()) != degree_ + 2) continue;
        Rational v = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            SimplexKey f = s;
            f.erase(f.begin() + static_cast<long>(i));
            Rational u = (*this)(f);
            if (i % 2) v -= u;
            else v += u;
        }
        du.set(s, v);
    }
    return du;
}

Chain boundary_simplex(const std::vector<int>& ordered, int ambient_n)
{
    int p = static_cast<int>(ordered.size()) - 1;
    Chain out(ambient_n, p - 1);
    if (p <= 0) return out;
    for (int i = 0; i <= p; ++i) {
        std::vector<int> f = ordered;
        f.erase(f.begin() + i);
        out.add(f, i % 2 ? Rational(-1) : Rational(1));
    }
    return out;
}

Chain boundary(const Chain& c, const SimplicialComplex* K, bool relative)
{
    Chain out(c.ambient_n(), c.degree() - 1);
    if (c.degree() <= 0) return out;
    for (auto& [key, coeff] : c.terms()) {
        if (K && !K->contains(key)) throw StructuralError("simplex " + format_simplex(key) + " not in complex");
        for (std::size_t i = 0; i < key.size(); ++i) {
            SimplexKey f = key;
            f.erase(f.begin() + static_cast<long>(i));
            if (relative && K && K->in_divisor(f)) continue;
            out.add_key(f, i % 2 ? Rational(-coeff) : coeff);
        }
    }
    return out;
}

Chain reduce_mod_divisor(const Chain& c, const SimplicialComplex& K)
{
    Chain out(c.ambient_n(), c.degree());
    for (auto& [k, v] : c.terms())
        if (!K.in_divisor(k)) out.add_key(k, v);
    return out;
}

int incidence_index(const std::vector<int>& sigma, const std::vector<int>& nu)
{
    if (nu.size() + 1 != sigma.size())
        throw DomainError(format_simplex(nu) + " is not a facet of " + format_simplex(sigma));
    auto [nkey, nsign] = canonical(nu);
    if (nsign == 0) throw DomainError("face " + format_simplex(nu) + " repeats a vertex");
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        std::vector<int> f = sigma;
        f.erase(f.begin() + static_cast<long>(i));
        auto [fkey, fsign] = canonical(f);
        if (fkey == nkey) return (i % 2 ? -1 : 1) * fsign * nsign;
    }
    throw DomainError(format_simplex(nu) + " is not a facet of " + format_simplex(sigma));
}

// ---------------------------------------------------------------- subdivision

Subdivision barycentric_subdivision(const SimplicialComplex& K)
{
    Subdivision sd{SimplicialComplex(K.ambient_n()), {}};
    int next = K.max_vertex_id() + 1;
    int n = K.ambient_n();
    for (int d = 0; d <= K.dim(); ++d)
        for (auto& key : K.simplexes(d)) {
            if (d == 0) {
                sd.fine.add_vertex(K.vertex(key[0]));
                sd.barycenter[key] = key[0];
                continue;
            }
            Vertex b{next++, std::vector<Slot>(n)};
            for (int i = 0; i < n; ++i) {
                ComplexQ sum;
                bool inf = false;
                for (int id : key) {
                    const Slot& s = K.vertex(id).coords[i];
                    if (s.inf) inf = true;
                    else sum = sum + s.z;
                }
                Rational w(1, static_cast<unsigned long>(key.size()));
                b.coords[i] = inf ? Slot::infinity() : Slot::finite({sum.re * w, sum.im * w});
            }
            sd.barycenter[key] = b.id;
            sd.fine.add_vertex(std::move(b));
        }

    // flags ending at each simplex, as barycenter lists from top to bottom
    std::map<SimplexKey, std::vector<std::vector<int>>> flags;
    for (int d = 0; d <= K.dim(); ++d)
        for (auto& key : K.simplexes(d)) {
            std::vector<std::vector<int>> fl;
            int b = sd.barycenter.at(key);
            fl.push_back({b});
            for (int k = 0; k < d; ++k)
                for (auto& f : faces_of(key, k))
                    for (auto& tail : flags.at(f)) {
                        std::vector<int> x{b};
                        x.insert(x.end(), tail.begin(), tail.end());
                        fl.push_back(std::move(x));
                    }
            flags[key] = std::move(fl);
        }
    for (int d = K.dim(); d >= 0; --d)
        for (auto& key : K.simplexes(d))
            for (auto& f : flags.at(key))
                if (static_cast<int>(f.size()) == d + 1) sd.fine.add_simplex(f);

    for (auto& [name, set] : K.marked()) {
        std::vector<SimplexKey> keys;
        for (auto& key : set)
            for (auto& f : flags.at(key)) keys.push_back(canonical(f).first);
        sd.fine.mark(name, keys);
    }
    return sd;
}

namespace {

Chain cone(int b, const Chain& c, int ambient_n)
{
    Chain out(ambient_n, c.degree() + 1);
    for (auto& [k, v] : c.terms()) {
        std::vector<int> s{b};
        s.insert(s.end(), k.begin(), k.end());
        out.add(s, v);
    }
    return out;
}

}  // namespace

Chain barycentric_operator(const Chain& c, const Subdivision& sd)
{
    std::map<SimplexKey, Chain> memo;
    std::function<const Chain&(const SimplexKey&)> lam = [&](const SimplexKey& key) -> const Chain& {
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        auto bit = sd.barycenter.find(key);
        if (bit == sd.barycenter.end())
            throw StructuralError("simplex " + format_simplex(key) + " not in subdivided complex");
        Chain r(c.ambient_n(), static_cast<int>(key.size()) - 1);
        if (key.size() == 1) {
            r.add(key, 1);
        } else {
            Chain lb(c.ambient_n(), static_cast<int>(key.size()) - 2);
            for (std::size_t i = 0; i < key.size(); ++i) {
                SimplexKey f = key;
                f.erase(f.begin() + static_cast<long>(i));
                Chain part = lam(f);
                if (i % 2) lb -= part;
                else lb += part;
            }
            r = cone(bit->second, lb, c.ambient_n());
        }
        return memo.emplace(key, std::move(r)).first->second;
    };
    Chain out(c.ambient_n(), c.degree());
    for (auto& [k, v] : c.terms()) out += v * lam(k);
    return out;
}

namespace {

// Barycentric coordinates of p with respect to the simplex with vertex positions vs.
std::optional<std::vector<Rational>> barycentric_coords(const std::vector<std::vector<Rational>>& vs,
                                                        const std::vector<Rational>& p)
{
    int k = static_cast<int>(vs.size()) - 1;
    int m = static_cast<int>(p.size());
    linalg::Matrix a(m, linalg::Vector(k));
    linalg::Vector b(m);
    for (int r = 0; r < m; ++r) {
        for (int j = 0; j < k; ++j) a[r][j] = vs[j + 1][r] - vs[0][r];
        b[r] = p[r] - vs[0][r];
    }
    auto x = linalg::solve(a, b, k);
    if (!x) return std::nullopt;
    std::vector<Rational> lam(k + 1);
    lam[0] = 1;
    for (int j = 0; j < k; ++j) {
        lam[j + 1] = (*x)[j];
        lam[0] -= (*x)[j];
    }
    return lam;
}

}  // namespace

Chain subdivision_operator(const Chain& c, const SimplicialComplex& coarse, const SimplicialComplex& refinement)
{
    Chain out(c.ambient_n(), c.degree());
    int k = c.degree();
    std::map<int, std::vector<Rational>> fine_pos;
    for (auto& [id, v] : refinement.vertices()) fine_pos[id] = refinement.position(id);
    for (auto& [key, coeff] : c.terms()) {
        if (!coarse.contains(key)) throw StructuralError("simplex " + format_simplex(key) + " not in complex");
        std::vector<std::vector<Rational>> vs;
        for (int id : key) vs.push_back(coarse.position(id));
        Rational volume = 0;
        for (auto& tau : refinement.simplexes(k)) {
            std::vector<std::vector<Rational>> lams;
            bool inside = true;
            for (int id : tau) {
                auto lam = barycentric_coords(vs, fine_pos.at(id));
                if (!lam || std::any_of(lam->begin(), lam->end(), [](const Rational& q) { return sgn(q) < 0; })) {
                    inside = false;
                    break;
                }
                lams.push_back(std::move(*lam));
            }
            if (!inside) continue;
            linalg::Matrix m(k, linalg::Vector(k));
            for (int r = 0; r < k; ++r)
                for (int j = 0; j < k; ++j) m[r][j] = lams[r + 1][j + 1] - lams[0][j + 1];
            Rational det = k == 0 ? Rational(1) : linalg::determinant(m);
            if (sgn(det) == 0) continue;
            volume += abs(det);
            out.add_key(tau, sgn(det) > 0 ? coeff : Rational(-coeff));
        }
        if (volume != 1)
            throw StructuralError("refinement does not subdivide simplex " + format_simplex(key) + " (covered volume " +
                                  to_string(volume) + ")");
    }
    return out;
}

// ---------------------------------------------------------------- solving

Chain solve_boundary(const Chain& target, const SimplicialComplex& carrier)
{
    int p = target.degree();
    Chain out(target.ambient_n(), p + 1);
    if (target.is_zero()) return out;
    for (auto& [k, v] : target.terms())
        if (!carrier.contains(k))
            throw SolvabilityError("target term " + format_simplex(k) + " lies outside the carrier");
    std::vector<SimplexKey> rows(carrier.simplexes(p).begin(), carrier.simplexes(p).end());
    std::vector<SimplexKey> cols(carrier.simplexes(p + 1).begin(), carrier.simplexes(p + 1).end());
    std::map<SimplexKey, int> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);
    linalg::Matrix a(rows.size(), linalg::Vector(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        Chain b = boundary_simplex(cols[j], target.ambient_n());
        for (auto& [k, v] : b.terms()) a[row_of.at(k)][j] = v;
    }
    linalg::Vector rhs(rows.size());
    for (auto& [k, v] : target.terms()) rhs[row_of.at(k)] = v;
    auto x = linalg::solve(a, rhs, static_cast<int>(cols.size()));
    if (!x) throw SolvabilityError("target " + target.to_string() + " is not a boundary in the carrier");
    for (std::size_t j = 0; j < cols.size(); ++j) out.add_key(cols[j], (*x)[j]);
    return out;
}

Chain apply_table(const ChainMapTable& table, const Chain& c, int ambient_n, int degree)
{
    Chain out(ambient_n, degree);
    for (auto& [k, v] : c.terms()) {
        auto it = table.find(k);
        if (it != table.end()) out += v * it->second;
    }
    return out;
}

Chain HomotopyTable::apply(const Chain& c) const
{
    Chain out;
    for (auto& [k, v] : c.terms()) {
        auto it = theta.find(k);
        if (it != theta.end()) out += v * it->second;
    }
    return out;
}

namespace {

Chain phi_difference(const ChainMapTable& a, const ChainMapTable& b, const SimplexKey& key)
{
    Chain d;
    if (auto it = a.find(key); it != a.end()) d += it->second;
    if (auto it = b.find(key); it != b.end()) d -= it->second;
    return d;
}

}  // namespace

HomotopyTable carrier_homotopy(const SimplicialComplex& K, const ChainMapTable& phi_a, const ChainMapTable& phi_b,
                               int shift, const CarrierFn& carrier)
{
    HomotopyTable h;
    h.shift = shift;
    for (int d = 0; d <= K.dim(); ++d)
        for (auto& key : K.simplexes(d)) {
            Chain rhs = phi_difference(phi_a, phi_b, key);
            if (d > 0) rhs -= h.apply(boundary_simplex(key, K.ambient_n()));
            if (rhs.is_zero()) continue;
            if (d - shift < 0)
                throw ObstructionError("chain maps differ below the base degree on simplex " + format_simplex(key));
            SimplicialComplex C = carrier(key);
            Chain target(rhs.ambient_n(), d - shift);
            target += rhs;
            try {
                Chain t = solve_boundary(target, C);
                if (!t.is_zero()) h.theta[key] = std::move(t);
            } catch (const SolvabilityError& e) {
                throw ObstructionError("no homotopy value on simplex " + format_simplex(key) + ": " + e.what());
            }
        }
    return h;
}

bool check_homotopy(const SimplicialComplex& K, const ChainMapTable& phi_a, const ChainMapTable& phi_b,
                    const HomotopyTable& theta, const CarrierFn& carrier, std::string* why)
{
    for (auto& key : K.all_simplexes()) {
        Chain lhs;
        if (auto it = theta.theta.find(key); it != theta.theta.end()) {
            SimplicialComplex C = carrier(key);
            for (auto& [k, v] : it->second.terms())
                if (!C.contains(k)) {
                    if (why) *why = "theta" + format_simplex(key) + " leaves its carrier";
                    return false;
                }
            lhs += boundary(it->second);
        }
        if (key.size() > 1) lhs += theta.apply(boundary_simplex(key, K.ambient_n()));
        Chain rhs = phi_difference(phi_a, phi_b, key);
        if (!(lhs == rhs)) {
            if (why) *why = "homotopy equation fails on " + format_simplex(key);
            return false;
        }
    }
    return true;
}

}  // namespace tatep
