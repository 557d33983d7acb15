#include "tatep/geometry.hpp"

#include "tatep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

namespace tatep {

std::string alpha_name(Alpha a) { return a == Alpha::Zero ? "0" : "inf"; }

// ---------------------------------------------------------------- cubical faces

CubicalFace::CubicalFace(std::vector<FaceConstraint> constraints) : constraints_(std::move(constraints))
{
    std::sort(constraints_.begin(), constraints_.end());
    for (std::size_t i = 1; i < constraints_.size(); ++i)
        if (constraints_[i].slot == constraints_[i - 1].slot)
            throw DomainError("cubical face constrains coordinate " + std::to_string(constraints_[i].slot + 1) +
                              " twice");
}

bool CubicalFace::constrains(int slot) const
{
    return std::any_of(constraints_.begin(), constraints_.end(), [&](const FaceConstraint& c) { return c.slot == slot; });
}

CubicalFace CubicalFace::with(const FaceConstraint& c) const
{
    auto cs = constraints_;
    cs.push_back(c);
    return CubicalFace(std::move(cs));
}

bool CubicalFace::contains(const Vertex& v) const
{
    for (auto& c : constraints_) {
        const Slot& s = v.coords.at(c.slot);
        if (c.alpha == Alpha::Zero ? !s.is_zero() : !s.inf) return false;
    }
    return true;
}

bool CubicalFace::contains(const SimplicialComplex& K, const SimplexKey& key) const
{
    return std::all_of(key.begin(), key.end(), [&](int id) { return contains(K.vertex(id)); });
}

std::string CubicalFace::name() const
{
    std::string s = "H_";
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(constraints_[i].slot + 1) + "_" + alpha_name(constraints_[i].alpha);
    }
    return s;
}

std::vector<CubicalFace> all_cubical_faces(int n)
{
    std::vector<CubicalFace> out;
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (int code = 1; code < total; ++code) {
        std::vector<FaceConstraint> cs;
        int c = code;
        for (int i = 0; i < n; ++i, c /= 3) {
            if (c % 3 == 1) cs.push_back({i, Alpha::Zero});
            if (c % 3 == 2) cs.push_back({i, Alpha::Inf});
        }
        out.emplace_back(std::move(cs));
    }
    std::stable_sort(out.begin(), out.end(), [](const CubicalFace& a, const CubicalFace& b) { return a.codim() < b.codim(); });
    return out;
}

std::vector<SimplexKey> face_subcomplex(const SimplicialComplex& K, const CubicalFace& face)
{
    std::set<int> ids;
    for (auto& [id, v] : K.vertices())
        if (face.contains(v)) ids.insert(id);
    return K.full_span(ids);
}

void mark_standard_subcomplexes(SimplicialComplex& K)
{
    std::vector<SimplexKey> d;
    for (auto& k : K.all_simplexes())
        if (K.in_divisor(k)) d.push_back(k);
    if (!d.empty()) K.mark("D", d);
    for (int i = 0; i < K.ambient_n(); ++i)
        for (Alpha a : {Alpha::Zero, Alpha::Inf}) {
            CubicalFace f = CubicalFace::single(i, a);
            auto keys = face_subcomplex(K, f);
            if (!keys.empty()) K.mark(f.name(), keys);
        }
}

// ---------------------------------------------------------------- linear cells

LinearCell LinearCell::from_simplex(const SimplicialComplex& K, const std::vector<int>& ordered)
{
    LinearCell c;
    c.n = K.ambient_n();
    for (int id : ordered) c.points.push_back(K.position(id));
    if (linalg::affine_rank(c.points) != c.dim())
        throw StructuralError("simplex " + format_simplex(ordered) + " is not affinely independent");
    return c;
}

namespace {

std::vector<std::vector<Rational>> section_vertices(const LinearCell& cell,
                                                    const std::vector<std::pair<int, ComplexQ>>& eqs)
{
    int m = static_cast<int>(cell.points.size());
    // the value must lie in the coordinate bounding box of the cell
    for (auto& [slot, value] : eqs)
        for (int part = 0; part < 2; ++part) {
            const Rational& v = part == 0 ? value.re : value.im;
            bool below = false, above = false;
            for (auto& p : cell.points) {
                int s = sgn(p[2 * slot + part] - v);
                below = below || s <= 0;
                above = above || s >= 0;
            }
            if (!below || !above) return {};
        }
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    rows.push_back(std::vector<Rational>(m, Rational(1)));
    rhs.push_back(1);
    for (auto& [slot, value] : eqs) {
        std::vector<Rational> re(m), im(m);
        for (int j = 0; j < m; ++j) {
            re[j] = cell.points[j][2 * slot];
            im[j] = cell.points[j][2 * slot + 1];
        }
        rows.push_back(re);
        rhs.push_back(value.re);
        rows.push_back(im);
        rhs.push_back(value.im);
    }
    // vertices are the basic feasible solutions of {lambda >= 0, rows lambda = rhs}
    linalg::Matrix aug(rows.size(), linalg::Vector(m + 1));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int j = 0; j < m; ++j) aug[r][j] = rows[r][j];
        aug[r][m] = rhs[r];
    }
    auto piv = linalg::rref(aug, m + 1);
    if (!piv.empty() && piv.back() == m) return {};
    int rk = static_cast<int>(piv.size());
    std::vector<std::vector<Rational>> out;
    std::vector<int> cols(rk);
    std::function<void(int, int)> choose = [&](int start, int depth) {
        if (depth == rk) {
            linalg::Matrix a(rk, linalg::Vector(rk + 1));
            for (int r = 0; r < rk; ++r) {
                for (int j = 0; j < rk; ++j) a[r][j] = aug[r][cols[j]];
                a[r][rk] = aug[r][m];
            }
            auto sub = linalg::rref(a, rk + 1);
            if (static_cast<int>(sub.size()) != rk || sub.back() == rk) return;
            std::vector<Rational> p(cell.points[0].size());
            for (int j = 0; j < rk; ++j) {
                const Rational& x = a[j][rk];
                if (sgn(x) < 0) return;
                if (sgn(x) == 0) continue;
                for (std::size_t d = 0; d < p.size(); ++d) p[d] += x * cell.points[cols[j]][d];
            }
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
            return;
        }
        for (int j = start; j <= m - (rk - depth); ++j) {
            cols[depth] = j;
            choose(j + 1, depth + 1);
        }
    };
    choose(0, 0);
    return out;
}

// Whether every listed point has z_j = 1 for one common j among the divisor slots.
bool points_in_divisor(const std::vector<std::vector<Rational>>& pts, const std::vector<int>& divisor_slots)
{
    if (pts.empty()) return false;
    for (int j : divisor_slots) {
        bool all = std::all_of(pts.begin(), pts.end(), [&](const std::vector<Rational>& p) {
            return p[2 * j] == 1 && sgn(p[2 * j + 1]) == 0;
        });
        if (all) return true;
    }
    return false;
}

FaceIntersection intersect_minus_divisor(const LinearCell& cell, const CubicalFace& face,
                                         const std::vector<int>& divisor_slots)
{
    FaceIntersection r;
    for (auto& c : face.constraints())
        if (c.alpha == Alpha::Inf) return r;
    std::vector<std::pair<int, ComplexQ>> eqs;
    for (auto& c : face.constraints()) eqs.emplace_back(c.slot, ComplexQ{});
    auto verts = section_vertices(cell, eqs);
    if (verts.empty() || points_in_divisor(verts, divisor_slots)) return r;
    r.dim = linalg::affine_rank(verts);
    r.vertices = std::move(verts);
    return r;
}

}  // namespace

FaceIntersection cell_section(const LinearCell& cell, const std::vector<std::pair<int, ComplexQ>>& equations)
{
    FaceIntersection r;
    r.vertices = section_vertices(cell, equations);
    r.dim = linalg::affine_rank(r.vertices);
    return r;
}

FaceIntersection cell_face_intersection(const LinearCell& cell, const CubicalFace& face)
{
    std::vector<int> all(cell.n);
    for (int i = 0; i < cell.n; ++i) all[i] = i;
    return intersect_minus_divisor(cell, face, all);
}

// ---------------------------------------------------------------- parametrized cells

double Affine::eval(const double* real_params) const
{
    double v = c.get_d();
    for (auto& [j, a] : coef) v += a.get_d() * real_params[j];
    return v;
}

Expr Affine::to_expr(const std::vector<std::string>& names) const
{
    Expr e = Expr::constant(c);
    for (auto& [j, a] : coef) e = e + Expr::constant(a) * Expr::param(names.at(j));
    return e.simplify();
}

Param Param::real(std::string name, Affine lo, Affine hi)
{
    Param p;
    p.type = Type::Real;
    p.name = std::move(name);
    p.lo = std::move(lo);
    p.hi = std::move(hi);
    return p;
}

Param Param::disk(std::string name, ComplexQ center, Rational r_hi, Rational r_lo)
{
    Param p;
    p.type = Type::Disk;
    p.name = std::move(name);
    p.center = std::move(center);
    p.r_hi = std::move(r_hi);
    p.r_lo = std::move(r_lo);
    if (sgn(p.r_lo) < 0 || p.r_hi <= p.r_lo) throw DomainError("disk parameter '" + p.name + "' has bad radii");
    return p;
}

Param Param::sphere(std::string name)
{
    Param p;
    p.type = Type::Sphere;
    p.name = std::move(name);
    return p;
}

int ParamCell::dim() const
{
    int d = 0;
    for (auto& p : params) d += p.real_dim();
    return d;
}

std::vector<std::string> ParamCell::param_names() const
{
    std::vector<std::string> out;
    for (auto& p : params) out.push_back(p.name);
    return out;
}

const DeclaredFace* ParamCell::declared(int slot, Alpha alpha) const
{
    for (auto& f : faces)
        if (f.slot == slot && f.alpha == alpha) return &f;
    return nullptr;
}

bool ParamCell::has_complex_param() const
{
    return std::any_of(params.begin(), params.end(), [](const Param& p) { return p.type != Param::Type::Real; });
}

bool ParamCell::has_constant_slot() const
{
    return std::any_of(map.begin(), map.end(), [](const Expr& e) { return e.simplify().params().empty(); });
}

std::vector<P1Value> ParamCell::eval(const std::vector<std::complex<double>>& values) const
{
    auto names = param_names();
    std::vector<P1Value> pv;
    for (auto& v : values) pv.push_back({false, false, v});
    std::vector<P1Value> out;
    for (auto& e : map) out.push_back(CompiledExpr(e, names).eval_p1(pv.data()));
    return out;
}

std::vector<std::vector<std::complex<double>>> ParamCell::interior_samples(int per_axis) const
{
    int d = dim();
    std::vector<std::vector<std::complex<double>>> out;
    long total = 1;
    for (int i = 0; i < d; ++i) total *= per_axis;
    std::vector<double> real(params.size());
    for (long code = 0; code < total; ++code) {
        long c = code;
        std::vector<std::complex<double>> vals(params.size());
        for (std::size_t k = 0; k < params.size(); ++k) {
            const Param& p = params[k];
            double u1 = (static_cast<double>(c % per_axis) + 0.5) / per_axis;
            c /= per_axis;
            if (p.type == Param::Type::Real) {
                double lo = p.lo.eval(real.data()), hi = p.hi.eval(real.data());
                real[k] = lo + u1 * (hi - lo);
                vals[k] = real[k];
                continue;
            }
            double u2 = (static_cast<double>(c % per_axis) + 0.37) / per_axis;
            c /= per_axis;
            double theta = 2 * std::numbers::pi * u2;
            if (p.type == Param::Type::Disk) {
                double r = p.r_lo.get_d() + u1 * Rational(p.r_hi - p.r_lo).get_d();
                vals[k] = p.center.to_complex() + std::polar(r, theta);
            } else {
                vals[k] = std::polar(std::tan(std::numbers::pi * u1 / 2), theta);
            }
        }
        out.push_back(std::move(vals));
    }
    return out;
}

std::string ParamCell::describe() const
{
    std::ostringstream os;
    os << (label.empty() ? "cell" : label) << " {(";
    for (std::size_t i = 0; i < map.size(); ++i) os << (i ? ", " : "") << map[i].to_string();
    os << ") |";
    auto names = param_names();
    for (auto& p : params) {
        os << ' ';
        if (p.type == Param::Type::Real)
            os << p.name << " in [" << p.lo.to_expr(names).to_string() << ", " << p.hi.to_expr(names).to_string() << "]";
        else if (p.type == Param::Type::Disk)
            os << p.name << " in disk(" << Expr::constant(p.center).to_string() << ", " << to_string(p.r_lo) << ".."
               << to_string(p.r_hi) << ")";
        else
            os << p.name << " in P1";
    }
    os << "}";
    if (orientation < 0) os << " (reversed)";
    return os.str();
}

ParamCell to_param_cell(const LinearCell& cell, const std::string& label)
{
    ParamCell pc;
    pc.label = label;
    pc.n = cell.n;
    pc.orientation = cell.orientation;
    int k = cell.dim();
    std::vector<std::string> names;
    for (int j = 1; j <= k; ++j) {
        names.push_back("s" + std::to_string(j));
        Affine hi = Affine::constant(1);
        for (int i = 0; i < j - 1; ++i) hi.coef[i] = -1;
        pc.params.push_back(Param::real(names.back(), Affine::constant(0), hi));
    }
    for (int s = 0; s < cell.n; ++s) {
        const auto& p0 = cell.points[0];
        Expr e = Expr::constant(ComplexQ{p0[2 * s], p0[2 * s + 1]});
        for (int j = 1; j <= k; ++j) {
            ComplexQ d{cell.points[j][2 * s] - p0[2 * s], cell.points[j][2 * s + 1] - p0[2 * s + 1]};
            if (!d.is_zero()) e = e + Expr::constant(d) * Expr::param(names[j - 1]);
        }
        pc.map.push_back(e.simplify());
    }
    return pc;
}

ParamCell restrict_param(const ParamCell& cell, int idx, const Expr& value, const std::optional<Affine>& av)
{
    ParamCell out;
    out.label = cell.label;
    out.n = cell.n;
    out.orientation = cell.orientation;
    std::map<std::string, Expr> subs{{cell.params[idx].name, value}};
    for (auto& e : cell.map) out.map.push_back(e.substitute(subs).simplify());
    auto shift = [&](Affine a) {
        auto it = a.coef.find(idx);
        if (it != a.coef.end()) {
            if (!av) throw DomainError("bound depends on a parameter fixed to a non-affine value");
            Rational w = it->second;
            a.coef.erase(it);
            a.c += w * av->c;
            for (auto& [j, b] : av->coef) a.coef[j] += w * b;
        }
        Affine r{a.c, {}};
        for (auto& [j, b] : a.coef)
            if (sgn(b) != 0) r.coef[j > idx ? j - 1 : j] = b;
        return r;
    };
    for (int k = 0; k < static_cast<int>(cell.params.size()); ++k) {
        if (k == idx) continue;
        Param p = cell.params[k];
        if (p.type == Param::Type::Real) {
            p.lo = shift(p.lo);
            p.hi = shift(p.hi);
        }
        out.params.push_back(std::move(p));
    }
    return out;
}

bool cell_in_divisor(const ParamCell& cell)
{
    for (auto& e : cell.map) {
        auto v = e.exact_value();
        if (v && v->is_one()) return true;
    }
    if (cell.dim() == 0) return false;
    auto samples = cell.interior_samples(3);
    for (std::size_t s = 0; s < cell.map.size(); ++s) {
        bool all = true;
        for (auto& smp : samples) {
            auto z = cell.eval(smp)[s];
            if (z.inf || z.undefined || std::abs(z.v - 1.0) > 1e-13) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

void CellChain::add(CellPtr c, const Rational& coeff)
{
    if (sgn(coeff) == 0) return;
    for (auto& [cell, v] : terms)
        if (cell == c) {
            v += coeff;
            return;
        }
    terms.emplace_back(std::move(c), coeff);
}

CellChain& CellChain::operator+=(const CellChain& o)
{
    if (terms.empty()) {
        n = o.n;
        degree = o.degree;
    }
    for (auto& [c, v] : o.terms) add(c, v);
    return *this;
}

CellChain CellChain::scaled(const Rational& c) const
{
    CellChain out{n, degree, {}};
    for (auto& [cell, v] : terms) out.add(cell, v * c);
    return out;
}

namespace {

bool degenerate(const ParamCell& c)
{
    return std::any_of(c.params.begin(), c.params.end(),
                       [](const Param& p) { return p.type == Param::Type::Real && p.lo == p.hi; });
}

}  // namespace

CellChain cell_boundary(const ParamCell& cell)
{
    CellChain out{cell.n, cell.dim() - 1, {}};
    auto names = cell.param_names();
    int pos = 0;
    auto push = [&](ParamCell face, int sign) {
        if (degenerate(face) || cell_in_divisor(face)) return;
        out.add(std::make_shared<const ParamCell>(std::move(face)), sign);
    };
    for (int k = 0; k < static_cast<int>(cell.params.size()); ++k) {
        const Param& p = cell.params[k];
        int sign = pos % 2 ? -1 : 1;
        if (p.type == Param::Type::Real) {
            if (!(p.lo == p.hi)) {
                push(restrict_param(cell, k, p.hi.to_expr(names), p.hi), sign);
                push(restrict_param(cell, k, p.lo.to_expr(names), p.lo), -sign);
            }
            pos += 1;
        } else if (p.type == Param::Type::Disk) {
            for (int side = 0; side < 2; ++side) {
                const Rational& r = side == 0 ? p.r_hi : p.r_lo;
                if (side == 1 && sgn(r) == 0) continue;
                ParamCell face = cell;
                face.faces.clear();
                std::string arg = p.name + "_arg";
                Expr x = Expr::constant(p.center) +
                         Expr::constant(r) * expi(Expr::constant(Rational(2)) * Expr::pi() * Expr::param(arg));
                for (auto& e : face.map) e = e.substitute({{p.name, x}}).simplify();
                face.params[k] = Param::real(arg, Affine::constant(0), Affine::constant(1));
                push(std::move(face), side == 0 ? sign : -sign);
            }
            pos += 2;
        } else {
            pos += 2;
        }
    }
    return out;
}

CellChain chain_boundary(const CellChain& chain)
{
    CellChain out{chain.n, chain.degree - 1, {}};
    for (auto& [c, v] : chain.terms) out += cell_boundary(*c).scaled(v);
    return out;
}

CellChain to_cell_chain(const Chain& chain, const SimplicialComplex& K)
{
    CellChain out{chain.ambient_n(), chain.degree(), {}};
    for (auto& [key, c] : chain.terms()) {
        if (K.in_divisor(key)) continue;
        auto cell = to_param_cell(LinearCell::from_simplex(K, key), format_simplex(key));
        out.add(std::make_shared<const ParamCell>(std::move(cell)), c);
    }
    return out;
}

// ---------------------------------------------------------------- admissibility

std::string AdmissibilityReport::summary() const
{
    std::ostringstream os;
    os << (overall ? "admissible" : "not admissible");
    for (auto& e : entries)
        if (!e.pass)
            os << "; " << e.face.name() << ": dim " << e.intersection_dim << " > " << e.support_dim - 2 * e.face.codim()
               << (e.witness.empty() ? "" : " at " + e.witness);
    return os.str();
}

AdmissibilityReport is_admissible(const Chain& chain, const SimplicialComplex& K, const CubicalFace& fixed)
{
    AdmissibilityReport rep;
    if (chain.is_zero()) return rep;
    int n = K.ambient_n();
    std::vector<int> remaining;
    for (int i = 0; i < n; ++i)
        if (!fixed.constrains(i)) remaining.push_back(i);
    std::vector<SimplexKey> keys;
    for (auto& [key, c] : chain.terms())
        if (!K.in_divisor(key)) keys.push_back(key);
    std::string free_slots;
    for (int i : remaining) free_slots += std::to_string(i) + ",";
    int m = static_cast<int>(remaining.size());
    for (auto& sub : all_cubical_faces(m)) {
        std::vector<FaceConstraint> cs;
        for (auto& c : sub.constraints()) cs.push_back({remaining[c.slot], c.alpha});
        CubicalFace face(cs);
        AdmissibilityEntry e{face, -1, chain.degree(), true, false, {}};
        const std::string tag = "admissibility " + face.name() + " free " + free_slots;
        for (const auto& key : keys) {
            int dim = K.memo(tag, key, [&] {
                return intersect_minus_divisor(LinearCell::from_simplex(K, key), face, remaining).dim;
            });
            if (dim > e.intersection_dim) {
                e.intersection_dim = dim;
                e.witness = format_simplex(key);
            }
        }
        e.pass = e.intersection_dim <= e.support_dim - 2 * face.codim();
        if (e.pass) e.witness.clear();
        rep.overall = rep.overall && e.pass;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

bool in_admissible_complex(const Chain& chain, const SimplicialComplex& K, const CubicalFace& fixed,
                           AdmissibilityReport* failing)
{
    auto r1 = is_admissible(chain, K, fixed);
    if (!r1.overall) {
        if (failing) *failing = r1;
        return false;
    }
    auto r2 = is_admissible(boundary(chain, &K, true), K, fixed);
    if (!r2.overall) {
        if (failing) *failing = r2;
        return false;
    }
    return true;
}

namespace {

// Intersection dimensions from declared face data, recursively, in original slot numbering.
void collect_declared(const ParamCell& cell, const std::vector<int>& slot_map, const CubicalFace& prefix,
                      std::map<CubicalFace, std::pair<int, std::string>>& out)
{
    for (std::size_t s = 0; s < cell.map.size(); ++s)
        for (Alpha a : {Alpha::Zero, Alpha::Inf}) {
            const DeclaredFace* df = cell.declared(static_cast<int>(s), a);
            CubicalFace face = prefix.with({slot_map[s], a});
            if (!df) {
                if (cell.dim() == 0) {
                    auto z = cell.eval({})[s];
                    bool hit = a == Alpha::Zero ? (!z.inf && std::abs(z.v) < 1e-12) : z.inf;
                    if (hit) {
                        auto& slot = out[face];
                        slot = {std::max(slot.first, 0), cell.describe()};
                    }
                    continue;
                }
                for (auto& smp : cell.interior_samples(4)) {
                    auto z = cell.eval(smp)[s];
                    bool hit = a == Alpha::Zero ? (!z.inf && std::abs(z.v) < 1e-12) : (z.inf || std::abs(z.v) > 1e12);
                    if (hit)
                        throw ValidationError("cell " + cell.describe() + " meets " + face.name() +
                                              " but declares no face data");
                }
                continue;
            }
            std::vector<int> sub_map;
            for (std::size_t t = 0; t < cell.map.size(); ++t)
                if (t != s) sub_map.push_back(slot_map[t]);
            for (auto& term : df->terms) {
                if (term.mult == 0) continue;
                auto& slot = out[face];
                if (term.cell->dim() > slot.first || slot.second.empty()) slot = {term.cell->dim(), term.cell->describe()};
                collect_declared(*term.cell, sub_map, face, out);
            }
        }
}

}  // namespace

AdmissibilityReport is_admissible(const CellChain& chain)
{
    AdmissibilityReport rep;
    std::map<CubicalFace, std::pair<int, std::string>> dims;
    for (auto& [cell, c] : chain.terms) {
        std::vector<int> ident(cell->n);
        for (int i = 0; i < cell->n; ++i) ident[i] = i;
        std::map<CubicalFace, std::pair<int, std::string>> local;
        collect_declared(*cell, ident, CubicalFace(), local);
        for (auto& [f, d] : local) {
            auto it = dims.find(f);
            if (it == dims.end() || d.first > it->second.first) dims[f] = d;
        }
    }
    for (auto& [face, d] : dims) {
        AdmissibilityEntry e{face, d.first, chain.degree, true, true, {}};
        e.pass = e.intersection_dim <= e.support_dim - 2 * face.codim();
        if (!e.pass) e.witness = d.second;
        rep.overall = rep.overall && e.pass;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

// ---------------------------------------------------------------- good triangulations

namespace {

bool all_finite(const SimplicialComplex& K, const SimplexKey& key)
{
    for (int id : key)
        for (auto& s : K.vertex(id).coords)
            if (s.inf) return false;
    return true;
}

}  // namespace

std::string TriangulationReport::summary() const
{
    std::string s;
    for (auto& c : checks) {
        if (!s.empty()) s += "; ";
        s += c.name + (c.pass ? ": ok" : ": FAIL");
        if (!c.detail.empty()) s += " (" + c.detail + ")";
    }
    return s;
}

TriangulationReport check_good_triangulation(const SimplicialComplex& K)
{
    TriangulationReport rep;
    auto add = [&](TriangulationCheck c) {
        rep.overall = rep.overall && c.pass;
        rep.checks.push_back(std::move(c));
    };
    int n = K.ambient_n();
    auto simplexes = K.all_simplexes();

    // (1) divisor is a subcomplex
    {
        TriangulationCheck c{"divisor subcomplex", true, {}};
        for (auto& key : simplexes) {
            if (!c.pass || key.size() < 2 || !all_finite(K, key)) continue;
            LinearCell cell = LinearCell::from_simplex(K, key);
            for (int j = 0; j < n && c.pass; ++j) {
                int on = 0;
                for (int id : key) on += K.vertex(id).coords[j].is_one();
                auto sec = cell_section(cell, {{j, ComplexQ{1, 0}}});
                if (sec.dim != on - 1) {
                    c.pass = false;
                    c.detail = "simplex " + format_simplex(key) + " meets z_" + std::to_string(j + 1) +
                               "=1 outside its vertex face";
                }
            }
        }
        auto it = K.marked().find("D");
        if (c.pass && it != K.marked().end())
            for (auto& key : it->second)
                if (!K.in_divisor(key)) {
                    c.pass = false;
                    c.detail = "marked D contains " + format_simplex(key) + " which is not in the divisor";
                    break;
                }
        add(c);
    }

    // (2) facewise regular embedding
    add({"facewise regular", true, "linear cells are facewise regular embeddings"});

    // (3) cubical faces are subcomplexes and their unions are full
    std::vector<CubicalFace> present;
    for (auto& f : all_cubical_faces(n)) {
        bool any = false;
        for (auto& [id, v] : K.vertices()) any = any || f.contains(v);
        if (any) present.push_back(f);
    }
    {
        TriangulationCheck c{"faces are subcomplexes", true, {}};
        for (auto& f : present) {
            bool finite = std::all_of(f.constraints().begin(), f.constraints().end(),
                                      [](const FaceConstraint& fc) { return fc.alpha == Alpha::Zero; });
            if (!finite) continue;
            std::vector<std::pair<int, ComplexQ>> eqs;
            for (auto& fc : f.constraints()) eqs.emplace_back(fc.slot, ComplexQ{});
            for (auto& key : simplexes) {
                if (key.size() < 2 || !all_finite(K, key)) continue;
                int on = 0;
                for (int id : key) on += f.contains(K.vertex(id));
                auto sec = cell_section(LinearCell::from_simplex(K, key), eqs);
                if (sec.dim != on - 1) {
                    c.pass = false;
                    c.detail = "simplex " + format_simplex(key) + " meets " + f.name() + " outside its vertex face";
                    break;
                }
            }
            if (!c.pass) break;
        }
        add(c);
    }
    {
        TriangulationCheck c{"unions of faces are full", true, {}};
        std::size_t m = std::min<std::size_t>(present.size(), 16);
        std::vector<std::set<int>> on(m);
        for (std::size_t i = 0; i < m; ++i)
            for (auto& [id, v] : K.vertices())
                if (present[i].contains(v)) on[i].insert(id);
        for (unsigned long mask = 1; mask < (1ul << m) && c.pass; ++mask) {
            std::set<int> verts;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (1ul << i)) verts.insert(on[i].begin(), on[i].end());
            for (auto& key : K.full_span(verts)) {
                bool inside = false;
                for (std::size_t i = 0; i < m && !inside; ++i)
                    if (mask & (1ul << i))
                        inside = std::all_of(key.begin(), key.end(), [&](int id) { return on[i].count(id) != 0; });
                if (!inside) {
                    c.pass = false;
                    std::string fam;
                    for (std::size_t i = 0; i < m; ++i)
                        if (mask & (1ul << i)) fam += (fam.empty() ? "" : " u ") + present[i].name();
                    c.detail = "simplex " + format_simplex(key) + " has all vertices on " + fam + " but is not in it";
                    break;
                }
            }
        }
        if (present.size() > m) c.detail = "only the first 16 occupied faces were combined";
        add(c);
    }

    // (4) marked unit-disk subcomplexes
    {
        TriangulationCheck c{"unit-disk subcomplexes", true, "none marked"};
        for (int i = 0; i < n; ++i) {
            auto it = K.marked().find("B_" + std::to_string(i + 1));
            if (it == K.marked().end()) continue;
            c.detail.clear();
            for (auto& key : it->second)
                for (int id : key) {
                    const Slot& s = K.vertex(id).coords[i];
                    if (s.inf || s.z.norm2() > 1) {
                        c.pass = false;
                        c.detail = "B_" + std::to_string(i + 1) + " contains vertex " + std::to_string(id) +
                                   " with |z| > 1";
                    }
                }
        }
        add(c);
    }
    return rep;
}

// ---------------------------------------------------------------- G_n

GnElement GnElement::identity(int n)
{
    GnElement g;
    g.perm.resize(n);
    for (int i = 0; i < n; ++i) g.perm[i] = i;
    g.invert.assign(n, false);
    return g;
}

int GnElement::sign() const
{
    auto [key, s] = canonical(perm);
    int flips = static_cast<int>(std::count(invert.begin(), invert.end(), true));
    return (flips % 2 ? -1 : 1) * s;
}

GnElement GnElement::inverse() const
{
    int n = static_cast<int>(perm.size());
    GnElement g;
    g.perm.resize(n);
    g.invert.resize(n);
    for (int i = 0; i < n; ++i) {
        g.perm[perm[i]] = i;
        g.invert[perm[i]] = invert[i];
    }
    return g;
}

GnElement GnElement::compose(const GnElement& h) const
{
    int n = static_cast<int>(perm.size());
    GnElement g;
    g.perm.resize(n);
    g.invert.resize(n);
    for (int i = 0; i < n; ++i) {
        int j = h.perm[i];
        g.perm[i] = perm[j];
        g.invert[i] = h.invert[i] != invert[j];
    }
    return g;
}

std::vector<GnElement> GnElement::all(int n)
{
    std::vector<GnElement> out;
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    do {
        for (int mask = 0; mask < (1 << n); ++mask) {
            GnElement g;
            g.perm = p;
            for (int i = 0; i < n; ++i) g.invert.push_back((mask >> i) & 1);
            out.push_back(std::move(g));
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

ParamCell gn_transform(const ParamCell& cell, const GnElement& g)
{
    int n = cell.n;
    if (static_cast<int>(g.perm.size()) != n) throw DomainError("group element has the wrong rank");
    ParamCell out = cell;
    out.faces.clear();
    std::vector<std::vector<std::complex<double>>> samples;
    if (cell.dim() > 0 && std::any_of(g.invert.begin(), g.invert.end(), [](bool b) { return b; }))
        samples = cell.interior_samples(5);
    for (int i = 0; i < n; ++i) {
        Expr e = cell.map[i];
        if (g.invert[i]) {
            if (cell.dim() == 0) {
                auto v = e.exact_value();
                if (v && v->is_zero()) throw DomainError("inversion of slot " + std::to_string(i + 1) + " hits 0");
            }
            for (auto& s : samples) {
                auto z = cell.eval(s)[i];
                if (!z.inf && std::abs(z.v) < 1e-12)
                    throw DomainError("inversion creates a pole inside " + cell.describe());
            }
            e = inv(e).simplify();
        }
        out.map[g.perm[i]] = e;
    }
    for (auto& df : cell.faces) {
        DeclaredFace nf;
        int s = df.slot;
        nf.slot = g.perm[s];
        nf.alpha = g.invert[s] ? (df.alpha == Alpha::Zero ? Alpha::Inf : Alpha::Zero) : df.alpha;
        GnElement sub;
        for (int i = 0; i < n; ++i) {
            if (i == s) continue;
            int j = g.perm[i];
            sub.perm.push_back(j - (j > g.perm[s] ? 1 : 0));
            sub.invert.push_back(g.invert[i]);
        }
        for (auto& t : df.terms) nf.terms.push_back({std::make_shared<const ParamCell>(gn_transform(*t.cell, sub)), t.mult});
        out.faces.push_back(std::move(nf));
    }
    return out;
}

}  // namespace tatep
