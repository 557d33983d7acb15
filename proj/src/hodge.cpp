#include "tatep/hodge.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

namespace tatep {

namespace {

using cd = std::complex<double>;
const cd kTwoPiI{0, 2 * std::numbers::pi};

cd two_pi_i_pow(int k)
{
    return std::pow(kTwoPiI, k);
}

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

std::string format_complex(cd v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", v.real(), v.imag());
    return buf;
}

}  // namespace

// ---------------------------------------------------------------- period values

PeriodValue PeriodValue::exact_value(const Rational& q, int power)
{
    PeriodValue p;
    p.q = q;
    p.power = sgn(q) == 0 ? 0 : power;
    p.value = q.get_d() * two_pi_i_pow(p.power);
    return p;
}

PeriodValue PeriodValue::numeric(std::complex<double> v, double error)
{
    PeriodValue p;
    p.exact = false;
    p.value = v;
    p.error = error;
    return p;
}

PeriodValue PeriodValue::times_two_pi_i(int k) const
{
    if (exact) return exact_value(q, power + k);
    return numeric(value * two_pi_i_pow(k), error * std::pow(2 * std::numbers::pi, k));
}

PeriodValue PeriodValue::operator*(const Rational& c) const
{
    if (exact) return exact_value(Rational(q * c), power);
    return numeric(value * c.get_d(), error * std::abs(c.get_d()));
}

PeriodValue PeriodValue::operator*(const PeriodValue& o) const
{
    if (exact && o.exact) return exact_value(Rational(q * o.q), power + o.power);
    if (is_exact_zero() || o.is_exact_zero()) return exact_value(0);
    return numeric(value * o.value, error * std::abs(o.value) + o.error * std::abs(value));
}

PeriodValue PeriodValue::operator/(const Rational& c) const
{
    if (sgn(c) == 0) throw DomainError("division of a period by zero");
    return *this * Rational(1 / c);
}

PeriodValue& PeriodValue::operator+=(const PeriodValue& o)
{
    if (o.is_exact_zero()) return *this;
    if (is_exact_zero()) return *this = o;
    if (exact && o.exact && power == o.power) return *this = exact_value(Rational(q + o.q), power);
    *this = numeric(value + o.value, error + o.error);
    return *this;
}

std::string PeriodValue::symbolic() const
{
    if (!exact) return format_complex(value);
    if (sgn(q) == 0) return "0";
    std::string coeff = q == 1 ? "" : q == -1 ? "-" : to_string(q) + "·";
    if (power == 0) return to_string(q);
    return coeff + "(2πi)^" + std::to_string(power);
}

DeRhamChain comparison_map(const BarChain& x, const ChainEvaluator& I)
{
    DeRhamChain out;
    for (const auto& [k, c] : x) {
        PeriodValue v = (I(k.right) * c).times_two_pi_i(k.twist);
        if (v.is_exact_zero()) continue;
        BarKey dk{k.letters, {}, k.twist};
        auto [it, inserted] = out.try_emplace(dk, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_exact_zero()) out.erase(it);
        }
    }
    return out;
}

// ---------------------------------------------------------------- filtrations

std::string side_name(Side s)
{
    return s == Side::Betti ? "Betti" : "deRham";
}

BarChain FilteredBarComplex::weight_truncate(const BarChain& x, int n) const
{
    BarChain out;
    for (const auto& [k, c] : x)
        if (-2 * k.twist <= n) out.emplace(k, c);
    return out;
}

BarChain FilteredBarComplex::hodge_truncate(const BarChain& x, int p) const
{
    if (side != Side::DeRham) throw ContractError("the Hodge filtration lives on the de Rham side");
    BarChain out;
    for (const auto& [k, c] : x)
        if (-k.twist >= p) out.emplace(k, c);
    return out;
}

BarChain FilteredBarComplex::weight_graded(const BarChain& x, int r) const
{
    BarChain out;
    for (const auto& [k, c] : x)
        if (k.twist == -r) out.emplace(k, c);
    return out;
}

// ---------------------------------------------------------------- realization

namespace {

int homogeneous_grade(const BarComplex& B, const BarChain& x, const std::string& name)
{
    if (x.empty()) throw ValidationError("cocycle " + name + " is zero");
    int g = B.grade(x.begin()->first);
    for (const auto& [k, c] : x)
        if (B.grade(k) != g) throw ValidationError("cocycle " + name + " is not homogeneous in grade");
    return g;
}

bool is_unit(const BarChain& x)
{
    return x.size() == 1 && x.begin()->first == BarKey{} && x.begin()->second == 1;
}

BarChain unit_chain()
{
    return BarChain{{BarKey{}, Rational(1)}};
}

const BarChain& lookup(const std::map<std::string, BarChain>& m, const std::string& name)
{
    static const BarChain unit = unit_chain();
    auto it = m.find(name);
    if (it != m.end()) return it->second;
    if (name == "1") return unit;
    throw ValidationError("unknown cocycle " + name);
}

using Coord3 = std::tuple<int, BarKey, BarKey>;

std::map<Coord3, Rational> kernel_image(const GradedComodule& V, const BarComplex& B, int i, const BarChain& X)
{
    std::map<Coord3, Rational> out;
    for (const auto& t : V.coaction[i])
        for (const auto& [hk, hc] : lookup(V.cocycles, t.cocycle))
            for (const auto& [xk, xc] : X) add_term(out, Coord3{t.basis, hk, xk}, Rational(t.coeff * hc * xc));
    for (const auto& [kk, c] : B.coproduct(X)) add_term(out, Coord3{i, kk.first, kk.second}, Rational(-c));
    return out;
}

}  // namespace

KernelBasis realization_kernel(const GradedComodule& V, const BarComplex& B,
                               const std::map<std::string, BarChain>& cocycles, Side side)
{
    V.validate(BarComplex(B.algebra(), BarCoefficients::Augmentation));
    std::vector<std::pair<std::string, int>> named;
    for (const auto& [name, x] : cocycles) {
        auto dx = B.d(x);
        if (!dx.empty()) throw ValidationError("cocycle " + name + " is not closed");
        named.emplace_back(name, homogeneous_grade(B, x, name));
    }
    std::stable_partition(named.begin(), named.end(), [&](const auto& e) { return is_unit(cocycles.at(e.first)); });

    std::vector<int> order(V.basis.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return V.grade[x] > V.grade[y]; });

    KernelBasis K;
    K.side = side;
    K.basis_names = V.basis;
    for (int i : order)
        for (const auto& [name, g] : named) K.coords.push_back({i, name, -V.grade[i] - g});

    std::vector<std::map<Coord3, Rational>> images;
    std::map<Coord3, int> rows;
    for (const auto& c : K.coords) {
        images.push_back(kernel_image(V, B, c.basis, B.shift_twist(cocycles.at(c.cocycle), c.shift)));
        for (const auto& [k, v] : images.back()) rows.try_emplace(k, static_cast<int>(rows.size()));
    }
    const int ncols = static_cast<int>(K.coords.size());
    linalg::Matrix M(rows.size(), linalg::Vector(ncols, Rational(0)));
    for (int j = 0; j < ncols; ++j)
        for (const auto& [k, v] : images[j]) M[rows.at(k)][j] = v;
    auto null = linalg::nullspace(M, ncols);
    auto pivots = linalg::rref(null, ncols);
    for (size_t r = 0; r < pivots.size(); ++r) {
        K.vectors.push_back(null[r]);
        int e = K.coords[pivots[r]].basis;
        K.names.push_back((side == Side::Betti ? "v" : "w") + std::to_string(V.grade[e]));
    }
    return K;
}

TensorElement KernelBasis::element(int k, const BarComplex& B, const std::map<std::string, BarChain>& cocycles,
                                   const GradedComodule&) const
{
    TensorElement out;
    for (size_t c = 0; c < coords.size(); ++c) {
        const Rational& q = vectors.at(k)[c];
        if (sgn(q) == 0) continue;
        for (const auto& [key, v] : B.shift_twist(cocycles.at(coords[c].cocycle), coords[c].shift))
            add_term(out, {coords[c].basis, key}, Rational(q * v));
    }
    return out;
}

std::string KernelBasis::to_string(int k) const
{
    std::ostringstream os;
    os << names.at(k) << " =";
    bool first = true;
    for (size_t c = 0; c < coords.size(); ++c) {
        const Rational& q = vectors[k][c];
        if (sgn(q) == 0) continue;
        os << (first ? (sgn(q) < 0 ? " -" : " ") : (sgn(q) < 0 ? " - " : " + "));
        first = false;
        if (abs(q) != 1) os << tatep::to_string(Rational(abs(q))) << "·";
        os << basis_names.at(coords[c].basis) << "⊗" << coords[c].cocycle;
        if (coords[c].shift) os << "·(2πi)^" << coords[c].shift;
    }
    return os.str();
}

std::vector<int> weight_graded_dims(const KernelBasis& K, const BarComplex& B,
                                    const std::map<std::string, BarChain>& cocycles, const GradedComodule& V)
{
    std::vector<TensorElement> elems;
    int max_r = 0;
    for (int k = 0; k < K.dim(); ++k) {
        elems.push_back(K.element(k, B, cocycles, V));
        for (const auto& [key, c] : elems.back()) max_r = std::max(max_r, -key.second.twist);
    }
    auto dim_W = [&](int n) {
        std::map<std::pair<int, BarKey>, int> rows;
        for (const auto& e : elems)
            for (const auto& [key, c] : e)
                if (-2 * key.second.twist > n) rows.try_emplace(key, static_cast<int>(rows.size()));
        linalg::Matrix M(rows.size(), linalg::Vector(K.dim(), Rational(0)));
        for (int k = 0; k < K.dim(); ++k)
            for (const auto& [key, c] : elems[k]) {
                auto it = rows.find(key);
                if (it != rows.end()) M[it->second][k] = c;
            }
        return K.dim() - (rows.empty() ? 0 : linalg::rank(M, K.dim()));
    };
    std::vector<int> out;
    int prev = 0;
    for (int r = 0; r <= max_r; ++r) {
        int w = dim_W(2 * r);
        out.push_back(w - prev);
        prev = w;
    }
    return out;
}

bool PeriodMatrix::lower_triangular() const
{
    for (size_t i = 0; i < entries.size(); ++i)
        for (size_t j = 0; j < entries[i].size(); ++j)
            if (derham_twists[i] > betti_twists[j] && !entries[i][j].is_exact_zero()) return false;
    return true;
}

std::string PeriodMatrix::table() const
{
    std::ostringstream os;
    os << "        ";
    for (const auto& b : betti_basis) os << "c(" << b << ")" << std::string(26, ' ');
    os << "\n";
    for (size_t i = 0; i < entries.size(); ++i) {
        os << derham_basis[i] << "      ";
        for (const auto& e : entries[i]) {
            std::string s = e.symbolic();
            os << s << std::string(s.size() < 31 ? 31 - s.size() : 1, ' ');
        }
        os << "\n";
    }
    return os.str();
}

PeriodMatrix period_matrix(const GradedComodule& V, const BarComplex& betti,
                           const std::map<std::string, BarChain>& betti_cocycles,
                           const std::map<std::string, BarChain>& derham_cocycles, const ChainEvaluator& I)
{
    auto Kb = realization_kernel(V, betti, betti_cocycles, Side::Betti);
    BarComplex derham(betti.algebra(), BarCoefficients::Augmentation);
    auto Kd = realization_kernel(V, derham, derham_cocycles, Side::DeRham);
    if (Kb.dim() != Kd.dim())
        throw SolvabilityError("Betti and de Rham kernels have dimensions " + std::to_string(Kb.dim()) + " and " +
                               std::to_string(Kd.dim()));
    const int n = Kb.dim();
    using Coord = std::pair<int, BarKey>;

    std::vector<std::map<Coord, PeriodValue>> images(n);
    for (int j = 0; j < n; ++j) {
        for (const auto& [key, q] : Kb.element(j, betti, betti_cocycles, V)) {
            DeRhamChain c = comparison_map(BarChain{{key.second, q}}, I);
            for (const auto& [dk, v] : c) images[j][{key.first, dk}] += v;
        }
    }
    std::vector<TensorElement> W(n);
    for (int k = 0; k < n; ++k) W[k] = Kd.element(k, derham, derham_cocycles, V);

    PeriodMatrix P;
    P.betti_basis = Kb.names;
    P.derham_basis = Kd.names;
    auto twist_of = [&](const KernelBasis& K, int k) {
        for (size_t c = 0; c < K.coords.size(); ++c)
            if (sgn(K.vectors[k][c]) != 0) return V.grade[K.coords[c].basis];
        return 0;
    };
    for (int k = 0; k < n; ++k) {
        P.betti_twists.push_back(twist_of(Kb, k));
        P.derham_twists.push_back(twist_of(Kd, k));
    }
    P.entries.assign(n, std::vector<PeriodValue>(n));
    for (int k = 0; k < n; ++k) {
        const Coord* pivot = nullptr;
        for (const auto& [coord, c] : W[k]) {
            bool alone = true;
            for (int l = 0; l < n && alone; ++l)
                if (l != k && W[l].count(coord)) alone = false;
            if (alone && (!pivot || coord.second.letters.size() < pivot->second.letters.size())) pivot = &coord;
        }
        if (!pivot) throw SolvabilityError("de Rham basis vector " + Kd.names[k] + " has no isolated coordinate");
        for (int j = 0; j < n; ++j) {
            auto it = images[j].find(*pivot);
            P.entries[k][j] = it == images[j].end() ? PeriodValue::exact_value(0) : it->second / W[k].at(*pivot);
        }
    }
    std::set<Coord> coords;
    for (const auto& w : W)
        for (const auto& [c, v] : w) coords.insert(c);
    for (const auto& im : images)
        for (const auto& [c, v] : im) coords.insert(c);
    for (int j = 0; j < n; ++j)
        for (const auto& c : coords) {
            cd lhs = images[j].count(c) ? images[j].at(c).value : cd(0);
            cd rhs = 0;
            for (int k = 0; k < n; ++k)
                if (W[k].count(c)) rhs += P.entries[k][j].value * W[k].at(c).get_d();
            P.residual = std::max(P.residual, std::abs(lhs - rhs));
        }
    return P;
}

MixedTateData mixed_tate_data(const PeriodMatrix& P)
{
    MixedTateData M;
    for (int t : P.betti_twists) M.betti_weights.push_back(2 * t);
    for (int t : P.derham_twists) {
        M.derham_weights.push_back(2 * t);
        M.hodge_levels.push_back(t);
    }
    for (const auto& row : P.entries) {
        M.comparison.emplace_back();
        for (const auto& e : row) M.comparison.back().push_back(e.value);
    }
    return M;
}

std::vector<MixedTateCheck> MixedTateData::validate(double tol) const
{
    std::vector<MixedTateCheck> out;
    MixedTateCheck odd{"Gr^W odd = 0", true, ""};
    for (int w : betti_weights)
        if (w % 2) odd.pass = false;
    for (int w : derham_weights)
        if (w % 2) odd.pass = false;
    out.push_back(odd);

    MixedTateCheck respects{"comparison respects W", true, ""};
    for (size_t i = 0; i < derham_weights.size(); ++i)
        for (size_t j = 0; j < betti_weights.size(); ++j)
            if (derham_weights[i] > betti_weights[j] && std::abs(comparison[i][j]) > tol) {
                respects.pass = false;
                respects.detail = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is nonzero";
            }
    out.push_back(respects);

    std::set<int> weights(derham_weights.begin(), derham_weights.end());
    weights.insert(betti_weights.begin(), betti_weights.end());
    for (int w : weights) {
        if (w % 2) continue;
        const int r = w / 2;
        std::vector<int> D, B;
        for (size_t i = 0; i < derham_weights.size(); ++i)
            if (derham_weights[i] == w) D.push_back(static_cast<int>(i));
        for (size_t j = 0; j < betti_weights.size(); ++j)
            if (betti_weights[j] == w) B.push_back(static_cast<int>(j));
        MixedTateCheck opp{"F and F̄ are " + std::to_string(w) + "-opposite on Gr^W_" + std::to_string(w), true, ""};
        if (D.size() != B.size()) {
            opp.pass = false;
            opp.detail = "graded dimensions differ";
            out.push_back(opp);
            continue;
        }
        const int m = static_cast<int>(D.size());
        Eigen::MatrixXcd C(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) C(i, j) = comparison[D[i]][B[j]];
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(C);
        if (!lu.isInvertible()) {
            opp.pass = false;
            opp.detail = "comparison is singular on the graded piece";
            out.push_back(opp);
            continue;
        }
        // Complex conjugation with respect to the Betti structure, in de Rham coordinates.
        Eigen::MatrixXcd conj = C * lu.inverse().conjugate();
        auto F = [&](int p) {
            std::vector<int> cols;
            for (int i = 0; i < m; ++i)
                if (hodge_levels[D[i]] >= p) cols.push_back(i);
            Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(m, static_cast<long>(cols.size()));
            for (size_t c = 0; c < cols.size(); ++c) S(cols[c], static_cast<long>(c)) = 1;
            return S;
        };
        auto rank = [&](const Eigen::MatrixXcd& A) {
            if (A.cols() == 0) return 0L;
            Eigen::FullPivLU<Eigen::MatrixXcd> l(A);
            l.setThreshold(1e-10);
            return static_cast<long>(l.rank());
        };
        int lo = 0, hi = 0;
        for (int i : D) {
            lo = std::min(lo, hodge_levels[i]);
            hi = std::max(hi, hodge_levels[i]);
        }
        for (int p = lo - 1; p <= hi + 1; ++p) {
            auto inter = [&](int q) {
                Eigen::MatrixXcd A = F(p), Bq = conj * F(q);
                Eigen::MatrixXcd AB(m, A.cols() + Bq.cols());
                AB << A, Bq;
                return std::pair{rank(A) + rank(Bq) - rank(AB), rank(AB)};
            };
            auto [i1, s1] = inter(2 * r - p);
            if (p != r && i1 != 0) {
                opp.pass = false;
                opp.detail = "F^" + std::to_string(p) + " meets conj F^" + std::to_string(2 * r - p);
            }
            auto [i2, s2] = inter(2 * r + 1 - p);
            if (i2 != 0 || s2 != m) {
                opp.pass = false;
                opp.detail = "F^" + std::to_string(p) + " and conj F^" + std::to_string(2 * r + 1 - p) +
                             " are not complementary";
            }
        }
        out.push_back(opp);
    }
    return out;
}

// ---------------------------------------------------------------- dilogarithm scenario

namespace {

CellPtr make_cell(ParamCell c)
{
    return std::make_shared<const ParamCell>(std::move(c));
}

CellChain single(int n, CellPtr c)
{
    CellChain out{n, c->dim(), {}};
    out.add(std::move(c), 1);
    return out;
}

Expr q(const Rational& v)
{
    return Expr::constant(v);
}

ParamCell point_cell(const std::string& label, std::vector<Rational> coords)
{
    ParamCell c;
    c.label = label;
    c.n = static_cast<int>(coords.size());
    for (auto& v : coords) c.map.push_back(q(v));
    return c;
}

ParamCell segment_cell(const std::string& label, const Rational& b)
{
    ParamCell c;
    c.label = label;
    c.n = 1;
    c.params.push_back(Param::real("t0", Affine::constant(0), Affine::constant(b)));
    c.map.push_back(Expr::parse("(- 1 t0)"));
    return c;
}

/// Strips labels so that equal geometry compares equal.
CellChain unlabeled(const CellChain& c)
{
    CellChain out{c.n, c.degree, {}};
    for (const auto& [cell, v] : c.terms) {
        ParamCell copy = *cell;
        copy.label.clear();
        copy.faces.clear();
        out.add(make_cell(std::move(copy)), v);
    }
    return out;
}

/// Number of cells left in lhs − rhs after merging identical cells.
int chain_difference(const CellChain& lhs, const CellChain& rhs, std::string* detail)
{
    CellChain diff = unlabeled(lhs);
    diff += unlabeled(rhs).scaled(-1);
    auto c = canonicalize(diff);
    if (detail) {
        std::ostringstream os;
        for (const auto& [cell, v] : c.terms) os << to_string(v) << "·" << cell->describe() << "; ";
        *detail = os.str();
    }
    return static_cast<int>(c.terms.size());
}

}  // namespace

std::vector<std::pair<std::string, CellChain>> dilog_cauchy_chains(const Rational& a)
{
    if (!(sgn(a) > 0 && a < 1)) throw DomainError("a must lie in (0, 1)");
    std::vector<std::pair<std::string, CellChain>> out;
    ParamCell g1;
    g1.label = "Gamma1";
    g1.n = 1;
    g1.params.push_back(Param::real("t0", Affine::constant(0), Affine::constant(a)));
    g1.params.push_back(Param::real("u", Affine::constant(0), Affine::constant(1)));
    g1.map.push_back(Expr::parse("(- (- 1 t0) (* i u t0))"));
    out.emplace_back("Gamma1", single(1, make_cell(g1)));

    ParamCell g2;
    g2.label = "Gamma2";
    g2.n = 2;
    g2.params.push_back(Param::real("t1", Affine::constant(0), Affine::constant(a)));
    g2.params.push_back(Param::real("t0", Affine::constant(0), Affine{Rational(0), {{0, Rational(1)}}}));
    g2.params.push_back(Param::real("u", Affine::constant(0), Affine::constant(1)));
    g2.map = {Expr::parse("(+ t1 (* i u t1 t1))"), Expr::parse("(- 1 t0)")};
    out.emplace_back("Gamma2", single(2, make_cell(g2)));
    return out;
}

ChainEvaluator DilogScenario::evaluator() const
{
    auto cache = std::make_shared<std::map<Monomial, PeriodValue>>();
    return [this, cache](const Monomial& m) -> PeriodValue {
        if (m.empty()) return PeriodValue::exact_value(1);
        auto it = cache->find(m);
        if (it != cache->end()) return it->second;
        if (m.size() != 1) throw PreconditionError("no geometric chain for the product " + N.to_string(m));
        const auto& g = N.generator(m[0]);
        PeriodValue v = PeriodValue::exact_value(0);
        if (g.kind == GeneratorKind::Chain) {
            auto cc = chain_cells.find(g.name);
            if (cc == chain_cells.end()) throw PreconditionError("generator " + g.name + " has no chain");
            for (const auto& comp : cc->second) {
                bool top = std::all_of(comp.terms.begin(), comp.terms.end(),
                                       [&](const auto& t) { return t.first->dim() == comp.n; });
                if (!top) continue;
                auto r = I_n(comp, cfg);
                if (!r.converged) throw ObstructionError("integral over " + g.name + " did not converge");
                if (!r.exact_zero) v += PeriodValue::numeric(r.value, r.error);
            }
        }
        (*cache)[m] = v;
        return v;
    };
}

bool DilogScenario::valid() const
{
    return std::all_of(relations.begin(), relations.end(), [](const auto& r) { return r.pass; });
}

std::unique_ptr<DilogScenario> build_dilog_scenario(const Rational& a, const QuadratureConfig& cfg, bool validate,
                                                    bool numeric_relations)
{
    if (!(sgn(a) > 0 && a < 1)) throw DomainError("a must lie in (0, 1), got " + to_string(a));
    auto S = std::make_unique<DilogScenario>();
    S->a = a;
    S->cfg = cfg;
    const Rational b = 1 - a;
    auto& N = S->N;
    N.add_generator("rho1(1-a)", 1, 1);
    N.add_generator("rho1(a)", 1, 1);
    N.add_generator("rho2(a)", 2, 1);
    N.add_generator("xi1(a)", 1, 0, GeneratorKind::Chain);
    N.add_generator("xi1(1-a)", 1, 0, GeneratorKind::Chain);
    N.add_generator("xi2(a)", 2, 0, GeneratorKind::Chain);
    const Poly x = N.gen("rho1(1-a)"), y = N.gen("rho1(a)"), r2 = N.gen("rho2(a)");
    N.set_differential("rho2(a)", N.mul(x, y));
    N.set_differential("xi1(a)", Rational(-1) * y);
    N.set_differential("xi1(1-a)", Rational(-1) * x);
    N.set_differential("xi2(a)", Rational(-1) * r2 + N.mul(x, N.gen("xi1(a)")));

    // Geometric cells.
    S->cycle_cells["rho1(a)"] = single(1, make_cell(point_cell("rho1(a)", {b})));
    S->cycle_cells["rho1(1-a)"] = single(1, make_cell(point_cell("rho1(1-a)", {a})));
    // x1 = t1 (1 − y) puts the zero of z3 at the centre of the sphere chart.
    const std::vector<Expr> eta21_map = {Expr::parse("(* t1 (- 1 y))"), Expr::parse("(- 1 (* t1 (- 1 y)))"),
                                         Expr::parse("(/ y (- y 1))")};
    ParamCell rho2;
    rho2.label = "rho2(a)";
    rho2.n = 3;
    rho2.params.push_back(Param::sphere("y"));
    for (const auto& e : eta21_map) rho2.map.push_back(e.substitute({{"t1", q(a)}}).simplify());
    rho2.faces.push_back({2, Alpha::Zero, {{make_cell(point_cell("rho1(1-a)*rho1(a)", {a, b})), 1}}});
    S->cycle_cells["rho2(a)"] = single(3, make_cell(rho2));

    S->chain_cells["xi1(a)"] = {single(1, make_cell(segment_cell("eta1(0)", a)))};
    S->chain_cells["xi1(1-a)"] = {single(1, make_cell(segment_cell("eta1(0)[1-a]", b)))};

    ParamCell diag;
    diag.label = "d eta2(1)";
    diag.n = 2;
    diag.params.push_back(Param::real("t1", Affine::constant(0), Affine::constant(a)));
    diag.map = {Expr::param("t1"), Expr::parse("(- 1 t1)")};
    ParamCell eta21;
    eta21.label = "eta2(1)";
    eta21.n = 3;
    eta21.params.push_back(Param::sphere("y"));
    eta21.params.push_back(Param::real("t1", Affine::constant(0), Affine::constant(a)));
    eta21.map = eta21_map;
    eta21.faces.push_back({2, Alpha::Zero, {{make_cell(diag), 1}}});
    ParamCell eta20;
    eta20.label = "eta2(0)";
    eta20.n = 2;
    eta20.params.push_back(Param::real("t1", Affine::constant(0), Affine::constant(a)));
    eta20.params.push_back(Param::real("t0", Affine::constant(0), Affine{Rational(0), {{0, Rational(1)}}}));
    eta20.map = {Expr::param("t1"), Expr::parse("(- 1 t0)")};
    S->chain_cells["xi2(a)"] = {single(3, make_cell(eta21)), single(2, make_cell(eta20))};

    // Cocycles.
    BarComplex BN = S->bar_N(), BB = S->bar_betti();
    S->derham_cocycles["1"] = BarChain{{BarKey{}, Rational(1)}};
    S->derham_cocycles["Li1(a)"] = BN.word({y});
    S->derham_cocycles["Li1(1-a)"] = BN.word({x});
    S->derham_cocycles["Li2(a)"] = BN.word({r2}) - BN.word({x, y});
    const Poly one = N.one();
    S->betti_cocycles["Z0"] = BB.word({}, one, 0);
    S->betti_cocycles["Z1(a)"] = BB.word({y}, one, -2) + BB.word({}, N.gen("xi1(a)"), -1);
    S->betti_cocycles["Z1(1-a)"] = BB.word({x}, one, -2) + BB.word({}, N.gen("xi1(1-a)"), -1);
    S->betti_cocycles["Z2"] = BB.word({r2}, one, -2) - BB.word({x, y}, one, -2) -
                              BB.word({x}, N.gen("xi1(a)"), -1) + BB.word({}, N.gen("xi2(a)"), 0);

    auto& V = S->V;
    V.basis = {"e2", "e1", "e0"};
    V.grade = {2, 1, 0};
    V.coaction = {{{0, "1", 1}, {1, "Li1(a)", -1}, {2, "Li2(a)", 1}}, {{1, "1", 1}, {2, "Li1(1-a)", 1}}, {{2, "1", 1}}};
    for (const auto& [name, h] : S->derham_cocycles)
        if (name != "1") V.cocycles[name] = h;

    // Relations.
    auto& R = S->relations;
    auto symbolic = [&](const std::string& name, auto&& check) {
        RelationCheck rc{name, "symbolic", 0, 0, true, ""};
        try {
            check();
        } catch (const Error& e) {
            rc.pass = false;
            rc.detail = e.what();
        }
        R.push_back(rc);
    };
    symbolic("presentation: d² = 0 and bigrading", [&] { N.validate(); });
    for (const auto& [name, h] : S->derham_cocycles)
        symbolic("d(" + name + ") = 0", [&] {
            auto dh = BN.d(h);
            if (!dh.empty()) throw ValidationError(BN.to_string(dh));
        });
    for (const auto& [name, z] : S->betti_cocycles)
        symbolic("d(" + name + ") = 0", [&] {
            auto dz = BB.d(z);
            if (!dz.empty()) throw ValidationError(BB.to_string(dz));
        });
    symbolic("comodule V is counital and coassociative", [&] { V.validate(BN); });

    auto geometric = [&](const std::string& name, const std::string& kind, const CellChain& lhs,
                         const CellChain& rhs) {
        RelationCheck rc{name, kind, 0, 0, true, ""};
        try {
            int left = chain_difference(lhs, rhs, &rc.detail);
            rc.residual = left;
            rc.pass = left == 0;
        } catch (const Error& e) {
            rc.pass = false;
            rc.detail = e.what();
        }
        R.push_back(rc);
    };
    const auto& eta1 = S->chain_cells["xi1(a)"][0];
    const auto& eta1b = S->chain_cells["xi1(1-a)"][0];
    const auto& eta2_1 = S->chain_cells["xi2(a)"][0];
    const auto& eta2_0 = S->chain_cells["xi2(a)"][1];
    geometric("δ eta1(0) = rho1(a)", "boundary", chain_boundary(eta1), S->cycle_cells["rho1(a)"]);
    geometric("δ eta1(0)[1-a] = rho1(1-a)", "boundary", chain_boundary(eta1b), S->cycle_cells["rho1(1-a)"]);
    geometric("∂ eta1(0) = 0", "declared", cubical_differential(eta1), CellChain{0, 0, {}});
    geometric("δ eta2(1) = rho2(a)", "boundary", chain_boundary(eta2_1), S->cycle_cells["rho2(a)"]);
    geometric("∂ eta2(0) = 0", "declared", cubical_differential(eta2_0), CellChain{1, 2, {}});
    {
        ParamCell prod = segment_cell("rho1(1-a)*eta1(0)", a);
        prod.n = 2;
        prod.map.insert(prod.map.begin(), q(a));
        CellChain rhs = cubical_differential(eta2_1).scaled(-1);
        rhs += single(2, make_cell(prod));
        geometric("δ eta2(0) = -∂ eta2(1) + rho1(1-a)·eta1(0)", "boundary", chain_boundary(eta2_0), rhs);
    }
    geometric("∂ rho2(a) = rho1(1-a)·rho1(a)", "declared", cubical_differential(S->cycle_cells["rho2(a)"]),
              single(2, make_cell(point_cell("", {a, b}))));

    auto multiplicity = [&](const std::string& name, const ParamCell& cell) {
        RelationCheck rc{name, "multiplicity", 0, 1e-2, true, ""};
        try {
            auto checks = validate_declared_faces(cell, 0.02, cfg, rc.tolerance);
            for (const auto& c : checks) {
                rc.residual = std::max(rc.residual, c.residual);
                rc.pass = rc.pass && c.pass;
            }
            if (checks.empty()) {
                rc.pass = false;
                rc.detail = "no declared faces";
            }
        } catch (const Error& e) {
            rc.pass = false;
            rc.detail = e.what();
        }
        R.push_back(rc);
    };
    if (numeric_relations) {
        multiplicity("face multiplicity of rho2(a) at z3 = 0", *S->cycle_cells["rho2(a)"].terms[0].first);
        multiplicity("face multiplicity of eta2(1) at z3 = 0", *eta2_1.terms[0].first);
    }

    if (validate)
        for (const auto& rc : R)
            if (!rc.pass) throw ScenarioError("relation failed: " + rc.name + (rc.detail.empty() ? "" : ": " + rc.detail));
    return S;
}

double li1_series(double x)
{
    if (!(std::abs(x) < 1)) throw DomainError("series needs |x| < 1");
    double s = 0, p = 1;
    for (int k = 1; k < 100000; ++k) {
        p *= x;
        s += p / k;
        if (std::abs(p) < 1e-18) break;
    }
    return s;
}

double dilog_series(double x)
{
    if (!(std::abs(x) < 1)) throw DomainError("series needs |x| < 1");
    double s = 0, p = 1;
    for (int k = 1; k < 100000; ++k) {
        p *= x;
        s += p / (static_cast<double>(k) * k);
        if (std::abs(p) < 1e-18) break;
    }
    return s;
}

}  // namespace tatep
