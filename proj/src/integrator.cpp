#include "tatep/integrator.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <mutex>
#include <queue>
#include <random>
#include <thread>

namespace tatep {

using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
const cd kTwoPiI{0, 2 * kPi};

// ---------------------------------------------------------------- nested rules

struct Rule1D {
    std::vector<double> x;   // nodes on [0, 1]
    std::vector<double> wk;  // Kronrod weights (sum 1)
    std::vector<double> wg;  // embedded Gauss weights, 0 off the Gauss nodes
};

template <unsigned K, unsigned G>
Rule1D make_rule()
{
    using gk = boost::math::quadrature::gauss_kronrod<double, K>;
    using ga = boost::math::quadrature::gauss<double, G>;
    const auto& ax = gk::abscissa();
    const auto& aw = gk::weights();
    const auto& gx = ga::abscissa();
    const auto& gw = ga::weights();
    auto gauss_weight = [&](double a) {
        for (std::size_t j = 0; j < gx.size(); ++j)
            if (std::abs(gx[j] - a) < 1e-14) return gw[j];
        return 0.0;
    };
    Rule1D r;
    for (std::size_t i = 0; i < ax.size(); ++i) {
        double a = ax[i];
        double wk = aw[i] / 2, wg = gauss_weight(a) / 2;
        if (a == 0) {
            r.x.push_back(0.5);
            r.wk.push_back(wk);
            r.wg.push_back(wg);
        } else {
            for (double s : {-1.0, 1.0}) {
                r.x.push_back(0.5 + s * a / 2);
                r.wk.push_back(wk);
                r.wg.push_back(wg);
            }
        }
    }
    return r;
}

const Rule1D& rule_for(int d)
{
    static const Rule1D fine = make_rule<15, 7>();
    static const Rule1D coarse = make_rule<7, 3>();
    return d <= 2 ? fine : coarse;
}

struct Box {
    std::vector<double> lo, hi;
    cd value;
    double error = 0;
    int split_axis = 0;
    bool operator<(const Box& o) const { return error < o.error; }
};

void apply_rule(Box& b, const std::function<cd(const double*)>& f, int d, long& evals)
{
    const Rule1D& r = rule_for(d);
    const int m = static_cast<int>(r.x.size());
    long total = 1;
    for (int k = 0; k < d; ++k) total *= m;
    std::vector<int> idx(d, 0);
    std::vector<double> u(d);
    double vol = 1;
    for (int k = 0; k < d; ++k) vol *= b.hi[k] - b.lo[k];
    cd qk = 0, qg = 0;
    std::vector<cd> qaxis(d, 0);
    for (long code = 0; code < total; ++code) {
        long c = code;
        for (int k = 0; k < d; ++k) {
            idx[k] = static_cast<int>(c % m);
            c /= m;
            u[k] = b.lo[k] + (b.hi[k] - b.lo[k]) * r.x[idx[k]];
        }
        cd v = f(u.data());
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) v = 0;
        double wk = 1, wg = 1;
        for (int k = 0; k < d; ++k) {
            wk *= r.wk[idx[k]];
            wg *= r.wg[idx[k]];
        }
        qk += wk * v;
        qg += wg * v;
        for (int k = 0; k < d; ++k)
            if (r.wg[idx[k]] != 0) qaxis[k] += (wk / r.wk[idx[k]] * r.wg[idx[k]]) * v;
    }
    evals += total;
    b.value = qk * vol;
    double best = -1;
    double axis_sum = 0;
    for (int k = 0; k < d; ++k) {
        double e = std::abs(qk - qaxis[k]) * vol;
        axis_sum += e;
        if (e > best) {
            best = e;
            b.split_axis = k;
        }
    }
    if (best <= 0) {
        int widest = 0;
        for (int k = 1; k < d; ++k)
            if (b.hi[k] - b.lo[k] > b.hi[widest] - b.lo[widest]) widest = k;
        b.split_axis = widest;
    }
    b.error = std::max(std::abs(qk - qg) * vol, axis_sum);
}

// ---------------------------------------------------------------- small linear algebra

cd complex_det(std::vector<cd> m, int n)
{
    cd det = 1;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
        if (m[piv * n + c] == cd(0)) return 0;
        if (piv != c) {
            for (int k = 0; k < n; ++k) std::swap(m[c * n + k], m[piv * n + k]);
            det = -det;
        }
        det *= m[c * n + c];
        for (int r = c + 1; r < n; ++r) {
            cd f = m[r * n + c] / m[c * n + c];
            for (int k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
        }
    }
    return det;
}

double real_det(std::vector<double> m, int n)
{
    std::vector<cd> c(m.begin(), m.end());
    return complex_det(c, n).real();
}

// ---------------------------------------------------------------- cell charts

// Maps the unit cube onto the parameter domain of a cell. Disks use polar coordinates
// (ρ, φ); each sphere parameter is covered by the two charts x = w and x = 1/w, |w| <= 1.
class CellChart {
public:
    CellChart(const ParamCell& cell, std::vector<int> sphere_charts)
        : cell_(cell), sphere_charts_(std::move(sphere_charts))
    {
        auto names = cell.param_names();
        for (auto& e : cell.map) {
            Expr s = e.simplify();
            slots_.emplace_back(s, names);
            std::vector<CompiledExpr> ds;
            for (auto& p : cell.params) ds.emplace_back(s.derivative(p.name).simplify(), names);
            derivs_.push_back(std::move(ds));
        }
        d_ = cell.dim();
    }

    int dim() const { return d_; }
    int n() const { return static_cast<int>(cell_.map.size()); }

    // Fills z (n values) and G (n × d, row-major) at cube point u; returns the cube Jacobian.
    double eval(const double* u, std::vector<cd>& z, std::vector<cd>& G) const
    {
        const auto& ps = cell_.params;
        std::vector<cd> vals(ps.size());
        std::vector<double> real(ps.size(), 0);
        std::vector<std::pair<cd, cd>> dx(ps.size());  // d(param)/d(first, second natural coordinate)
        double jac = 1;
        int col = 0, sphere = 0;
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const Param& p = ps[k];
            if (p.type == Param::Type::Real) {
                double lo = p.lo.eval(real.data()), hi = p.hi.eval(real.data());
                real[k] = lo + (hi - lo) * u[col];
                vals[k] = real[k];
                jac *= hi - lo;
                col += 1;
                continue;
            }
            double rho, phi = 2 * kPi * u[col + 1];
            cd e = std::polar(1.0, phi);
            if (p.type == Param::Type::Disk) {
                double rlo = p.r_lo.get_d(), rhi = p.r_hi.get_d();
                rho = rlo + (rhi - rlo) * u[col];
                vals[k] = p.center.to_complex() + rho * e;
                dx[k] = {e, cd(0, 1) * rho * e};
                jac *= (rhi - rlo) * 2 * kPi;
            } else {
                rho = u[col];
                cd w = rho * e;
                cd dxdw = 1;
                if (sphere_charts_.at(sphere++) == 0) {
                    vals[k] = w;
                } else {
                    vals[k] = 1.0 / w;
                    dxdw = -1.0 / (w * w);
                }
                dx[k] = {dxdw * e, dxdw * cd(0, 1) * rho * e};
                jac *= 2 * kPi;
            }
            col += 2;
        }
        const int nn = n();
        z.assign(nn, 0);
        G.assign(static_cast<std::size_t>(nn) * d_, 0);
        for (int s = 0; s < nn; ++s) {
            z[s] = slots_[s].eval(vals.data());
            int c = 0;
            for (std::size_t k = 0; k < ps.size(); ++k) {
                cd dz = derivs_[s][k].eval(vals.data());
                if (ps[k].type == Param::Type::Real) {
                    G[s * d_ + c] = dz;
                    c += 1;
                } else {
                    G[s * d_ + c] = dz * dx[k].first;
                    G[s * d_ + c + 1] = dz * dx[k].second;
                    c += 2;
                }
            }
        }
        return jac;
    }

private:
    const ParamCell& cell_;
    std::vector<int> sphere_charts_;
    std::vector<CompiledExpr> slots_;
    std::vector<std::vector<CompiledExpr>> derivs_;
    int d_ = 0;
};

std::vector<std::vector<int>> all_sphere_charts(const ParamCell& cell)
{
    int m = 0;
    for (auto& p : cell.params) m += p.type == Param::Type::Sphere;
    std::vector<std::vector<int>> out;
    for (int code = 0; code < (1 << m); ++code) {
        std::vector<int> c(m);
        for (int j = 0; j < m; ++j) c[j] = (code >> j) & 1;
        out.push_back(c);
    }
    return out;
}

IntegralResult integrate_cell(const ParamCell& cell, const std::function<cd(const CellChart&, const double*)>& density,
                              double rel, const QuadratureConfig& cfg,
                              const std::function<std::vector<std::pair<std::vector<double>, std::vector<double>>>(
                                  const CellChart&)>& localize = nullptr)
{
    IntegralResult total;
    total.value = 0;
    auto charts = all_sphere_charts(cell);
    double abs_share = cfg.abs_tol / static_cast<double>(charts.size());
    for (auto& sc : charts) {
        CellChart chart(cell, sc);
        std::vector<std::pair<std::vector<double>, std::vector<double>>> boxes;
        if (localize) {
            boxes = localize(chart);
            if (boxes.empty()) continue;
        }
        auto f = [&](const double* u) { return density(chart, u); };
        total += integrate_cube(f, chart.dim(), rel, abs_share, cfg.max_evaluations, boxes);
    }
    total.value *= static_cast<double>(cell.orientation);
    return total;
}

// Richardson-style fallback: shrink the cube to [δ, 1 − δ]^d and fit L + A δ log(1/δ) + B δ.
IntegralResult truncated_fallback(const std::function<cd(const double*)>& f, int d, double rel,
                                  const QuadratureConfig& cfg)
{
    std::vector<double> deltas = cfg.truncation_radii;
    std::vector<cd> vals;
    IntegralResult out;
    for (double delta : deltas) {
        std::vector<double> lo(d, delta), hi(d, 1 - delta);
        auto r = integrate_cube(f, d, rel, cfg.abs_tol, cfg.max_evaluations, {{lo, hi}});
        out.evaluations += r.evaluations;
        out.error += r.error;
        vals.push_back(r.value);
    }
    auto fit = [&](std::size_t first) {
        // least squares on rows [1, δ log(1/δ), δ]
        std::size_t m = deltas.size() - first;
        std::vector<double> ata(9, 0);
        std::vector<cd> atb(3, 0);
        for (std::size_t i = first; i < deltas.size(); ++i) {
            double dl = deltas[i];
            double row[3] = {1, dl * std::log(1 / dl), dl};
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) ata[a * 3 + b] += row[a] * row[b];
                atb[a] += row[a] * vals[i];
            }
        }
        (void)m;
        // Cramer's rule for the constant term.
        double det = real_det(ata, 3);
        std::vector<cd> num(ata.begin(), ata.end());
        for (int r = 0; r < 3; ++r) num[r * 3] = atb[r];
        return complex_det(num, 3) / det;
    };
    cd all = fit(0);
    cd tail = deltas.size() > 3 ? fit(deltas.size() - 3) : all;
    out.value = all;
    out.error += std::abs(all - tail) + std::abs(vals.back() - all) * 1e-3;
    out.converged = out.error <= std::max(cfg.abs_tol, rel * std::abs(out.value));
    return out;
}

bool type_reason_zero(const ParamCell& cell) { return cell.has_complex_param() || cell.has_constant_slot(); }

cd omega_density(const CellChart& chart, const double* u)
{
    std::vector<cd> z, G;
    double jac = chart.eval(u, z, G);
    int n = chart.n();
    for (int s = 0; s < n; ++s) {
        if (z[s] == cd(0)) return 0;
        for (int k = 0; k < n; ++k) G[s * n + k] /= z[s];
    }
    return complex_det(G, n) * jac * std::pow(kTwoPiI, -n);
}

cd abs_omega_density(const CellChart& chart, const double* u)
{
    std::vector<cd> z, G;
    double jac = chart.eval(u, z, G);
    int n = chart.n();
    for (int s = 0; s < n; ++s) {
        if (z[s] == cd(0)) return 0;
        for (int k = 0; k < n; ++k) G[s * n + k] /= z[s];
    }
    return std::abs(complex_det(G, n)) * std::abs(jac) / std::pow(2 * kPi, n);
}

// a = dw/w for w = z_slot (α = 0) or 1/z_slot (α = ∞); returns r = |w|.
double log_differential(const std::vector<cd>& z, const std::vector<cd>& G, int d, int slot, Alpha alpha,
                        std::vector<cd>& a)
{
    a.assign(d, 0);
    cd zs = z[slot];
    for (int k = 0; k < d; ++k) a[k] = G[slot * d + k] / zs;
    if (alpha == Alpha::Inf)
        for (auto& v : a) v = -v;
    return alpha == Alpha::Zero ? std::abs(zs) : 1 / std::abs(zs);
}

// Grid boxes that may meet the annulus ε/2 <= |w| <= ε, using a corner-difference Lipschitz margin.
std::vector<std::pair<std::vector<double>, std::vector<double>>> annulus_boxes(const CellChart& chart, int slot,
                                                                               Alpha alpha, double epsilon)
{
    int d = chart.dim();
    int N = d == 1 ? 256 : d == 2 ? 64 : d == 3 ? 16 : 8;
    long corners = 1, cells = 1;
    for (int k = 0; k < d; ++k) {
        corners *= N + 1;
        cells *= N;
    }
    std::vector<double> r(corners);
    std::vector<cd> z, G;
    std::vector<double> u(d);
    for (long code = 0; code < corners; ++code) {
        long c = code;
        for (int k = 0; k < d; ++k) {
            u[k] = static_cast<double>(c % (N + 1)) / N;
            c /= N + 1;
        }
        chart.eval(u.data(), z, G);
        cd zs = z[slot];
        double v = alpha == Alpha::Zero ? std::abs(zs) : 1 / std::abs(zs);
        r[code] = std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN();
    }
    std::vector<std::pair<std::vector<double>, std::vector<double>>> out;
    std::vector<int> idx(d);
    for (long code = 0; code < cells; ++code) {
        long c = code;
        for (int k = 0; k < d; ++k) {
            idx[k] = static_cast<int>(c % N);
            c /= N;
        }
        double mn = std::numeric_limits<double>::infinity(), mx = 0;
        bool bad = false;
        for (int corner = 0; corner < (1 << d); ++corner) {
            long flat = 0, stride = 1;
            for (int k = 0; k < d; ++k) {
                flat += (idx[k] + ((corner >> k) & 1)) * stride;
                stride *= N + 1;
            }
            double v = r[flat];
            if (std::isnan(v)) {
                bad = true;
                break;
            }
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        double margin = 2 * (mx - mn);
        if (bad || (mn - margin <= epsilon && mx + margin >= epsilon / 2)) {
            std::vector<double> lo(d), hi(d);
            for (int k = 0; k < d; ++k) {
                lo[k] = static_cast<double>(idx[k]) / N;
                hi[k] = static_cast<double>(idx[k] + 1) / N;
            }
            out.emplace_back(lo, hi);
        }
    }
    return out;
}

CellPtr make_cell(ParamCell c) { return std::make_shared<const ParamCell>(std::move(c)); }

// Exact decimal-friendly rational for a radius.
Rational radius_rational(double eps)
{
    Rational q(static_cast<long>(std::llround(eps * 1e12)), 1000000000000L);
    q.canonicalize();
    return q;
}

template <class F>
void parallel_for(int count, int threads, F&& body)
{
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex mu;
    for (int t = 0; t < std::min(threads, count); ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

// ---------------------------------------------------------------- config and results

double QuadratureConfig::rel_for(int dim) const
{
    if (rel_tol > 0) return rel_tol;
    return dim <= 1 ? 1e-8 : dim == 2 ? 1e-6 : 1e-4;
}

void QuadratureConfig::validate() const
{
    if (rel_tol < 0 || abs_tol <= 0) throw DomainError("quadrature tolerances must be positive");
    if (max_evaluations <= 0) throw DomainError("evaluation budget must be positive");
    for (std::size_t i = 0; i < truncation_radii.size(); ++i) {
        if (!(truncation_radii[i] > 0)) throw DomainError("truncation radii must be positive");
        if (i && !(truncation_radii[i] < truncation_radii[i - 1]))
            throw DomainError("truncation radii must decrease strictly");
    }
    if (truncation_radii.size() < 3) throw DomainError("at least three truncation radii are needed");
}

IntegralResult& IntegralResult::operator+=(const IntegralResult& o)
{
    value += o.value;
    error += o.error;
    converged = converged && o.converged;
    evaluations += o.evaluations;
    exact_zero = exact_zero && o.exact_zero;
    return *this;
}

IntegralResult IntegralResult::scaled(cd c) const
{
    IntegralResult r = *this;
    r.value *= c;
    r.error *= std::abs(c);
    return r;
}

// ---------------------------------------------------------------- cubature

IntegralResult integrate_cube(const std::function<cd(const double*)>& f, int d, double rel_tol, double abs_tol,
                              long max_evaluations,
                              const std::vector<std::pair<std::vector<double>, std::vector<double>>>& boxes)
{
    IntegralResult res;
    res.value = 0;
    if (d == 0) {
        res.value = f(nullptr);
        res.evaluations = 1;
        return res;
    }
    std::priority_queue<Box> queue;
    std::vector<Box> done;
    long evals = 0;
    auto push = [&](Box b) {
        apply_rule(b, f, d, evals);
        queue.push(std::move(b));
    };
    if (boxes.empty()) {
        push(Box{std::vector<double>(d, 0.0), std::vector<double>(d, 1.0), 0, 0, 0});
    } else {
        for (auto& [lo, hi] : boxes) push(Box{lo, hi, 0, 0, 0});
    }
    cd total = 0;
    double err = 0;
    auto recompute = [&] {
        total = 0;
        err = 0;
        auto copy = queue;
        while (!copy.empty()) {
            total += copy.top().value;
            err += copy.top().error;
            copy.pop();
        }
        for (auto& b : done) {
            total += b.value;
            err += b.error;
        }
    };
    recompute();
    long iterations = 0;
    while (!queue.empty()) {
        if (err <= std::max(abs_tol, rel_tol * std::abs(total))) break;
        if (evals >= max_evaluations) break;
        Box b = queue.top();
        queue.pop();
        int ax = b.split_axis;
        double mid = 0.5 * (b.lo[ax] + b.hi[ax]);
        if (!(mid > b.lo[ax] && mid < b.hi[ax]) || b.hi[ax] - b.lo[ax] < 1e-15) {
            done.push_back(b);
            continue;
        }
        Box l = b, r = b;
        l.hi[ax] = mid;
        r.lo[ax] = mid;
        total -= b.value;
        err -= b.error;
        apply_rule(l, f, d, evals);
        apply_rule(r, f, d, evals);
        total += l.value + r.value;
        err += l.error + r.error;
        queue.push(std::move(l));
        queue.push(std::move(r));
        if (++iterations % 4096 == 0) recompute();
    }
    recompute();
    res.value = total;
    res.error = std::max(err, 0.0);
    res.evaluations = evals;
    res.converged = res.error <= std::max(abs_tol, rel_tol * std::abs(total));
    return res;
}

// ---------------------------------------------------------------- ω_n

IntegralResult integrate_omega(const ParamCell& cell, const QuadratureConfig& cfg)
{
    cfg.validate();
    int n = static_cast<int>(cell.map.size());
    if (cell.n != n) throw StructuralError("cell " + cell.describe() + " has a map of the wrong length");
    if (cell.dim() != n)
        throw DomainError("cell " + cell.describe() + " has dimension " + std::to_string(cell.dim()) +
                          ", expected " + std::to_string(n));
    IntegralResult r;
    r.value = 0;
    if (n == 0 || cell_in_divisor(cell) || type_reason_zero(cell)) {
        if (n == 0) r.value = static_cast<double>(cell.orientation);
        r.exact_zero = n != 0;
        return r;
    }
    double rel = cfg.rel_for(n);
    r = integrate_cell(cell, omega_density, rel, cfg);
    if (!r.converged) {
        CellChart chart(cell, {});
        auto f = [&](const double* u) { return omega_density(chart, u); };
        IntegralResult fb = truncated_fallback(f, n, rel, cfg);
        fb.value *= static_cast<double>(cell.orientation);
        fb.evaluations += r.evaluations;
        if (fb.converged) return fb;
        r.evaluations = fb.evaluations;
    }
    return r;
}

IntegralResult integrate_abs_omega(const ParamCell& cell, const QuadratureConfig& cfg)
{
    cfg.validate();
    int n = static_cast<int>(cell.map.size());
    if (cell.dim() != n) throw DomainError("cell " + cell.describe() + " has the wrong dimension for |ω_n|");
    IntegralResult r;
    r.value = 0;
    if (n == 0 || cell_in_divisor(cell) || type_reason_zero(cell)) {
        if (n == 0) r.value = 1;
        r.exact_zero = n != 0;
        return r;
    }
    r = integrate_cell(cell, abs_omega_density, cfg.rel_for(n), cfg);
    r.value *= static_cast<double>(cell.orientation);  // undo the orientation factor
    return r;
}

IntegralResult I_n(const CellChain& gamma, const QuadratureConfig& cfg)
{
    cfg.validate();
    const int n = gamma.n;
    IntegralResult total;
    total.value = 0;
    total.exact_zero = true;
    if (n == 0) {
        for (auto& [c, v] : gamma.terms) total.value += v.get_d() * c->orientation;
        total.exact_zero = gamma.terms.empty();
        return total;
    }
    if (gamma.degree != n) throw DomainError("I_n needs a chain of degree n");
    std::vector<IntegralResult> parts(gamma.terms.size());
    QuadratureConfig inner = cfg;
    inner.threads = 1;
    parallel_for(static_cast<int>(gamma.terms.size()), cfg.threads, [&](int i) {
        auto& [c, v] = gamma.terms[i];
        parts[i] = integrate_omega(*c, inner).scaled(v.get_d());
    });
    for (auto& p : parts) total += p;
    double sign = (n * (n - 1) / 2) % 2 ? -1 : 1;
    return total.scaled(sign);
}

CellChain face_cell_chain(const Chain& gamma, const SimplicialComplex& K, const CubicalFace& within)
{
    std::vector<int> free;
    for (int s = 0; s < K.ambient_n(); ++s)
        if (!within.constrains(s)) free.push_back(s);
    int m = static_cast<int>(free.size());
    CellChain out{m, gamma.degree(), {}};
    for (auto& [key, c] : gamma.terms()) {
        if (K.in_divisor(key)) continue;
        LinearCell cell;
        cell.n = m;
        for (int id : key) {
            std::vector<Rational> p;
            for (int s : free) {
                const Slot& sl = K.vertex(id).coords.at(s);
                if (sl.inf) throw DomainError("vertex " + std::to_string(id) + " lies at infinity in a free coordinate");
                p.push_back(sl.z.re);
                p.push_back(sl.z.im);
            }
            cell.points.push_back(std::move(p));
        }
        out.add(make_cell(to_param_cell(cell, format_simplex(key))), c);
    }
    return out;
}

IntegralResult I_n(const Chain& gamma, const SimplicialComplex& K, const CubicalFace& within,
                   const QuadratureConfig& cfg)
{
    return I_n(face_cell_chain(gamma, K, within), cfg);
}

// ---------------------------------------------------------------- generalized Cauchy formula

namespace {

CauchyReport finish_report(IntegralResult boundary_term, IntegralResult stokes_term, double tolerance)
{
    CauchyReport rep;
    rep.boundary_term = boundary_term;
    rep.stokes_term = stokes_term;
    rep.residual = boundary_term.value + stokes_term.value;
    rep.tolerance = tolerance;
    rep.conclusive = boundary_term.converged && stokes_term.converged;
    rep.pass = rep.conclusive && std::abs(rep.residual) <= boundary_term.error + stokes_term.error + tolerance;
    return rep;
}

}  // namespace

CauchyReport verify_cauchy(const CellChain& gamma, const QuadratureConfig& cfg, double tolerance)
{
    const int n = gamma.n;
    if (gamma.degree != n + 1) throw DomainError("verify_cauchy needs a chain of degree n + 1");
    IntegralResult b = I_n(cubical_differential(gamma), cfg);
    IntegralResult s = I_n(chain_boundary(gamma), cfg);
    if (n % 2) s = s.scaled(-1);
    return finish_report(b, s, tolerance);
}

CauchyReport verify_cauchy(const Chain& gamma, const SimplicialComplex& K, const QuadratureConfig& cfg,
                           double tolerance)
{
    const int n = K.ambient_n();
    if (gamma.degree() != n + 1) throw DomainError("verify_cauchy needs a chain of degree n + 1");
    CubicalChain d = cubical_differential(CubicalChain{{CubicalFace{}, gamma}}, K);
    IntegralResult b;
    b.value = 0;
    b.exact_zero = true;
    for (auto& [C, c] : d) b += I_n(c, K, C, cfg);
    IntegralResult s = I_n(boundary(gamma, &K, true), K, {}, cfg);
    if (n % 2) s = s.scaled(-1);
    return finish_report(b, s, tolerance);
}

// ---------------------------------------------------------------- Thom form

double thom_cutoff(double r, double epsilon)
{
    double x = 2 * r / epsilon - 1;
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    return x * x * x * x * (35 - 84 * x + 70 * x * x - 20 * x * x * x);
}

double thom_cutoff_derivative(double r, double epsilon)
{
    double x = 2 * r / epsilon - 1;
    if (x <= 0 || x >= 1) return 0;
    double y = x * (1 - x);
    return 140 * y * y * y * 2 / epsilon;
}

namespace {

void check_boundary_clear(const ParamCell& cell, int slot, Alpha alpha, double epsilon)
{
    auto bd = cell_boundary(cell);
    for (auto& [c, v] : bd.terms) {
        (void)v;
        for (auto& smp : c->interior_samples(c->dim() <= 1 ? 257 : 33)) {
            auto z = c->eval(smp)[slot];
            double r = alpha == Alpha::Zero ? (z.inf ? INFINITY : std::abs(z.v)) : (z.inf ? 0 : 1 / std::abs(z.v));
            if (z.undefined || r <= epsilon)
                throw PreconditionError("boundary of " + cell.describe() + " meets the ε-neighbourhood of " +
                                        CubicalFace::single(slot, alpha).name());
        }
    }
}

IntegralResult thom_integral(const ParamCell& cell, int slot, Alpha alpha, double epsilon, const QuadratureConfig& cfg)
{
    if (cell.dim() != 2) throw DomainError("Thom form values need a 2-dimensional cell");
    if (slot < 0 || slot >= static_cast<int>(cell.map.size())) throw DomainError("slot out of range");
    auto density = [&](const CellChart& chart, const double* u) -> cd {
        std::vector<cd> z, G, a;
        double jac = chart.eval(u, z, G);
        double r = log_differential(z, G, 2, slot, alpha, a);
        double rp = thom_cutoff_derivative(r, epsilon);
        if (rp == 0) return 0;
        double det = r * (a[0].real() * a[1].imag() - a[1].real() * a[0].imag());
        return rp / (2 * kPi) * det * jac;
    };
    auto localize = [&](const CellChart& chart) { return annulus_boxes(chart, slot, alpha, epsilon); };
    IntegralResult r = integrate_cell(cell, density, cfg.rel_tol > 0 ? cfg.rel_tol : 1e-10, cfg, localize);
    if (r.evaluations == 0) r.exact_zero = true;
    return r;
}

}  // namespace

IntegralResult thom_form_value(const ParamCell& cell2, int slot, Alpha alpha, double epsilon,
                               const QuadratureConfig& cfg)
{
    cfg.validate();
    if (!(epsilon > 0)) throw DomainError("ε must be positive");
    check_boundary_clear(cell2, slot, alpha, epsilon);
    return thom_integral(cell2, slot, alpha, epsilon, cfg);
}

ThomCocycle numerical_thom_cocycle(const SimplicialComplex& K, const CubicalFace& face, double epsilon,
                                   const QuadratureConfig& cfg)
{
    if (face.codim() != 1) throw DomainError("Thom cocycles are defined for codimension-one faces");
    ThomCocycle T;
    T.backend = ThomCocycle::Backend::Numerical;
    T.face = face;
    T.epsilon = epsilon;
    auto c = face.constraints()[0];
    std::vector<SimplexKey> keys(K.simplexes(2).begin(), K.simplexes(2).end());
    std::vector<cd> vals(keys.size());
    QuadratureConfig inner = cfg;
    inner.threads = 1;
    parallel_for(static_cast<int>(keys.size()), cfg.threads, [&](int i) {
        auto cell = to_param_cell(LinearCell::from_simplex(K, keys[i]));
        vals[i] = thom_integral(cell, c.slot, c.alpha, epsilon, inner).value;
    });
    for (std::size_t i = 0; i < keys.size(); ++i) T.numeric[keys[i]] = vals[i];
    return T;
}

// ---------------------------------------------------------------- declared-face validation

std::vector<MultiplicityCheck> validate_declared_faces(const ParamCell& cell, double epsilon,
                                                       const QuadratureConfig& cfg, double tolerance)
{
    std::vector<MultiplicityCheck> out;
    const int n = static_cast<int>(cell.map.size());
    const int d = cell.dim();
    if (d < 2) return out;
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> g(0, 1);
    for (auto& df : cell.faces) {
        const int slot = df.slot;
        std::vector<int> others;
        for (int s = 0; s < n; ++s)
            if (s != slot) others.push_back(s);
        const int k = d - 2;
        std::vector<cd> centre(others.size());
        for (auto& c : centre) c = cd(g(rng), g(rng)) * 0.5;
        std::vector<std::vector<cd>> lin(k, std::vector<cd>(others.size()));
        for (auto& row : lin)
            for (auto& v : row) v = cd(g(rng), g(rng));
        // ψ = exp(−Σ|z_s − c_s|²) dw_1 ∧ ... ∧ dw_k, w_j = Re Σ lin[j][s] z_s over the remaining slots.
        auto psi = [&](const std::vector<cd>& z, const std::vector<cd>& G, int dd, int row0, std::vector<double>& m,
                       const std::vector<int>& slots) -> double {
            double e = 0;
            for (std::size_t j = 0; j < slots.size(); ++j) e += std::norm(z[slots[j]] - centre[j]);
            if (!std::isfinite(e)) return 0;
            for (int j = 0; j < k; ++j)
                for (int col = 0; col < dd; ++col) {
                    cd v = 0;
                    for (std::size_t s = 0; s < slots.size(); ++s) v += lin[j][s] * G[slots[s] * dd + col];
                    m[(row0 + j) * dd + col] = v.real();
                }
            return std::exp(-e);
        };
        auto density = [&](const CellChart& chart, const double* u) -> cd {
            std::vector<cd> z, G, a;
            double jac = chart.eval(u, z, G);
            double r = log_differential(z, G, d, slot, df.alpha, a);
            double rp = thom_cutoff_derivative(r, epsilon);
            if (rp == 0) return 0;
            std::vector<double> m(static_cast<std::size_t>(d) * d, 0);
            for (int col = 0; col < d; ++col) {
                m[col] = r * a[col].real();
                m[d + col] = a[col].imag();
            }
            double w = psi(z, G, d, 2, m, others);
            if (w == 0) return 0;
            return rp / (2 * kPi) * w * real_det(m, d) * jac;
        };
        auto localize = [&](const CellChart& chart) { return annulus_boxes(chart, slot, df.alpha, epsilon); };
        QuadratureConfig c2 = cfg;
        c2.rel_tol = 1e-5;
        c2.abs_tol = 1e-9;
        IntegralResult lhs = integrate_cell(cell, density, 1e-5, c2, localize);
        cd rhs = 0;
        for (auto& t : df.terms) {
            const ParamCell& F = *t.cell;
            std::vector<int> fslots(F.map.size());
            for (std::size_t s = 0; s < fslots.size(); ++s) fslots[s] = static_cast<int>(s);
            auto fdens = [&](const CellChart& chart, const double* u) -> cd {
                std::vector<cd> z, G;
                double jac = chart.eval(u, z, G);
                std::vector<double> m(static_cast<std::size_t>(k) * k, 0);
                double w = psi(z, G, k, 0, m, fslots);
                if (w == 0) return 0;
                return w * (k ? real_det(m, k) : 1.0) * jac;
            };
            rhs += static_cast<double>(t.mult) * integrate_cell(F, fdens, 1e-7, c2).value;
        }
        MultiplicityCheck mc;
        mc.slot = slot;
        mc.alpha = df.alpha;
        mc.cell_side = lhs.value;
        mc.face_side = rhs;
        mc.residual = std::abs(lhs.value - rhs);
        mc.pass = mc.residual <= tolerance * std::max(1.0, std::abs(rhs));
        out.push_back(mc);
    }
    return out;
}

// ---------------------------------------------------------------- truncation

namespace {

enum class SlotKind { Far, Near, RealParam, DiskParam, Unsupported };

struct SlotInfo {
    SlotKind kind = SlotKind::Far;
    int param = -1;
};

SlotInfo classify(const ParamCell& cell, int slot, double eps)
{
    Expr e = cell.map.at(slot).simplify();
    if (e.kind() == Expr::Kind::Param) {
        for (int k = 0; k < static_cast<int>(cell.params.size()); ++k) {
            const Param& p = cell.params[k];
            if (p.name != e.name()) continue;
            if (p.type == Param::Type::Real && p.lo.coef.empty() && p.hi.coef.empty() && sgn(p.lo.c) >= 0)
                return {SlotKind::RealParam, k};
            if (p.type == Param::Type::Disk && p.center.is_zero()) return {SlotKind::DiskParam, k};
        }
    }
    double mn = INFINITY, mx = 0;
    for (auto& smp : cell.interior_samples(cell.dim() <= 1 ? 129 : 17)) {
        auto z = cell.eval(smp)[slot];
        double r = z.inf ? INFINITY : std::abs(z.v);
        mn = std::min(mn, r);
        mx = std::max(mx, r);
    }
    if (mn > eps * 1.05) return {SlotKind::Far, -1};
    if (mx < eps * 0.95) return {SlotKind::Near, -1};
    return {SlotKind::Unsupported, -1};
}

// Restricts the radial parameter to the part below (inside) or above (outside) ε.
// Returns false when the restricted range is empty or degenerate.
bool restrict_radial(ParamCell& c, const SlotInfo& info, const Rational& eps, bool inside)
{
    Param& p = c.params[info.param];
    if (info.kind == SlotKind::RealParam) {
        Rational lo = p.lo.c, hi = p.hi.c;
        if (inside) hi = std::min(hi, eps);
        else lo = std::max(lo, eps);
        if (lo >= hi) return false;
        p.lo = Affine::constant(lo);
        p.hi = Affine::constant(hi);
        return true;
    }
    Rational lo = p.r_lo, hi = p.r_hi;
    if (inside) hi = std::min(hi, eps);
    else lo = std::max(lo, eps);
    if (lo >= hi) return false;
    p.r_lo = lo;
    p.r_hi = hi;
    return true;
}

CellChain truncate_geq(const CellChain& gamma, double epsilon, const std::vector<int>& slots, TruncationMode mode)
{
    Rational eps = radius_rational(epsilon);
    CellChain out{gamma.n, gamma.degree, {}};
    for (auto& [cp, coeff] : gamma.terms) {
        const ParamCell& cell = *cp;
        std::vector<SlotInfo> infos;
        for (int s : slots) {
            SlotInfo si = classify(cell, s, epsilon);
            if (si.kind == SlotKind::Unsupported)
                throw PreconditionError("radius " + std::to_string(epsilon) + " is not admissible for truncating " +
                                        cell.describe() + " along slot " + std::to_string(s + 1));
            infos.push_back(si);
        }
        auto is_param = [](const SlotInfo& i) { return i.kind == SlotKind::RealParam || i.kind == SlotKind::DiskParam; };
        if (mode == TruncationMode::Single) {
            if (std::any_of(infos.begin(), infos.end(), [](auto& i) { return i.kind == SlotKind::Near; })) continue;
            ParamCell c = cell;
            c.faces.clear();
            bool nonempty = true;
            bool changed = false;
            for (auto& i : infos)
                if (is_param(i)) {
                    nonempty = nonempty && restrict_radial(c, i, eps, false);
                    changed = true;
                }
            if (!nonempty) continue;
            out.add(changed ? make_cell(std::move(c)) : cp, coeff);
        } else {
            out.add(cp, coeff);
            if (std::any_of(infos.begin(), infos.end(), [](auto& i) { return i.kind == SlotKind::Far; })) continue;
            ParamCell c = cell;
            c.faces.clear();
            bool nonempty = true;
            for (auto& i : infos)
                if (is_param(i)) nonempty = nonempty && restrict_radial(c, i, eps, true);
            if (nonempty) out.add(make_cell(std::move(c)), -coeff);
        }
    }
    return out;
}

std::string canonical_key(const ParamCell& c)
{
    ParamCell copy = c;
    copy.orientation = 1;
    return copy.describe();
}

}  // namespace

CellChain canonicalize(const CellChain& c)
{
    std::vector<std::pair<std::string, std::pair<CellPtr, Rational>>> acc;
    for (auto& [cell, v] : c.terms) {
        std::string key = canonical_key(*cell);
        auto it = std::find_if(acc.begin(), acc.end(), [&](auto& e) { return e.first == key; });
        if (it == acc.end()) {
            acc.push_back({key, {cell, v}});
        } else {
            Rational rel = cell->orientation == it->second.first->orientation ? 1 : -1;
            it->second.second += rel * v;
        }
    }
    CellChain out{c.n, c.degree, {}};
    for (auto& [k, cv] : acc)
        if (sgn(cv.second) != 0) out.terms.push_back(cv);
    return out;
}

Truncation truncate_chain(const CellChain& gamma, double epsilon, const std::vector<int>& slots, TruncationMode mode)
{
    if (!(epsilon > 0)) throw DomainError("ε must be positive");
    for (int s : slots)
        if (s < 0 || s >= gamma.n) throw DomainError("truncation slot out of range");
    Truncation t;
    t.geq = canonicalize(truncate_geq(gamma, epsilon, slots, mode));
    CellChain bd_geq = chain_boundary(t.geq);
    CellChain geq_bd = truncate_geq(chain_boundary(gamma), epsilon, slots, mode);
    CellChain diff = bd_geq;
    diff += geq_bd.scaled(-1);
    diff.n = gamma.n;
    diff.degree = gamma.degree - 1;
    t.eq = canonicalize(diff);
    return t;
}

IntegralResult abs_omega_mass(const CellChain& gamma, const QuadratureConfig& cfg)
{
    CellChain c = canonicalize(gamma);
    IntegralResult total;
    total.value = 0;
    total.exact_zero = true;
    std::vector<IntegralResult> parts(c.terms.size());
    QuadratureConfig inner = cfg;
    inner.threads = 1;
    parallel_for(static_cast<int>(c.terms.size()), cfg.threads, [&](int i) {
        auto& [cell, v] = c.terms[i];
        parts[i] = integrate_abs_omega(*cell, inner).scaled(std::abs(v.get_d()));
    });
    for (auto& p : parts) total += p;
    return total;
}

// ---------------------------------------------------------------- shipped example

CellChain disk_box_chain(const Rational& a, const Rational& b)
{
    if (sgn(a) <= 0 || b <= a) throw DomainError("disk-box needs 0 < a < b");
    ParamCell face;
    face.label = "segment";
    face.n = 1;
    face.params.push_back(Param::real("t", Affine::constant(a), Affine::constant(b)));
    face.map.push_back(Expr::param("t"));

    ParamCell box;
    box.label = "disk-box";
    box.n = 2;
    box.params.push_back(Param::disk("x", ComplexQ{0, 0}, 1));
    box.params.push_back(Param::real("t", Affine::constant(a), Affine::constant(b)));
    box.map = {Expr::param("x"), Expr::param("t")};
    box.faces.push_back(DeclaredFace{0, Alpha::Zero, {FaceTerm{make_cell(std::move(face)), 1}}});

    CellChain out{2, 3, {}};
    out.add(make_cell(std::move(box)), 1);
    return out;
}

}  // namespace tatep
