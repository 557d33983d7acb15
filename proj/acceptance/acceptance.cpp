// Acceptance run: one line per criterion with pinned tolerances and runtime limits.
// Exit status is 0 only when every criterion passes.

#include "tatep/hodge.hpp"
#include "tatep/suites.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace tatep;

namespace {

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;  // 0 for no limit
    std::function<std::vector<SuiteCheck>()> run;
};

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Every check passes and, when `pinned` is positive, every residual is below it.
Outcome judge(const std::vector<SuiteCheck>& checks, double pinned = 0)
{
    Outcome o;
    double worst = 0;
    int instances = 0;
    for (const auto& c : checks) {
        worst = std::max(worst, c.residual);
        instances += c.instances;
        bool ok = c.pass && (pinned <= 0 || c.residual < pinned);
        if (!ok) {
            o.pass = false;
            if (o.detail.empty()) o.detail = "failed: " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
        }
    }
    if (o.pass) {
        std::ostringstream os;
        os << checks.size() << " checks, " << instances << " instances, max residual " << std::scientific
           << std::setprecision(2) << worst;
        o.detail = os.str();
    }
    return o;
}

SuiteCheck closed_form(const std::string& name, std::complex<double> value, double oracle, double tol)
{
    double delta = std::abs(value - oracle);
    std::ostringstream os;
    os << "value " << std::setprecision(15) << value.real() << (value.imag() < 0 ? "-" : "+") << std::abs(value.imag())
       << "i, oracle " << oracle;
    return {name, delta < tol, delta, tol, 1, os.str()};
}

std::vector<SuiteCheck> dilog_half(const SuiteOptions& opt)
{
    auto report = dilog_periods(opt, Rational(1, 2));
    auto checks = report.checks;
    const auto& P = report.matrix;
    const std::complex<double> tau(0, 2 * std::numbers::pi);
    const double ln2 = std::log(2.0);
    checks.push_back(closed_form("entry(3,1)·(2πi)² = π²/12 − (ln 2)²/2", P.entries[2][0].value * tau * tau,
                                 std::numbers::pi * std::numbers::pi / 12 - ln2 * ln2 / 2, 1e-4));
    checks.push_back(closed_form("entry(3,2)·(2πi) = ln(1/2)", P.entries[2][1].value * tau, -ln2, 1e-6));
    checks.push_back(closed_form("entry(2,1)·(2πi)² = ln 2", P.entries[1][0].value * tau * tau, ln2, 1e-6));

    bool shape = P.entries.size() == 3 && P.lower_triangular();
    checks.push_back({"3×3 lower triangular", shape, shape ? 0.0 : 1.0, 0, 1, {}});
    const char* diagonal[] = {"(2πi)^-2", "(2πi)^-1", "1"};
    for (int i = 0; i < 3; ++i) {
        const auto& e = P.entries[i][i];
        bool ok = e.exact && e.symbolic() == diagonal[i];
        checks.push_back({std::string("diagonal ") + diagonal[i], ok, ok ? 0.0 : 1.0, 0, 1, e.symbolic()});
    }
    return checks;
}

}  // namespace

int main()
{
    SuiteOptions opt;
    opt.seed = 1;
    opt.instances = 100;

    std::vector<Criterion> criteria{
        {1, "exact combinatorial suite, 100 instances per property, residual exactly 0", 30,
         [&] {
             auto checks = run_suite("combinatorial", opt);
             for (auto& c : checks) c.pass = c.pass && c.residual == 0 && c.instances >= 100;
             return checks;
         }},
        {2, "Cauchy formula on the disk box for three (a, b), tolerance 1e-6", 60,
         [&] { return check_cauchy_disk_box(opt); }},
        {3, "Cauchy formula on the dilogarithm chains at a = 0.1 ... 0.9, tolerance 1e-4", 300,
         [&] {
             std::vector<Rational> values{Rational(1, 10), Rational(3, 10), Rational(1, 2), Rational(7, 10),
                                          Rational(9, 10)};
             auto checks = check_dilog_cauchy(opt, values);
             for (const auto& a : values) {
                 auto S = build_dilog_scenario(a, opt.cfg, false);
                 bool ok = S->valid();
                 std::string failing;
                 for (const auto& r : S->relations)
                     if (!r.pass && failing.empty()) failing = r.name;
                 checks.push_back({"scenario relations at a = " + to_string(a), ok, ok ? 0.0 : 1.0, 0, 1, failing});
             }
             return checks;
         }},
        {4, "bar complex: d² = 0, d_I d_E + d_E d_I = 0, coassociativity on 500 words, cocycles closed", 30,
         [&] {
             auto checks = check_bar_identities(opt, 20, 25);
             for (auto& c : checks) c.pass = c.pass && c.residual == 0 && c.instances >= 500;
             checks.push_back(check_dilog_cocycles(opt));
             return checks;
         }},
        {5, "dilogarithm period matrix at a = 1/2 against closed forms", 300, [&] { return dilog_half(opt); }},
        {6, "Thom form normalization within 1e-8 and 50 triangles within 1e-6", 0,
         [&] {
             std::vector<SuiteCheck> checks{check_thom_normalization(opt), check_thom_vs_exact(opt, 50)};
             checks[1].pass = checks[1].pass && checks[1].instances == 50;
             return checks;
         }},
        {7, "I_3(η_2(1)) is an exact zero for the reason of type", 0,
         [&] { return std::vector<SuiteCheck>{check_type_vanishing(opt)}; }},
        {8, "truncated boundary mass decreases over ε ∈ {0.1, 0.03, 0.01, 0.003}", 0,
         [&] { return std::vector<SuiteCheck>{check_truncation_monotone(opt)}; }},
    };
    const double pinned[] = {0, 1e-6, 1e-4, 0, 0, 1e-6, 0, 0};

    bool all = true;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = judge(c.run(), pinned[c.id - 1]);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
            o.pass = false;
            o.detail += "; runtime over the limit";
        }
        all = all && o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.title << " | " << o.detail << " | "
                  << std::fixed << std::setprecision(1) << seconds << " s";
        if (c.limit_seconds > 0) std::cout << " (limit " << c.limit_seconds << " s)";
        std::cout << std::defaultfloat << "\n" << std::flush;
    }
    std::cout << (all ? "all acceptance criteria passed" : "some acceptance criteria failed") << "\n";
    return all ? 0 : 1;
}
