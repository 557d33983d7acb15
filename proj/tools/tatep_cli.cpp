// tatep: batch verification and period computation.
//
//   tatep verify-cauchy --example disk-box --a 1 --b 2
//   tatep verify-cauchy --example dilog --a 1/2
//   tatep verify-cauchy --chains bundle.json
//   tatep dilog-periods --a 1/2
//   tatep check-invariants --suite combinatorial
//   tatep thom-compare --chains bundle.json --epsilon 0.05
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on usage or input errors.

#include "CLI11.hpp"

#include "tatep/serialization.hpp"
#include "tatep/suites.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>

using namespace tatep;

namespace {

struct RunReport {
    std::string command;
    Json inputs = Json::object();
    std::vector<SuiteCheck> checks;
    std::vector<std::string> artifacts;
    Json results = Json::object();

    bool pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.pass; });
    }

    Json to_json() const
    {
        Json list = Json::array();
        for (const auto& c : checks)
            list.push_back(Json{{"name", c.name},
                                {"status", c.pass ? "pass" : "fail"},
                                {"residual", c.residual},
                                {"tolerance", c.tolerance},
                                {"instances", c.instances},
                                {"detail", c.detail}});
        Json j{{"command", command}, {"inputs", inputs}, {"checks", list}, {"artifacts", artifacts}};
        if (!results.empty()) j["results"] = results;
        j["status"] = pass() ? "pass" : "fail";
        return j;
    }
};

struct Common {
    std::string json_path;
    std::string config_path;
    int threads = 1;
    std::uint64_t seed = 1;
};

std::string sci(double v, int digits = 3)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(digits) << v;
    return os.str();
}

std::string complex_text(std::complex<double> z)
{
    std::ostringstream os;
    os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

/// Terminal columns of UTF-8 text: continuation bytes and combining diacritics take none.
std::size_t display_width(const std::string& s)
{
    std::size_t w = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto b = static_cast<unsigned char>(s[i]);
        if ((b & 0xC0) == 0x80) continue;
        auto next = i + 1 < s.size() ? static_cast<unsigned char>(s[i + 1]) : 0;
        bool combining = (b == 0xCC && next >= 0x80) || (b == 0xCD && next < 0xB0);
        if (!combining) ++w;
    }
    return w;
}

std::string pad(const std::string& s, std::size_t width)
{
    std::size_t w = display_width(s);
    return w >= width ? s : s + std::string(width - w, ' ');
}

void print_checks(std::ostream& out, const std::vector<SuiteCheck>& checks)
{
    std::size_t width = 4;
    for (const auto& c : checks) width = std::max(width, display_width(c.name));
    for (const auto& c : checks) {
        out << (c.pass ? "PASS  " : "FAIL  ") << pad(c.name, width + 2) << "residual " << sci(c.residual)
            << "  tol " << sci(c.tolerance);
        if (c.instances > 1) out << "  n=" << c.instances;
        out << "\n";
        if (!c.detail.empty() && !c.pass) out << "      " << c.detail << "\n";
    }
}

SuiteOptions suite_options(const Common& common)
{
    SuiteOptions opt;
    opt.seed = common.seed;
    if (!common.config_path.empty()) {
        std::ifstream in(common.config_path);
        if (!in) throw ParseError("cannot open '" + common.config_path + "'");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::parse_error& e) {
            throw ParseError(common.config_path + ": malformed JSON: " + e.what());
        }
        try {
            opt.cfg = config_from_json(j, opt.cfg);
        } catch (const ParseError& e) {
            throw ParseError(common.config_path + ": " + e.what());
        }
    }
    opt.cfg.threads = common.threads;
    opt.cfg.seed = common.seed;
    opt.cfg.validate();
    return opt;
}

/// Flags accept "p/q" or an exact decimal literal such as 0.25.
Rational parse_value(const std::string& text, const char* flag)
{
    static const std::regex decimal(R"(([+-]?)(\d*)\.(\d+))");
    std::smatch m;
    try {
        if (std::regex_match(text, m, decimal)) {
            std::string digits = m[2].str() + m[3].str();
            Rational q = parse_rational(m[1].str() + (digits.empty() ? "0" : digits));
            Rational scale = 1;
            for (std::size_t i = 0; i < m[3].length(); ++i) scale *= 10;
            q /= scale;
            return q;
        }
        return parse_rational(text);
    } catch (const ParseError& e) {
        throw ParseError(std::string(flag) + ": " + e.what());
    }
}

SuiteCheck cauchy_check(const std::string& name, const CauchyReport& r)
{
    SuiteCheck c;
    c.name = name;
    c.residual = std::abs(r.residual);
    c.tolerance = r.tolerance;
    c.pass = r.pass;
    c.instances = 1;
    std::ostringstream os;
    os << "I(∂γ) = " << complex_text(r.boundary_term.value) << ", ±I(δγ) = " << complex_text(r.stokes_term.value);
    if (!r.conclusive) os << " (inconclusive quadrature)";
    c.detail = os.str();
    return c;
}

Json cauchy_json(const CauchyReport& r)
{
    return Json{{"boundary_term", integral_to_json(r.boundary_term)},
                {"stokes_term", integral_to_json(r.stokes_term)},
                {"residual", Json::array({r.residual.real(), r.residual.imag()})},
                {"tolerance", r.tolerance},
                {"conclusive", r.conclusive},
                {"pass", r.pass}};
}

// ---------------------------------------------------------------- verify-cauchy

struct CauchyArgs {
    std::string example;
    std::string a = "1", b = "2";
    std::string chains;
    double tolerance = 1e-6;
};

void verify_cauchy_cmd(const CauchyArgs& args, const SuiteOptions& opt, RunReport& rep)
{
    rep.inputs["tolerance"] = args.tolerance;
    if (!args.chains.empty()) {
        rep.inputs["chains"] = args.chains;
        auto bundle = read_bundle(args.chains);
        for (const auto& [name, chain] : bundle.chains) {
            if (chain.ambient_n() < 1 || chain.degree() != chain.ambient_n() + 1) {
                rep.checks.push_back({"Cauchy on " + name, false, 0, args.tolerance, 0,
                                      "chain degree must be n + 1 for ambient dimension n"});
                continue;
            }
            auto r = verify_cauchy(chain, bundle.complex, opt.cfg, args.tolerance);
            rep.checks.push_back(cauchy_check("Cauchy on " + name, r));
            rep.results[name] = cauchy_json(r);
        }
        for (const auto& [name, chain] : bundle.cell_chains) {
            auto r = verify_cauchy(chain, opt.cfg, args.tolerance);
            rep.checks.push_back(cauchy_check("Cauchy on " + name, r));
            rep.results[name] = cauchy_json(r);
        }
        if (rep.checks.empty()) throw ParseError(args.chains + ": bundle has no chains");
        return;
    }
    rep.inputs["example"] = args.example;
    if (args.example == "disk-box") {
        Rational a = parse_value(args.a, "--a"), b = parse_value(args.b, "--b");
        if (sgn(a) <= 0 || b <= a) throw DomainError("--a and --b must satisfy 0 < a < b");
        rep.inputs["a"] = to_string(a);
        rep.inputs["b"] = to_string(b);
        auto r = verify_cauchy(disk_box_chain(a, b), opt.cfg, args.tolerance);
        rep.checks.push_back(cauchy_check("Cauchy on D̄×[" + to_string(a) + ", " + to_string(b) + "]", r));
        std::complex<double> closed(0, -std::log(to_double(b) / to_double(a)) / (2 * std::numbers::pi));
        double delta = std::abs(r.boundary_term.value - closed);
        rep.checks.push_back({"I(∂γ) = ln(b/a)/(2πi)", delta <= args.tolerance, delta, args.tolerance, 1,
                              "closed form " + complex_text(closed)});
        rep.results["cauchy"] = cauchy_json(r);
    } else if (args.example == "dilog") {
        Rational a = parse_value(args.a, "--a");
        if (sgn(a) <= 0 || a >= 1) throw DomainError("--a must satisfy 0 < a < 1");
        rep.inputs["a"] = to_string(a);
        for (const auto& [name, chain] : dilog_cauchy_chains(a)) {
            auto r = verify_cauchy(chain, opt.cfg, args.tolerance);
            rep.checks.push_back(cauchy_check("Cauchy on " + name + " at a = " + to_string(a), r));
            rep.results[name] = cauchy_json(r);
        }
    } else {
        throw DomainError("--example must be disk-box or dilog, or pass --chains");
    }
}

// ---------------------------------------------------------------- dilog-periods

void dilog_periods_cmd(const std::string& a_text, const SuiteOptions& opt, RunReport& rep, std::ostream& out)
{
    Rational a = parse_value(a_text, "--a");
    if (sgn(a) <= 0 || a >= 1) throw DomainError("--a must satisfy 0 < a < 1");
    rep.inputs["a"] = to_string(a);
    auto report = dilog_periods(opt, a);
    rep.checks = report.checks;
    rep.results["period_matrix"] = period_matrix_to_json(report.matrix);
    Json oracles = Json::array();
    for (const auto& o : report.oracles)
        oracles.push_back(Json{{"name", o.name},
                               {"row", o.row + 1},
                               {"column", o.column + 1},
                               {"value", Json::array({o.value.real(), o.value.imag()})},
                               {"oracle", o.oracle},
                               {"delta", o.delta},
                               {"tolerance", o.tolerance}});
    rep.results["oracles"] = oracles;

    const auto& P = report.matrix;
    out << "period matrix at a = " << to_string(a) << " (rows " << P.derham_basis.size() << ", columns "
        << P.betti_basis.size() << ")\n";
    for (std::size_t i = 0; i < P.entries.size(); ++i)
        for (std::size_t j = 0; j < P.entries[i].size(); ++j) {
            const auto& e = P.entries[i][j];
            out << "  " << P.derham_basis[i] << " · " << P.betti_basis[j] << " = "
                << pad(e.exact ? e.symbolic() : "", 12) << complex_text(e.value) << "\n";
        }
    out << "oracles\n";
    for (const auto& o : report.oracles)
        out << "  " << pad(o.name, 14) << "delta " << sci(o.delta) << "  tol "
            << sci(o.tolerance) << "\n";
}

// ---------------------------------------------------------------- thom-compare

void thom_compare_cmd(const std::string& chains, double epsilon, double tolerance, const SuiteOptions& opt,
                      RunReport& rep)
{
    if (!(epsilon > 0)) throw DomainError("--epsilon must be positive");
    rep.inputs["chains"] = chains;
    rep.inputs["epsilon"] = epsilon;
    rep.inputs["tolerance"] = tolerance;
    auto bundle = read_bundle(chains);
    const auto& K = bundle.complex;
    Json rows = Json::array();
    for (int slot = 0; slot < K.ambient_n(); ++slot) {
        auto face = CubicalFace::single(slot, Alpha::Zero);
        auto T = exact_thom_cocycle(K, face);
        SuiteCheck c{"Thom form vs exact on " + face.name(), true, 0, tolerance, 0, {}};
        int skipped = 0;
        for (const auto& key : K.simplexes(2)) {
            if (!in_W(K, key, face)) continue;
            bool finite = std::all_of(key.begin(), key.end(), [&](int id) {
                const auto& coords = K.vertex(id).coords;
                return std::none_of(coords.begin(), coords.end(), [](const Slot& s) { return s.inf; });
            });
            if (!finite) continue;
            Rational exact = T(key);
            IntegralResult r;
            try {
                r = thom_form_value(to_param_cell(LinearCell::from_simplex(K, key)), slot, Alpha::Zero, epsilon, opt.cfg);
            } catch (const PreconditionError&) {
                ++skipped;
                continue;
            }
            double delta = std::abs(r.value - std::complex<double>(to_double(exact), 0));
            c.residual = std::max(c.residual, delta);
            ++c.instances;
            rows.push_back(Json{{"face", face.name()},
                                {"simplex", key},
                                {"exact", to_string(exact)},
                                {"numerical", Json::array({r.value.real(), r.value.imag()})},
                                {"delta", delta}});
        }
        c.pass = c.residual <= tolerance;
        c.detail = std::to_string(c.instances) + " simplexes compared, " + std::to_string(skipped) +
                   " skipped with boundary inside the ε-disk";
        rep.checks.push_back(c);
    }
    rep.results["simplexes"] = rows;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Admissible chains, Thom-cocycle face maps, logarithmic integrals and the dilogarithm periods"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--json", common.json_path, "Write the full report as JSON to this path");
        sub->add_option("--config", common.config_path, "Quadrature configuration JSON file");
        sub->add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1, 256));
        sub->add_option("--seed", common.seed, "Random seed");
    };

    CauchyArgs cauchy;
    auto* vc = app.add_subcommand("verify-cauchy", "Check I(∂γ) + (−1)^n I(δγ) = 0");
    vc->add_option("--example", cauchy.example, "Built-in family: disk-box or dilog");
    vc->add_option("--a", cauchy.a, "Rational parameter a");
    vc->add_option("--b", cauchy.b, "Rational parameter b (disk-box)");
    auto* vc_chains = vc->add_option("--chains", cauchy.chains, "Chain bundle JSON file");
    vc->add_option("--tolerance", cauchy.tolerance, "Residual tolerance");
    vc_chains->excludes(vc->get_option("--example"));
    add_common(vc);

    std::string period_a;
    auto* dp = app.add_subcommand("dilog-periods", "Dilogarithm period matrix with oracle comparison");
    dp->add_option("--a", period_a, "Rational 0 < a < 1")->required();
    add_common(dp);

    std::string suite;
    int instances = 100;
    auto* ci = app.add_subcommand("check-invariants", "Randomized property suites");
    ci->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    ci->add_option("--instances", instances, "Randomized instances per exact property")->check(CLI::Range(1, 100000));
    add_common(ci);

    std::string thom_chains;
    double epsilon = 0.05, thom_tol = 1e-6;
    auto* tc = app.add_subcommand("thom-compare", "Thom-form integrals against exact intersection numbers");
    tc->add_option("--chains", thom_chains, "Chain bundle JSON file")->required();
    tc->add_option("--epsilon", epsilon, "Thom form radius");
    tc->add_option("--tolerance", thom_tol, "Allowed difference");
    add_common(tc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunReport rep;
    try {
        auto opt = suite_options(common);
        rep.inputs["seed"] = common.seed;
        rep.inputs["threads"] = common.threads;
        rep.inputs["config"] = config_to_json(opt.cfg);
        if (vc->parsed()) {
            rep.command = "verify-cauchy";
            if (cauchy.example.empty() && cauchy.chains.empty())
                throw DomainError("verify-cauchy needs --example or --chains");
            verify_cauchy_cmd(cauchy, opt, rep);
        } else if (dp->parsed()) {
            rep.command = "dilog-periods";
            dilog_periods_cmd(period_a, opt, rep, std::cout);
        } else if (ci->parsed()) {
            rep.command = "check-invariants";
            opt.instances = instances;
            rep.inputs["suite"] = suite;
            rep.inputs["instances"] = instances;
            rep.checks = run_suite(suite, opt);
        } else if (tc->parsed()) {
            rep.command = "thom-compare";
            thom_compare_cmd(thom_chains, epsilon, thom_tol, opt, rep);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (!common.json_path.empty()) rep.artifacts.push_back(common.json_path);
    std::cout << rep.command << "\n";
    print_checks(std::cout, rep.checks);
    std::cout << (rep.pass() ? "all checks passed" : "some checks failed") << "\n";
    if (!common.json_path.empty()) {
        std::ofstream out(common.json_path);
        if (!out) {
            std::cerr << "error: cannot write '" << common.json_path << "'\n";
            return 2;
        }
        out << rep.to_json().dump(2) << "\n";
    }
    return rep.pass() ? 0 : 1;
}
