#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tatep/serialization.hpp"
#include "tatep/suites.hpp"

namespace py = pybind11;
using namespace tatep;

namespace {

py::object to_py(const Json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

/// Accepts a JSON string or any object the json module can serialize.
Json from_py(const py::object& o)
{
    std::string text = py::isinstance<py::str>(o) ? o.cast<std::string>()
                                                  : py::module_::import("json").attr("dumps")(o).cast<std::string>();
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

Rational rational_arg(const py::object& o)
{
    if (py::isinstance<py::int_>(o)) return Rational(py::str(o).cast<std::string>(), 10);
    return parse_rational(o.cast<std::string>());
}

py::dict check_to_py(const SuiteCheck& c)
{
    py::dict d;
    d["name"] = c.name;
    d["pass"] = c.pass;
    d["residual"] = c.residual;
    d["tolerance"] = c.tolerance;
    d["instances"] = c.instances;
    d["detail"] = c.detail;
    return d;
}

py::dict cauchy_to_py(const CauchyReport& r)
{
    py::dict d;
    d["boundary_term"] = r.boundary_term.value;
    d["stokes_term"] = r.stokes_term.value;
    d["residual"] = std::abs(r.residual);
    d["tolerance"] = r.tolerance;
    d["conclusive"] = r.conclusive;
    d["pass"] = r.pass;
    return d;
}

QuadratureConfig config_arg(const py::object& cfg)
{
    return cfg.is_none() ? QuadratureConfig{} : config_from_json(from_py(cfg));
}

}  // namespace

PYBIND11_MODULE(_tatep, m)
{
    m.doc() = "Admissible chains, face maps, logarithmic integrals and the dilogarithm periods";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<StructuralError>(m, "StructuralError", base);
    py::register_exception<DomainError>(m, "DomainError", base);
    py::register_exception<SolvabilityError>(m, "SolvabilityError", base);
    py::register_exception<ObstructionError>(m, "ObstructionError", base);
    py::register_exception<GenericityError>(m, "GenericityError", base);
    py::register_exception<AdmissibilityError>(m, "AdmissibilityError", base);
    py::register_exception<ValidationError>(m, "ValidationError", base);
    py::register_exception<PreconditionError>(m, "PreconditionError", base);
    py::register_exception<ContractError>(m, "ContractError", base);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<ScenarioError>(m, "ScenarioError", base);

    m.def("normalize_rational", [](const std::string& s) { return to_string(parse_rational(s)); }, py::arg("text"),
          "Canonical \"p/q\" form of a rational literal.");

    m.def(
        "boundary",
        [](const py::object& bundle, const std::string& chain, bool relative) {
            auto b = bundle_from_json(from_py(bundle));
            auto it = b.chains.find(chain);
            if (it == b.chains.end()) throw DomainError("bundle has no chain '" + chain + "'");
            return to_py(chain_to_json(boundary(it->second, &b.complex, relative)));
        },
        py::arg("bundle"), py::arg("chain"), py::arg("relative") = false,
        "Simplicial boundary of a named chain in a chain bundle.");

    m.def(
        "verify_cauchy",
        [](const py::object& bundle, const std::string& chain, double tolerance, const py::object& cfg) {
            auto b = bundle_from_json(from_py(bundle));
            auto q = config_arg(cfg);
            if (auto it = b.chains.find(chain); it != b.chains.end())
                return cauchy_to_py(verify_cauchy(it->second, b.complex, q, tolerance));
            if (auto it = b.cell_chains.find(chain); it != b.cell_chains.end())
                return cauchy_to_py(verify_cauchy(it->second, q, tolerance));
            throw DomainError("bundle has no chain '" + chain + "'");
        },
        py::arg("bundle"), py::arg("chain"), py::arg("tolerance") = 1e-6, py::arg("config") = py::none(),
        "Generalized Cauchy formula on a named chain of a bundle.");

    m.def(
        "verify_cauchy_disk_box",
        [](const py::object& a, const py::object& b, double tolerance) {
            return cauchy_to_py(verify_cauchy(disk_box_chain(rational_arg(a), rational_arg(b)), {}, tolerance));
        },
        py::arg("a"), py::arg("b"), py::arg("tolerance") = 1e-6, "Cauchy formula on the closed disk times [a, b].");

    m.def(
        "disk_box_chain", [](const py::object& a, const py::object& b) {
            return to_py(cell_chain_to_json(disk_box_chain(rational_arg(a), rational_arg(b))));
        },
        py::arg("a"), py::arg("b"), "The disk box as a parametrized cell chain.");

    m.def(
        "cubical_differential",
        [](const py::object& cell_chain) {
            return to_py(cell_chain_to_json(cubical_differential(cell_chain_from_json(from_py(cell_chain)))));
        },
        py::arg("cell_chain"), "Cubical differential of a parametrized cell chain from declared face data.");

    m.def(
        "integrate",
        [](const py::object& cell_chain, const py::object& cfg) {
            return to_py(integral_to_json(I_n(cell_chain_from_json(from_py(cell_chain)), config_arg(cfg))));
        },
        py::arg("cell_chain"), py::arg("config") = py::none(), "I_n of a parametrized cell chain.");

    m.def(
        "dilog_periods",
        [](const py::object& a, std::uint64_t seed) {
            SuiteOptions opt;
            opt.seed = seed;
            auto r = dilog_periods(opt, rational_arg(a));
            py::dict d;
            d["a"] = to_string(r.a);
            d["matrix"] = to_py(period_matrix_to_json(r.matrix));
            py::list oracles;
            for (const auto& o : r.oracles) {
                py::dict od;
                od["name"] = o.name;
                od["row"] = o.row;
                od["column"] = o.column;
                od["value"] = o.value;
                od["oracle"] = o.oracle;
                od["delta"] = o.delta;
                od["tolerance"] = o.tolerance;
                oracles.append(od);
            }
            d["oracles"] = oracles;
            py::list checks;
            for (const auto& c : r.checks) checks.append(check_to_py(c));
            d["checks"] = checks;
            return d;
        },
        py::arg("a"), py::arg("seed") = 1, "Dilogarithm period matrix with oracle comparisons.");

    m.def("suite_names", &suite_names);
    m.def(
        "run_suite",
        [](const std::string& name, std::uint64_t seed, int instances) {
            SuiteOptions opt;
            opt.seed = seed;
            opt.instances = instances;
            py::list out;
            for (const auto& c : run_suite(name, opt)) out.append(check_to_py(c));
            return out;
        },
        py::arg("name"), py::arg("seed") = 1, py::arg("instances") = 100, "Run a randomized property suite.");

    m.def(
        "bar_differential",
        [](const py::object& presentation, const py::object& element) {
            auto N = presentation_from_json(from_py(presentation));
            auto x = bar_from_json(N, from_py(element));
            bool algebra = false;
            for (const auto& [k, c] : x)
                if (!k.right.empty()) algebra = true;
            BarComplex B(N, algebra ? BarCoefficients::Algebra : BarCoefficients::Augmentation);
            return to_py(bar_to_json(N, B.d(x)));
        },
        py::arg("presentation"), py::arg("element"), "Total bar differential d_I + d_E of a bar element.");

    m.def(
        "shuffle",
        [](const py::object& presentation, const py::object& x, const py::object& y) {
            auto N = presentation_from_json(from_py(presentation));
            BarComplex B(N, BarCoefficients::Augmentation);
            return to_py(bar_to_json(N, B.shuffle(bar_from_json(N, from_py(x)), bar_from_json(N, from_py(y)))));
        },
        py::arg("presentation"), py::arg("x"), py::arg("y"), "Shuffle product of two bar elements.");
}
