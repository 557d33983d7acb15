#include "tatep/serialization.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace tatep {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

const Json* optional_field(const Json& obj, const char* key)
{
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

long long as_int(const Json& j, const std::string& where)
{
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long long>();
}

std::string as_string(const Json& j, const std::string& where)
{
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& where)
{
    if (!j.is_array()) fail(where, "expected an array");
    return j;
}

std::string at(const std::string& where, std::size_t i)
{
    return where + "/" + std::to_string(i);
}

std::string at(const std::string& where, const std::string& key)
{
    return where + "/" + key;
}

Json key_to_json(const std::vector<int>& ids)
{
    Json a = Json::array();
    for (int id : ids) a.push_back(id);
    return a;
}

std::vector<int> ids_from_json(const Json& j, const std::string& where)
{
    std::vector<int> ids;
    std::size_t i = 0;
    for (const auto& v : as_array(j, where)) ids.push_back(static_cast<int>(as_int(v, at(where, i++))));
    return ids;
}

/// Simplexes of the set that are not faces of another member.
std::vector<SimplexKey> maximal(const std::set<SimplexKey>& all)
{
    std::set<SimplexKey> covered;
    for (const auto& k : all)
        for (int d = 0; d + 1 < static_cast<int>(k.size()); ++d)
            for (const auto& f : faces_of(k, d)) covered.insert(f);
    std::vector<SimplexKey> out;
    for (const auto& k : all)
        if (!covered.count(k)) out.push_back(k);
    std::stable_sort(out.begin(), out.end(), [](const SimplexKey& a, const SimplexKey& b) { return a.size() > b.size(); });
    return out;
}

Json complex_q_to_json(const ComplexQ& z)
{
    return Json::array({rational_to_json(z.re), rational_to_json(z.im)});
}

ComplexQ complex_q_from_json(const Json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 2) fail(where, "expected [re, im]");
    return {rational_from_json(j[0], at(where, 0)), rational_from_json(j[1], at(where, 1))};
}

Json affine_to_json(const Affine& a, const std::vector<Param>& params)
{
    if (a.coef.empty()) return rational_to_json(a.c);
    Json coef = Json::object();
    for (const auto& [idx, v] : a.coef) coef[params.at(idx).name] = rational_to_json(v);
    return Json{{"const", rational_to_json(a.c)}, {"coef", coef}};
}

Affine affine_from_json(const Json& j, const std::vector<Param>& earlier, const std::string& where)
{
    if (!j.is_object()) return Affine::constant(rational_from_json(j, where));
    Affine a;
    a.c = rational_from_json(field(j, "const", where), at(where, "const"));
    if (const Json* coef = optional_field(j, "coef")) {
        if (!coef->is_object()) fail(at(where, "coef"), "expected an object");
        for (const auto& [name, v] : coef->items()) {
            auto it = std::find_if(earlier.begin(), earlier.end(), [&](const Param& p) { return p.name == name; });
            if (it == earlier.end() || it->type != Param::Type::Real)
                fail(at(at(where, "coef"), name), "bounds may only use earlier real parameters");
            a.coef[static_cast<int>(it - earlier.begin())] = rational_from_json(v, at(at(where, "coef"), name));
        }
    }
    return a;
}

Json param_to_json(const Param& p, const std::vector<Param>& params)
{
    Json j{{"name", p.name}};
    switch (p.type) {
    case Param::Type::Real:
        j["type"] = "real";
        j["lo"] = affine_to_json(p.lo, params);
        j["hi"] = affine_to_json(p.hi, params);
        break;
    case Param::Type::Disk:
        j["type"] = "disk";
        j["center"] = complex_q_to_json(p.center);
        j["r_lo"] = rational_to_json(p.r_lo);
        j["r_hi"] = rational_to_json(p.r_hi);
        break;
    case Param::Type::Sphere: j["type"] = "sphere"; break;
    }
    return j;
}

Param param_from_json(const Json& j, const std::vector<Param>& earlier, const std::string& where)
{
    std::string name = as_string(field(j, "name", where), at(where, "name"));
    std::string type = as_string(field(j, "type", where), at(where, "type"));
    try {
        if (type == "real")
            return Param::real(name, affine_from_json(field(j, "lo", where), earlier, at(where, "lo")),
                               affine_from_json(field(j, "hi", where), earlier, at(where, "hi")));
        if (type == "disk") {
            Rational r_lo = 0;
            if (const Json* lo = optional_field(j, "r_lo")) r_lo = rational_from_json(*lo, at(where, "r_lo"));
            return Param::disk(name, complex_q_from_json(field(j, "center", where), at(where, "center")),
                               rational_from_json(field(j, "r_hi", where), at(where, "r_hi")), r_lo);
        }
        if (type == "sphere") return Param::sphere(name);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail(where, e.what());
    }
    fail(at(where, "type"), "unknown parameter type '" + type + "' (real, disk or sphere)");
}

Alpha alpha_from_json(const Json& j, const std::string& where)
{
    std::string s = j.is_number_integer() ? std::to_string(j.get<long long>()) : as_string(j, where);
    if (s == "0") return Alpha::Zero;
    if (s == "inf") return Alpha::Inf;
    fail(where, "alpha must be \"0\" or \"inf\"");
}

std::string generator_kind(GeneratorKind k)
{
    return k == GeneratorKind::Cycle ? "cycle" : "chain";
}

Json monomial_to_json(const DGAPresentation& N, const Monomial& m)
{
    Json a = Json::array();
    for (int g : m) a.push_back(N.generator(g).name);
    return a;
}

/// The product of the listed generators in the given order, with its Koszul sign.
Poly monomial_from_json(const DGAPresentation& N, const Json& j, const std::string& where)
{
    Poly p = N.one();
    std::size_t i = 0;
    for (const auto& g : as_array(j, where)) {
        std::string name = as_string(g, at(where, i));
        try {
            p = N.mul(p, N.gen(name));
        } catch (const Error&) {
            fail(at(where, i), "unknown generator '" + name + "'");
        }
        ++i;
    }
    return p;
}

Json complex_double(std::complex<double> v)
{
    return Json::array({v.real(), v.imag()});
}

}  // namespace

// ---------------------------------------------------------------- rationals

Json rational_to_json(const Rational& q)
{
    return to_string(q);
}

Rational rational_from_json(const Json& j, const std::string& where)
{
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()), 10);
    if (j.is_number_float()) fail(where, "floating-point value where a rational string \"p/q\" is required");
    if (!j.is_string()) fail(where, "expected a rational string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

// ---------------------------------------------------------------- complexes and chains

Json complex_to_json(const SimplicialComplex& K)
{
    Json j;
    j["n"] = K.ambient_n();
    Json verts = Json::array();
    for (const auto& [id, v] : K.vertices()) {
        Json coords = Json::array();
        for (const auto& s : v.coords) coords.push_back(s.inf ? Json("inf") : complex_q_to_json(s.z));
        verts.push_back(Json{{"id", id}, {"coords", coords}});
    }
    j["vertices"] = verts;
    std::set<SimplexKey> all;
    for (const auto& k : K.all_simplexes()) all.insert(k);
    Json simplexes = Json::array();
    for (const auto& k : maximal(all)) simplexes.push_back(key_to_json(k));
    j["simplexes"] = simplexes;
    Json marked = Json::object();
    for (const auto& [name, keys] : K.marked()) {
        Json list = Json::array();
        for (const auto& k : maximal(keys)) list.push_back(key_to_json(k));
        marked[name] = list;
    }
    j["marked"] = marked;
    return j;
}

Json chain_to_json(const Chain& c)
{
    Json terms = Json::array();
    for (const auto& [key, v] : c.terms()) terms.push_back(Json{{"simplex", key_to_json(key)}, {"coeff", rational_to_json(v)}});
    return terms;
}

Json bundle_to_json(const ChainBundle& b)
{
    Json j = complex_to_json(b.complex);
    Json chains = Json::object();
    for (const auto& [name, c] : b.chains) chains[name] = chain_to_json(c);
    j["chains"] = chains;
    if (!b.cell_chains.empty()) {
        Json cells = Json::object();
        for (const auto& [name, c] : b.cell_chains) cells[name] = cell_chain_to_json(c);
        j["cell_chains"] = cells;
    }
    return j;
}

ChainBundle bundle_from_json(const Json& j)
{
    ChainBundle b;
    if (!j.is_object()) fail("", "expected an object");
    long long n = as_int(field(j, "n", ""), "/n");
    if (n < 0 || n > 16) fail("/n", "ambient dimension out of range");
    b.complex = SimplicialComplex(static_cast<int>(n));
    auto& K = b.complex;

    std::size_t i = 0;
    for (const auto& v : as_array(field(j, "vertices", ""), "/vertices")) {
        std::string where = at("/vertices", i++);
        Vertex vert;
        vert.id = static_cast<int>(as_int(field(v, "id", where), at(where, "id")));
        const Json& coords = as_array(field(v, "coords", where), at(where, "coords"));
        std::size_t s = 0;
        for (const auto& c : coords) {
            std::string cw = at(at(where, "coords"), s++);
            if (c.is_string() && c.get<std::string>() == "inf") vert.coords.push_back(Slot::infinity());
            else vert.coords.push_back(Slot::finite(complex_q_from_json(c, cw)));
        }
        if (K.has_vertex(vert.id)) fail(at(where, "id"), "duplicate vertex id " + std::to_string(vert.id));
        try {
            K.add_vertex(std::move(vert));
        } catch (const Error& e) {
            fail(where, e.what());
        }
    }

    auto keys_from = [&](const Json& list, const std::string& where) {
        std::vector<SimplexKey> keys;
        std::size_t k = 0;
        for (const auto& s : as_array(list, where)) {
            std::string sw = at(where, k++);
            auto ids = ids_from_json(s, sw);
            for (int id : ids)
                if (!K.has_vertex(id)) fail(sw, "unknown vertex id " + std::to_string(id));
            auto [key, sign] = canonical(ids);
            if (sign == 0) fail(sw, "simplex repeats a vertex");
            keys.push_back(key);
        }
        return keys;
    };

    if (const Json* s = optional_field(j, "simplexes"))
        for (auto& key : keys_from(*s, "/simplexes")) {
            try {
                K.add_simplex(key);
            } catch (const Error& e) {
                fail("/simplexes", e.what());
            }
        }

    if (const Json* marked = optional_field(j, "marked")) {
        if (!marked->is_object()) fail("/marked", "expected an object");
        static const std::regex face_name(R"(H_(\d+)_(0|inf))");
        for (const auto& [name, list] : marked->items()) {
            std::string where = at("/marked", name);
            auto keys = keys_from(list, where);
            for (const auto& key : keys) {
                if (!K.contains(key)) fail(where, "simplex " + format_simplex(key) + " is not in the complex");
                bool ok = true;
                std::smatch m;
                if (name == "D") ok = K.in_divisor(key);
                else if (std::regex_match(name, m, face_name)) {
                    int slot = std::stoi(m[1]) - 1;
                    if (slot < 0 || slot >= K.ambient_n()) fail(where, "face index out of range");
                    ok = CubicalFace::single(slot, m[2] == "0" ? Alpha::Zero : Alpha::Inf).contains(K, key);
                }
                if (!ok) fail(where, "simplex " + format_simplex(key) + " does not lie on " + name + " by position");
            }
            K.mark(name, keys);
        }
    }

    if (const Json* chains = optional_field(j, "chains")) {
        if (!chains->is_object()) fail("/chains", "expected an object");
        for (const auto& [name, terms] : chains->items()) {
            std::string where = at("/chains", name);
            Chain c;
            int degree = -1;
            std::size_t t = 0;
            for (const auto& term : as_array(terms, where)) {
                std::string tw = at(where, t++);
                auto ids = ids_from_json(field(term, "simplex", tw), at(tw, "simplex"));
                Rational coeff = rational_from_json(field(term, "coeff", tw), at(tw, "coeff"));
                auto [key, sign] = canonical(ids);
                if (sign == 0) fail(at(tw, "simplex"), "simplex repeats a vertex");
                if (!K.contains(key)) fail(at(tw, "simplex"), "simplex " + format_simplex(ids) + " is not in the complex");
                int d = static_cast<int>(ids.size()) - 1;
                if (degree < 0) {
                    degree = d;
                    c = Chain(K.ambient_n(), d);
                } else if (d != degree) {
                    fail(at(tw, "simplex"), "mixed degrees in one chain");
                }
                c.add(ids, coeff);
            }
            if (degree < 0) c = Chain(K.ambient_n(), 0);
            b.chains[name] = c;
        }
    }

    if (const Json* cells = optional_field(j, "cell_chains")) {
        if (!cells->is_object()) fail("/cell_chains", "expected an object");
        for (const auto& [name, c] : cells->items()) b.cell_chains[name] = cell_chain_from_json(c, at("/cell_chains", name));
    }
    return b;
}

ChainBundle parse_bundle(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return bundle_from_json(j);
}

ChainBundle read_bundle(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_bundle(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------- parametrized cells

Json cell_to_json(const ParamCell& c)
{
    Json j;
    if (!c.label.empty()) j["label"] = c.label;
    j["n"] = c.n;
    j["orientation"] = c.orientation;
    Json params = Json::array();
    for (const auto& p : c.params) params.push_back(param_to_json(p, c.params));
    j["params"] = params;
    Json map = Json::array();
    for (const auto& e : c.map) map.push_back(e.to_string());
    j["map"] = map;
    Json faces = Json::array();
    for (const auto& f : c.faces) {
        Json terms = Json::array();
        for (const auto& t : f.terms) terms.push_back(Json{{"cell", cell_to_json(*t.cell)}, {"mult", t.mult}});
        faces.push_back(Json{{"slot", f.slot + 1}, {"alpha", alpha_name(f.alpha)}, {"terms", terms}});
    }
    j["declared_faces"] = faces;
    return j;
}

ParamCell cell_from_json(const Json& j, const std::string& where)
{
    ParamCell c;
    if (const Json* label = optional_field(j, "label")) c.label = as_string(*label, at(where, "label"));
    c.n = static_cast<int>(as_int(field(j, "n", where), at(where, "n")));
    if (c.n < 0) fail(at(where, "n"), "negative ambient dimension");
    if (const Json* o = optional_field(j, "orientation")) {
        long long v = as_int(*o, at(where, "orientation"));
        if (v != 1 && v != -1) fail(at(where, "orientation"), "orientation must be 1 or -1");
        c.orientation = static_cast<int>(v);
    }
    std::set<std::string> names;
    if (const Json* params = optional_field(j, "params")) {
        std::size_t i = 0;
        for (const auto& p : as_array(*params, at(where, "params"))) {
            std::string pw = at(at(where, "params"), i++);
            c.params.push_back(param_from_json(p, c.params, pw));
            if (!names.insert(c.params.back().name).second) fail(at(pw, "name"), "duplicate parameter name");
        }
    }
    const Json& map = as_array(field(j, "map", where), at(where, "map"));
    if (static_cast<int>(map.size()) != c.n) fail(at(where, "map"), "expected one expression per coordinate");
    std::size_t i = 0;
    for (const auto& e : map) {
        std::string ew = at(at(where, "map"), i++);
        Expr x;
        try {
            x = Expr::parse(as_string(e, ew));
        } catch (const ParseError& err) {
            fail(ew, err.what());
        }
        for (const auto& p : x.params())
            if (!names.count(p)) fail(ew, "unknown parameter '" + p + "'");
        c.map.push_back(x);
    }
    if (const Json* faces = optional_field(j, "declared_faces")) {
        std::size_t k = 0;
        for (const auto& f : as_array(*faces, at(where, "declared_faces"))) {
            std::string fw = at(at(where, "declared_faces"), k++);
            DeclaredFace df;
            long long slot = as_int(field(f, "slot", fw), at(fw, "slot"));
            if (slot < 1 || slot > c.n) fail(at(fw, "slot"), "slot out of range (1-based)");
            df.slot = static_cast<int>(slot - 1);
            df.alpha = alpha_from_json(field(f, "alpha", fw), at(fw, "alpha"));
            std::size_t t = 0;
            for (const auto& term : as_array(field(f, "terms", fw), at(fw, "terms"))) {
                std::string tw = at(at(fw, "terms"), t++);
                auto cell = cell_from_json(field(term, "cell", tw), at(tw, "cell"));
                if (cell.n != c.n - 1) fail(at(tw, "cell"), "face cells live in one dimension less");
                long long mult = 1;
                if (const Json* m = optional_field(term, "mult")) mult = as_int(*m, at(tw, "mult"));
                df.terms.push_back({std::make_shared<const ParamCell>(std::move(cell)), static_cast<int>(mult)});
            }
            c.faces.push_back(std::move(df));
        }
    }
    return c;
}

Json cell_chain_to_json(const CellChain& c)
{
    Json terms = Json::array();
    for (const auto& [cell, v] : c.terms) terms.push_back(Json{{"cell", cell_to_json(*cell)}, {"coeff", rational_to_json(v)}});
    return Json{{"n", c.n}, {"degree", c.degree}, {"terms", terms}};
}

CellChain cell_chain_from_json(const Json& j, const std::string& where)
{
    CellChain c;
    c.n = static_cast<int>(as_int(field(j, "n", where), at(where, "n")));
    c.degree = static_cast<int>(as_int(field(j, "degree", where), at(where, "degree")));
    std::size_t i = 0;
    for (const auto& t : as_array(field(j, "terms", where), at(where, "terms"))) {
        std::string tw = at(at(where, "terms"), i++);
        auto cell = cell_from_json(field(t, "cell", tw), at(tw, "cell"));
        if (cell.n != c.n) fail(at(tw, "cell"), "cell lives in a different ambient dimension");
        if (cell.dim() != c.degree) fail(at(tw, "cell"), "cell dimension differs from the chain degree");
        Rational coeff = 1;
        if (const Json* v = optional_field(t, "coeff")) coeff = rational_from_json(*v, at(tw, "coeff"));
        c.add(std::make_shared<const ParamCell>(std::move(cell)), coeff);
    }
    return c;
}

// ---------------------------------------------------------------- DGA presentations and bar elements

Json poly_to_json(const DGAPresentation& N, const Poly& p)
{
    Json a = Json::array();
    for (const auto& [m, c] : p) a.push_back(Json{{"coeff", rational_to_json(c)}, {"monomial", monomial_to_json(N, m)}});
    return a;
}

Poly poly_from_json(const DGAPresentation& N, const Json& j, const std::string& where)
{
    Poly p;
    std::size_t i = 0;
    for (const auto& t : as_array(j, where)) {
        std::string tw = at(where, i++);
        Rational c = rational_from_json(field(t, "coeff", tw), at(tw, "coeff"));
        p = p + c * monomial_from_json(N, field(t, "monomial", tw), at(tw, "monomial"));
    }
    return p;
}

Json presentation_to_json(const DGAPresentation& N)
{
    Json gens = Json::array();
    for (const auto& g : N.generators())
        gens.push_back(Json{{"name", g.name}, {"r", g.r}, {"deg", g.deg}, {"kind", generator_kind(g.kind)}});
    Json diff = Json::object();
    for (int i = 0; i < N.size(); ++i) diff[N.generator(i).name] = poly_to_json(N, N.differential(i));
    Json product = Json::object();
    for (int i = 0; i < N.size(); ++i)
        for (int k = i; k < N.size(); ++k) {
            const auto& a = N.generator(i).name;
            const auto& b = N.generator(k).name;
            product[a + "*" + b] = poly_to_json(N, N.mul(N.gen(a), N.gen(b)));
        }
    Json aug = Json::object();
    aug["1"] = "1";
    for (const auto& g : N.generators()) aug[g.name] = "0";
    return Json{{"generators", gens}, {"differential", diff}, {"product", product}, {"augmentation", aug}};
}

DGAPresentation presentation_from_json(const Json& j)
{
    DGAPresentation N;
    std::size_t i = 0;
    for (const auto& g : as_array(field(j, "generators", ""), "/generators")) {
        std::string gw = at("/generators", i++);
        std::string name = as_string(field(g, "name", gw), at(gw, "name"));
        int r = static_cast<int>(as_int(field(g, "r", gw), at(gw, "r")));
        int deg = static_cast<int>(as_int(field(g, "deg", gw), at(gw, "deg")));
        GeneratorKind kind = GeneratorKind::Cycle;
        if (const Json* k = optional_field(g, "kind")) {
            std::string ks = as_string(*k, at(gw, "kind"));
            if (ks == "chain") kind = GeneratorKind::Chain;
            else if (ks != "cycle") fail(at(gw, "kind"), "kind must be \"cycle\" or \"chain\"");
        }
        try {
            N.add_generator(name, r, deg, kind);
        } catch (const Error& e) {
            fail(gw, e.what());
        }
    }
    if (const Json* diff = optional_field(j, "differential")) {
        if (!diff->is_object()) fail("/differential", "expected an object");
        for (const auto& [name, p] : diff->items()) {
            std::string dw = at("/differential", name);
            try {
                N.index(name);
            } catch (const Error&) {
                fail(dw, "unknown generator '" + name + "'");
            }
            N.set_differential(name, poly_from_json(N, p, dw));
        }
    }
    if (const Json* product = optional_field(j, "product")) {
        if (!product->is_object()) fail("/product", "expected an object");
        for (const auto& [pair, p] : product->items()) {
            std::string pw = at("/product", pair);
            auto star = pair.find('*');
            if (star == std::string::npos) fail(pw, "product keys have the form \"a*b\"");
            Json names = Json::array({pair.substr(0, star), pair.substr(star + 1)});
            Poly expected = monomial_from_json(N, names, pw);
            if (!(poly_from_json(N, p, pw) == expected))
                fail(pw, "product table disagrees with the free graded-commutative product");
        }
    }
    if (const Json* aug = optional_field(j, "augmentation")) {
        if (!aug->is_object()) fail("/augmentation", "expected an object");
        for (const auto& [name, v] : aug->items()) {
            Rational q = rational_from_json(v, at("/augmentation", name));
            Rational expected = name == "1" ? 1 : 0;
            if (q != expected) fail(at("/augmentation", name), "augmentation must send 1 to 1 and generators to 0");
        }
    }
    try {
        N.validate();
    } catch (const ValidationError& e) {
        fail("/differential", e.what());
    }
    return N;
}

Json bar_to_json(const DGAPresentation& N, const BarChain& x)
{
    Json out = Json::array();
    for (const auto& [k, c] : x) {
        Json letters = Json::array();
        for (const auto& m : k.letters) letters.push_back(monomial_to_json(N, m));
        out.push_back(Json::array({rational_to_json(c), letters, monomial_to_json(N, k.right), k.twist}));
    }
    return out;
}

BarChain bar_from_json(const DGAPresentation& N, const Json& j)
{
    BarChain out;
    std::size_t i = 0;
    for (const auto& t : as_array(j, "")) {
        std::string tw = at("", i++);
        if (!t.is_array() || t.size() < 2 || t.size() > 4) fail(tw, "expected [coeff, letters, right, twist]");
        Rational c = rational_from_json(t[0], at(tw, 0));
        std::vector<Poly> letters;
        std::size_t l = 0;
        for (const auto& m : as_array(t[1], at(tw, 1))) letters.push_back(monomial_from_json(N, m, at(at(tw, 1), l++)));
        Poly right = t.size() > 2 ? monomial_from_json(N, t[2], at(tw, 2)) : N.one();
        int twist = t.size() > 3 ? static_cast<int>(as_int(t[3], at(tw, 3))) : 0;
        bool algebra = !(right.size() == 1 && right.begin()->first.empty());
        BarComplex B(N, algebra ? BarCoefficients::Algebra : BarCoefficients::Augmentation);
        try {
            out = out + c * B.word(letters, right, twist);
        } catch (const Error& e) {
            fail(tw, e.what());
        }
    }
    return out;
}

// ---------------------------------------------------------------- numerical results

Json integral_to_json(const IntegralResult& r)
{
    return Json{{"value", complex_double(r.value)},
                {"err", r.error},
                {"converged", r.converged},
                {"evaluations", r.evaluations},
                {"exact_zero", r.exact_zero}};
}

Json thom_to_json(const ThomCocycle& T)
{
    Json values = Json::object();
    for (const auto& [k, v] : T.table()) values[k] = v;
    return Json{{"face", T.face.name()},
                {"backend", T.backend == ThomCocycle::Backend::Exact ? "exact" : "numerical"},
                {"epsilon", T.epsilon},
                {"values", values}};
}

Json period_value_to_json(const PeriodValue& v)
{
    return Json{{"symbolic", v.symbolic()}, {"value", complex_double(v.value)}, {"error", v.error}, {"exact", v.exact}};
}

Json period_matrix_to_json(const PeriodMatrix& P)
{
    Json rows = Json::array();
    for (const auto& row : P.entries) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(period_value_to_json(e));
        rows.push_back(r);
    }
    return Json{{"rows", P.derham_basis},
                {"columns", P.betti_basis},
                {"row_twists", P.derham_twists},
                {"column_twists", P.betti_twists},
                {"entries", rows},
                {"lower_triangular", P.lower_triangular()},
                {"residual", P.residual}};
}

QuadratureConfig config_from_json(const Json& j, QuadratureConfig cfg)
{
    if (!j.is_object()) fail("", "expected an object");
    auto number = [&](const char* key, double& out) {
        if (const Json* v = optional_field(j, key)) {
            if (!v->is_number()) fail(at("", key), "expected a number");
            out = v->get<double>();
        }
    };
    number("rel_tol", cfg.rel_tol);
    number("abs_tol", cfg.abs_tol);
    if (const Json* v = optional_field(j, "max_evaluations")) cfg.max_evaluations = as_int(*v, "/max_evaluations");
    if (const Json* v = optional_field(j, "seed")) cfg.seed = static_cast<unsigned long long>(as_int(*v, "/seed"));
    if (const Json* v = optional_field(j, "threads")) cfg.threads = static_cast<int>(as_int(*v, "/threads"));
    if (const Json* v = optional_field(j, "truncation_radii")) {
        cfg.truncation_radii.clear();
        std::size_t i = 0;
        for (const auto& r : as_array(*v, "/truncation_radii")) {
            if (!r.is_number()) fail(at("/truncation_radii", i), "expected a number");
            cfg.truncation_radii.push_back(r.get<double>());
            ++i;
        }
    }
    try {
        cfg.validate();
    } catch (const Error& e) {
        fail("", e.what());
    }
    return cfg;
}

Json config_to_json(const QuadratureConfig& cfg)
{
    return Json{{"rel_tol", cfg.rel_tol},
                {"abs_tol", cfg.abs_tol},
                {"max_evaluations", cfg.max_evaluations},
                {"truncation_radii", cfg.truncation_radii},
                {"seed", cfg.seed},
                {"threads", cfg.threads}};
}

}  // namespace tatep
