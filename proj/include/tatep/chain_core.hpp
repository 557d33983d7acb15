#pragma once

#include "tatep/errors.hpp"
#include "tatep/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace tatep {

/// One coordinate of a point of (P^1)^n: a finite Gaussian rational or infinity.
struct Slot {
    bool inf = false;
    ComplexQ z;

    static Slot finite(ComplexQ v) { return Slot{false, std::move(v)}; }
    static Slot infinity() { return Slot{true, {}}; }
    bool is_zero() const { return !inf && z.is_zero(); }
    bool is_one() const { return !inf && z.is_one(); }
    friend bool operator==(const Slot& a, const Slot& b) { return a.inf == b.inf && (a.inf || a.z == b.z); }
};

struct Vertex {
    int id = 0;
    std::vector<Slot> coords;
};

/// Sorted vertex ids; the canonical identity of a simplex.
using SimplexKey = std::vector<int>;

/// Sorts an ordered vertex list; returns the key and the permutation sign (0 on duplicates).
std::pair<SimplexKey, int> canonical(const std::vector<int>& ordered);

/// Faces of a key of a given dimension.
std::vector<SimplexKey> faces_of(const SimplexKey& key, int dim);

std::string format_simplex(const std::vector<int>& vertices);

class SimplicialComplex {
public:
    explicit SimplicialComplex(int ambient_n = 0) : n_(ambient_n) {}

    int ambient_n() const { return n_; }

    void add_vertex(Vertex v);
    /// Adds the simplex spanned by ids together with all its faces.
    void add_simplex(const std::vector<int>& ids);

    bool has_vertex(int id) const { return vertices_.count(id) != 0; }
    const Vertex& vertex(int id) const;
    const std::map<int, Vertex>& vertices() const { return vertices_; }

    bool contains(const SimplexKey& key) const;
    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::set<SimplexKey>& simplexes(int d) const;
    std::vector<SimplexKey> all_simplexes() const;
    std::size_t size() const;
    int max_vertex_id() const;

    /// Names a subcomplex; the list is closed under faces on insertion.
    void mark(const std::string& name, const std::vector<SimplexKey>& keys);
    bool is_marked(const std::string& name, const SimplexKey& key) const;
    const std::map<std::string, std::set<SimplexKey>>& marked() const { return marked_; }

    /// A simplex lies in D^n when one coordinate equals 1 at every vertex.
    bool in_divisor(const SimplexKey& key) const;

    /// Subcomplex spanned by the given simplexes (with faces); positions are copied.
    SimplicialComplex restrict_to(const std::vector<SimplexKey>& keys) const;

    /// Closure of the star-free part: all simplexes whose vertices lie in the set.
    std::vector<SimplexKey> full_span(const std::set<int>& vertex_ids) const;

    /// Affine position in R^{2n}; throws DomainError at infinity.
    std::vector<Rational> position(int id) const;

    /// Memoized integer attribute of a simplex under a tag; the table is cleared when the
    /// complex changes. Safe to call from several threads.
    int memo(const std::string& tag, const SimplexKey& key, const std::function<int()>& compute) const;

private:
    struct MemoTable {
        std::mutex mutex;
        std::map<std::pair<std::string, SimplexKey>, int> values;
    };
    void reset_memo() { memo_ = std::make_shared<MemoTable>(); }

    std::shared_ptr<MemoTable> memo_ = std::make_shared<MemoTable>();
    int n_;
    std::map<int, Vertex> vertices_;
    std::vector<std::set<SimplexKey>> by_dim_;
    std::map<std::string, std::set<SimplexKey>> marked_;
};

/// Sparse rational chain. Coefficients refer to the sorted-key orientation.
class Chain {
public:
    Chain() = default;
    Chain(int ambient_n, int degree) : n_(ambient_n), degree_(degree) {}

    int ambient_n() const { return n_; }
    int degree() const { return degree_; }

    /// Adds c times the oriented simplex given by vertex order.
    void add(const std::vector<int>& ordered, const Rational& c);
    void add_key(const SimplexKey& key, const Rational& c);
    Rational coeff(const SimplexKey& key) const;
    /// Coefficient of the oriented simplex in the given order.
    Rational coeff_oriented(const std::vector<int>& ordered) const;

    const std::map<SimplexKey, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Chain& operator+=(const Chain& o);
    Chain& operator-=(const Chain& o);
    Chain& operator*=(const Rational& c);
    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
    friend Chain operator*(const Rational& c, Chain a) { return a *= c; }
    friend bool operator==(const Chain& a, const Chain& b) { return a.terms_ == b.terms_; }

    std::string to_string() const;

private:
    int n_ = 0;
    int degree_ = 0;
    std::map<SimplexKey, Rational> terms_;
};

/// Rational cochain; values refer to the sorted-key orientation.
class Cochain {
public:
    Cochain() = default;
    explicit Cochain(int degree) : degree_(degree) {}

    int degree() const { return degree_; }
    void set(const std::vector<int>& ordered, const Rational& v);
    Rational operator()(const std::vector<int>& ordered) const;
    const std::map<SimplexKey, Rational>& values() const { return values_; }

    /// (du)(sigma) = u(boundary sigma) on the listed (degree+1)-simplexes.
    Cochain coboundary(const std::vector<SimplexKey>& domain) const;

private:
    int degree_ = 0;
    std::map<SimplexKey, Rational> values_;
};

/// Simplicial boundary. With a complex, terms are checked for membership; in
/// relative mode, faces contained in D^n are dropped.
Chain boundary(const Chain& c, const SimplicialComplex* K = nullptr, bool relative = false);

/// Boundary of one oriented simplex.
Chain boundary_simplex(const std::vector<int>& ordered, int ambient_n);

/// Removes every term contained in D^n.
Chain reduce_mod_divisor(const Chain& c, const SimplicialComplex& K);

/// [sigma : nu] for a codimension-one face, in the given orientations.
int incidence_index(const std::vector<int>& sigma, const std::vector<int>& nu);

struct Subdivision {
    SimplicialComplex fine;
    std::map<SimplexKey, int> barycenter;  // coarse simplex -> new vertex id
};

/// Barycentric subdivision with exact barycenters; marked subcomplexes are carried over.
Subdivision barycentric_subdivision(const SimplicialComplex& K);

/// The cone formula lambda(sigma) = b_sigma * lambda(boundary sigma).
Chain barycentric_operator(const Chain& c, const Subdivision& sd);

/// Geometric subdivision operator for an arbitrary rectilinear refinement.
/// Verifies that the refinement covers each coarse simplex exactly.
Chain subdivision_operator(const Chain& c, const SimplicialComplex& coarse, const SimplicialComplex& refinement);

/// Finds t in the carrier with boundary(t) = target; throws SolvabilityError.
Chain solve_boundary(const Chain& target, const SimplicialComplex& carrier);

using ChainMapTable = std::map<SimplexKey, Chain>;
using CarrierFn = std::function<SimplicialComplex(const SimplexKey&)>;

struct HomotopyTable {
    int shift = 0;  // phi lowers degree by shift
    std::map<SimplexKey, Chain> theta;

    Chain apply(const Chain& c) const;
};

/// Solves boundary(theta(x)) + theta(boundary x) = phi_a(x) - phi_b(x) degree by degree,
/// with theta(sigma) inside carrier(sigma). phi tables are indexed by sorted keys.
HomotopyTable carrier_homotopy(const SimplicialComplex& K, const ChainMapTable& phi_a, const ChainMapTable& phi_b,
                               int shift, const CarrierFn& carrier);

/// Residual of the defining equation summed over all simplexes (zero when valid),
/// together with a carrier-containment check.
bool check_homotopy(const SimplicialComplex& K, const ChainMapTable& phi_a, const ChainMapTable& phi_b,
                    const HomotopyTable& theta, const CarrierFn& carrier, std::string* why = nullptr);

Chain apply_table(const ChainMapTable& table, const Chain& c, int ambient_n, int degree);

}  // namespace tatep
