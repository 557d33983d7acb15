#pragma once

#include "tatep/chain_core.hpp"
#include "tatep/expr.hpp"

#include <compare>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tatep {

enum class Alpha { Zero, Inf };

std::string alpha_name(Alpha a);

/// z_slot = alpha; slots are 0-based, printed 1-based.
struct FaceConstraint {
    int slot = 0;
    Alpha alpha = Alpha::Zero;

    auto operator<=>(const FaceConstraint&) const = default;
};

class CubicalFace {
public:
    CubicalFace() = default;
    explicit CubicalFace(std::vector<FaceConstraint> constraints);
    static CubicalFace single(int slot, Alpha alpha) { return CubicalFace({{slot, alpha}}); }

    const std::vector<FaceConstraint>& constraints() const { return constraints_; }
    int codim() const { return static_cast<int>(constraints_.size()); }
    bool constrains(int slot) const;
    CubicalFace with(const FaceConstraint& c) const;
    bool contains(const Vertex& v) const;
    bool contains(const SimplicialComplex& K, const SimplexKey& key) const;
    /// Name such as "H_1_0" or "H_1_0,2_inf".
    std::string name() const;

    auto operator<=>(const CubicalFace&) const = default;

private:
    std::vector<FaceConstraint> constraints_;  // sorted by slot
};

/// All cubical faces of (P^1)^n of codimension 1..n.
std::vector<CubicalFace> all_cubical_faces(int n);

/// Simplexes of K lying in the face (the full span of its vertices on the face).
std::vector<SimplexKey> face_subcomplex(const SimplicialComplex& K, const CubicalFace& face);

/// Marks "D" and every nonempty codimension-one face "H_i_alpha" from vertex positions.
void mark_standard_subcomplexes(SimplicialComplex& K);

// ---------------------------------------------------------------- linear cells

/// Affine simplex in R^{2n}, coordinates (x_1, y_1, ..., x_n, y_n).
struct LinearCell {
    int n = 0;
    std::vector<std::vector<Rational>> points;
    int orientation = 1;

    int dim() const { return static_cast<int>(points.size()) - 1; }
    static LinearCell from_simplex(const SimplicialComplex& K, const std::vector<int>& ordered);
};

struct FaceIntersection {
    int dim = -1;
    std::vector<std::vector<Rational>> vertices;
};

/// cell ∩ {z_i = 0 for each constraint}, minus the part lying in D^n.
FaceIntersection cell_face_intersection(const LinearCell& cell, const CubicalFace& face);

/// cell ∩ {z_slot = value for each pair}; the D^n removal is not applied.
FaceIntersection cell_section(const LinearCell& cell, const std::vector<std::pair<int, ComplexQ>>& equations);

// ---------------------------------------------------------------- parametrized cells

/// c + sum coef[j] * (real parameter j).
struct Affine {
    Rational c;
    std::map<int, Rational> coef;

    static Affine constant(const Rational& v) { return Affine{v, {}}; }
    double eval(const double* real_params) const;
    Expr to_expr(const std::vector<std::string>& names) const;
    bool operator==(const Affine& o) const { return c == o.c && coef == o.coef; }
};

struct Param {
    enum class Type { Real, Disk, Sphere };
    Type type = Type::Real;
    std::string name;
    Affine lo, hi;           // Real: lo <= t <= hi, bounds in earlier real parameters
    ComplexQ center;         // Disk: r_lo <= |x - center| <= r_hi
    Rational r_lo, r_hi;

    int real_dim() const { return type == Type::Real ? 1 : 2; }
    static Param real(std::string name, Affine lo, Affine hi);
    static Param disk(std::string name, ComplexQ center, Rational r_hi, Rational r_lo = 0);
    static Param sphere(std::string name);
};

struct ParamCell;
using CellPtr = std::shared_ptr<const ParamCell>;

struct FaceTerm {
    CellPtr cell;
    int mult = 1;
};

/// Declared intersection of a cell with {z_slot = alpha}. The face cells live in
/// (P^1)^{n-1} with the slot removed.
struct DeclaredFace {
    int slot = 0;
    Alpha alpha = Alpha::Zero;
    std::vector<FaceTerm> terms;
};

struct ParamCell {
    std::string label;
    int n = 0;
    std::vector<Param> params;
    std::vector<Expr> map;  // one expression per slot
    int orientation = 1;
    std::vector<DeclaredFace> faces;

    int dim() const;
    std::vector<std::string> param_names() const;
    const DeclaredFace* declared(int slot, Alpha alpha) const;
    bool has_complex_param() const;
    /// A slot whose expression does not depend on any parameter.
    bool has_constant_slot() const;

    /// Evaluates the map at parameter values (complex parameters as complex numbers).
    std::vector<P1Value> eval(const std::vector<std::complex<double>>& params) const;

    /// Deterministic interior sample of parameter values (grid-based, no RNG).
    std::vector<std::vector<std::complex<double>>> interior_samples(int per_axis) const;

    std::string describe() const;
};

/// Builds the affine parametrization over the iterated standard simplex
/// s1 in [0,1], s2 in [0,1-s1], ... .
ParamCell to_param_cell(const LinearCell& cell, const std::string& label = "");

/// Cell with the parameter fixed to an expression (remaining parameters reindexed).
ParamCell restrict_param(const ParamCell& cell, int param_index, const Expr& value,
                         const std::optional<Affine>& affine_value);

/// Whether the cell lies in D^n (exactly when a slot folds to 1, otherwise by sampling).
bool cell_in_divisor(const ParamCell& cell);

/// Formal sum of oriented parametrized cells; no geometric canonicalization.
struct CellChain {
    int n = 0;
    int degree = 0;
    std::vector<std::pair<CellPtr, Rational>> terms;

    void add(CellPtr c, const Rational& coeff);
    CellChain& operator+=(const CellChain& o);
    CellChain scaled(const Rational& c) const;
    bool empty() const { return terms.empty(); }
};

/// Geometric boundary of a parametrized cell; faces in D^n and degenerate faces are dropped.
CellChain cell_boundary(const ParamCell& cell);
CellChain chain_boundary(const CellChain& chain);

/// Converts a simplicial chain into parametrized cells.
CellChain to_cell_chain(const Chain& chain, const SimplicialComplex& K);

// ---------------------------------------------------------------- admissibility

struct AdmissibilityEntry {
    CubicalFace face;
    int intersection_dim = -1;
    int support_dim = -1;
    bool pass = true;
    bool declared = false;  // true when derived from declared face data
    std::string witness;    // offending cell or simplex
};

struct AdmissibilityReport {
    std::vector<AdmissibilityEntry> entries;
    bool overall = true;

    std::string summary() const;
};

/// Exact admissibility of a simplicial chain, optionally within a fixed face L_C
/// (faces are then taken in the remaining coordinates).
AdmissibilityReport is_admissible(const Chain& chain, const SimplicialComplex& K, const CubicalFace& fixed = {});

/// Admissibility of a parametrized chain from declared faces plus sampling.
AdmissibilityReport is_admissible(const CellChain& chain);

/// gamma and its relative boundary are admissible.
bool in_admissible_complex(const Chain& chain, const SimplicialComplex& K, const CubicalFace& fixed = {},
                           AdmissibilityReport* failing = nullptr);

// ---------------------------------------------------------------- good triangulations

struct TriangulationCheck {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct TriangulationReport {
    std::vector<TriangulationCheck> checks;
    bool overall = true;

    std::string summary() const;
};

TriangulationReport check_good_triangulation(const SimplicialComplex& K);

// ---------------------------------------------------------------- G_n action

/// Element of {±1}^n ⋊ S_n: slot i is first inverted when invert[i], then moved to perm[i].
struct GnElement {
    std::vector<int> perm;
    std::vector<bool> invert;

    static GnElement identity(int n);
    int sign() const;
    GnElement inverse() const;
    /// (this * other)(z) = this(other(z)).
    GnElement compose(const GnElement& other) const;
    static std::vector<GnElement> all(int n);
};

ParamCell gn_transform(const ParamCell& cell, const GnElement& g);

}  // namespace tatep
